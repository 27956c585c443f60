#include "cartan/sln.hpp"

#include <map>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cartan {

SlnAlgebra::SlnAlgebra(RingPtr ring, std::size_t n)
    : ring_(std::move(ring)), n_(n), dim_(n * n - 1) {
  if (!ring_) throw std::invalid_argument("sl_n requires a ring");
  if (n < 2) throw std::invalid_argument("sl_n requires n >= 2");
  basis_.reserve(dim_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Matrix e(ring_, n, n);
      e.at(i, j) = ring_->one();
      basis_.push_back(std::move(e));
    }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Matrix d(ring_, n, n);
    d.at(k, k) = ring_->one();
    d.at(k + 1, k + 1) = ring_->neg(ring_->one());
    basis_.push_back(std::move(d));
  }
}

std::size_t SlnAlgebra::off_diag_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_)
    throw std::invalid_argument("off_diag_index requires i != j inside the matrix");
  return i * (n_ - 1) + (j > i ? j - 1 : j);
}

Vec SlnAlgebra::coords_of(const Matrix& a) const {
  if (a.rows() != n_ || a.cols() != n_)
    throw std::invalid_argument("matrix size does not match the algebra");
  if (!a.ring()->same_as(*ring_))
    throw std::invalid_argument("matrix ring does not match the algebra");
  if (trace(a).code != 0)
    throw std::invalid_argument("matrix has nonzero trace");
  Vec c(dim_, ring_->zero());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j) c[off_diag_index(i, j)] = a.at(i, j);
  RElem acc = ring_->zero();
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    acc = ring_->add(acc, a.at(k, k));
    c[n_ * (n_ - 1) + k] = acc;
  }
  return c;
}

Matrix SlnAlgebra::matrix_of(const Vec& coords) const {
  if (coords.size() != dim_)
    throw std::invalid_argument("coordinate vector has the wrong length");
  Matrix a(ring_, n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j) a.at(i, j) = coords[off_diag_index(i, j)];
  RElem prev = ring_->zero();
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    RElem x = coords[n_ * (n_ - 1) + k];
    a.at(k, k) = ring_->sub(x, prev);
    prev = x;
  }
  a.at(n_ - 1, n_ - 1) = ring_->neg(prev);
  return a;
}

Matrix SlnAlgebra::ad_matrix(const Matrix& a) const {
  Matrix out(ring_, dim_, dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    Vec col = coords_of(commutator(a, basis_[k]));
    for (std::size_t i = 0; i < dim_; ++i) out.at(i, k) = col[i];
  }
  return out;
}

Subalgebra Subalgebra::make_unchecked(SlnPtr alg, std::vector<Matrix> basis) {
  if (!alg) throw std::invalid_argument("subalgebra requires an algebra");
  if (basis.empty()) throw std::invalid_argument("subalgebra requires a basis");
  Subalgebra h;
  std::vector<Vec> coords;
  coords.reserve(basis.size());
  for (const Matrix& b : basis) coords.push_back(alg->coords_of(b));
  h.coords_ = canonical_span(alg->ring(), alg->dim(), coords);
  h.alg_ = std::move(alg);
  h.basis_ = std::move(basis);
  return h;
}

Subalgebra Subalgebra::make(SlnPtr alg, std::vector<Matrix> basis) {
  Subalgebra h = make_unchecked(std::move(alg), std::move(basis));
  for (std::size_t i = 0; i < h.basis_.size(); ++i)
    for (std::size_t j = i + 1; j < h.basis_.size(); ++j) {
      Vec c = h.alg_->coords_of(commutator(h.basis_[i], h.basis_[j]));
      if (!h.coords_.contains(c))
        throw std::invalid_argument("subalgebra basis is not closed under the bracket");
    }
  return h;
}

bool is_abelian(const Subalgebra& h) {
  for (std::size_t i = 0; i < h.basis().size(); ++i)
    for (std::size_t j = i + 1; j < h.basis().size(); ++j)
      if (!commutator(h.basis()[i], h.basis()[j]).is_zero()) return false;
  return true;
}

Submodule center(const SlnAlgebra& alg) {
  const std::size_t d = alg.dim();
  Matrix stacked(alg.ring(), d * d, d);
  for (std::size_t b = 0; b < d; ++b) {
    Matrix ad = alg.ad_matrix(alg.basis()[b]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) stacked.at(b * d + i, j) = ad.at(i, j);
  }
  return solve_kernel(stacked);
}

Submodule normalizer(const Subalgebra& h) {
  const SlnAlgebra& alg = *h.algebra();
  const RingPtr& R = alg.ring();
  const std::size_t d = alg.dim();
  const std::size_t r = h.basis().size();
  // Unknowns (x, y_1, ..., y_r): block i says [x, h_i] = sum_j y_ij h_j.
  Matrix sys(R, r * d, d + r * r);
  std::vector<Vec> hc(r);
  for (std::size_t j = 0; j < r; ++j) hc[j] = alg.coords_of(h.basis()[j]);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      Vec col = alg.coords_of(commutator(alg.basis()[k], h.basis()[i]));
      for (std::size_t row = 0; row < d; ++row) sys.at(i * d + row, k) = col[row];
    }
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t row = 0; row < d; ++row)
        sys.at(i * d + row, d + i * r + j) = R->neg(hc[j][row]);
  }
  Submodule ker = solve_kernel(sys);
  std::vector<Vec> xs;
  for (const Vec& v : ker.canonical())
    xs.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d));
  return canonical_span(R, d, xs);
}

bool is_cartan_abelian(const Subalgebra& h) {
  return is_abelian(h) && module_equal(normalizer(h), h.coords());
}

RElem killing_ad_form(const SlnAlgebra& alg, const Matrix& a, const Matrix& b) {
  return trace_of_product(alg.ad_matrix(a), alg.ad_matrix(b));
}

RElem killing_trace_form(const SlnAlgebra& alg, const Matrix& a, const Matrix& b) {
  const Ring& R = *alg.ring();
  RElem two_n = R.from_int(static_cast<std::int64_t>(2 * alg.n()));
  return R.mul(two_n, trace_of_product(a, b));
}

Matrix killing_gram(const Subalgebra& h) {
  const SlnAlgebra& alg = *h.algebra();
  const std::size_t r = h.basis().size();
  Matrix g(alg.ring(), r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      g.at(i, j) = killing_trace_form(alg, h.basis()[i], h.basis()[j]);
  return g;
}

bool is_nondegenerate(const Matrix& gram) {
  return gram.ring()->is_unit(determinant(gram));
}

std::vector<RootSpace> root_space_decomposition(const SlnAlgebra& alg,
                                                const Subalgebra& h) {
  const RingPtr& R = alg.ring();
  if (!R->is_field())
    throw std::invalid_argument("root space decomposition needs a field");
  const std::size_t d = alg.dim();
  const std::size_t r = h.basis().size();

  std::vector<Matrix> ops;
  ops.reserve(r);
  for (const Matrix& b : h.basis()) ops.push_back(alg.ad_matrix(b));

  // Marginal eigenvalues of each operator, found by scanning the whole ring.
  std::vector<std::vector<RElem>> eigs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::uint64_t code = 0; code < R->size(); ++code) {
      RElem lam{code};
      Matrix shifted = ops[i];
      for (std::size_t k = 0; k < d; ++k)
        shifted.at(k, k) = R->sub(shifted.at(k, k), lam);
      if (!solve_kernel(shifted).is_zero()) eigs[i].push_back(lam);
    }
    if (eigs[i].empty()) return {};
  }

  std::vector<RootSpace> out;
  Vec root(r, R->zero());
  std::vector<std::size_t> idx(r, 0);
  for (;;) {
    for (std::size_t i = 0; i < r; ++i) root[i] = eigs[i][idx[i]];
    Matrix stacked(R, r * d, d);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          RElem v = ops[i].at(a, b);
          if (a == b) v = R->sub(v, root[i]);
          stacked.at(i * d + a, b) = v;
        }
    Submodule space = solve_kernel(stacked);
    if (!space.is_zero()) out.push_back(RootSpace{root, std::move(space)});
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == eigs[pos].size()) idx[pos++] = 0;
    if (pos == r) break;
    if (r == 0) break;
  }
  return out;
}

bool is_classical_cartan(const SlnAlgebra& alg, const Subalgebra& h) {
  const RingPtr& R = alg.ring();
  if (!R->is_field())
    throw std::invalid_argument("classical Cartan test needs a field");
  if (!is_abelian(h))
    throw std::invalid_argument("classical Cartan test needs an abelian input");

  std::vector<RootSpace> spaces = root_space_decomposition(alg, h);
  const std::size_t r = h.basis().size();

  auto key_of = [r](const Vec& root) {
    std::vector<std::uint64_t> k(r);
    for (std::size_t i = 0; i < r; ++i) k[i] = root[i].code;
    return k;
  };
  std::map<std::vector<std::uint64_t>, const RootSpace*> by_root;
  std::size_t total = 0;
  for (const RootSpace& rs : spaces) {
    total += rs.space.canonical_row_count();
    by_root[key_of(rs.root)] = &rs;
  }
  if (total != alg.dim()) return false;

  auto is_zero_root = [](const Vec& root) {
    for (const RElem& e : root)
      if (e.code != 0) return false;
    return true;
  };

  for (const RootSpace& rs : spaces) {
    if (is_zero_root(rs.root)) continue;
    Vec negated(r);
    for (std::size_t i = 0; i < r; ++i) negated[i] = R->neg(rs.root[i]);
    auto it = by_root.find(key_of(negated));
    if (it == by_root.end()) return false;
    // [L_a, L_{-a}] must be exactly one-dimensional.
    std::vector<Vec> brackets;
    for (const Vec& u : rs.space.canonical())
      for (const Vec& v : it->second->space.canonical()) {
        Matrix bu = alg.matrix_of(u), bv = alg.matrix_of(v);
        brackets.push_back(alg.coords_of(commutator(bu, bv)));
      }
    if (canonical_span(R, alg.dim(), brackets).canonical_row_count() != 1)
      return false;
  }

  // No string of roots may wrap fully around the characteristic.
  std::uint64_t p = R->characteristic();
  for (const RootSpace& a : spaces)
    for (const RootSpace& b : spaces) {
      if (is_zero_root(b.root)) continue;
      bool full = true;
      for (std::uint64_t k = 1; k < p && full; ++k) {
        Vec probe(r);
        RElem ke = R->from_int(static_cast<std::int64_t>(k));
        for (std::size_t i = 0; i < r; ++i)
          probe[i] = R->add(a.root[i], R->mul(ke, b.root[i]));
        full = by_root.count(key_of(probe)) != 0;
      }
      if (full) return false;
    }
  return true;
}

Subalgebra conjugate_subalgebra(const Matrix& g, const Subalgebra& h) {
  auto ginv = inverse(g);
  if (!ginv) throw std::invalid_argument("conjugating matrix is not invertible");
  std::vector<Matrix> basis;
  basis.reserve(h.basis().size());
  for (const Matrix& b : h.basis()) basis.push_back(mul(mul(*ginv, b), g));
  return Subalgebra::make_unchecked(h.algebra(), std::move(basis));
}

Subalgebra diagonal_cartan(const SlnPtr& alg) {
  std::vector<Matrix> basis(alg->basis().end() - static_cast<std::ptrdiff_t>(alg->n() - 1),
                            alg->basis().end());
  return Subalgebra::make(alg, std::move(basis));
}

namespace {

// Runs fn(i) for i in [0, count), optionally across OpenMP threads. Results
// are written into index i of whatever the callback owns, so the merge order
// is deterministic either way.
template <typename Fn>
void indexed_for(std::size_t count, bool parallel, Fn&& fn) {
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace

VerificationReport verify_odac(const Decomposition& dec, const VerifyOptions& opts) {
  VerificationReport rep;
  const SlnAlgebra& alg = *dec.algebra;
  const RingPtr& R = alg.ring();
  const std::size_t d = alg.dim();
  const std::size_t k = dec.components.size();
  if (k == 0) {
    rep.witnesses.push_back("decomposition has no components");
    return rep;
  }
  auto name_of = [&](std::size_t i) {
    return i < dec.names.size() ? dec.names[i] : "component " + std::to_string(i);
  };

  // Freeness and spanning in one step: stacking every basis vector must give
  // a square matrix with unit determinant.
  std::size_t total = 0;
  for (const Subalgebra& c : dec.components) total += c.basis().size();
  if (total != d) {
    rep.components_free = false;
    rep.direct_sum_spans = false;
    rep.witnesses.push_back("total basis count " + std::to_string(total) +
                            " differs from the ambient rank " + std::to_string(d));
  } else {
    Matrix stacked(R, d, d);
    std::size_t row = 0;
    for (const Subalgebra& c : dec.components)
      for (const Matrix& b : c.basis()) {
        Vec cd = alg.coords_of(b);
        for (std::size_t j = 0; j < d; ++j) stacked.at(row, j) = cd[j];
        ++row;
      }
    RElem det = determinant(stacked);
    if (R->is_unit(det)) {
      rep.components_free = true;
      rep.direct_sum_spans = true;
    } else {
      bool all_free = true;
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t rank = dec.components[i].coords().canonical_row_count();
        if (rank < dec.components[i].basis().size()) {
          all_free = false;
          rep.witnesses.push_back(name_of(i) + " basis is not free (rank " +
                                  std::to_string(rank) + " < " +
                                  std::to_string(dec.components[i].basis().size()) + ")");
        }
      }
      rep.components_free = all_free;
      rep.direct_sum_spans = false;
      if (all_free)
        rep.witnesses.push_back("stacked coordinate determinant " + R->elem_str(det) +
                                " is not a unit");
    }
  }

  // Pairwise Killing orthogonality across distinct components.
  {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    std::vector<std::string> bad(pairs.size());
    indexed_for(pairs.size(), opts.parallel, [&](std::size_t t) {
      auto [i, j] = pairs[t];
      for (const Matrix& a : dec.components[i].basis())
        for (const Matrix& b : dec.components[j].basis()) {
          RElem v = killing_trace_form(alg, a, b);
          if (v.code != 0) {
            bad[t] = "K(" + name_of(i) + ", " + name_of(j) + ") = " + R->elem_str(v);
            return;
          }
        }
    });
    rep.pairwise_orthogonal = true;
    for (const std::string& w : bad)
      if (!w.empty()) {
        rep.pairwise_orthogonal = false;
        rep.witnesses.push_back(w);
      }
  }

  // Componentwise checks, each slot filled independently.
  {
    std::vector<char> ab(k, 1), sn(k, 1);
    indexed_for(k, opts.parallel, [&](std::size_t i) {
      ab[i] = is_abelian(dec.components[i]) ? 1 : 0;
      sn[i] = module_equal(normalizer(dec.components[i]),
                           dec.components[i].coords())
                  ? 1
                  : 0;
    });
    rep.each_abelian = true;
    rep.each_self_normalizing = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (!ab[i]) {
        rep.each_abelian = false;
        rep.witnesses.push_back(name_of(i) + " is not abelian");
      }
      if (!sn[i]) {
        rep.each_self_normalizing = false;
        rep.witnesses.push_back(name_of(i) + " is not self-normalizing");
      }
    }
  }

  if (opts.check_classical) {
    if (!R->is_field()) {
      rep.all_classical = false;
      rep.witnesses.push_back("classical root-space checks need field coefficients");
    } else if (!rep.each_abelian) {
      rep.all_classical = false;
      rep.witnesses.push_back("classical checks skipped: a component is not abelian");
    } else {
      std::vector<char> cl(k, 1);
      indexed_for(k, opts.parallel, [&](std::size_t i) {
        cl[i] = is_classical_cartan(alg, dec.components[i]) ? 1 : 0;
      });
      rep.all_classical = true;
      for (std::size_t i = 0; i < k; ++i)
        if (!cl[i]) {
          rep.all_classical = false;
          rep.witnesses.push_back(name_of(i) + " fails the classical Cartan test");
        }
    }
  }
  return rep;
}

}  // namespace cartan
