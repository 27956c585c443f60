#include "cartan/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace cartan {

namespace {

// xgcd over the integers: returns g = gcd(a, b) and s, t with s*a + t*b = g.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s1 = 0;
  std::int64_t old_t = 0, t1 = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s1; old_s = s1; s1 = tmp;
    tmp = old_t - q * t1; old_t = t1; t1 = tmp;
  }
  s = old_s; t = old_t;
  return old_r;
}

std::size_t leading_col(const Vec& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j].code != 0) return j;
  return v.size();
}

// Row reduction over one residue or field factor. Build with insert(), then
// finalize() once; member() and the row accessors assume a finalized state.
struct ReduceState {
  RingPtr ring;
  std::size_t width = 0;
  bool field = false;
  std::uint64_t N = 0;  // residue modulus when !field

  std::vector<Vec> rows;          // sorted by pivot column
  std::vector<std::size_t> piv;

  ReduceState(RingPtr r, std::size_t w) : ring(std::move(r)), width(w) {
    field = ring->kind() == RingKind::field;
    if (!field) N = ring->modulus();
  }

  void axpy(Vec& dst, RElem c, const Vec& src) const {
    for (std::size_t j = 0; j < width; ++j)
      dst[j] = ring->add(dst[j], ring->mul(c, src[j]));
  }

  std::size_t find_pivot_row(std::size_t col) const {
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (piv[i] == col) return i;
    return piv.size();
  }

  void insert_sorted(Vec v, std::size_t col) {
    std::size_t pos = 0;
    while (pos < piv.size() && piv[pos] < col) ++pos;
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    piv.insert(piv.begin() + static_cast<std::ptrdiff_t>(pos), col);
  }

  // Adds v to the span; returns true when the stored rows changed.
  bool insert(Vec v) {
    bool changed = false;
    for (;;) {
      std::size_t c = leading_col(v);
      if (c == width) return changed;
      std::size_t idx = find_pivot_row(c);
      if (idx == rows.size()) {
        if (field) {
          RElem inv = *ring->inverse(v[c]);
          for (std::size_t j = c; j < width; ++j) v[j] = ring->mul(inv, v[j]);
        }
        insert_sorted(std::move(v), c);
        return true;
      }
      if (field) {
        axpy(v, ring->neg(v[c]), rows[idx]);  // pivot entry is 1
        continue;
      }
      std::uint64_t a = rows[idx][c].code, b = v[c].code;
      if (b % a == 0) {
        axpy(v, RElem{N - (b / a) % N}, rows[idx]);
      } else {
        std::int64_t s, t;
        std::int64_t g = xgcd(static_cast<std::int64_t>(a),
                              static_cast<std::int64_t>(b), s, t);
        std::uint64_t ug = static_cast<std::uint64_t>(g);
        Vec old_r = rows[idx];
        // [[s, t], [-b/g, a/g]] has determinant 1, so the span is unchanged
        // while the pivot entry shrinks to gcd(a, b).
        Vec nr(width, ring->zero());
        axpy(nr, ring->from_int(s), old_r);
        axpy(nr, ring->from_int(t), v);
        Vec nv(width, ring->zero());
        axpy(nv, RElem{N - (b / ug) % N}, old_r);
        axpy(nv, RElem{(a / ug) % N}, v);
        rows[idx] = std::move(nr);
        v = std::move(nv);
        changed = true;
      }
    }
  }

  void finalize() {
    if (!field) {
      // Closure: the span must also contain every annihilator multiple of a
      // row, made explicit so later membership tests can divide through.
      bool changed = true;
      while (changed) {
        changed = false;
        std::vector<Vec> snapshot = rows;
        for (const Vec& r : snapshot) {
          std::size_t c = leading_col(r);
          if (c == width) continue;
          std::uint64_t d = std::gcd(r[c].code, N);
          if (d == 1) continue;
          RElem ann{N / d};
          Vec shadow(width, ring->zero());
          axpy(shadow, ann, r);
          changed = insert(std::move(shadow)) || changed;
        }
      }
      // Normalize every pivot to its gcd with N using a unit multiplier.
      for (std::size_t i = 0; i < rows.size(); ++i) {
        std::uint64_t a = rows[i][piv[i]].code;
        std::uint64_t d = std::gcd(a, N);
        if (a == d) continue;
        std::uint64_t M = N / d;
        std::int64_t s, t;
        xgcd(static_cast<std::int64_t>((a / d) % M), static_cast<std::int64_t>(M), s, t);
        std::int64_t c0 = s % static_cast<std::int64_t>(M);
        if (c0 < 0) c0 += static_cast<std::int64_t>(M);
        std::uint64_t c = static_cast<std::uint64_t>(c0);
        std::uint64_t guard = 0;
        while (std::gcd(c, N) != 1) {
          c += M;
          if (++guard > N) throw std::logic_error("pivot normalization failed");
        }
        RElem mult{c % N};
        for (std::size_t j = piv[i]; j < width; ++j)
          rows[i][j] = ring->mul(mult, rows[i][j]);
      }
    }
    // Reduce entries above each pivot, left to right.
    for (std::size_t j = 0; j < rows.size(); ++j) {
      std::size_t c = piv[j];
      for (std::size_t i = 0; i < j; ++i) {
        RElem e = rows[i][c];
        if (e.code == 0) continue;
        if (field) {
          axpy(rows[i], ring->neg(e), rows[j]);
        } else {
          std::uint64_t d = rows[j][c].code;
          std::uint64_t q = e.code / d;
          if (q) axpy(rows[i], RElem{N - q % N}, rows[j]);
        }
      }
    }
  }

  bool member(Vec v) const {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      std::size_t c = piv[j];
      if (v[c].code == 0) continue;
      if (field) {
        axpy(v, ring->neg(v[c]), rows[j]);
      } else {
        std::uint64_t d = rows[j][c].code;
        if (v[c].code % d != 0) return false;
        axpy(v, RElem{N - (v[c].code / d) % N}, rows[j]);
      }
    }
    return leading_col(v) == width;
  }
};

struct LeafShape {
  RingPtr ring;
  std::vector<RingPtr> chain;
  std::vector<std::size_t> path;
};

void flatten_into(const RingPtr& r, std::vector<RingPtr>& chain,
                  std::vector<std::size_t>& path, std::vector<LeafShape>& out) {
  if (r->kind() == RingKind::product) {
    chain.push_back(r);
    const auto& fs = r->factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      path.push_back(i);
      flatten_into(fs[i], chain, path, out);
      path.pop_back();
    }
    chain.pop_back();
    return;
  }
  out.push_back(LeafShape{r, chain, path});
}

std::vector<LeafShape> flatten(const RingPtr& r) {
  std::vector<RingPtr> chain;
  std::vector<std::size_t> path;
  std::vector<LeafShape> out;
  flatten_into(r, chain, path, out);
  return out;
}

RElem project_leaf(const LeafShape& leaf, RElem e) {
  for (std::size_t k = 0; k < leaf.path.size(); ++k)
    e = leaf.chain[k]->component(e, leaf.path[k]);
  return e;
}

RElem embed_leaf(const LeafShape& leaf, RElem e) {
  for (std::size_t k = leaf.path.size(); k-- > 0;)
    e = leaf.chain[k]->embed_component(leaf.path[k], e);
  return e;
}

}  // namespace

bool Submodule::contains(const Vec& v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("vector length does not match the ambient rank");
  for (const Leaf& leaf : leaves_) {
    LeafShape sh{leaf.ring, leaf.chain, leaf.path};
    Vec w(ambient_);
    for (std::size_t j = 0; j < ambient_; ++j) w[j] = project_leaf(sh, v[j]);
    ReduceState st(leaf.ring, ambient_);
    st.rows = leaf.rows;
    st.piv = leaf.piv;
    if (!st.member(std::move(w))) return false;
  }
  return true;
}

std::vector<Vec> Submodule::canonical() const {
  std::vector<Vec> out;
  for (const Leaf& leaf : leaves_) {
    LeafShape sh{leaf.ring, leaf.chain, leaf.path};
    for (const Vec& r : leaf.rows) {
      Vec big(ambient_, ring_->zero());
      for (std::size_t j = 0; j < ambient_; ++j) big[j] = embed_leaf(sh, r[j]);
      out.push_back(std::move(big));
    }
  }
  return out;
}

std::size_t Submodule::canonical_row_count() const {
  std::size_t n = 0;
  for (const Leaf& leaf : leaves_) n += leaf.rows.size();
  return n;
}

bool Submodule::is_zero() const { return canonical_row_count() == 0; }

bool module_equal(const Submodule& a, const Submodule& b) {
  if (a.ambient_ != b.ambient_) return false;
  if (a.ring_.get() != b.ring_.get() && !a.ring_->same_as(*b.ring_)) return false;
  if (a.leaves_.size() != b.leaves_.size()) return false;
  for (std::size_t i = 0; i < a.leaves_.size(); ++i) {
    if (a.leaves_[i].rows != b.leaves_[i].rows) return false;
    if (a.leaves_[i].piv != b.leaves_[i].piv) return false;
  }
  return true;
}

Submodule canonical_span(const RingPtr& ring, std::size_t ambient,
                         const std::vector<Vec>& gens) {
  Submodule out;
  out.ring_ = ring;
  out.ambient_ = ambient;
  for (const LeafShape& sh : flatten(ring)) {
    ReduceState st(sh.ring, ambient);
    for (const Vec& g : gens) {
      if (g.size() != ambient)
        throw std::invalid_argument("generator length does not match the ambient rank");
      Vec w(ambient);
      for (std::size_t j = 0; j < ambient; ++j) w[j] = project_leaf(sh, g[j]);
      st.insert(std::move(w));
    }
    st.finalize();
    Submodule::Leaf leaf;
    leaf.ring = sh.ring;
    leaf.chain = sh.chain;
    leaf.path = sh.path;
    leaf.rows = std::move(st.rows);
    leaf.piv = std::move(st.piv);
    out.leaves_.push_back(std::move(leaf));
  }
  return out;
}

Submodule solve_kernel(const Matrix& m) {
  const std::size_t q = m.rows(), c = m.cols();
  Submodule out;
  out.ring_ = m.ring();
  out.ambient_ = c;
  for (const LeafShape& sh : flatten(m.ring())) {
    // Reduce the block matrix [M^T | I]; rows whose pivot lands in the
    // identity block read off the kernel in canonical form.
    ReduceState st(sh.ring, q + c);
    for (std::size_t i = 0; i < c; ++i) {
      Vec w(q + c, sh.ring->zero());
      for (std::size_t j = 0; j < q; ++j) w[j] = project_leaf(sh, m.at(j, i));
      w[q + i] = sh.ring->one();
      st.insert(std::move(w));
    }
    st.finalize();
    Submodule::Leaf leaf;
    leaf.ring = sh.ring;
    leaf.chain = sh.chain;
    leaf.path = sh.path;
    for (std::size_t i = 0; i < st.rows.size(); ++i) {
      if (st.piv[i] < q) continue;
      leaf.rows.emplace_back(st.rows[i].begin() + static_cast<std::ptrdiff_t>(q),
                             st.rows[i].end());
      leaf.piv.push_back(st.piv[i] - q);
    }
    out.leaves_.push_back(std::move(leaf));
  }
  return out;
}

}  // namespace cartan
