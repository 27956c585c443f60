#include "cartan/search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "cartan/construct.hpp"
#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"
#include "cartan/ring.hpp"
#include "cartan/sln.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cartan::search {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ms_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
          .count());
}

RingPtr field_for(std::uint64_t q) {
  auto fac = factorize(q);
  if (fac.size() != 1)
    throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  return Ring::field(fac[0].first, fac[0].second);
}

void require_coprime_to_six(std::uint64_t q) {
  if (q % 2 == 0 || q % 3 == 0)
    throw std::invalid_argument("q = " + std::to_string(q) +
                                " shares a factor with 6; the two-parameter "
                                "family needs 2 and 3 invertible");
}

void check_ceiling(std::uint64_t q, std::uint64_t ceiling, const char* what) {
  if (q > ceiling)
    throw BudgetExceeded(std::string(what) + " is capped at q <= " +
                         std::to_string(ceiling) + ", got q = " + std::to_string(q));
}

void check_budget(std::uint64_t estimated_steps, const SearchOptions& opts,
                  const char* what) {
  if (!opts.budget_ms) return;
  std::uint64_t allowed = *opts.budget_ms * kStepsPerMs;
  if (estimated_steps > allowed)
    throw BudgetExceeded(std::string(what) + " needs about " +
                         std::to_string(estimated_steps) + " steps but the budget of " +
                         std::to_string(*opts.budget_ms) + " ms allows only " +
                         std::to_string(allowed));
}

// Deterministic sweep: [0, count) is cut into fixed contiguous blocks, each
// block appends to its own buffer, and buffers are concatenated in block
// order, so serial and parallel runs produce identical sequences.
template <typename Item, typename Fn>
std::vector<Item> sweep_collect(std::uint64_t count, ExecMode mode, Fn&& fn) {
  std::size_t nb = 1;
#ifdef _OPENMP
  if (mode == ExecMode::parallel)
    nb = static_cast<std::size_t>(omp_get_max_threads()) * 4;
#endif
  if (nb > count) nb = count ? static_cast<std::size_t>(count) : 1;
  std::vector<std::vector<Item>> blocks(nb);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (mode == ExecMode::parallel)
#endif
  for (std::size_t b = 0; b < nb; ++b) {
    std::uint64_t lo = count * b / nb;
    std::uint64_t hi = count * (b + 1) / nb;
    for (std::uint64_t i = lo; i < hi; ++i) fn(i, blocks[b]);
  }
  std::vector<Item> out;
  for (auto& blk : blocks) out.insert(out.end(), blk.begin(), blk.end());
  return out;
}

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t hits = 0;
};

template <typename Fn>
Tally sweep_tally(std::uint64_t count, ExecMode mode, Fn&& fn) {
  std::size_t nb = 1;
#ifdef _OPENMP
  if (mode == ExecMode::parallel)
    nb = static_cast<std::size_t>(omp_get_max_threads()) * 4;
#endif
  if (nb > count) nb = count ? static_cast<std::size_t>(count) : 1;
  std::vector<Tally> blocks(nb);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (mode == ExecMode::parallel)
#endif
  for (std::size_t b = 0; b < nb; ++b) {
    std::uint64_t lo = count * b / nb;
    std::uint64_t hi = count * (b + 1) / nb;
    for (std::uint64_t i = lo; i < hi; ++i) fn(i, blocks[b]);
  }
  Tally total;
  for (const Tally& t : blocks) {
    total.checked += t.checked;
    total.hits += t.hits;
  }
  return total;
}

// The two generators of the two-parameter family inside sl_3.
Matrix family_first(const RingPtr& f, RElem a, RElem b) {
  Matrix m(f, 3, 3);
  m.at(0, 1) = f->one();
  m.at(1, 2) = a;
  m.at(2, 0) = f->mul(a, b);
  return m;
}

Matrix family_second(const RingPtr& f, RElem a, RElem b) {
  Matrix m(f, 3, 3);
  m.at(0, 2) = f->one();
  m.at(1, 0) = f->mul(a, b);
  m.at(2, 1) = b;
  return m;
}

struct Sl3Vertices {
  RingPtr f;
  std::uint64_t q = 0;
  std::vector<Matrix> m1, m2;  // indexed by (a-1)*(q-1) + (b-1)

  explicit Sl3Vertices(std::uint64_t q_in) : f(field_for(q_in)), q(q_in) {
    const std::uint64_t side = q - 1;
    m1.reserve(side * side);
    m2.reserve(side * side);
    for (std::uint64_t a = 1; a < q; ++a)
      for (std::uint64_t b = 1; b < q; ++b) {
        m1.push_back(family_first(f, RElem{a}, RElem{b}));
        m2.push_back(family_second(f, RElem{a}, RElem{b}));
      }
  }

  std::uint64_t count() const { return (q - 1) * (q - 1); }

  PairCode code_of(std::uint64_t v) const {
    return PairCode{v / (q - 1) + 1, v % (q - 1) + 1};
  }

  // Exact mutual Killing orthogonality of the two spans: all four basis
  // pairings must vanish (the scalar 2n = 6 is a unit here).
  bool orthogonal(std::uint64_t v, std::uint64_t w) const {
    return trace_of_product(m1[v], m1[w]).code == 0 &&
           trace_of_product(m1[v], m2[w]).code == 0 &&
           trace_of_product(m2[v], m1[w]).code == 0 &&
           trace_of_product(m2[v], m2[w]).code == 0;
  }
};

}  // namespace

Sl3SearchResult classical_odac_search_sl3(std::uint64_t q, const SearchOptions& opts) {
  auto start = Clock::now();
  field_for(q);
  require_coprime_to_six(q);
  check_ceiling(q, 49, "the sl_3 pair search");
  const std::uint64_t side = q - 1;
  const std::uint64_t v_count = side * side;
  check_budget(v_count * v_count * 20 + v_count * 4096 * q, opts,
               "the sl_3 pair search");

  Sl3Vertices vx(q);

  // Edge sweep: one index per vertex, inner loop over larger partners, so
  // edges come out sorted lexicographically regardless of thread count.
  auto edges = sweep_collect<std::pair<std::uint64_t, std::uint64_t>>(
      v_count, opts.mode, [&](std::uint64_t i, auto& out) {
        for (std::uint64_t j = i + 1; j < v_count; ++j)
          if (vx.orthogonal(i, j)) out.emplace_back(i, j);
      });

  std::vector<std::vector<std::uint64_t>> adj(v_count);
  std::set<std::pair<std::uint64_t, std::uint64_t>> edge_set(edges.begin(), edges.end());
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& lst : adj) std::sort(lst.begin(), lst.end());

  std::vector<Sl3Triangle> cliques;
  for (std::uint64_t v = 0; v < v_count; ++v)
    for (std::size_t x = 0; x < adj[v].size(); ++x)
      for (std::size_t y = x + 1; y < adj[v].size(); ++y) {
        std::uint64_t n1 = adj[v][x], n2 = adj[v][y];
        if (n1 <= v || n2 <= v) continue;  // emit each triangle from its least vertex
        if (!edge_set.count({n1, n2})) continue;
        Sl3Triangle tri{{vx.code_of(v), vx.code_of(n1), vx.code_of(n2)}};
        std::sort(tri.members.begin(), tri.members.end());
        cliques.push_back(tri);
      }

  // Certify each clique as a full four-component decomposition with split
  // components; witnesses keep only the cliques that pass everything.
  auto alg = std::make_shared<const SlnAlgebra>(vx.f, 3);
  Subalgebra h0 = diagonal_cartan(alg);
  std::vector<char> ok(cliques.size(), 0);
  const std::uint64_t wc = cliques.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opts.mode == ExecMode::parallel)
#endif
  for (std::uint64_t t = 0; t < wc; ++t) {
    const Sl3Triangle& tri = cliques[t];
    Decomposition dec;
    dec.algebra = alg;
    dec.names = {"H_0", "H_1", "H_2", "H_3"};
    dec.components.push_back(h0);
    for (const PairCode& pc : tri.members)
      dec.components.push_back(Subalgebra::make(
          alg, {family_first(vx.f, RElem{pc.a}, RElem{pc.b}),
                family_second(vx.f, RElem{pc.a}, RElem{pc.b})}));
    VerifyOptions vo;
    vo.check_classical = true;
    vo.parallel = false;
    ok[t] = verify_odac(dec, vo).pass() ? 1 : 0;
  }

  Sl3SearchResult res;
  res.q = q;
  res.cliques_found = cliques.size();
  for (std::size_t t = 0; t < cliques.size(); ++t)
    if (ok[t]) res.witnesses.push_back(cliques[t]);
  res.exists = !res.witnesses.empty();
  res.all_certified = res.witnesses.size() == cliques.size();
  res.elapsed_ms = ms_since(start);
  return res;
}

RemarkResult verify_remark_no_pair(std::uint64_t q, const SearchOptions& opts) {
  auto start = Clock::now();
  field_for(q);
  require_coprime_to_six(q);
  check_ceiling(q, 49, "the no-orthogonal-pair sweep");
  const std::uint64_t v_count = (q - 1) * (q - 1);
  check_budget(v_count * v_count * 20, opts, "the no-orthogonal-pair sweep");

  Sl3Vertices vx(q);
  Tally t = sweep_tally(v_count, opts.mode, [&](std::uint64_t i, Tally& acc) {
    for (std::uint64_t j = i + 1; j < v_count; ++j) {
      ++acc.checked;
      if (vx.orthogonal(i, j)) ++acc.hits;
    }
  });

  RemarkResult res;
  res.q = q;
  res.pairs_checked = t.checked;
  res.no_orthogonal_pair = t.hits == 0;
  res.elapsed_ms = ms_since(start);
  return res;
}

OracleResult killing_degeneracy_oracle(std::uint64_t q, const SearchOptions& opts) {
  auto start = Clock::now();
  RingPtr f = field_for(q);
  require_coprime_to_six(q);
  check_ceiling(q, 9, "the degeneracy oracle");
  check_budget(q * q * q * q * (500 + 30 * q * q), opts, "the degeneracy oracle");

  auto alg = std::make_shared<const SlnAlgebra>(f, 3);
  // Zero-diagonal entry order shared by A, B and the linear system below.
  const std::size_t pos[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

  Tally t = sweep_tally(q * q * q * q, opts.mode, [&](std::uint64_t idx, Tally& acc) {
    std::uint64_t digits[4];
    std::uint64_t rest = idx;
    for (int k = 0; k < 4; ++k) { digits[k] = rest % q; rest /= q; }
    RElem a{digits[0]}, b{digits[1]}, c{digits[2]}, d{digits[3]};
    if (a.code == 0 && b.code == 0 && c.code == 0 && d.code == 0) return;
    if (f->mul(f->mul(a, b), f->mul(c, d)).code != 0) return;

    Matrix A(f, 3, 3);
    A.at(1, 0) = a; A.at(1, 2) = b; A.at(2, 0) = c; A.at(2, 1) = d;
    Vec a_flat{f->zero(), f->zero(), a, b, c, d};

    // Commutant of A inside the zero-diagonal matrices: 9 equations, 6 unknowns.
    Matrix sys(f, 9, 6);
    for (std::size_t k = 0; k < 6; ++k) {
      Matrix e(f, 3, 3);
      e.at(pos[k][0], pos[k][1]) = f->one();
      Matrix br = commutator(A, e);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) sys.at(i * 3 + j, k) = br.at(i, j);
    }
    std::vector<Vec> basis = solve_kernel(sys).canonical();
    const std::size_t r = basis.size();

    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < r; ++i) combos *= q;
    for (std::uint64_t cidx = 0; cidx < combos; ++cidx) {
      Vec bf(6, f->zero());
      std::uint64_t rest2 = cidx;
      for (std::size_t i = 0; i < r; ++i) {
        RElem coef{rest2 % q};
        rest2 /= q;
        if (coef.code == 0) continue;
        for (std::size_t j = 0; j < 6; ++j)
          bf[j] = f->add(bf[j], f->mul(coef, basis[i][j]));
      }
      // Skip scalar multiples of A (including zero).
      std::size_t lead = 0;
      while (a_flat[lead].code == 0) ++lead;
      RElem lam = f->mul(bf[lead], *f->inverse(a_flat[lead]));
      bool prop = true;
      for (std::size_t j = 0; j < 6 && prop; ++j)
        prop = bf[j] == f->mul(lam, a_flat[j]);
      if (prop) continue;

      Matrix B(f, 3, 3);
      for (std::size_t k = 0; k < 6; ++k) B.at(pos[k][0], pos[k][1]) = bf[k];
      ++acc.checked;
      RElem kaa = killing_trace_form(*alg, A, A);
      RElem kbb = killing_trace_form(*alg, B, B);
      RElem kab = killing_trace_form(*alg, A, B);
      RElem det = f->sub(f->mul(kaa, kbb), f->mul(kab, kab));
      if (det.code != 0) ++acc.hits;
    }
  });

  OracleResult res;
  res.q = q;
  res.instances_checked = t.checked;
  res.counterexamples = t.hits;
  res.elapsed_ms = ms_since(start);
  return res;
}

CensusResult pair_shape_census(std::uint64_t q, const SearchOptions& opts) {
  auto start = Clock::now();
  RingPtr f = field_for(q);
  require_coprime_to_six(q);
  check_ceiling(q, 5, "the subspace census");

  // Gaussian binomial [6 choose 2]_q.
  auto qpow = [&](unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
  };
  const std::uint64_t total =
      (qpow(6) - 1) / (q - 1) * ((qpow(5) - 1) / (q - 1)) / ((qpow(2) - 1) / (q - 1));
  check_budget(total * 150, opts, "the subspace census");

  // Echelon profiles: pivot columns p1 < p2; free entries sit right of each
  // pivot, excluding the other pivot's column in the first row.
  struct Profile {
    std::size_t p1, p2;
    std::vector<std::size_t> free1, free2;
    std::uint64_t combos, offset;
  };
  std::vector<Profile> profiles;
  std::uint64_t offset = 0;
  for (std::size_t p1 = 0; p1 < 6; ++p1)
    for (std::size_t p2 = p1 + 1; p2 < 6; ++p2) {
      Profile pr{p1, p2, {}, {}, 1, offset};
      for (std::size_t j = p1 + 1; j < 6; ++j)
        if (j != p2) pr.free1.push_back(j);
      for (std::size_t j = p2 + 1; j < 6; ++j) pr.free2.push_back(j);
      pr.combos = qpow(static_cast<unsigned>(pr.free1.size() + pr.free2.size()));
      offset += pr.combos;
      profiles.push_back(pr);
    }

  const std::size_t pos[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
  auto to_matrix = [&](const Vec& row) {
    Matrix m(f, 3, 3);
    for (std::size_t k = 0; k < 6; ++k) m.at(pos[k][0], pos[k][1]) = row[k];
    return m;
  };

  Matrix d1(f, 3, 3), d2(f, 3, 3);
  d1.at(0, 0) = f->one(); d1.at(1, 1) = f->neg(f->one());
  d2.at(1, 1) = f->one(); d2.at(2, 2) = f->neg(f->one());

  struct Survivor { Vec row1, row2; };
  auto survivors = sweep_collect<Survivor>(total, opts.mode, [&](std::uint64_t gidx,
                                                                 auto& out) {
    std::size_t pi = 0;
    while (pi + 1 < profiles.size() && profiles[pi + 1].offset <= gidx) ++pi;
    const Profile& pr = profiles[pi];
    std::uint64_t code = gidx - pr.offset;

    Vec r1(6, f->zero()), r2(6, f->zero());
    r1[pr.p1] = f->one();
    r2[pr.p2] = f->one();
    for (std::size_t k = 0; k < pr.free1.size(); ++k) {
      r1[pr.free1[k]] = RElem{code % q};
      code /= q;
    }
    for (std::size_t k = 0; k < pr.free2.size(); ++k) {
      r2[pr.free2[k]] = RElem{code % q};
      code /= q;
    }

    Matrix b1 = to_matrix(r1), b2 = to_matrix(r2);
    if (!commutator(b1, b2).is_zero()) return;
    if (trace_of_product(b1, d1).code != 0 || trace_of_product(b1, d2).code != 0 ||
        trace_of_product(b2, d1).code != 0 || trace_of_product(b2, d2).code != 0)
      return;
    RElem six = f->from_int(6);
    RElem g11 = f->mul(six, trace_of_product(b1, b1));
    RElem g12 = f->mul(six, trace_of_product(b1, b2));
    RElem g22 = f->mul(six, trace_of_product(b2, b2));
    if (f->sub(f->mul(g11, g22), f->mul(g12, g12)).code == 0) return;
    out.push_back(Survivor{r1, r2});
  });

  // Reference spans of the two-parameter family, in full sl_3 coordinates.
  auto alg = std::make_shared<const SlnAlgebra>(f, 3);
  std::vector<Submodule> lemma_spans;
  for (std::uint64_t a = 1; a < q; ++a)
    for (std::uint64_t b = 1; b < q; ++b) {
      Matrix m1 = family_first(f, RElem{a}, RElem{b});
      Matrix m2 = family_second(f, RElem{a}, RElem{b});
      Submodule span = canonical_span(f, alg->dim(),
                                      {alg->coords_of(m1), alg->coords_of(m2)});
      bool dup = false;
      for (const Submodule& s : lemma_spans)
        if (module_equal(s, span)) { dup = true; break; }
      if (!dup) lemma_spans.push_back(std::move(span));
    }

  CensusResult res;
  res.q = q;
  res.subspaces = total;
  res.survivors = survivors.size();
  res.lemma_span_count = lemma_spans.size();
  std::vector<char> hit(lemma_spans.size(), 0);
  for (const Survivor& s : survivors) {
    Submodule span = canonical_span(
        f, alg->dim(),
        {alg->coords_of(to_matrix(s.row1)), alg->coords_of(to_matrix(s.row2))});
    bool found = false;
    for (std::size_t i = 0; i < lemma_spans.size(); ++i)
      if (module_equal(span, lemma_spans[i])) {
        hit[i] = 1;
        found = true;
        break;
      }
    if (!found) ++res.mismatches;
  }
  bool all_hit = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  res.ok = res.mismatches == 0 && all_hit &&
           res.survivors == res.lemma_span_count;
  res.elapsed_ms = ms_since(start);
  return res;
}

Sl2Analysis sl2_orthogonality_analysis(std::uint64_t q, const SearchOptions& opts) {
  auto start = Clock::now();
  RingPtr f = field_for(q);
  if (q % 2 == 0)
    throw std::invalid_argument("the sl_2 family analysis needs odd q");
  check_ceiling(q, 97, "the sl_2 family analysis");
  check_budget(q * q * 10, opts, "the sl_2 family analysis");

  auto alg = std::make_shared<const SlnAlgebra>(f, 2);
  auto family = [&](RElem a) {
    Matrix m(f, 2, 2);
    m.at(0, 1) = f->one();
    m.at(1, 0) = a;
    return m;
  };

  Sl2Analysis res;
  res.q = q;
  for (std::uint64_t a = 1; a < q; ++a) {
    Sl2Row row;
    row.a = a;
    Matrix ma = family(RElem{a});
    std::uint64_t partners = 0;
    for (std::uint64_t b = 1; b < q; ++b) {
      if (killing_trace_form(*alg, ma, family(RElem{b})).code == 0) {
        ++partners;
        row.partner = b;
      }
    }
    if (partners != 1)
      throw std::logic_error("expected exactly one orthogonal partner");
    row.is_square = f->pow(RElem{a}, (q - 1) / 2) == f->one();
    if (row.is_square) {
      for (std::uint64_t s = 1; s < q; ++s)
        if (f->mul(RElem{s}, RElem{s}) == RElem{a}) {
          row.sqrt = s;
          break;
        }
    }
    res.rows.push_back(row);
  }
  res.elapsed_ms = ms_since(start);
  return res;
}

}  // namespace cartan::search
