#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"

#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"
#include "cartan/ring.hpp"

using namespace cartan;

namespace {

// Enumerates every vector of the ambient module (ring size ^ width codes).
struct VecOdometer {
  RingPtr ring;
  std::size_t width;
  Vec v;
  bool first = true;

  VecOdometer(RingPtr r, std::size_t w) : ring(std::move(r)), width(w), v(w, RElem{0}) {}

  bool next() {
    if (first) {
      first = false;
      return true;
    }
    for (std::size_t i = 0; i < width; ++i) {
      if (v[i].code + 1 < ring->size()) {
        v[i] = RElem{v[i].code + 1};
        return true;
      }
      v[i] = RElem{0};
    }
    return false;
  }
};

Matrix random_matrix(const RingPtr& ring, std::size_t r, std::size_t c,
                     std::mt19937& rng) {
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = RElem{rng() % ring->size()};
  return m;
}

bool mat_kills(const Matrix& m, const Vec& v) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RElem s = m.ring()->zero();
    for (std::size_t j = 0; j < m.cols(); ++j)
      s = m.ring()->add(s, m.ring()->mul(m.at(i, j), v[j]));
    if (s.code != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("kernel membership over Z/12 agrees with brute force") {
  auto ring = Ring::residues(12);
  std::mt19937 rng(7001u);
  for (int t = 0; t < 8; ++t) {
    Matrix m = random_matrix(ring, 3, 4, rng);
    Submodule ker = solve_kernel(m);
    VecOdometer od(ring, 4);
    std::size_t members = 0;
    while (od.next()) {
      bool killed = mat_kills(m, od.v);
      CHECK(ker.contains(od.v) == killed);
      if (killed) ++members;
    }
    // the kernel size must be a product of divisors of 12; at least the zero vector
    CHECK(members >= 1);
  }
}

TEST_CASE("span membership over Z/4 agrees with exhaustive combinations") {
  auto ring = Ring::residues(4);
  std::mt19937 rng(7002u);
  for (int t = 0; t < 12; ++t) {
    std::size_t n_gens = 1 + rng() % 3;
    std::vector<Vec> gens;
    for (std::size_t g = 0; g < n_gens; ++g) {
      Vec v(3);
      for (auto& e : v) e = RElem{rng() % 4};
      gens.push_back(v);
    }
    Submodule span = canonical_span(ring, 3, gens);

    // brute force: all coefficient tuples
    std::vector<Vec> all;
    std::vector<std::uint64_t> coef(n_gens, 0);
    for (;;) {
      Vec sum(3, RElem{0});
      for (std::size_t g = 0; g < n_gens; ++g)
        for (std::size_t i = 0; i < 3; ++i)
          sum[i] = ring->add(sum[i], ring->mul(RElem{coef[g]}, gens[g][i]));
      all.push_back(sum);
      std::size_t k = 0;
      while (k < n_gens && ++coef[k] == 4) coef[k++] = 0;
      if (k == n_gens) break;
    }
    VecOdometer od(ring, 3);
    while (od.next()) {
      bool reachable = std::find(all.begin(), all.end(), od.v) != all.end();
      CHECK(span.contains(od.v) == reachable);
    }
  }
}

TEST_CASE("canonical form is unique under generator shuffling and duplication") {
  auto ring = Ring::residues(8);
  std::mt19937 rng(7003u);
  for (int t = 0; t < 10; ++t) {
    std::vector<Vec> gens;
    for (int g = 0; g < 3; ++g) {
      Vec v(4);
      for (auto& e : v) e = RElem{rng() % 8};
      gens.push_back(v);
    }
    Submodule a = canonical_span(ring, 4, gens);
    std::vector<Vec> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.push_back(gens[0]);  // duplicate
    shuffled.push_back(Vec(4, RElem{0}));
    Submodule b = canonical_span(ring, 4, shuffled);
    CHECK(module_equal(a, b));
    CHECK(a.canonical() == b.canonical());
    // scaling a generator by a unit keeps the span
    std::vector<Vec> scaled = gens;
    for (auto& e : scaled[1]) e = ring->mul(RElem{3}, e);
    CHECK(module_equal(a, canonical_span(ring, 4, scaled)));
  }
}

TEST_CASE("rank plus nullity equals width over a field") {
  auto f = Ring::field(3, 2);
  std::mt19937 rng(7004u);
  for (int t = 0; t < 20; ++t) {
    Matrix m = random_matrix(f, 3, 5, rng);
    Submodule ker = solve_kernel(m);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < 3; ++i) {
      Vec r(5);
      for (std::size_t j = 0; j < 5; ++j) r[j] = m.at(i, j);
      rows.push_back(r);
    }
    Submodule rowspan = canonical_span(f, 5, rows);
    CHECK(rowspan.canonical_row_count() + ker.canonical_row_count() == 5);
    for (const Vec& k : ker.canonical()) CHECK(mat_kills(m, k));
  }
}

TEST_CASE("kernels over a product ring match the isomorphic residue ring") {
  auto z12 = Ring::residues(12);
  auto prod = Ring::parse("Z/4 x Z/3");
  auto iso = [&](RElem v) {
    RElem parts[] = {RElem{v.code % 4}, RElem{v.code % 3}};
    return prod->from_components(parts);
  };
  std::mt19937 rng(7005u);
  for (int t = 0; t < 6; ++t) {
    Matrix m12 = random_matrix(z12, 2, 3, rng);
    Matrix mp(prod, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) mp.at(i, j) = iso(m12.at(i, j));
    Submodule k12 = solve_kernel(m12);
    Submodule kp = solve_kernel(mp);
    VecOdometer od(z12, 3);
    while (od.next()) {
      Vec mapped(3);
      for (std::size_t i = 0; i < 3; ++i) mapped[i] = iso(od.v[i]);
      CHECK(k12.contains(od.v) == kp.contains(mapped));
    }
  }
}

TEST_CASE("module equality is span equality, not generator equality") {
  auto ring = Ring::residues(9);
  std::vector<Vec> g1 = {{RElem{1}, RElem{2}}, {RElem{0}, RElem{3}}};
  std::vector<Vec> g2 = {{RElem{1}, RElem{5}}, {RElem{0}, RElem{6}}};  // same span
  std::vector<Vec> g3 = {{RElem{1}, RElem{2}}};
  Submodule a = canonical_span(ring, 2, g1);
  Submodule b = canonical_span(ring, 2, g2);
  Submodule c = canonical_span(ring, 2, g3);
  CHECK(module_equal(a, b));
  CHECK_FALSE(module_equal(a, c));
}

TEST_CASE("kernel edge cases") {
  auto ring = Ring::residues(6);
  Submodule kid = solve_kernel(Matrix::identity(ring, 3));
  CHECK(kid.is_zero());
  CHECK(kid.canonical_row_count() == 0);
  Submodule kzero = solve_kernel(Matrix(ring, 3, 3));
  CHECK(kzero.canonical_row_count() == 3);
  VecOdometer od(ring, 3);
  while (od.next()) CHECK(kzero.contains(od.v));
}

TEST_CASE("re-spanning canonical rows is idempotent") {
  auto ring = Ring::residues(12);
  std::mt19937 rng(7006u);
  for (int t = 0; t < 10; ++t) {
    Matrix m = random_matrix(ring, 3, 4, rng);
    Submodule ker = solve_kernel(m);
    Submodule again = canonical_span(ring, 4, ker.canonical());
    CHECK(module_equal(ker, again));
    CHECK(ker.canonical() == again.canonical());
  }
}

TEST_CASE("canonical span validates generator width") {
  auto ring = Ring::residues(4);
  std::vector<Vec> bad = {{RElem{1}, RElem{2}, RElem{3}}};
  CHECK_THROWS_AS(canonical_span(ring, 2, bad), std::invalid_argument);
}

TEST_CASE("Howell pivots divide the modulus and lead each column") {
  auto ring = Ring::residues(12);
  std::mt19937 rng(7007u);
  for (int t = 0; t < 10; ++t) {
    Matrix m = random_matrix(ring, 4, 4, rng);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < 4; ++i) {
      Vec r(4);
      for (std::size_t j = 0; j < 4; ++j) r[j] = m.at(i, j);
      rows.push_back(r);
    }
    auto canon = canonical_span(ring, 4, rows).canonical();
    std::size_t last_pivot_col = 0;
    bool first = true;
    for (const Vec& r : canon) {
      std::size_t lead = 0;
      while (lead < 4 && r[lead].code == 0) ++lead;
      REQUIRE(lead < 4);
      if (!first) CHECK(lead > last_pivot_col);
      first = false;
      last_pivot_col = lead;
      CHECK(12 % r[lead].code == 0);  // pivot divides the modulus
    }
  }
}
