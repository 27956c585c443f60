#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"

#include "cartan/construct.hpp"
#include "cartan/sln.hpp"

using namespace cartan;

namespace {

Matrix random_traceless(const SlnPtr& alg, std::mt19937& rng) {
  Vec c(alg->dim());
  for (auto& e : c) e = RElem{rng() % alg->ring()->size()};
  return alg->matrix_of(c);
}

Matrix family_first(const SlnPtr& alg, RElem a, RElem b) {
  const auto& r = alg->ring();
  Matrix m(r, 3, 3);
  m.at(0, 1) = r->one();
  m.at(1, 2) = a;
  m.at(2, 0) = r->mul(a, b);
  return m;
}

Matrix family_second(const SlnPtr& alg, RElem a, RElem b) {
  const auto& r = alg->ring();
  Matrix m(r, 3, 3);
  m.at(0, 2) = r->one();
  m.at(1, 0) = r->mul(a, b);
  m.at(2, 1) = b;
  return m;
}

Decomposition decomposition_of(std::variant<Decomposition, Obstruction> v) {
  REQUIRE(std::holds_alternative<Decomposition>(v));
  return std::get<Decomposition>(std::move(v));
}

}  // namespace

TEST_CASE("coordinate basis indexes off-diagonal then diagonal positions") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::residues(7), 3);
  CHECK(alg->dim() == 8);
  CHECK(alg->basis().size() == 8);
  // off-diagonal slots come first, row-major
  std::size_t idx = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(alg->off_diag_index(i, j) == idx);
      const Matrix& e = alg->basis()[idx];
      CHECK(e.at(i, j).code == 1);
      ++idx;
    }
  // then D_k = E_kk - E_{k+1,k+1}
  for (std::size_t k = 0; k < 2; ++k) {
    const Matrix& d = alg->basis()[6 + k];
    CHECK(d.at(k, k).code == 1);
    CHECK(d.at(k + 1, k + 1).code == 6);
  }
  CHECK_THROWS_AS(alg->off_diag_index(1, 1), std::invalid_argument);
}

TEST_CASE("coordinates round trip and reject nonzero trace") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::residues(12), 4);
  CHECK(alg->dim() == 15);
  std::mt19937 rng(8101u);
  for (int t = 0; t < 25; ++t) {
    Matrix a = random_traceless(alg, rng);
    CHECK(trace(a).code == 0);
    Vec c = alg->coords_of(a);
    CHECK(alg->matrix_of(c) == a);
  }
  Matrix bad = Matrix::identity(alg->ring(), 4);
  CHECK_THROWS_AS(alg->coords_of(bad), std::invalid_argument);
  CHECK_THROWS_AS(alg->coords_of(Matrix(alg->ring(), 3, 3)),
                  std::invalid_argument);
}

TEST_CASE("ad matrix columns are bracket coordinates") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::field(2, 2), 2);
  std::mt19937 rng(8102u);
  for (int t = 0; t < 10; ++t) {
    Matrix a = random_traceless(alg, rng);
    Matrix ad = alg->ad_matrix(a);
    for (std::size_t k = 0; k < alg->dim(); ++k) {
      Vec col = alg->coords_of(commutator(a, alg->basis()[k]));
      for (std::size_t i = 0; i < alg->dim(); ++i) CHECK(ad.at(i, k) == col[i]);
    }
  }
}

TEST_CASE("both Killing form implementations agree") {
  std::mt19937 rng(8103u);
  for (const char* dsl : {"Z/9", "F_7", "F_2^2"}) {
    for (std::size_t n : {2u, 3u}) {
      auto alg = std::make_shared<SlnAlgebra>(Ring::parse(dsl), n);
      for (int t = 0; t < 15; ++t) {
        Matrix a = random_traceless(alg, rng);
        Matrix b = random_traceless(alg, rng);
        CHECK(killing_ad_form(*alg, a, b) == killing_trace_form(*alg, a, b));
      }
    }
  }
}

TEST_CASE("Killing form values on diagonal generators are fixed") {
  auto alg2 = std::make_shared<SlnAlgebra>(Ring::residues(7), 2);
  Matrix d(alg2->ring(), 2, 2);
  d.at(0, 0) = RElem{1};
  d.at(1, 1) = RElem{6};
  // K(D, D) = 2 * 2 * Tr(D^2) = 4 * 2 = 8 = 1 mod 7
  CHECK(killing_ad_form(*alg2, d, d).code == 1);

  auto alg3 = std::make_shared<SlnAlgebra>(Ring::residues(7), 3);
  Subalgebra diag = diagonal_cartan(alg3);
  Matrix gram = killing_gram(diag);
  REQUIRE(gram.rows() == 2);
  CHECK(gram.at(0, 0).code == 5);
  CHECK(gram.at(0, 1).code == 1);
  CHECK(gram.at(1, 0).code == 1);
  CHECK(gram.at(1, 1).code == 5);
  CHECK(determinant(gram).code == 3);
  CHECK(is_nondegenerate(gram));
}

TEST_CASE("center matches the scalar matrices allowed by the characteristic") {
  auto sl2z2 = SlnAlgebra(Ring::residues(2), 2);
  Submodule c1 = center(sl2z2);
  CHECK(c1.canonical_row_count() == 1);
  CHECK(c1.contains(sl2z2.coords_of(Matrix::identity(sl2z2.ring(), 2))));

  auto sl3f7 = SlnAlgebra(Ring::residues(7), 3);
  CHECK(center(sl3f7).is_zero());

  auto sl3z9 = SlnAlgebra(Ring::residues(9), 3);
  Submodule c3 = center(sl3z9);
  CHECK(c3.canonical_row_count() == 1);
  Matrix three_i = scalar_mul(RElem{3}, Matrix::identity(sl3z9.ring(), 3));
  CHECK(c3.contains(sl3z9.coords_of(three_i)));
}

TEST_CASE("the diagonal Cartan subalgebra is abelian and self-normalizing") {
  for (const char* dsl : {"Z/7", "Z/9", "F_2^2"}) {
    for (std::size_t n : {2u, 3u, 4u}) {
      if (std::string(dsl) == "F_2^2" && n == 2) continue;  // covered below
      auto alg = std::make_shared<SlnAlgebra>(Ring::parse(dsl), n);
      Subalgebra h = diagonal_cartan(alg);
      CHECK(h.rank() == n - 1);
      CHECK(is_abelian(h));
      CHECK(module_equal(normalizer(h), h.coords()));
      CHECK(is_cartan_abelian(h));
    }
  }
}

TEST_CASE("in characteristic 2 the diagonal of sl_2 is central, hence not Cartan") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::field(2, 2), 2);
  Subalgebra h = diagonal_cartan(alg);
  // D = E_00 - E_11 equals the identity when -1 = 1
  CHECK(h.basis()[0] == Matrix::identity(alg->ring(), 2));
  CHECK(center(*alg).contains(alg->coords_of(h.basis()[0])));
  CHECK(is_abelian(h));
  CHECK_FALSE(is_cartan_abelian(h));
}

TEST_CASE("a non-self-normalizing abelian span is not Cartan") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::residues(7), 2);
  Matrix e(alg->ring(), 2, 2);
  e.at(0, 1) = RElem{1};
  Subalgebra h = Subalgebra::make(alg, {e});
  CHECK(is_abelian(h));
  CHECK_FALSE(is_cartan_abelian(h));  // normalizer contains the diagonal
}

TEST_CASE("root spaces of the diagonal Cartan in sl_2(F_5)") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::residues(5), 2);
  Subalgebra h = diagonal_cartan(alg);
  auto spaces = root_space_decomposition(*alg, h);
  REQUIRE(spaces.size() == 3);
  std::size_t total = 0;
  bool saw_zero = false, saw_two = false, saw_minus_two = false;
  for (const auto& rs : spaces) {
    REQUIRE(rs.root.size() == 1);
    total += rs.space.canonical_row_count();
    if (rs.root[0].code == 0) {
      saw_zero = true;
      CHECK(module_equal(rs.space, h.coords()));
    }
    if (rs.root[0].code == 2) saw_two = true;
    if (rs.root[0].code == 3) saw_minus_two = true;
  }
  CHECK(total == alg->dim());
  CHECK(saw_zero);
  CHECK(saw_two);
  CHECK(saw_minus_two);
  CHECK(is_classical_cartan(*alg, h));
}

TEST_CASE("a torus that does not split is Cartan but not classical") {
  // Over F_7 the pair a = 1, b = 2 gives a commuting self-normalizing span
  // whose cubed generators are the non-cube scalars 2 and 4.
  auto alg = std::make_shared<SlnAlgebra>(Ring::residues(7), 3);
  Matrix m1 = family_first(alg, RElem{1}, RElem{2});
  Matrix m2 = family_second(alg, RElem{1}, RElem{2});
  CHECK(commutator(m1, m2) == Matrix(alg->ring(), 3, 3));
  CHECK(mat_pow(m1, 3) ==
        scalar_mul(RElem{2}, Matrix::identity(alg->ring(), 3)));
  Subalgebra h = Subalgebra::make(alg, {m1, m2});
  CHECK(is_cartan_abelian(h));
  CHECK_FALSE(is_classical_cartan(*alg, h));

  // a = 1, b = 1 splits: both generators cube to the identity
  Subalgebra split = Subalgebra::make(
      alg, {family_first(alg, RElem{1}, RElem{1}),
            family_second(alg, RElem{1}, RElem{1})});
  CHECK(is_cartan_abelian(split));
  CHECK(is_classical_cartan(*alg, split));
}

TEST_CASE("classical test rejects non-field rings and non-abelian spans") {
  auto alg9 = std::make_shared<SlnAlgebra>(Ring::residues(9), 2);
  CHECK_THROWS_AS(is_classical_cartan(*alg9, diagonal_cartan(alg9)),
                  std::invalid_argument);

  auto alg7 = std::make_shared<SlnAlgebra>(Ring::residues(7), 2);
  std::vector<Matrix> full;
  Matrix e(alg7->ring(), 2, 2), f(alg7->ring(), 2, 2);
  e.at(0, 1) = RElem{1};
  f.at(1, 0) = RElem{1};
  Matrix d(alg7->ring(), 2, 2);
  d.at(0, 0) = RElem{1};
  d.at(1, 1) = RElem{6};
  Subalgebra whole = Subalgebra::make(alg7, {e, f, d});
  CHECK_THROWS_AS(is_classical_cartan(*alg7, whole), std::invalid_argument);
}

TEST_CASE("subalgebra construction validates closure") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::residues(7), 2);
  Matrix e(alg->ring(), 2, 2), f(alg->ring(), 2, 2);
  e.at(0, 1) = RElem{1};
  f.at(1, 0) = RElem{1};
  // [e, f] = diag(1, -1) is outside span{e, f}
  CHECK_THROWS_AS(Subalgebra::make(alg, {e, f}), std::invalid_argument);
  CHECK_NOTHROW(Subalgebra::make_unchecked(alg, {e, f}));
}

TEST_CASE("verification flags a dropped component") {
  auto dec = decomposition_of(construct_odac(Ring::residues(7), 2));
  REQUIRE(dec.components.size() == 3);
  dec.components.pop_back();
  dec.names.pop_back();
  VerificationReport rep = verify_odac(dec);
  CHECK_FALSE(rep.direct_sum_spans);
  CHECK_FALSE(rep.pass());
  REQUIRE_FALSE(rep.witnesses.empty());
  CHECK(rep.witnesses.front().find("total basis count") != std::string::npos);
  CHECK(rep.pairwise_orthogonal);
}

TEST_CASE("verification flags a duplicated component") {
  auto dec = decomposition_of(construct_odac(Ring::residues(7), 2));
  dec.components.push_back(dec.components.front());
  dec.names.push_back("H_dup");
  VerificationReport rep = verify_odac(dec);
  CHECK_FALSE(rep.pairwise_orthogonal);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("verification flags a rank-deficient basis") {
  auto dec = decomposition_of(construct_odac(Ring::residues(7), 3));
  // duplicate one basis matrix inside a component: not a free module basis
  auto basis = dec.components[1].basis();
  basis[1] = basis[0];
  dec.components[1] = Subalgebra::make_unchecked(dec.algebra, basis);
  VerificationReport rep = verify_odac(dec);
  CHECK_FALSE(rep.components_free);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("serial and parallel verification agree") {
  auto good = decomposition_of(construct_odac(Ring::residues(7), 3));
  auto bad = good;
  bad.components.pop_back();
  bad.names.pop_back();
  for (const Decomposition* d : {&good, &bad}) {
    VerificationReport rs = verify_odac(*d, {.check_classical = true, .parallel = false});
    VerificationReport rp = verify_odac(*d, {.check_classical = true, .parallel = true});
    CHECK(rs.components_free == rp.components_free);
    CHECK(rs.direct_sum_spans == rp.direct_sum_spans);
    CHECK(rs.pairwise_orthogonal == rp.pairwise_orthogonal);
    CHECK(rs.each_abelian == rp.each_abelian);
    CHECK(rs.each_self_normalizing == rp.each_self_normalizing);
    CHECK(rs.all_classical == rp.all_classical);
    CHECK(rs.witnesses == rp.witnesses);
    CHECK(rs.pass() == rp.pass());
  }
}

TEST_CASE("conjugation preserves Cartan properties and tracks the matrix") {
  auto alg = std::make_shared<SlnAlgebra>(Ring::residues(7), 2);
  Subalgebra h = diagonal_cartan(alg);
  Matrix g(alg->ring(), 2, 2);
  g.at(0, 0) = RElem{1};
  g.at(0, 1) = RElem{1};
  g.at(1, 1) = RElem{1};
  Subalgebra hg = conjugate_subalgebra(g, h);
  CHECK(is_cartan_abelian(hg));
  CHECK_FALSE(module_equal(hg.coords(), h.coords()));

  Subalgebra hid = conjugate_subalgebra(Matrix::identity(alg->ring(), 2), h);
  CHECK(module_equal(hid.coords(), h.coords()));

  Matrix sing(alg->ring(), 2, 2);
  sing.at(0, 0) = RElem{1};
  CHECK_THROWS_AS(conjugate_subalgebra(sing, h), std::invalid_argument);
}
