#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"
#include "cartan/ring.hpp"

namespace cartan {

/// Traceless n x n matrices over a ring, with the fixed coordinate basis
/// E_ij (i != j, row-major) followed by D_k = E_kk - E_{k+1,k+1}.
class SlnAlgebra {
 public:
  SlnAlgebra(RingPtr ring, std::size_t n);

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& basis() const { return basis_; }

  std::size_t off_diag_index(std::size_t i, std::size_t j) const;

  // Coordinates in the fixed basis; throws when the matrix has nonzero trace.
  Vec coords_of(const Matrix& a) const;
  Matrix matrix_of(const Vec& coords) const;
  // dim x dim matrix of x -> [a, x] in coordinates.
  Matrix ad_matrix(const Matrix& a) const;

 private:
  RingPtr ring_;
  std::size_t n_ = 0, dim_ = 0;
  std::vector<Matrix> basis_;
};

using SlnPtr = std::shared_ptr<const SlnAlgebra>;

/// A sub-Lie-algebra given by a finite matrix basis, with its coordinate span
/// kept in canonical form.
class Subalgebra {
 public:
  // Verifies every bracket of basis elements stays inside the span.
  static Subalgebra make(SlnPtr alg, std::vector<Matrix> basis);
  // Only verifies shape and tracelessness; brackets are taken on faith.
  // Downstream checks still catch a non-closed basis (a set of pairwise
  // commuting matrices is automatically closed).
  static Subalgebra make_unchecked(SlnPtr alg, std::vector<Matrix> basis);

  const SlnPtr& algebra() const { return alg_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  const Submodule& coords() const { return coords_; }
  std::size_t rank() const { return basis_.size(); }

 private:
  Subalgebra() = default;
  SlnPtr alg_;
  std::vector<Matrix> basis_;
  Submodule coords_;
};

bool is_abelian(const Subalgebra& h);

// Coordinates of {x : [b, x] = 0 for every basis element b}.
Submodule center(const SlnAlgebra& alg);

// Coordinates of {x : [x, h] lies in span(h) for every h in the basis}.
Submodule normalizer(const Subalgebra& h);

// Abelian and self-normalizing.
bool is_cartan_abelian(const Subalgebra& h);

// Killing form on sl_n: K(a, b) = Tr(ad_a ad_b) = 2n Tr(ab) for traceless
// arguments. The first is the defining version, the second the fast one.
RElem killing_ad_form(const SlnAlgebra& alg, const Matrix& a, const Matrix& b);
RElem killing_trace_form(const SlnAlgebra& alg, const Matrix& a, const Matrix& b);

Matrix killing_gram(const Subalgebra& h);
bool is_nondegenerate(const Matrix& gram);

struct RootSpace {
  Vec root;         // one value per basis element of h
  Submodule space;  // coordinates of the joint eigenspace
};

// All joint eigenspace decompositions of ad(h_i); field coefficients only.
std::vector<RootSpace> root_space_decomposition(const SlnAlgebra& alg,
                                                const Subalgebra& h);

// Field-only test that h behaves like a classical Cartan subalgebra:
//  (a) the root spaces fill all of sl_n,
//  (b) every nonzero root pairs with its negative through a rank-1 bracket,
//  (c) no root string wraps all the way around the characteristic.
bool is_classical_cartan(const SlnAlgebra& alg, const Subalgebra& h);

// Basis map h -> g^{-1} h g; throws when g is not invertible.
Subalgebra conjugate_subalgebra(const Matrix& g, const Subalgebra& h);

Subalgebra diagonal_cartan(const SlnPtr& alg);

/// How a decomposition was produced; carried into reports and files.
struct Provenance {
  std::uint64_t p = 0;
  unsigned m = 0;
  std::optional<RElem> root;          // scalar of multiplicative order p
  std::vector<RElem> symplectic_alpha;  // coordinate basis, degree >= 2 only
  std::vector<RElem> symplectic_beta;   // trace-dual basis
  RingPtr coeff_field;                  // field the symplectic data lives in
  std::string note;
};

/// A claimed orthogonal decomposition of sl_n into abelian Cartan pieces.
struct Decomposition {
  SlnPtr algebra;
  std::vector<std::string> names;
  std::vector<Subalgebra> components;
  Provenance provenance;
};

struct VerifyOptions {
  bool check_classical = false;
  bool parallel = true;
};

struct VerificationReport {
  bool components_free = false;
  bool direct_sum_spans = false;
  bool pairwise_orthogonal = false;
  bool each_abelian = false;
  bool each_self_normalizing = false;
  std::optional<bool> all_classical;
  std::vector<std::string> witnesses;

  bool pass() const {
    return components_free && direct_sum_spans && pairwise_orthogonal &&
           each_abelian && each_self_normalizing &&
           (!all_classical.has_value() || *all_classical);
  }
};

VerificationReport verify_odac(const Decomposition& dec,
                               const VerifyOptions& opts = {});

}  // namespace cartan
