#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cartan/matrix.hpp"
#include "cartan/ring.hpp"
#include "cartan/sln.hpp"

namespace cartan {

/// The two p x p generator matrices behind every monomial family: a clock
/// matrix diag(1, u, ..., u^{p-1}) and the cyclic shift e_j -> e_{j+1}.
struct CyclicGenerators {
  Matrix clock;
  Matrix shift;
  std::uint64_t p = 0;
  RElem root;  // u, of multiplicative order exactly p with u - 1 a unit
};

// Validates u^p = 1, u != 1, u - 1 a unit; p must be prime.
CyclicGenerators build_generators(const RingPtr& ring, std::uint64_t p, RElem u);

// clock^a shift^b; exponents are taken mod p.
Matrix weyl_monomial(const CyclicGenerators& gens, std::uint64_t a, std::uint64_t b);

// Decomposition of sl_p into p+1 abelian Cartan components: H_inf spanned by
// the shift powers, then H_k spanned by {clock^a shift^{ka}}.
Decomposition construct_prime(const RingPtr& ring, std::uint64_t p, RElem u);

/// Exponent bookkeeping for prime powers: monomials are indexed by the plane
/// W = F^2 with F = GF(p^m), coordinates split through a power basis for the
/// clock exponents and its trace-dual for the shift exponents.
struct SymplecticSpace {
  RingPtr field;  // GF(p^m) with the default modulus
  std::uint64_t p = 0;
  unsigned m = 0;
  std::vector<RElem> alpha;  // 1, t, ..., t^{m-1}
  std::vector<RElem> beta;   // trace-dual of alpha
};

SymplecticSpace symplectic_basis(std::uint64_t p, unsigned m);

struct SymplecticVector {
  RElem first, second;  // (x, y) with x, y in F
};

struct ExponentCoords {
  std::vector<std::uint64_t> a;  // clock exponents: coefficients of x
  std::vector<std::uint64_t> b;  // shift exponents: Tr(t^{i-1} y)
};

ExponentCoords exponent_coords(const SymplecticSpace& s, const SymplecticVector& w);

// B(w, w') = sum_i a'_i b_i mod p, so J_w J_{w'} = u^{-B(w,w')} J_{w+w'}.
std::uint64_t commutation_exponent(const SymplecticSpace& s,
                                   const SymplecticVector& w,
                                   const SymplecticVector& w_prime);

// <w, w'> = Tr(x y') - Tr(x' y) mod p; zero exactly when J_w and J_{w'} commute.
std::uint64_t symplectic_pairing(const SymplecticSpace& s,
                                 const SymplecticVector& w,
                                 const SymplecticVector& w_prime);

// Kronecker product of the factor monomials for w.
Matrix monomial(const CyclicGenerators& gens, const SymplecticSpace& s,
                const SymplecticVector& w);

// Decomposition of sl_{p^m} into p^m + 1 components of rank p^m - 1:
// H_inf from {(0, lambda)}, then H_alpha from {(lambda, alpha*lambda)}.
Decomposition construct_prime_power(const RingPtr& ring, std::uint64_t p,
                                    unsigned m, RElem u);

/// Why no decomposition is returned: either none can exist at all over this
/// ring, or this tool has no construction for the given shape.
struct Obstruction {
  enum class Kind { no_odac, no_construction };
  Kind kind = Kind::no_construction;
  std::string reason;
  std::optional<Matrix> central_witness;
};

// Dispatch: nonzero center -> no_odac; n not a prime power or some local
// factor without a usable root -> no_construction; otherwise build.
std::variant<Decomposition, Obstruction> construct_odac(const RingPtr& ring,
                                                        std::size_t n);

// Circulant X with entries u^{k(k+1)/2} along the wrapped diagonals. It
// commutes with the shift and conjugation by it rotates the finite slopes
// cyclically; odd p only.
Matrix shift_conjugator(const CyclicGenerators& gens);

}  // namespace cartan
