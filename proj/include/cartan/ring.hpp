#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cartan {

/// One element of a finite commutative ring, stored as its canonical code.
/// Codes enumerate the ring: residues for Z/n, base-p digit packings of the
/// coefficient list for extension fields, mixed-radix packings for products.
/// The interpretation of a code is owned by the Ring that produced it.
struct RElem {
  std::uint64_t code = 0;
  friend constexpr bool operator==(RElem, RElem) = default;
  friend constexpr auto operator<=>(RElem, RElem) = default;
};

enum class RingKind { residue, field, product };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// A finite commutative ring with identity: Z/n, GF(p^m) with an explicit
/// monic irreducible modulus, or a flat direct product of the former two.
/// Immutable after construction; safe to share across threads.
class Ring {
 public:
  static RingPtr residues(std::uint64_t n);
  static RingPtr field(std::uint64_t p, unsigned degree);
  // modulus_poly: coefficients low-to-high including the leading 1,
  // length degree+1. Must be monic and irreducible over GF(p).
  static RingPtr field(std::uint64_t p, unsigned degree,
                       const std::vector<std::uint64_t>& modulus_poly);
  static RingPtr product(std::vector<RingPtr> factors);

  // Text form: "Z/<n>", "F_<q>", "F_<p>^<m>[poly=c0,c1,...,1]",
  // factors joined by " x ".
  static RingPtr parse(std::string_view text);
  std::string dsl() const;

  RingKind kind() const { return kind_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t characteristic() const { return char_; }
  bool is_field() const;
  bool is_local() const;
  bool same_as(const Ring& other) const;

  RElem zero() const { return {0}; }
  RElem one() const { return one_; }
  RElem from_int(std::int64_t k) const;

  RElem add(RElem a, RElem b) const;
  RElem sub(RElem a, RElem b) const;
  RElem neg(RElem a) const;
  RElem mul(RElem a, RElem b) const;
  RElem pow(RElem a, std::uint64_t e) const;
  bool is_unit(RElem a) const;
  std::optional<RElem> inverse(RElem a) const;

  // Canonical text for one element: residue, "[c0,c1,...]", or "(a, b, ...)".
  std::string elem_str(RElem a) const;

  // residue rings
  std::uint64_t modulus() const;

  // fields
  std::uint64_t field_char() const;
  unsigned field_degree() const;
  // Non-leading modulus coefficients c0..c_{m-1}, low-to-high (x^m implied).
  const std::vector<std::uint64_t>& field_modulus() const;
  std::vector<std::uint64_t> field_coeffs(RElem a) const;
  RElem field_from_coeffs(std::span<const std::uint64_t> coeffs) const;
  RElem field_generator() const;  // class of x; requires degree >= 2

  // products
  const std::vector<RingPtr>& factors() const;
  RElem component(RElem a, std::size_t i) const;
  RElem from_components(std::span<const RElem> parts) const;
  RElem embed_component(std::size_t i, RElem v) const;

 private:
  Ring() = default;

  RingKind kind_ = RingKind::residue;
  std::uint64_t size_ = 0;
  std::uint64_t char_ = 0;
  RElem one_{1};

  std::uint64_t n_ = 0;       // residue modulus
  bool n_prime_ = false;

  std::uint64_t p_ = 0;       // field characteristic
  unsigned m_ = 0;            // extension degree
  std::vector<std::uint64_t> poly_;  // c0..c_{m-1}

  std::vector<RingPtr> factors_;
  std::vector<std::uint64_t> strides_;  // mixed-radix strides, factor 0 most significant
};

/// One local piece of the CRT decomposition: Z/p^k or GF(p^m), together with
/// its residue characteristic and the order of the residue field's unit group.
struct LocalFactor {
  RingPtr ring;
  std::uint64_t prime = 0;
  std::uint64_t residue_unit_order = 0;
};

// Splits a ring into local factors: Z/n by its prime-power divisors in
// ascending prime order, a field as itself, a product by concatenation.
std::vector<LocalFactor> crt_decompose(const RingPtr& ring);

// Smallest u per local factor with u^p = 1, u != 1 and u - 1 a unit,
// CRT-assembled back into the given ring; nullopt when some factor has none.
// Existence per local factor is decided by p | residue_unit_order first.
std::optional<RElem> find_primitive_root(const RingPtr& ring, std::uint64_t p);

// Sum of the p-power Frobenius orbit of x; lands in the prime subfield.
RElem field_trace(const Ring& fld, RElem x);

// Basis dual to `basis` under the trace pairing, via the inverse Gram matrix.
// Throws when `basis` is not a basis over the prime field.
std::vector<RElem> trace_dual_basis(const Ring& fld, std::span<const RElem> basis);

// Integer helpers (trial-division scale, exact).
bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

}  // namespace cartan
