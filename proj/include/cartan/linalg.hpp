#pragma once

#include <cstddef>
#include <vector>

#include "cartan/matrix.hpp"
#include "cartan/ring.hpp"

namespace cartan {

using Vec = std::vector<RElem>;

/// A submodule of R^ambient in a unique canonical form, so two submodules are
/// equal as sets exactly when their canonical rows match. Over residue rings
/// the form is the Howell normal form (membership by successive pivot
/// division stays valid even with zero divisors); over fields it is the
/// reduced row echelon form. Product rings are handled one factor at a time.
class Submodule {
 public:
  const RingPtr& ring() const { return ring_; }
  std::size_t ambient() const { return ambient_; }

  bool contains(const Vec& v) const;
  // Canonical generating rows in the ambient ring, grouped factor by factor.
  std::vector<Vec> canonical() const;
  std::size_t canonical_row_count() const;
  bool is_zero() const;

  friend bool module_equal(const Submodule& a, const Submodule& b);
  friend Submodule canonical_span(const RingPtr& ring, std::size_t ambient,
                                  const std::vector<Vec>& gens);
  friend Submodule solve_kernel(const Matrix& m);

 private:
  friend class Subalgebra;

  struct Leaf {
    RingPtr ring;                      // residue or field factor
    std::vector<RingPtr> chain;        // enclosing product rings, outermost first
    std::vector<std::size_t> path;     // factor indices along the chain
    std::vector<Vec> rows;             // canonical rows over the factor
    std::vector<std::size_t> piv;      // pivot column of each row
  };

  Submodule() = default;

  RingPtr ring_;
  std::size_t ambient_ = 0;
  std::vector<Leaf> leaves_;
};

// Canonical form of the span of `gens` inside R^ambient.
Submodule canonical_span(const RingPtr& ring, std::size_t ambient,
                         const std::vector<Vec>& gens);

// Canonical form of {x : m x = 0} inside R^cols.
Submodule solve_kernel(const Matrix& m);

bool module_equal(const Submodule& a, const Submodule& b);

}  // namespace cartan
