#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cartan::search {

enum class ExecMode { serial, parallel };

/// Thrown when a sweep's pinned step estimate exceeds the caller's budget or
/// a built-in parameter ceiling. Callers map this to a distinct exit code.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  ExecMode mode = ExecMode::parallel;
  // When set, a sweep refuses to start if its closed-form step estimate is
  // larger than budget_ms * kStepsPerMs. No wall clocks are consulted, so
  // the decision is reproducible.
  std::optional<std::uint64_t> budget_ms;
};

inline constexpr std::uint64_t kStepsPerMs = 20000;

struct PairCode {
  std::uint64_t a = 0, b = 0;  // field element codes
  friend bool operator==(PairCode, PairCode) = default;
  friend auto operator<=>(PairCode, PairCode) = default;
};

/// Three parameter pairs whose two-dimensional spans, together with the
/// diagonal component, tile sl_3 into four mutually orthogonal pieces.
struct Sl3Triangle {
  std::array<PairCode, 3> members;  // lexicographically sorted
  friend bool operator==(const Sl3Triangle&, const Sl3Triangle&) = default;
};

struct Sl3SearchResult {
  std::uint64_t q = 0;
  bool exists = false;            // at least one triangle certified in full
  std::uint64_t cliques_found = 0;  // triangles in the orthogonality graph
  bool all_certified = false;     // every clique certified, none dropped
  std::vector<Sl3Triangle> witnesses;  // only the certified cliques
  std::uint64_t elapsed_ms = 0;
};

// Sweeps all two-parameter subalgebra pairs of sl_3(F_q) for mutual Killing
// orthogonality, extracts the triangles of the orthogonality graph, and
// certifies each one as a genuine four-component decomposition whose pieces
// all pass the classical Cartan test. Cliques whose tori are not split over
// F_q verify as decompositions but are excluded from the witness list.
// Valid q: prime powers coprime to 6, q <= 49.
Sl3SearchResult classical_odac_search_sl3(std::uint64_t q,
                                          const SearchOptions& opts = {});

struct RemarkResult {
  std::uint64_t q = 0;
  bool no_orthogonal_pair = false;
  std::uint64_t pairs_checked = 0;
  std::uint64_t elapsed_ms = 0;
};

// Confirms that for this q the orthogonality graph has no edge at all.
// Same q domain as the sl_3 search.
RemarkResult verify_remark_no_pair(std::uint64_t q, const SearchOptions& opts = {});

struct OracleResult {
  std::uint64_t q = 0;
  std::uint64_t instances_checked = 0;  // (A, B) pairs actually tested
  std::uint64_t counterexamples = 0;
  std::uint64_t elapsed_ms = 0;
};

// Exhaustive check: whenever the lower-triangular-patterned A (one entry
// product vanishing) commutes with a zero-diagonal B not proportional to it,
// the Killing Gram of {A, B} is degenerate. Valid q: prime powers coprime
// to 6, q <= 9.
OracleResult killing_degeneracy_oracle(std::uint64_t q, const SearchOptions& opts = {});

struct CensusResult {
  std::uint64_t q = 0;
  bool ok = false;
  std::uint64_t subspaces = 0;         // 2-dim subspaces enumerated
  std::uint64_t survivors = 0;         // passed all filters
  std::uint64_t lemma_span_count = 0;  // distinct two-parameter spans
  std::uint64_t mismatches = 0;        // survivors matching no such span
  std::uint64_t elapsed_ms = 0;
};

// Enumerates every 2-dimensional subspace of the zero-diagonal part of
// sl_3(F_q) and filters for abelian, diagonal-orthogonal, nondegenerate
// candidates; each survivor must be one of the two-parameter spans.
// Pinned to q = 5 (508431 subspaces).
CensusResult pair_shape_census(std::uint64_t q, const SearchOptions& opts = {});

struct Sl2Row {
  std::uint64_t a = 0;        // nonzero field code
  std::uint64_t partner = 0;  // unique b with K(M_a, M_b) = 0
  bool is_square = false;
  std::optional<std::uint64_t> sqrt;  // smallest root when is_square
};

struct Sl2Analysis {
  std::uint64_t q = 0;
  std::vector<Sl2Row> rows;  // indexed by a = 1 .. q-1
  std::uint64_t elapsed_ms = 0;
};

// For M_a = [[0,1],[a,0]] in sl_2(F_q): the unique orthogonal partner of
// each a, plus the square/conjugacy data. Valid q: odd prime powers, q <= 97.
Sl2Analysis sl2_orthogonality_analysis(std::uint64_t q, const SearchOptions& opts = {});

}  // namespace cartan::search
