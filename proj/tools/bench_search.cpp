#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>

#include "cartan/search.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Times each sweep in serial and parallel mode and reports the speedup.
// The parallel kernels must return bit-identical results, which every run
// double-checks here before printing.

namespace {

using namespace cartan::search;

SearchOptions mode_opts(ExecMode m) {
  SearchOptions o;
  o.mode = m;
  return o;
}

void report(const std::string& name, std::uint64_t serial_ms,
            std::uint64_t parallel_ms, bool identical) {
  double speedup =
      parallel_ms == 0 ? 0.0 : static_cast<double>(serial_ms) / parallel_ms;
  std::cout << std::left << std::setw(28) << name << std::right << std::setw(8)
            << serial_ms << " ms" << std::setw(8) << parallel_ms << " ms"
            << std::setw(8) << std::fixed << std::setprecision(2) << speedup
            << "x  " << (identical ? "results identical" : "RESULTS DIFFER")
            << "\n";
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP)\n";
#endif
  std::cout << std::left << std::setw(28) << "sweep" << std::right << std::setw(11)
            << "serial" << std::setw(11) << "parallel" << std::setw(9) << "speedup"
            << "\n";

  {
    auto s = classical_odac_search_sl3(25, mode_opts(ExecMode::serial));
    auto p = classical_odac_search_sl3(25, mode_opts(ExecMode::parallel));
    report("search-sl3 q=25", s.elapsed_ms, p.elapsed_ms,
           s.witnesses == p.witnesses && s.cliques_found == p.cliques_found);
  }
  {
    auto s = verify_remark_no_pair(29, mode_opts(ExecMode::serial));
    auto p = verify_remark_no_pair(29, mode_opts(ExecMode::parallel));
    report("remark-check q=29", s.elapsed_ms, p.elapsed_ms,
           s.no_orthogonal_pair == p.no_orthogonal_pair &&
               s.pairs_checked == p.pairs_checked);
  }
  {
    auto s = killing_degeneracy_oracle(7, mode_opts(ExecMode::serial));
    auto p = killing_degeneracy_oracle(7, mode_opts(ExecMode::parallel));
    report("oracle-lemma q=7", s.elapsed_ms, p.elapsed_ms,
           s.instances_checked == p.instances_checked &&
               s.counterexamples == p.counterexamples);
  }
  {
    auto s = pair_shape_census(5, mode_opts(ExecMode::serial));
    auto p = pair_shape_census(5, mode_opts(ExecMode::parallel));
    report("shape census q=5", s.elapsed_ms, p.elapsed_ms,
           s.ok == p.ok && s.survivors == p.survivors &&
               s.subspaces == p.subspaces);
  }
  return 0;
}
