#ifndef IMCA_TRIPOS_SUITE_HPP
#define IMCA_TRIPOS_SUITE_HPP

#include <string>
#include <vector>

#include "tripos.hpp"

namespace imca {

// Law suite for the indexed preorder: entailment preorder laws, adjunctions,
// Heyting prealgebra laws, the generic predicate and Beck-Chevalley squares.
// Predicates are enumerated exhaustively when |A|^size_bound is small and
// sampled with the given seed otherwise.
struct TriposSuiteResult {
  struct Entry {
    std::string law;
    uint64_t cases = 0;
    uint64_t failures = 0;
    std::string first_failure;
  };
  std::vector<Entry> entries;
  bool exhaustive = false;
  bool ok() const {
    for (const auto& e : entries)
      if (e.failures) return false;
    return true;
  }
};

TriposSuiteResult run_tripos_suite(const Algebra& alg, uint32_t size_bound, uint64_t seed,
                                   uint32_t samples);

} // namespace imca

#endif
