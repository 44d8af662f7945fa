#ifndef IMCA_ALGEBRA_IO_HPP
#define IMCA_ALGEBRA_IO_HPP

#include <memory>
#include <string>
#include <string_view>

#include "algebra.hpp"

namespace imca {

// Definition file schema (JSON):
//   {
//     "name": "B2",
//     "elements": ["0", "1"],
//     "order": [["0","1"]] | "chain" | "powerset:2",
//     "implication": [[row for a=0], ...] | "heyting",
//     "separator": ["1"] | "top" | "all"
//   }
// Order pairs are closed reflexively and transitively before validation.
// Explicit implication tables are row-major label matrices: imp[a][b] = a->b.

// Malformed input (bad JSON, unknown labels, shape errors) throws
// Error{Parse}; law failures land in the reports, with a null algebra.
struct LoadResult {
  std::shared_ptr<const Algebra> algebra;
  ValidationReport lattice_report;
  ValidationReport algebra_report;
  bool ok() const { return algebra != nullptr; }
};
LoadResult load_algebra_checked(std::string_view json_text);

// Throws Error{Validation} when either report fails.
std::shared_ptr<const Algebra> load_algebra(std::string_view json_text);
std::shared_ptr<const Algebra> load_algebra_file(const std::string& path);

// Canonical serialization; load_algebra(save_algebra(a)) reproduces the
// fingerprint.
std::string save_algebra(const Algebra& alg);

// Content hash over carrier labels, order, implication and separator (the
// name is metadata and excluded). 16 hex digits.
std::string fingerprint(const Algebra& alg);

} // namespace imca

#endif
