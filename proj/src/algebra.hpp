#ifndef IMCA_ALGEBRA_HPP
#define IMCA_ALGEBRA_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace imca {

// An implicative algebra candidate before the laws have been checked.
// imp is row-major: imp[a*n + b] = a -> b.
struct AlgebraCandidate {
  std::string name;
  Lattice lattice;
  std::vector<Elem> imp;
  std::vector<uint8_t> in_sigma;
};

// Closed-form combinator meets required of every separator. S is a meet
// over all three of a, b and c; validate_algebra records that reading in
// its notes.
Elem combinator_k(const Lattice& lat, std::span<const Elem> imp);
Elem combinator_s(const Lattice& lat, std::span<const Elem> imp);

// Checks implication variance, distribution of -> over meets on the right,
// and that the separator is upward closed, modus-ponens closed and contains
// K and S. Subset distribution is swept exhaustively for |A| <= subset_bound
// and via the binary/empty decomposition otherwise.
ValidationReport validate_algebra(const AlgebraCandidate& cand, uint32_t subset_bound = 12);

// Residuation-derived implication for a complete Heyting algebra.
struct HeytingResult {
  bool ok = false;
  std::vector<Elem> imp;  // valid when ok
  Violation witness;      // set when !ok
};
HeytingResult heyting_implication(const Lattice& lat);

// Powerset construction over a total magma: A => B = { r | r*a in B for all
// a in A }, separator = nonempty subsets. The result is returned unvalidated
// since finite magmas rarely yield combinatory algebras; run
// validate_algebra to decide admissibility. op is row-major over carrier
// indices.
AlgebraCandidate powerset_of_magma(const std::vector<std::string>& carrier,
                                   const std::vector<uint32_t>& op, std::string name);

// A validated implicative algebra. Logically immutable; the application and
// connective tables are idempotent caches (concurrent duplicate fills
// produce identical entries).
class Algebra {
public:
  // Throws Error{Validation} when validate_algebra rejects the candidate.
  static std::shared_ptr<const Algebra> from_candidate(AlgebraCandidate cand);

  const Lattice& lattice() const { return lat_; }
  const std::string& name() const { return name_; }
  uint32_t size() const { return lat_.size(); }

  Elem top() const { return lat_.top(); }
  Elem bottom() const { return lat_.bottom(); }
  bool leq(Elem a, Elem b) const { return lat_.leq(a, b); }

  Elem imp(Elem a, Elem b) const { return imp_[static_cast<size_t>(a) * lat_.size() + b]; }

  // a.b = meet{ x | a <= b -> x }
  Elem apply(Elem a, Elem b) const;
  // a x b = meet_x((a -> (b -> x)) -> x)
  Elem conj(Elem a, Elem b) const;
  // a + b = meet_x((a -> x) -> ((b -> x) -> x))
  Elem disj(Elem a, Elem b) const;

  bool in_sigma(Elem a) const { return sigma_[a] != 0; }
  const std::vector<Elem>& sigma_list() const { return sigma_list_; }

  Elem k_elem() const { return k_; }
  Elem s_elem() const { return s_; }
  // Report-only flag: whether the Peirce-law meet lands in the separator.
  bool classical() const { return classical_; }

  const std::string& label(Elem a) const { return lat_.label(a); }
  Elem find(std::string_view label) const { return lat_.find(label); }

private:
  Algebra() = default;

  std::string name_;
  Lattice lat_;
  std::vector<Elem> imp_;
  std::vector<uint8_t> sigma_;
  std::vector<Elem> sigma_list_;
  Elem k_ = 0, s_ = 0;
  bool classical_ = false;
  mutable std::vector<Elem> app_;
  mutable std::vector<Elem> conj_;
  mutable std::vector<Elem> disj_;
};

// universal quantification over an indexed family: its meet
Elem uforall(const Algebra& alg, std::span<const Elem> family);
// existential quantification: meet_x((meet_i(a_i -> x)) -> x)
Elem uexists(const Algebra& alg, std::span<const Elem> family);

} // namespace imca

#endif
