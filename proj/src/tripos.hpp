#ifndef IMCA_TRIPOS_HPP
#define IMCA_TRIPOS_HPP

#include <cstdint>
#include <vector>

#include "algebra.hpp"

namespace imca {

// A-valued predicate over the finite index set {0, ..., index_size-1}.
struct Pred {
  uint32_t index_size = 0;
  std::vector<Elem> values;
};

// Total function between finite index sets.
struct FinFn {
  uint32_t source = 0;
  uint32_t target = 0;
  std::vector<uint32_t> map;
};

// phi |-_Sigma[I] psi iff meet_i(phi(i) -> psi(i)) lands in the separator.
bool entails(const Algebra& alg, const Pred& phi, const Pred& psi);
Elem entail_meet(const Algebra& alg, const Pred& phi, const Pred& psi);

Pred pred_imp(const Algebra& alg, const Pred& phi, const Pred& psi);
Pred pred_conj(const Algebra& alg, const Pred& phi, const Pred& psi);
Pred pred_disj(const Algebra& alg, const Pred& phi, const Pred& psi);
Elem pred_forall(const Algebra& alg, const Pred& phi);
Elem pred_exists(const Algebra& alg, const Pred& phi);

Pred reindex(const FinFn& f, const Pred& psi);

// Left/right adjoints to reindexing: fiberwise vector-exists/forall.
Pred exists_along(const Algebra& alg, const FinFn& f, const Pred& phi);
Pred forall_along(const Algebra& alg, const FinFn& f, const Pred& phi);

// The identity predicate over the carrier.
Pred generic_predicate(const Algebra& alg);

// Builds the canonical pullback of the cospan f: I -> K <- J :g and checks
// both Beck-Chevalley squares (exists and forall) for phi over I, with
// mutual entailment as the comparison.
bool beck_chevalley(const Algebra& alg, const FinFn& f, const FinFn& g, const Pred& phi);

} // namespace imca

#endif
