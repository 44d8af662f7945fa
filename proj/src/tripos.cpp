#include "tripos.hpp"

#include "error.hpp"

namespace imca {

namespace {

void require_same_index(const Pred& a, const Pred& b) {
  if (a.index_size != b.index_size)
    fail(ErrKind::InvalidArgument, "predicates live over different index sets");
}

void require_total(const Pred& p) {
  if (p.values.size() != p.index_size)
    fail(ErrKind::InvalidArgument, "predicate is not total on its index set");
}

} // namespace

Elem entail_meet(const Algebra& alg, const Pred& phi, const Pred& psi) {
  require_same_index(phi, psi);
  require_total(phi);
  require_total(psi);
  const Lattice& lat = alg.lattice();
  Elem acc = lat.top();
  for (uint32_t i = 0; i < phi.index_size; ++i)
    acc = lat.meet2(acc, alg.imp(phi.values[i], psi.values[i]));
  return acc;
}

bool entails(const Algebra& alg, const Pred& phi, const Pred& psi) {
  return alg.in_sigma(entail_meet(alg, phi, psi));
}

Pred pred_imp(const Algebra& alg, const Pred& phi, const Pred& psi) {
  require_same_index(phi, psi);
  Pred out{phi.index_size, {}};
  out.values.reserve(phi.index_size);
  for (uint32_t i = 0; i < phi.index_size; ++i)
    out.values.push_back(alg.imp(phi.values[i], psi.values[i]));
  return out;
}

Pred pred_conj(const Algebra& alg, const Pred& phi, const Pred& psi) {
  require_same_index(phi, psi);
  Pred out{phi.index_size, {}};
  out.values.reserve(phi.index_size);
  for (uint32_t i = 0; i < phi.index_size; ++i)
    out.values.push_back(alg.conj(phi.values[i], psi.values[i]));
  return out;
}

Pred pred_disj(const Algebra& alg, const Pred& phi, const Pred& psi) {
  require_same_index(phi, psi);
  Pred out{phi.index_size, {}};
  out.values.reserve(phi.index_size);
  for (uint32_t i = 0; i < phi.index_size; ++i)
    out.values.push_back(alg.disj(phi.values[i], psi.values[i]));
  return out;
}

Elem pred_forall(const Algebra& alg, const Pred& phi) {
  require_total(phi);
  return uforall(alg, phi.values);
}

Elem pred_exists(const Algebra& alg, const Pred& phi) {
  require_total(phi);
  return uexists(alg, phi.values);
}

Pred reindex(const FinFn& f, const Pred& psi) {
  if (psi.index_size != f.target)
    fail(ErrKind::InvalidArgument, "reindex: predicate does not live over the function's target");
  Pred out{f.source, {}};
  out.values.reserve(f.source);
  for (uint32_t i = 0; i < f.source; ++i) out.values.push_back(psi.values[f.map[i]]);
  return out;
}

namespace {

template <typename Fiberwise>
Pred along(const FinFn& f, const Pred& phi, Fiberwise&& fiberwise) {
  if (phi.index_size != f.source)
    fail(ErrKind::InvalidArgument, "quantification along: predicate does not live over the source");
  Pred out{f.target, {}};
  out.values.reserve(f.target);
  std::vector<Elem> fiber;
  for (uint32_t j = 0; j < f.target; ++j) {
    fiber.clear();
    for (uint32_t i = 0; i < f.source; ++i)
      if (f.map[i] == j) fiber.push_back(phi.values[i]);
    out.values.push_back(fiberwise(fiber));
  }
  return out;
}

} // namespace

Pred exists_along(const Algebra& alg, const FinFn& f, const Pred& phi) {
  return along(f, phi, [&](const std::vector<Elem>& fiber) { return uexists(alg, fiber); });
}

Pred forall_along(const Algebra& alg, const FinFn& f, const Pred& phi) {
  return along(f, phi, [&](const std::vector<Elem>& fiber) { return uforall(alg, fiber); });
}

Pred generic_predicate(const Algebra& alg) {
  Pred out{alg.size(), {}};
  out.values.reserve(alg.size());
  for (Elem a = 0; a < alg.size(); ++a) out.values.push_back(a);
  return out;
}

bool beck_chevalley(const Algebra& alg, const FinFn& f, const FinFn& g, const Pred& phi) {
  if (f.target != g.target)
    fail(ErrKind::InvalidArgument, "beck-chevalley: cospan legs disagree on the target");
  if (phi.index_size != f.source)
    fail(ErrKind::InvalidArgument, "beck-chevalley: predicate must live over the first leg's source");

  // canonical pullback P = {(i,j) | f(i) = g(j)}
  FinFn p1{0, f.source, {}}, p2{0, g.source, {}};
  for (uint32_t i = 0; i < f.source; ++i)
    for (uint32_t j = 0; j < g.source; ++j)
      if (f.map[i] == g.map[j]) {
        p1.map.push_back(i);
        p2.map.push_back(j);
      }
  p1.source = p2.source = static_cast<uint32_t>(p1.map.size());

  Pred via_base_e = reindex(g, exists_along(alg, f, phi));
  Pred via_pullback_e = exists_along(alg, p2, reindex(p1, phi));
  if (!entails(alg, via_base_e, via_pullback_e)) return false;
  if (!entails(alg, via_pullback_e, via_base_e)) return false;

  Pred via_base_a = reindex(g, forall_along(alg, f, phi));
  Pred via_pullback_a = forall_along(alg, p2, reindex(p1, phi));
  if (!entails(alg, via_base_a, via_pullback_a)) return false;
  if (!entails(alg, via_pullback_a, via_base_a)) return false;
  return true;
}

} // namespace imca
