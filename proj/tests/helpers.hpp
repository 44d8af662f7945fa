#ifndef IMCA_TEST_HELPERS_HPP
#define IMCA_TEST_HELPERS_HPP

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "algebra_io.hpp"
#include "encode.hpp"
#include "izf.hpp"
#include "rng.hpp"
#include "universe.hpp"

namespace imca::test {

inline std::string data_path(const char* name) {
  return std::string(IMCA_DATA_DIR) + "/" + name;
}

inline std::shared_ptr<const Algebra> shipped(const char* file) {
  return load_algebra_file(data_path(file));
}

inline std::shared_ptr<AlgebraSession> shipped_session(const char* file) {
  return std::make_shared<AlgebraSession>(shipped(file));
}

inline const std::vector<const char*>& shipped_files() {
  static std::vector<const char*> files = {
      "b2.json", "b2_all.json", "c3.json", "c3_sigma_half.json",
      "m2.json", "p1_magma.json",
      // non-Heyting instances found by exhaustive search over small carriers
      "c3_skew.json", "d4_skew.json"};
  return files;
}

// ---------------------------------------------------------------- oracles

// glb by definition: scan all lower bounds, pick the greatest.
inline Elem oracle_glb(const Lattice& lat, const std::vector<Elem>& subset) {
  std::vector<Elem> lower;
  for (Elem x = 0; x < lat.size(); ++x) {
    bool lb = true;
    for (Elem s : subset)
      if (!lat.leq(x, s)) lb = false;
    if (lb) lower.push_back(x);
  }
  for (Elem m : lower) {
    bool greatest = true;
    for (Elem x : lower)
      if (!lat.leq(x, m)) greatest = false;
    if (greatest) return m;
  }
  return kNoElem;
}

inline Elem oracle_lub(const Lattice& lat, const std::vector<Elem>& subset) {
  std::vector<Elem> upper;
  for (Elem x = 0; x < lat.size(); ++x) {
    bool ub = true;
    for (Elem s : subset)
      if (!lat.leq(s, x)) ub = false;
    if (ub) upper.push_back(x);
  }
  for (Elem m : upper) {
    bool least = true;
    for (Elem x : upper)
      if (!lat.leq(m, x)) least = false;
    if (least) return m;
  }
  return kNoElem;
}

// application by its defining meet, independent of the memoized path
inline Elem oracle_apply(const Algebra& alg, Elem a, Elem b) {
  std::vector<Elem> sat;
  for (Elem x = 0; x < alg.size(); ++x)
    if (alg.leq(a, alg.imp(b, x))) sat.push_back(x);
  return oracle_glb(alg.lattice(), sat);
}

// ------------------------------------------------------- term generation

// Random term whose free variables come from `bound`; pure terms carry no
// parameters (leaves under an empty scope become identity abstractions).
inline TermId gen_term(AlgebraSession& s, Rng& rng, uint32_t depth, std::vector<NameId>& bound,
                       bool pure) {
  TermPool& pool = s.pool;
  bool leaf = depth == 0 || rng.below(4) == 0;
  if (leaf) {
    if (!bound.empty() && (pure || rng.coin()))
      return pool.var(bound[rng.below(bound.size())]);
    if (!pure) return pool.param(static_cast<Elem>(rng.below32(s.algebra->size())));
    // no variable in scope: fall through to an abstraction
  }
  switch (leaf ? 0u : rng.below32(4)) {
    case 0: {
      NameId x = pool.name_id("g" + std::to_string(rng.below(6)) + "_" +
                              std::to_string(bound.size()));
      bound.push_back(x);
      TermId body = gen_term(s, rng, depth ? depth - 1 : 0, bound, pure);
      bound.pop_back();
      return pool.abs(x, body);
    }
    case 1: {
      TermId f = gen_term(s, rng, depth - 1, bound, pure);
      TermId a = gen_term(s, rng, depth - 1, bound, pure);
      return pool.app(f, a);
    }
    case 2: {
      // an explicit redex so reduction traces have substance
      NameId x = pool.name_id("r" + std::to_string(bound.size()));
      bound.push_back(x);
      TermId body = gen_term(s, rng, depth - 1, bound, pure);
      bound.pop_back();
      TermId arg = gen_term(s, rng, depth - 1, bound, pure);
      return pool.app(pool.abs(x, body), arg);
    }
    default: {
      // sprinkle the shorthand combinators in
      const Combinators& c = s.comb;
      TermId combs[] = {c.k, c.kbar, c.s, c.p, c.p1, c.p2, c.j1, c.j2, c.e};
      return combs[rng.below(9)];
    }
  }
}

inline TermId gen_closed_term(AlgebraSession& s, Rng& rng, uint32_t depth, bool pure) {
  std::vector<NameId> bound;
  return gen_term(s, rng, depth, bound, pure);
}

// ----------------------------------------------- extensional collapse oracle

// Hereditarily finite sets with canonical (sorted, deduplicated) member lists.
struct HF {
  std::vector<HF> members;
  bool operator==(const HF& o) const { return members == o.members; }
  bool operator<(const HF& o) const {
    return std::lexicographical_compare(members.begin(), members.end(), o.members.begin(),
                                        o.members.end());
  }
};

inline HF collapse(Universe& u, WId w) {
  HF out;
  Elem top = u.algebra().top();
  for (auto [m, val] : u.node(w).graph)
    if (val == top) out.members.push_back(collapse(u, m));
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
  return out;
}

inline bool hf_mem(const HF& a, const HF& b) {
  return std::binary_search(b.members.begin(), b.members.end(), a);
}

// Classical two-valued evaluation over the collapsed domain; quantifiers
// range over the same truncated universe the engine uses.
inline bool classical_eval(const Formula& f, int32_t node,
                           std::vector<std::pair<uint32_t, HF>>& env,
                           const std::vector<HF>& domain) {
  const FNode& n = f.nodes[node];
  auto lookup = [&](uint32_t var) -> const HF& {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == var) return it->second;
    throw std::runtime_error("classical_eval: unbound variable");
  };
  switch (n.kind) {
    case FKind::Bot: return false;
    case FKind::Mem: return hf_mem(lookup(n.v1), lookup(n.v2));
    case FKind::Eq: return lookup(n.v1) == lookup(n.v2);
    case FKind::And:
      return classical_eval(f, n.l, env, domain) && classical_eval(f, n.r, env, domain);
    case FKind::Or:
      return classical_eval(f, n.l, env, domain) || classical_eval(f, n.r, env, domain);
    case FKind::Imp:
      return !classical_eval(f, n.l, env, domain) || classical_eval(f, n.r, env, domain);
    case FKind::Exists:
      for (const HF& d : domain) {
        env.emplace_back(n.v1, d);
        bool got = classical_eval(f, n.l, env, domain);
        env.pop_back();
        if (got) return true;
      }
      return false;
    case FKind::Forall:
      for (const HF& d : domain) {
        env.emplace_back(n.v1, d);
        bool got = classical_eval(f, n.l, env, domain);
        env.pop_back();
        if (!got) return false;
      }
      return true;
    case FKind::BExists: {
      const HF bound = lookup(n.v2);
      for (const HF& d : bound.members) {
        env.emplace_back(n.v1, d);
        bool got = classical_eval(f, n.l, env, domain);
        env.pop_back();
        if (got) return true;
      }
      return false;
    }
    case FKind::BForall: {
      const HF bound = lookup(n.v2);
      for (const HF& d : bound.members) {
        env.emplace_back(n.v1, d);
        bool got = classical_eval(f, n.l, env, domain);
        env.pop_back();
        if (!got) return false;
      }
      return true;
    }
  }
  return false;
}

inline bool classical_satisfies(Universe& u, const ContextedFormula& cf) {
  std::vector<HF> domain;
  for (WId w : u.stratum(u.depth())) domain.push_back(collapse(u, w));
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

  std::vector<uint32_t> ids;
  for (const auto& name : cf.context) {
    uint32_t id = UINT32_MAX;
    for (uint32_t i = 0; i < cf.formula.vars.size(); ++i)
      if (cf.formula.vars[i] == name) id = i;
    ids.push_back(id);
  }
  size_t n = cf.context.size();
  std::vector<size_t> odo(n, 0);
  while (true) {
    std::vector<std::pair<uint32_t, HF>> env;
    for (size_t i = 0; i < n; ++i)
      if (ids[i] != UINT32_MAX) env.emplace_back(ids[i], domain[odo[i]]);
    if (!classical_eval(cf.formula, cf.formula.root, env, domain)) return false;
    size_t pos = 0;
    while (pos < n && odo[pos] + 1 == domain.size()) odo[pos++] = 0;
    if (pos == n) break;
    ++odo[pos];
  }
  return true;
}

// --------------------------------------------------------- rule soundness

// One random premise-respecting instantiation of each framed typing rule;
// returns whether the conclusion sequent holds. Premises are built to hold
// by construction (encoded values plus random upward slack).
inline bool rule_sound_once(AlgebraSession& s, Rng& rng, int rule) {
  const Algebra& alg = *s.algebra;
  const Lattice& lat = alg.lattice();
  TermPool& pool = s.pool;
  const Combinators& c = s.comb;

  auto rand_elem = [&]() { return static_cast<Elem>(rng.below32(alg.size())); };
  auto rand_ctx = [&](uint32_t size) {
    std::vector<std::pair<NameId, Elem>> ctx;
    for (uint32_t i = 0; i < size; ++i)
      ctx.emplace_back(pool.name_id("c" + std::to_string(i)), rand_elem());
    return ctx;
  };
  auto ctx_names = [&](const std::vector<std::pair<NameId, Elem>>& ctx) {
    std::vector<NameId> names;
    for (auto [n, e] : ctx) names.push_back(n);
    return names;
  };
  auto holds = [&](const std::vector<std::pair<NameId, Elem>>& ctx, TermId t, Elem target) {
    return check_sequent(s, Judgement{ctx, t, target});
  };
  auto value = [&](const std::vector<std::pair<NameId, Elem>>& ctx, TermId t) {
    return s.encoder.encode(t, ctx);
  };

  auto ctx = rand_ctx(1 + rng.below32(3));
  auto names = ctx_names(ctx);
  TermId t = gen_term(s, rng, 3, names, false);
  TermId tos = gen_term(s, rng, 3, names, false);

  switch (rule) {
    case 0: { // variable axiom
      size_t i = rng.below(ctx.size());
      return holds(ctx, pool.var(ctx[i].first), ctx[i].second);
    }
    case 1: { // parameter axiom
      Elem a = rand_elem();
      return holds(ctx, pool.param(a), a);
    }
    case 2: { // subsumption
      Elem a = value(ctx, t);
      Elem b = lat.join2(a, rand_elem());
      return holds(ctx, t, b);
    }
    case 3: { // ex falso
      TermId bot = rng.coin() ? pool.param(alg.bottom())
                              : pool.app(pool.param(alg.bottom()), tos);
      if (!holds(ctx, bot, alg.bottom())) return true; // premise violated, vacuous
      return holds(ctx, bot, rand_elem());
    }
    case 4: // top introduction
      return holds(ctx, t, alg.top());
    case 5: { // application
      Elem a = value(ctx, tos);
      Elem b = lat.join2(alg.apply(value(ctx, t), a), rand_elem());
      if (!holds(ctx, t, alg.imp(a, b))) return false; // premise must hold by construction
      return holds(ctx, pool.app(t, tos), b);
    }
    case 6: { // abstraction
      NameId x = pool.name_id("ax");
      auto inner = names;
      inner.push_back(x);
      TermId body = gen_term(s, rng, 3, inner, false);
      Elem a = rand_elem();
      auto extended = ctx;
      extended.emplace_back(x, a);
      Elem b = lat.join2(value(extended, body), rand_elem());
      if (!holds(extended, body, b)) return false;
      return holds(ctx, pool.abs(x, body), alg.imp(a, b));
    }
    case 7: { // pairing
      Elem a = value(ctx, t), b = value(ctx, tos);
      return holds(ctx, pool.app(pool.app(c.p, t), tos), alg.conj(a, b));
    }
    case 8: { // first projection
      Elem a = value(ctx, t), b = value(ctx, tos);
      TermId packed = pool.app(pool.app(c.p, t), tos);
      if (!holds(ctx, packed, alg.conj(a, b))) return false;
      return holds(ctx, pool.app(c.p1, packed), a);
    }
    case 9: { // second projection
      Elem b = value(ctx, tos);
      TermId packed = pool.app(pool.app(c.p, t), tos);
      return holds(ctx, pool.app(c.p2, packed), b);
    }
    case 10: { // left injection
      Elem a = value(ctx, t);
      return holds(ctx, pool.app(c.j1, t), alg.disj(a, rand_elem()));
    }
    case 11: { // right injection
      Elem b = value(ctx, t);
      return holds(ctx, pool.app(c.j2, t), alg.disj(rand_elem(), b));
    }
    case 12: { // case analysis
      Elem a = rand_elem(), b = rand_elem();
      bool left = rng.coin();
      TermId scrut = pool.app(left ? c.j1 : c.j2, t);
      Elem ta = value(ctx, t);
      if (left)
        a = lat.join2(ta, a);
      else
        b = lat.join2(ta, b);
      NameId x = pool.name_id("cx"), y = pool.name_id("cy");
      auto in_x = names;
      in_x.push_back(x);
      TermId u = gen_term(s, rng, 2, in_x, false);
      auto in_y = names;
      in_y.push_back(y);
      TermId v = gen_term(s, rng, 2, in_y, false);
      auto cx = ctx;
      cx.emplace_back(x, a);
      auto cy = ctx;
      cy.emplace_back(y, b);
      Elem cc = lat.join2(lat.join2(value(cx, u), value(cy, v)), rand_elem());
      if (!holds(ctx, scrut, alg.disj(a, b))) return false;
      if (!holds(cx, u, cc) || !holds(cy, v, cc)) return false;
      TermId elim = pool.app(pool.app(scrut, pool.abs(x, u)), pool.abs(y, v));
      return holds(ctx, elim, cc);
    }
    case 13: { // family forall introduction
      Elem tv = value(ctx, t);
      std::vector<Elem> family;
      for (uint32_t i = 0; i < 1 + rng.below32(3); ++i) family.push_back(lat.join2(tv, rand_elem()));
      return holds(ctx, t, uforall(alg, family));
    }
    case 14: { // family forall elimination
      std::vector<Elem> family;
      for (uint32_t i = 0; i < 1 + rng.below32(3); ++i) family.push_back(rand_elem());
      TermId tf = pool.param(uforall(alg, family));
      return holds(ctx, tf, family[rng.below(family.size())]);
    }
    case 15: { // family exists introduction
      Elem tv = value(ctx, t);
      std::vector<Elem> family;
      size_t hit = rng.below(3);
      for (uint32_t i = 0; i < 3; ++i)
        family.push_back(i == hit ? lat.join2(tv, rand_elem()) : rand_elem());
      if (!holds(ctx, t, family[hit])) return false;
      return holds(ctx, pool.app(c.e, t), uexists(alg, family));
    }
    case 16: { // family exists elimination
      std::vector<Elem> family;
      for (uint32_t i = 0; i < 1 + rng.below32(3); ++i) family.push_back(rand_elem());
      size_t hit = rng.below(family.size());
      TermId t0 = pool.param(family[hit]);
      TermId scrut = pool.app(c.e, t0);
      NameId x = pool.name_id("ex");
      auto in_x = names;
      in_x.push_back(x);
      TermId u = gen_term(s, rng, 2, in_x, false);
      Elem cc = lat.bottom();
      for (Elem a : family) {
        auto cx = ctx;
        cx.emplace_back(x, a);
        cc = lat.join2(cc, value(cx, u));
      }
      cc = lat.join2(cc, rand_elem());
      for (Elem a : family) {
        auto cx = ctx;
        cx.emplace_back(x, a);
        if (!holds(cx, u, cc)) return false;
      }
      return holds(ctx, pool.app(scrut, pool.abs(x, u)), cc);
    }
  }
  return false;
}

constexpr int kRuleCount = 17;

} // namespace imca::test

#endif
