#include "tripos_suite.hpp"

#include <functional>

#include "rng.hpp"

namespace imca {

namespace {

struct Suite {
  const Algebra& alg;
  uint32_t bound;
  Rng rng;
  uint32_t samples;
  bool exhaustive;
  TriposSuiteResult result;

  Suite(const Algebra& a, uint32_t b, uint64_t seed, uint32_t n)
      : alg(a), bound(b), rng(seed), samples(n) {
    uint64_t preds = 1;
    for (uint32_t i = 0; i < bound; ++i) {
      preds *= alg.size();
      if (preds > 16) break;
    }
    exhaustive = preds <= 16;
  }

  TriposSuiteResult::Entry& entry(const std::string& law) {
    for (auto& e : result.entries)
      if (e.law == law) return e;
    result.entries.push_back({law, 0, 0, ""});
    return result.entries.back();
  }

  void tally(const std::string& law, bool pass, const std::string& note) {
    auto& e = entry(law);
    ++e.cases;
    if (!pass) {
      if (e.failures == 0) e.first_failure = note;
      ++e.failures;
    }
  }

  Pred random_pred(uint32_t size) {
    Pred p{size, {}};
    for (uint32_t i = 0; i < size; ++i)
      p.values.push_back(static_cast<Elem>(rng.below32(alg.size())));
    return p;
  }

  FinFn random_fn(uint32_t src, uint32_t dst) {
    FinFn f{src, dst, {}};
    for (uint32_t i = 0; i < src; ++i) f.map.push_back(rng.below32(dst));
    return f;
  }

  // enumerate all predicates over a given index set
  void each_pred(uint32_t size, const std::function<void(const Pred&)>& fn) {
    Pred p{size, std::vector<Elem>(size, 0)};
    while (true) {
      fn(p);
      uint32_t pos = 0;
      while (pos < size && p.values[pos] + 1 == alg.size()) p.values[pos++] = 0;
      if (pos == size) return;
      ++p.values[pos];
    }
  }

  void each_fn(uint32_t src, uint32_t dst, const std::function<void(const FinFn&)>& fn) {
    if (dst == 0) {
      if (src == 0) fn(FinFn{0, 0, {}});
      return;
    }
    FinFn f{src, dst, std::vector<uint32_t>(src, 0)};
    while (true) {
      fn(f);
      uint32_t pos = 0;
      while (pos < src && f.map[pos] + 1 == dst) f.map[pos++] = 0;
      if (pos == src) return;
      ++f.map[pos];
    }
  }

  void check_adjunctions(const FinFn& f, const Pred& phi, const Pred& psi) {
    std::string note = "f:" + std::to_string(f.source) + "->" + std::to_string(f.target);
    bool lhs = entails(alg, exists_along(alg, f, phi), psi);
    bool rhs = entails(alg, phi, reindex(f, psi));
    tally("adjunction-exists", lhs == rhs, note);
    bool lhs2 = entails(alg, psi, forall_along(alg, f, phi));
    bool rhs2 = entails(alg, reindex(f, psi), phi);
    tally("adjunction-forall", lhs2 == rhs2, note);
  }

  void check_heyting(const Pred& chi, const Pred& phi, const Pred& psi) {
    std::string note = "index size " + std::to_string(chi.index_size);
    bool cur = entails(alg, chi, pred_imp(alg, phi, psi));
    bool uncur = entails(alg, pred_conj(alg, chi, phi), psi);
    tally("heyting-currying", cur == uncur, note);
    bool both = entails(alg, chi, phi) && entails(alg, chi, psi);
    tally("conj-glb", entails(alg, chi, pred_conj(alg, phi, psi)) == both, note);
    bool cases = entails(alg, phi, chi) && entails(alg, psi, chi);
    tally("disj-lub", entails(alg, pred_disj(alg, phi, psi), chi) == cases, note);
  }

  void check_preorder(const Pred& phi, const Pred& psi, const Pred& chi) {
    std::string note = "index size " + std::to_string(phi.index_size);
    tally("entails-reflexive", entails(alg, phi, phi), note);
    if (entails(alg, phi, psi) && entails(alg, psi, chi))
      tally("entails-transitive", entails(alg, phi, chi), note);
  }

  void check_reindex_strict(const FinFn& f, const Pred& phi, const Pred& psi) {
    std::string note = "f:" + std::to_string(f.source) + "->" + std::to_string(f.target);
    bool ok = reindex(f, pred_imp(alg, phi, psi)).values ==
                  pred_imp(alg, reindex(f, phi), reindex(f, psi)).values &&
              reindex(f, pred_conj(alg, phi, psi)).values ==
                  pred_conj(alg, reindex(f, phi), reindex(f, psi)).values &&
              reindex(f, pred_disj(alg, phi, psi)).values ==
                  pred_disj(alg, reindex(f, phi), reindex(f, psi)).values;
    tally("reindex-pointwise", ok, note);
  }

  void check_generic(const Pred& chi) {
    FinFn as_map{chi.index_size, alg.size(), {}};
    for (Elem v : chi.values) as_map.map.push_back(v);
    tally("generic-predicate", reindex(as_map, generic_predicate(alg)).values == chi.values,
          "index size " + std::to_string(chi.index_size));
  }

  void check_bc(const FinFn& f, const FinFn& g, const Pred& phi) {
    std::string note = "cospan " + std::to_string(f.source) + "," + std::to_string(g.source) +
                       "->" + std::to_string(f.target);
    tally("beck-chevalley", beck_chevalley(alg, f, g, phi), note);
  }

  void run() {
    result.exhaustive = exhaustive;
    if (exhaustive) {
      for (uint32_t i = 1; i <= bound; ++i)
        for (uint32_t j = 1; j <= bound; ++j)
          each_fn(i, j, [&](const FinFn& f) {
            each_pred(i, [&](const Pred& phi) {
              each_pred(j, [&](const Pred& psi) { check_adjunctions(f, phi, psi); });
            });
          });
      for (uint32_t i = 1; i <= bound; ++i)
        each_pred(i, [&](const Pred& chi) {
          check_generic(chi);
          each_pred(i, [&](const Pred& phi) {
            each_pred(i, [&](const Pred& psi) {
              check_heyting(chi, phi, psi);
              check_preorder(chi, phi, psi);
            });
          });
        });
      for (uint32_t i = 1; i <= bound; ++i)
        for (uint32_t j = 1; j <= bound; ++j)
          each_fn(i, j, [&](const FinFn& f) {
            each_pred(j, [&](const Pred& phi) {
              each_pred(j, [&](const Pred& psi) { check_reindex_strict(f, phi, psi); });
            });
          });
      for (uint32_t k = 1; k <= bound; ++k)
        for (uint32_t i = 1; i <= bound; ++i)
          for (uint32_t j = 1; j <= bound; ++j)
            each_fn(i, k, [&](const FinFn& f) {
              each_fn(j, k, [&](const FinFn& g) {
                each_pred(i, [&](const Pred& phi) { check_bc(f, g, phi); });
              });
            });
    } else {
      for (uint32_t it = 0; it < samples; ++it) {
        uint32_t i = 1 + rng.below32(bound), j = 1 + rng.below32(bound);
        FinFn f = random_fn(i, j);
        Pred phi = random_pred(i), psi = random_pred(j);
        check_adjunctions(f, phi, psi);
        Pred chi = random_pred(i), phi2 = random_pred(i), psi2 = random_pred(i);
        check_heyting(chi, phi2, psi2);
        check_preorder(chi, phi2, psi2);
        check_reindex_strict(f, psi, random_pred(j));
        check_generic(chi);
        uint32_t k = 1 + rng.below32(bound), j2 = 1 + rng.below32(bound);
        check_bc(random_fn(i, k), random_fn(j2, k), phi);
      }
    }
  }
};

} // namespace

TriposSuiteResult run_tripos_suite(const Algebra& alg, uint32_t size_bound, uint64_t seed,
                                   uint32_t samples) {
  Suite s(alg, size_bound, seed, samples);
  s.run();
  return s.result;
}

} // namespace imca
