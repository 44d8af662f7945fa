#ifndef IMCA_IZF_HPP
#define IMCA_IZF_HPP

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "formula.hpp"
#include "universe.hpp"

namespace imca {

// Direct mode interprets bounded quantifiers through their unbounded
// expansions over the whole truncated universe; Bounded mode uses the
// domain-restricted forms instead. The two agree up to separator
// equivalence, not element equality.
enum class Mode { Direct, Bounded };

// Evaluator for one formula in context over one universe; memoizes on
// (node, bindings of the node's free variables). The formula must outlive
// the evaluator.
class FormulaEval {
public:
  FormulaEval(Universe& u, const ContextedFormula& cf, Mode mode);

  Elem eval(std::span<const WId> args);
  const ContextedFormula& cf() const { return *cf_; }

private:
  struct Key {
    int32_t node;
    std::vector<std::pair<uint32_t, WId>> bindings;
    bool operator==(const Key& o) const { return node == o.node && bindings == o.bindings; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<uint64_t>(k.node);
      for (auto [v, w] : k.bindings) {
        h = (h ^ v) * 0x100000001b3ULL;
        h = (h ^ w) * 0x100000001b3ULL;
      }
      return static_cast<size_t>(h);
    }
  };

  Elem rec(int32_t node, std::vector<std::pair<uint32_t, WId>>& env);
  WId lookup(uint32_t var, const std::vector<std::pair<uint32_t, WId>>& env) const;

  Universe* u_;
  const ContextedFormula* cf_;
  Mode mode_;
  std::vector<std::vector<uint32_t>> fv_;
  std::unordered_map<Key, Elem, KeyHash> memo_;
};

Elem interpret(Universe& u, const ContextedFormula& cf, std::span<const WId> args,
               Mode mode = Mode::Direct);

struct SatResult {
  bool sat;
  Elem value; // the meet over all argument tuples
};
// W |= phi[context]: meet of the interpretation over all tuples from the
// truncated top stratum, tested for separator membership.
SatResult satisfies(Universe& u, const ContextedFormula& cf, Mode mode = Mode::Direct);

// The realizers of the transport lemma; all separator members, each bound
// verified over every tuple of the truncated universe at construction time.
struct CoreRealizers {
  Elem rho, j, sigma, s1, s2, s3, h;
};

// Throws Error{Verification} naming the failing item and witness tuple.
CoreRealizers core_realizers(Universe& u);

// Builds the substitution realizer r^phi by structural recursion and
// verifies its bound over all tuples (throws Error{Verification} on
// failure). The returned element is a separator member.
Elem subst_realizer(Universe& u, const CoreRealizers& cr, const ContextedFormula& cf);
Elem subst_realizer(Universe& u, const ContextedFormula& cf);

// Construction only, no bound sweep; callers that feed the realizer into a
// larger verified inequality use this to avoid the quadratic tuple pass.
Elem build_subst_realizer(Universe& u, const CoreRealizers& cr, const ContextedFormula& cf);

// Sigma-entailment of interpretations over the tuple index set.
bool check_entailment(Universe& u, const ContextedFormula& phi, const ContextedFormula& psi,
                      Mode mode = Mode::Direct);

// For a formula whose outermost construct is a bounded quantifier: checks
// mutual entailment of the direct and domain-restricted interpretations via
// the transport realizers, in both directions.
bool bounded_quantifier_equiv(Universe& u, const CoreRealizers& cr, const ContextedFormula& cf);

enum class Axiom { Emp, Ext, Pair, Union, Pow, Inf, Sep, EpsInd, Col };

const char* axiom_name(Axiom ax);

struct AxiomCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct AxiomReport {
  std::string axiom;
  bool verified = true;
  std::string realizer;       // label of the principal realizer element
  bool realizer_in_sigma = true;
  std::vector<AxiomCheck> checks;
  std::vector<std::string> truncation;

  void record(std::string name, bool pass, std::string detail = "") {
    if (!pass) verified = false;
    checks.push_back(AxiomCheck{std::move(name), pass, std::move(detail)});
  }
};

struct AxiomOptions {
  const ContextedFormula* phi = nullptr; // required for Sep, EpsInd, Col
  uint32_t inf_bound = 4;
};

AxiomReport check_axiom(Universe& u, const CoreRealizers& cr, Axiom ax,
                        const AxiomOptions& opts = {});

struct SchemaInstances {
  std::vector<ContextedFormula> sep, eps_ind, col;
  uint32_t inf_bound = 4;
};

SchemaInstances default_schema_instances();

// Emp, Ext, Pair, Union, Pow, Inf, then one report per schema instance.
std::vector<AxiomReport> check_axioms(Universe& u, const SchemaInstances& schemas);

} // namespace imca

#endif
