// Acceptance suite: one criterion per line, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "algebra_io.hpp"
#include "error.hpp"
#include "helpers.hpp"
#include "imca.h"
#include "izf.hpp"
#include "tripos_suite.hpp"

using namespace imca;
using namespace imca::test;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, const char* what, bool pass, const std::string& detail,
            double seconds, double limit_seconds) {
  bool in_time = limit_seconds <= 0 || seconds <= limit_seconds;
  bool ok = pass && in_time;
  if (!ok) ++failures;
  std::printf("[%s] criterion %2d: %s (%s%.2fs%s)\n", ok ? "PASS" : "FAIL", criterion, what,
              detail.empty() ? "" : (detail + ", ").c_str(), seconds,
              in_time ? "" : " OVER TIME LIMIT");
  std::fflush(stdout);
}

// 1. encode(k) = K and encode(s) = S in every shipped algebra, under a second.
void criterion1() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (const char* file : shipped_files()) {
    auto session = shipped_session(file);
    if (session->encoder.encode(session->comb.k) != session->algebra->k_elem() ||
        session->encoder.encode(session->comb.s) != session->algebra->s_elem()) {
      pass = false;
      detail = file;
    }
  }
  report(1, "combinator identities k^A = K and s^A = S", pass, detail, t.seconds(), 1.0);
}

// 2. 1000 seeded random closed terms, every reduction step is monotone.
void criterion2() {
  Timer t;
  uint64_t violations = 0, steps = 0;
  const char* algs[] = {"b2.json", "c3_sigma_half.json", "m2.json"};
  Rng rng(0xACCE55);
  std::vector<std::shared_ptr<AlgebraSession>> sessions;
  for (const char* f : algs) sessions.push_back(shipped_session(f));
  for (int i = 0; i < 1000; ++i) {
    auto& session = *sessions[i % 3];
    TermId term = gen_closed_term(session, rng, 5, false);
    Elem prev = session.encoder.encode(term);
    for (int k = 0; k < 16; ++k) {
      auto next = session.pool.beta_step(term);
      if (!next) break;
      term = *next;
      Elem now = session.encoder.encode(term);
      ++steps;
      if (!session.algebra->leq(prev, now)) ++violations;
      prev = now;
    }
  }
  report(2, "beta monotonicity over 1000 seeded terms", violations == 0,
         std::to_string(steps) + " steps, " + std::to_string(violations) + " violations",
         t.seconds(), 0);
}

// 3. 500 random pure closed normalizing terms encode into every separator.
void criterion3() {
  Timer t;
  uint64_t violations = 0;
  std::vector<std::shared_ptr<AlgebraSession>> sessions;
  for (const char* f : shipped_files()) sessions.push_back(shipped_session(f));
  Rng rng(0x516);
  int accepted = 0;
  while (accepted < 500) {
    TermId probe = gen_closed_term(*sessions[0], rng, 5, true);
    if (!sessions[0]->pool.normalize(probe, 200).normal) continue;
    ++accepted;
    std::string text = sessions[0]->pool.show(probe);
    for (auto& s : sessions) {
      TermId t2 = parse_term(s->pool, text);
      if (!s->algebra->in_sigma(s->encoder.encode(t2))) ++violations;
    }
  }
  report(3, "separator closure of 500 pure normalizing terms", violations == 0,
         std::to_string(violations) + " violations", t.seconds(), 0);
}

// 4. All 17 framed rules, 100 premise-respecting instantiations each.
void criterion4() {
  Timer t;
  int bad_rules = 0;
  std::string detail;
  for (int rule = 0; rule < kRuleCount; ++rule) {
    auto session = shipped_session(rule % 2 ? "c3_sigma_half.json" : "m2.json");
    Rng rng(0xD06 + rule);
    int failed = 0;
    for (int i = 0; i < 100; ++i)
      if (!rule_sound_once(*session, rng, rule)) ++failed;
    if (failed) {
      ++bad_rules;
      detail += "rule " + std::to_string(rule) + " ";
    }
  }
  report(4, "soundness of the 17 typing rules, 100 instances each", bad_rules == 0, detail,
         t.seconds(), 0);
}

// 5. Tripos laws: exhaustive over the two-chain, sampled over the three-chain.
void criterion5() {
  Timer t;
  auto b2 = shipped("b2.json");
  TriposSuiteResult rb = run_tripos_suite(*b2, 3, 1, 500);
  auto c3 = shipped("c3_sigma_half.json");
  TriposSuiteResult rc = run_tripos_suite(*c3, 3, 1, 500);
  uint64_t cases = 0;
  for (const auto& e : rc.entries) cases += e.cases;
  bool pass = rb.ok() && rb.exhaustive && rc.ok() && !rc.exhaustive && cases >= 500;
  report(5, "tripos adjunction/Heyting/Beck-Chevalley laws", pass,
         "sampled cases " + std::to_string(cases), t.seconds(), 60.0);
}

// 6. Transport realizer bounds over all tuples of W_3 (two-chain) and W_2
//    (three-chain, both separators); all realizers in the separator.
void criterion6() {
  Timer t;
  bool pass = true;
  std::string detail;
  try {
    Universe u = Universe::build(shipped_session("b2.json"), 3);
    core_realizers(u);
    Universe c = Universe::build(shipped_session("c3.json"), 2);
    core_realizers(c);
    Universe ch = Universe::build(shipped_session("c3_sigma_half.json"), 2);
    core_realizers(ch);
  } catch (const Error& e) {
    pass = false;
    detail = e.what();
  }
  report(6, "transport realizer bounds over every tuple", pass, detail, t.seconds(), 300.0);
}

// 7. Substitution realizer bounds for a connective-covering corpus.
void criterion7() {
  Timer t;
  const std::vector<std::string> corpus = {
      "[x] |- x = x",
      "[x] |- False",
      "[x,y] |- x in y /\\ y in x",
      "[x,y] |- x in y \\/ x = y",
      "[x,y] |- x in y -> y in x",
      "[x] |- exists y. y in x",
      "[x] |- forall y. y in x -> x in y",
      "[x,y] |- sub(x,y)",
      "[x] |- forall y in x. False",
      "[x,y] |- exists z. (z in x /\\ z in y)",
      "[x] |- (x = x -> x in x) -> x in x",
  };
  bool pass = corpus.size() >= 10;
  std::string detail = std::to_string(corpus.size()) + " formulas";
  try {
    Universe u = Universe::build(shipped_session("b2.json"), 2);
    CoreRealizers cr = core_realizers(u);
    for (const auto& text : corpus) subst_realizer(u, cr, parse_formula(text));
    Universe c = Universe::build(shipped_session("c3.json"), 2);
    CoreRealizers crc = core_realizers(c);
    for (const auto& text : corpus) subst_realizer(c, crc, parse_formula(text));
  } catch (const Error& e) {
    pass = false;
    detail = e.what();
  }
  report(7, "substitution realizer bounds over the formula corpus", pass, detail, t.seconds(), 0);
}

// 8. Bounded quantifiers: direct and domain-restricted interpretations agree
//    via the transport realizers, and the subset shorthand is the inclusion
//    valuation, over all pairs at depth 3.
void criterion8() {
  Timer t;
  bool pass = true;
  std::string detail;
  try {
    Universe u = Universe::build(shipped_session("b2.json"), 3);
    CoreRealizers cr = core_realizers(u);
    for (const char* text :
         {"[y] |- exists z in y. z = z", "[y] |- forall z in y. False",
          "[x,y] |- exists z in y. z in x", "[x,y] |- forall z in y. z in x",
          "[x,y] |- sub(x,y)"}) {
      if (!bounded_quantifier_equiv(u, cr, parse_formula(text))) {
        pass = false;
        detail = text;
      }
    }
    ContextedFormula sub = parse_formula("[x,y] |- sub(x,y)");
    FormulaEval bounded(u, sub, Mode::Bounded);
    for (WId a : u.stratum(3))
      for (WId b : u.stratum(3)) {
        std::vector<WId> args = {a, b};
        if (bounded.eval(args) != u.subseteq_value(a, b)) pass = false;
      }
  } catch (const Error& e) {
    pass = false;
    detail = e.what();
  }
  report(8, "bounded-quantifier mode equivalence and the subset corollary", pass, detail,
         t.seconds(), 0);
}

// 9. The axiom suite on both test universes, with truncation disclosures.
void criterion9() {
  Timer t;
  bool pass = true;
  std::string detail;
  SchemaInstances schemas = default_schema_instances();
  schemas.inf_bound = 4;
  try {
    for (const char* file : {"b2.json", "c3.json"}) {
      Universe u = Universe::build(shipped_session(file),
                                   std::strcmp(file, "b2.json") == 0 ? 3 : 2);
      std::vector<AxiomReport> reports = check_axioms(u, schemas);
      int sep = 0, ind = 0, col = 0;
      for (const auto& rep : reports) {
        if (!rep.verified) {
          pass = false;
          detail = std::string(file) + " " + rep.axiom;
        }
        if (rep.axiom.rfind("Sep", 0) == 0) ++sep;
        if (rep.axiom.rfind("EpsInd", 0) == 0) ++ind;
        if (rep.axiom.rfind("Col", 0) == 0) ++col;
        if ((rep.axiom == "Inf" || rep.axiom.rfind("Col", 0) == 0) && rep.truncation.empty()) {
          pass = false;
          detail = rep.axiom + " lacks truncation notes";
        }
      }
      if (sep != 3 || ind != 3 || col != 3) {
        pass = false;
        detail = "schema instance counts";
      }
    }
  } catch (const Error& e) {
    pass = false;
    detail = e.what();
  }
  report(9, "IZF axiom suite with truncation disclosures", pass, detail, t.seconds(), 600.0);
}

// 10. Two-valued satisfaction agrees with the classical collapse evaluator.
void criterion10() {
  Timer t;
  const std::vector<std::string> corpus = {
      "[] |- exists x. forall y in x. False",
      "[] |- forall x. forall y. (sub(x,y) /\\ sub(y,x)) -> x = y",
      "[] |- forall x. forall y. exists z. (x in z /\\ y in z)",
      "[] |- forall x. exists u. forall y in x. forall z in y. z in u",
      "[] |- forall x. (x in x -> False)",
      "[] |- forall x. forall y. (x = y -> y = x)",
      "[] |- forall x. forall y. forall z. (x = y /\\ y = z -> x = z)",
      "[] |- forall x. exists y. x in y",
      "[] |- exists x. exists y. x in y",
      "[] |- forall x. sub(x,x)",
      "[] |- forall x. forall y. (x in y \\/ (x in y -> False))",
      "[] |- exists x. forall y. y in x",
      "[] |- forall x. forall y. (sub(x,y) -> (exists z in x. z = z) -> exists z in y. z = z)",
      "[] |- forall x. (forall y in x. False) -> sub(x,x)",
      "[] |- forall u. exists v. forall w in u. w in v",
      "[] |- forall x. forall y. (x = y -> sub(x,y))",
      "[] |- forall x. forall y. (sub(x,y) /\\ sub(y,x) /\\ x in x -> False)",
      "[] |- exists x. exists y. (sub(x,y) /\\ (x = y -> False))",
      "[] |- forall x. exists y. sub(y,x)",
      "[] |- forall x. forall y. forall z. (x in y /\\ y in z -> x in z)",
      "[] |- forall x. forall y. (x in y -> (x = y -> False))",
  };
  Universe u = Universe::build(shipped_session("b2.json"), 3);
  uint64_t disagreements = 0;
  for (const auto& text : corpus) {
    ContextedFormula cf = parse_formula(text);
    bool classical = classical_satisfies(u, cf);
    if (satisfies(u, cf).sat != classical) ++disagreements;
    if (satisfies(u, cf, Mode::Bounded).sat != classical) ++disagreements;
  }
  report(10, "two-valued satisfaction matches the classical collapse", disagreements == 0,
         std::to_string(corpus.size()) + " formulas, " + std::to_string(disagreements) +
             " disagreements",
         t.seconds(), 0);
}

// 11. Byte-identical reports for identical inputs and seeds.
void criterion11() {
  Timer t;
  auto run_once = []() -> std::string {
    std::string out;
    imca_algebra* alg = nullptr;
    char* rep = nullptr;
    if (imca_algebra_load_file(data_path("c3_sigma_half.json").c_str(), &alg, &rep) != IMCA_OK)
      return "load failed";
    out += rep;
    imca_string_free(rep);
    char* val = nullptr;
    imca_validate(alg, &val);
    out += val;
    imca_string_free(val);
    char* trip = nullptr;
    imca_tripos_suite(alg, 3, 99, 250, &trip);
    out += trip;
    imca_string_free(trip);
    imca_universe* u = nullptr;
    char* built = nullptr;
    imca_universe_build(alg, 2, 0, &u, &built);
    out += built;
    imca_string_free(built);
    char* ax = nullptr;
    imca_check_axioms(u, nullptr, &ax);
    out += ax;
    imca_string_free(ax);
    imca_universe_free(u);
    imca_algebra_free(alg);
    return out;
  };
  std::string first = run_once();
  std::string second = run_once();
  bool pass = !first.empty() && first == second;
  report(11, "byte-identical reports across repeated runs", pass,
         std::to_string(first.size()) + " bytes", t.seconds(), 0);
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
