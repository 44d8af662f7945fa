// Command-line front end; talks to the engine exclusively through the
// C API in imca.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "imca.h"

namespace {

struct AlgebraHandle {
  imca_algebra* alg = nullptr;
  ~AlgebraHandle() { imca_algebra_free(alg); }
};

struct UniverseHandle {
  imca_universe* u = nullptr;
  ~UniverseHandle() { imca_universe_free(u); }
};

struct Out {
  std::string report_path;

  int finish(imca_status status, char* report) {
    if (report) {
      std::fputs(report, stdout);
      if (!report_path.empty()) {
        std::ofstream f(report_path);
        f << report;
      }
      imca_string_free(report);
    }
    return static_cast<int>(status);
  }
};

unsigned long long budget_from_env() {
  const char* env = std::getenv("IMCA_STRATUM_BUDGET");
  if (!env) return 0;
  return std::strtoull(env, nullptr, 10);
}

int load_or_fail(const std::string& file, AlgebraHandle& h, Out& out) {
  char* report = nullptr;
  imca_status st = imca_algebra_load_file(file.c_str(), &h.alg, &report);
  if (st != IMCA_OK) return out.finish(st, report);
  imca_string_free(report);
  return -1;
}

int build_or_fail(const std::string& file, unsigned depth, AlgebraHandle& ah, UniverseHandle& uh,
                  Out& out) {
  int rc = load_or_fail(file, ah, out);
  if (rc >= 0) return rc;
  char* report = nullptr;
  imca_status st = imca_universe_build(ah.alg, depth, budget_from_env(), &uh.u, &report);
  if (st != IMCA_OK) return out.finish(st, report);
  imca_string_free(report);
  return -1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"implicative-algebra model checker"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(imca_version()));

  std::string file, term, judgement, formula, args_text, relation, lhs, rhs;
  std::string report_path, schemas_path;
  unsigned depth = 2, size_bound = 3, samples = 500, inf_bound = 4;
  unsigned long long seed = 1;
  bool bounded = false, verify_realizers = true;

  auto* validate = app.add_subcommand("validate", "run lattice and algebra validation");
  validate->add_option("file", file)->required();
  validate->add_option("--report", report_path);

  auto* eval_term = app.add_subcommand("eval-term", "compile a term to a lattice element");
  eval_term->add_option("file", file)->required();
  eval_term->add_option("term", term)->required();
  eval_term->add_option("--report", report_path);

  auto* check = app.add_subcommand("check", "check a typing judgement");
  check->add_option("file", file)->required();
  check->add_option("judgement", judgement)->required();
  check->add_option("--report", report_path);

  auto* tripos = app.add_subcommand("tripos", "run the indexed-preorder law suite");
  tripos->add_option("file", file)->required();
  tripos->add_option("--size-bound", size_bound);
  tripos->add_option("--seed", seed);
  tripos->add_option("--samples", samples);
  tripos->add_option("--report", report_path);

  auto* model = app.add_subcommand("model", "truncated-universe operations");
  model->require_subcommand(1);
  auto* model_build = model->add_subcommand("build", "build W_1..W_N and report stratum sizes");
  model_build->add_option("file", file)->required();
  model_build->add_option("-N,--depth", depth)->required();
  model_build->add_flag("--verify-realizers,!--no-verify-realizers", verify_realizers,
                        "verify the transport realizers");
  model_build->add_option("--report", report_path);
  auto* model_eval = model->add_subcommand("eval", "evaluate mem/eq/sub on element literals");
  model_eval->add_option("file", file)->required();
  model_eval->add_option("-N,--depth", depth)->required();
  model_eval->add_option("--op", relation)->required()->check(CLI::IsMember({"mem", "eq", "sub"}));
  model_eval->add_option("--lhs", lhs)->required();
  model_eval->add_option("--rhs", rhs)->required();
  model_eval->add_option("--report", report_path);

  auto* eval_formula = app.add_subcommand("eval-formula", "interpret a formula or decide satisfaction");
  eval_formula->add_option("file", file)->required();
  eval_formula->add_option("-N,--depth", depth)->required();
  eval_formula->add_option("--formula", formula)->required();
  eval_formula->add_option("--args", args_text, "comma-separated name={...} bindings");
  eval_formula->add_flag("--bounded", bounded, "domain-restricted bounded quantifiers");
  eval_formula->add_option("--report", report_path);

  auto* check_axioms = app.add_subcommand("check-axioms", "run the axiom verification suite");
  check_axioms->add_option("file", file)->required();
  check_axioms->add_option("-N,--depth", depth)->required();
  check_axioms->add_option("--schemas", schemas_path, "schema instance file (JSON)");
  check_axioms->add_option("--inf-bound", inf_bound);
  check_axioms->add_option("--report", report_path);

  CLI11_PARSE(app, argc, argv);

  Out out{report_path};
  char* report = nullptr;

  if (*validate) {
    AlgebraHandle h;
    char* load_report = nullptr;
    imca_status st = imca_algebra_load_file(file.c_str(), &h.alg, &load_report);
    if (st != IMCA_OK) return out.finish(st, load_report);
    imca_string_free(load_report);
    st = imca_validate(h.alg, &report);
    return out.finish(st, report);
  }
  if (*eval_term) {
    AlgebraHandle h;
    int rc = load_or_fail(file, h, out);
    if (rc >= 0) return rc;
    imca_status st = imca_eval_term(h.alg, term.c_str(), &report);
    return out.finish(st, report);
  }
  if (*check) {
    AlgebraHandle h;
    int rc = load_or_fail(file, h, out);
    if (rc >= 0) return rc;
    imca_status st = imca_check_sequent(h.alg, judgement.c_str(), &report);
    return out.finish(st, report);
  }
  if (*tripos) {
    AlgebraHandle h;
    int rc = load_or_fail(file, h, out);
    if (rc >= 0) return rc;
    imca_status st = imca_tripos_suite(h.alg, size_bound, seed, samples, &report);
    return out.finish(st, report);
  }
  if (*model_build) {
    AlgebraHandle ah;
    UniverseHandle uh;
    int rc = build_or_fail(file, depth, ah, uh, out);
    if (rc >= 0) return rc;
    imca_status st = imca_model_report(uh.u, verify_realizers ? 1 : 0, &report);
    return out.finish(st, report);
  }
  if (*model_eval) {
    AlgebraHandle ah;
    UniverseHandle uh;
    int rc = build_or_fail(file, depth, ah, uh, out);
    if (rc >= 0) return rc;
    imca_status st = imca_model_eval(uh.u, relation.c_str(), lhs.c_str(), rhs.c_str(), &report);
    return out.finish(st, report);
  }
  if (*eval_formula) {
    AlgebraHandle ah;
    UniverseHandle uh;
    int rc = build_or_fail(file, depth, ah, uh, out);
    if (rc >= 0) return rc;
    imca_status st = imca_eval_formula(uh.u, formula.c_str(),
                                       args_text.empty() ? nullptr : args_text.c_str(),
                                       bounded ? 1 : 0, &report);
    return out.finish(st, report);
  }
  if (*check_axioms) {
    AlgebraHandle ah;
    UniverseHandle uh;
    int rc = build_or_fail(file, depth, ah, uh, out);
    if (rc >= 0) return rc;
    std::string schemas_json;
    if (!schemas_path.empty()) {
      std::ifstream f(schemas_path);
      if (!f) {
        std::fprintf(stderr, "cannot open schema file '%s'\n", schemas_path.c_str());
        return static_cast<int>(IMCA_PARSE_ERROR);
      }
      std::stringstream ss;
      ss << f.rdbuf();
      schemas_json = ss.str();
    }
    if (inf_bound != 4 || !schemas_json.empty()) {
      if (schemas_json.empty())
        schemas_json = std::string("{\"inf_bound\": ") + std::to_string(inf_bound) + "}";
    }
    imca_status st =
        imca_check_axioms(uh.u, schemas_json.empty() ? nullptr : schemas_json.c_str(), &report);
    return out.finish(st, report);
  }
  return 0;
}
