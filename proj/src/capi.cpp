#include "imca.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "algebra_io.hpp"
#include "error.hpp"
#include "izf.hpp"
#include "tripos_suite.hpp"
#include "universe.hpp"

using nlohmann::ordered_json;

struct imca_algebra {
  std::shared_ptr<imca::AlgebraSession> session;
};

struct imca_universe {
  std::unique_ptr<imca::Universe> universe;
};

namespace {

constexpr const char* kVersion = "0.1.0";

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** slot, const ordered_json& doc) {
  if (slot) *slot = dup_string(doc.dump(2) + "\n");
}

imca_status status_of(const imca::Error& e) {
  switch (e.kind()) {
    case imca::ErrKind::Parse: return IMCA_PARSE_ERROR;
    case imca::ErrKind::Validation: return IMCA_VALIDATION_FAILED;
    case imca::ErrKind::Verification: return IMCA_VERIFICATION_FAILED;
    case imca::ErrKind::Budget: return IMCA_BUDGET_EXCEEDED;
    case imca::ErrKind::InvalidArgument: return IMCA_INVALID_ARGUMENT;
    case imca::ErrKind::Internal: return IMCA_INTERNAL_ERROR;
  }
  return IMCA_INTERNAL_ERROR;
}

imca_status emit_error(char** slot, imca_status status, const std::string& message) {
  ordered_json doc;
  doc["error"] = {{"status", imca_status_name(status)}, {"message", message}};
  emit(slot, doc);
  return status;
}

template <typename Fn>
imca_status guarded(char** slot, Fn&& fn) {
  try {
    return fn();
  } catch (const imca::Error& e) {
    return emit_error(slot, status_of(e), e.what());
  } catch (const std::exception& e) {
    return emit_error(slot, IMCA_INTERNAL_ERROR, e.what());
  }
}

ordered_json tool_block() {
  return ordered_json{{"name", "imca"}, {"version", kVersion}};
}

ordered_json algebra_block(const imca::Algebra& alg) {
  return ordered_json{{"name", alg.name()},
                      {"elements", alg.size()},
                      {"fingerprint", imca::fingerprint(alg)}};
}

ordered_json skeleton(const imca::Algebra& alg, const char* command) {
  ordered_json doc;
  doc["tool"] = tool_block();
  doc["command"] = command;
  doc["algebra"] = algebra_block(alg);
  return doc;
}

ordered_json violations_json(const imca::ValidationReport& rep) {
  ordered_json out;
  out["ok"] = rep.ok;
  ordered_json vio = ordered_json::array();
  for (const auto& v : rep.violations) {
    ordered_json w = ordered_json::array();
    for (const auto& s : v.witness) w.push_back(s);
    vio.push_back(ordered_json{{"law", v.law}, {"witness", w}});
  }
  out["violations"] = vio;
  ordered_json notes = ordered_json::array();
  for (const auto& s : rep.notes) notes.push_back(s);
  out["notes"] = notes;
  return out;
}

ordered_json axiom_json(const imca::AxiomReport& rep) {
  ordered_json out;
  out["axiom"] = rep.axiom;
  out["verdict"] = rep.verified;
  out["realizer"] = rep.realizer;
  out["realizer_in_sigma"] = rep.realizer_in_sigma;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["witness"] = c.detail;
    checks.push_back(e);
  }
  out["checks"] = checks;
  ordered_json notes = ordered_json::array();
  for (const auto& s : rep.truncation) notes.push_back(s);
  out["truncation"] = notes;
  return out;
}

imca::AlgebraSession& session_of(imca_algebra* alg) {
  if (!alg || !alg->session) imca::fail(imca::ErrKind::InvalidArgument, "null algebra handle");
  return *alg->session;
}

imca::Universe& universe_of(imca_universe* u) {
  if (!u || !u->universe) imca::fail(imca::ErrKind::InvalidArgument, "null universe handle");
  return *u->universe;
}

imca_status load_common(const std::string& text, imca_algebra** out, char** report) {
  if (!out) return emit_error(report, IMCA_INVALID_ARGUMENT, "null output handle");
  *out = nullptr;
  return guarded(report, [&]() -> imca_status {
    imca::LoadResult res = imca::load_algebra_checked(text);
    ordered_json doc;
    doc["tool"] = tool_block();
    doc["command"] = "load";
    doc["lattice"] = violations_json(res.lattice_report);
    doc["algebra_laws"] = violations_json(res.algebra_report);
    doc["ok"] = res.ok();
    if (!res.ok()) {
      emit(report, doc);
      return IMCA_VALIDATION_FAILED;
    }
    doc["algebra"] = algebra_block(*res.algebra);
    emit(report, doc);
    auto handle = new imca_algebra{std::make_shared<imca::AlgebraSession>(res.algebra)};
    *out = handle;
    return IMCA_OK;
  });
}

} // namespace

extern "C" {

const char* imca_version(void) { return kVersion; }

const char* imca_status_name(imca_status status) {
  switch (status) {
    case IMCA_OK: return "ok";
    case IMCA_INTERNAL_ERROR: return "internal-error";
    case IMCA_PARSE_ERROR: return "parse-error";
    case IMCA_VALIDATION_FAILED: return "validation-failed";
    case IMCA_VERIFICATION_FAILED: return "verification-failed";
    case IMCA_BUDGET_EXCEEDED: return "budget-exceeded";
    case IMCA_INVALID_ARGUMENT: return "invalid-argument";
  }
  return "unknown";
}

void imca_string_free(char* s) { std::free(s); }

imca_status imca_algebra_load(const char* json_text, imca_algebra** out, char** report) {
  if (!json_text) return emit_error(report, IMCA_INVALID_ARGUMENT, "null definition text");
  return load_common(json_text, out, report);
}

imca_status imca_algebra_load_file(const char* path, imca_algebra** out, char** report) {
  if (!path) return emit_error(report, IMCA_INVALID_ARGUMENT, "null path");
  std::ifstream in(path);
  if (!in)
    return emit_error(report, IMCA_PARSE_ERROR, std::string("cannot open algebra file '") + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_common(ss.str(), out, report);
}

void imca_algebra_free(imca_algebra* alg) { delete alg; }

imca_status imca_validate(imca_algebra* alg, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::AlgebraSession& s = session_of(alg);
    // the handle only exists for valid algebras; re-run the validators to
    // produce the full law report
    imca::AlgebraCandidate cand;
    cand.name = s.algebra->name();
    cand.lattice = s.algebra->lattice();
    uint32_t n = cand.lattice.size();
    cand.imp.reserve(static_cast<size_t>(n) * n);
    for (imca::Elem a = 0; a < n; ++a)
      for (imca::Elem b = 0; b < n; ++b) cand.imp.push_back(s.algebra->imp(a, b));
    cand.in_sigma.assign(n, 0);
    for (imca::Elem a = 0; a < n; ++a) cand.in_sigma[a] = s.algebra->in_sigma(a);
    ordered_json doc = skeleton(*s.algebra, "validate");
    doc["lattice"] = violations_json(imca::validate_lattice(cand.lattice.to_candidate()));
    doc["algebra_laws"] = violations_json(imca::validate_algebra(cand));
    doc["classical_separator"] = s.algebra->classical();
    doc["k"] = s.algebra->label(s.algebra->k_elem());
    doc["s"] = s.algebra->label(s.algebra->s_elem());
    bool ok = doc["lattice"]["ok"].get<bool>() && doc["algebra_laws"]["ok"].get<bool>();
    doc["ok"] = ok;
    emit(report, doc);
    return ok ? IMCA_OK : IMCA_VALIDATION_FAILED;
  });
}

imca_status imca_eval_term(imca_algebra* alg, const char* term, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::AlgebraSession& s = session_of(alg);
    if (!term) imca::fail(imca::ErrKind::InvalidArgument, "null term");
    imca::TermId t = imca::parse_term(s.pool, term, s.algebra.get());
    imca::Elem value = s.encoder.encode(t);
    ordered_json doc = skeleton(*s.algebra, "eval-term");
    doc["term"] = s.pool.show(t, s.algebra.get());
    doc["element"] = s.algebra->label(value);
    doc["in_separator"] = s.algebra->in_sigma(value);
    doc["ok"] = true;
    emit(report, doc);
    return IMCA_OK;
  });
}

imca_status imca_check_sequent(imca_algebra* alg, const char* judgement, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::AlgebraSession& s = session_of(alg);
    if (!judgement) imca::fail(imca::ErrKind::InvalidArgument, "null judgement");
    imca::Judgement j = imca::parse_judgement(s, judgement);
    bool holds = imca::check_sequent(s, j);
    ordered_json doc = skeleton(*s.algebra, "check");
    doc["judgement"] = judgement;
    doc["element"] = s.algebra->label(s.encoder.encode(j.term, j.context));
    doc["target"] = s.algebra->label(j.target);
    doc["holds"] = holds;
    doc["ok"] = holds;
    emit(report, doc);
    return holds ? IMCA_OK : IMCA_VERIFICATION_FAILED;
  });
}

imca_status imca_tripos_suite(imca_algebra* alg, unsigned size_bound, unsigned long long seed,
                              unsigned samples, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::AlgebraSession& s = session_of(alg);
    imca::TriposSuiteResult res =
        imca::run_tripos_suite(*s.algebra, size_bound ? size_bound : 3, seed, samples ? samples : 500);
    ordered_json doc = skeleton(*s.algebra, "tripos");
    doc["size_bound"] = size_bound ? size_bound : 3;
    doc["seed"] = static_cast<uint64_t>(seed);
    doc["exhaustive"] = res.exhaustive;
    ordered_json laws = ordered_json::array();
    for (const auto& e : res.entries) {
      ordered_json le;
      le["law"] = e.law;
      le["cases"] = e.cases;
      le["failures"] = e.failures;
      if (e.failures) le["witness"] = e.first_failure;
      laws.push_back(le);
    }
    doc["laws"] = laws;
    doc["ok"] = res.ok();
    emit(report, doc);
    return res.ok() ? IMCA_OK : IMCA_VERIFICATION_FAILED;
  });
}

imca_status imca_universe_build(imca_algebra* alg, unsigned depth,
                                unsigned long long stratum_budget, imca_universe** out,
                                char** report) {
  if (!out) return emit_error(report, IMCA_INVALID_ARGUMENT, "null output handle");
  *out = nullptr;
  return guarded(report, [&]() -> imca_status {
    imca::AlgebraSession& s = session_of(alg);
    imca::UniverseLimits limits;
    if (stratum_budget) limits.stratum_budget = stratum_budget;
    auto u = std::make_unique<imca::Universe>(
        imca::Universe::build(alg->session, depth, limits));
    ordered_json doc = skeleton(*s.algebra, "model-build");
    doc["depth"] = depth;
    ordered_json sizes = ordered_json::array();
    for (uint32_t k = 1; k <= u->depth(); ++k) sizes.push_back(u->stratum(k).size());
    doc["stratum_sizes"] = sizes;
    doc["ok"] = true;
    emit(report, doc);
    *out = new imca_universe{std::move(u)};
    return IMCA_OK;
  });
}

void imca_universe_free(imca_universe* u) { delete u; }

imca_status imca_model_report(imca_universe* uh, int verify_realizers, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::Universe& u = universe_of(uh);
    ordered_json doc = skeleton(u.algebra(), "model");
    doc["depth"] = u.depth();
    ordered_json sizes = ordered_json::array();
    for (uint32_t k = 1; k <= u.depth(); ++k) sizes.push_back(u.stratum(k).size());
    doc["stratum_sizes"] = sizes;
    if (verify_realizers) {
      imca::CoreRealizers cr = imca::core_realizers(u); // throws on a failed bound
      const imca::Algebra& alg = u.algebra();
      doc["core_realizers"] = ordered_json{
          {"rho", alg.label(cr.rho)}, {"j", alg.label(cr.j)},     {"sigma", alg.label(cr.sigma)},
          {"s1", alg.label(cr.s1)},   {"s2", alg.label(cr.s2)},   {"s3", alg.label(cr.s3)},
          {"h", alg.label(cr.h)}};
      doc["core_realizers_verified"] = true;
    }
    doc["ok"] = true;
    emit(report, doc);
    return IMCA_OK;
  });
}

imca_status imca_model_eval(imca_universe* uh, const char* relation, const char* lhs,
                            const char* rhs, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::Universe& u = universe_of(uh);
    if (!relation || !lhs || !rhs)
      imca::fail(imca::ErrKind::InvalidArgument, "relation and both operands are required");
    imca::WId a = u.parse_welement(lhs);
    imca::WId b = u.parse_welement(rhs);
    std::string rel(relation);
    imca::Elem value;
    if (rel == "mem")
      value = u.mem_value(a, b);
    else if (rel == "eq")
      value = u.eq_value(a, b);
    else if (rel == "sub")
      value = u.subseteq_value(a, b);
    else
      imca::fail(imca::ErrKind::InvalidArgument, "relation must be mem, eq or sub");
    ordered_json doc = skeleton(u.algebra(), "model-eval");
    doc["relation"] = rel;
    doc["lhs"] = u.show(a);
    doc["rhs"] = u.show(b);
    doc["element"] = u.algebra().label(value);
    doc["in_separator"] = u.algebra().in_sigma(value);
    doc["ok"] = true;
    emit(report, doc);
    return IMCA_OK;
  });
}

imca_status imca_eval_formula(imca_universe* uh, const char* formula, const char* args,
                              int bounded_mode, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::Universe& u = universe_of(uh);
    if (!formula) imca::fail(imca::ErrKind::InvalidArgument, "null formula");
    imca::ContextedFormula cf = imca::parse_formula(formula);
    imca::Mode mode = bounded_mode ? imca::Mode::Bounded : imca::Mode::Direct;
    ordered_json doc = skeleton(u.algebra(), "eval-formula");
    doc["formula"] = cf.show();
    doc["mode"] = bounded_mode ? "bounded" : "direct";
    std::string argtext = args ? args : "";
    if (argtext.empty()) {
      imca::SatResult res = imca::satisfies(u, cf, mode);
      doc["value"] = u.algebra().label(res.value);
      doc["satisfied"] = res.sat;
      doc["truncation"] = "quantifiers and the satisfaction meet range over W_" +
                          std::to_string(u.depth());
      doc["ok"] = res.sat;
      emit(report, doc);
      return res.sat ? IMCA_OK : IMCA_VERIFICATION_FAILED;
    }
    // parse "x={},y={{}:1}" against the context
    std::vector<imca::WId> tuple(cf.context.size(), 0);
    std::vector<bool> seen(cf.context.size(), false);
    size_t pos = 0;
    while (pos < argtext.size()) {
      size_t eq = argtext.find('=', pos);
      if (eq == std::string::npos)
        imca::fail(imca::ErrKind::Parse, "arguments must look like name={...}");
      std::string name = argtext.substr(pos, eq - pos);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
        name.erase(name.begin());
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      size_t depth_braces = 0, end = eq + 1;
      while (end < argtext.size()) {
        char c = argtext[end];
        if (c == '{') ++depth_braces;
        if (c == '}') {
          --depth_braces;
          if (depth_braces == 0) {
            ++end;
            break;
          }
        }
        ++end;
      }
      size_t idx = cf.context.size();
      for (size_t i = 0; i < cf.context.size(); ++i)
        if (cf.context[i] == name) idx = i;
      if (idx == cf.context.size())
        imca::fail(imca::ErrKind::InvalidArgument, "argument '" + name + "' is not in the context");
      tuple[idx] = u.parse_welement(argtext.substr(eq + 1, end - eq - 1));
      seen[idx] = true;
      pos = argtext.find(',', end);
      pos = pos == std::string::npos ? argtext.size() : pos + 1;
    }
    for (size_t i = 0; i < seen.size(); ++i)
      if (!seen[i])
        imca::fail(imca::ErrKind::InvalidArgument,
                   "missing argument for context variable '" + cf.context[i] + "'");
    imca::Elem value = imca::interpret(u, cf, tuple, mode);
    ordered_json argdoc = ordered_json::array();
    for (size_t i = 0; i < tuple.size(); ++i)
      argdoc.push_back(ordered_json{{"name", cf.context[i]}, {"value", u.show(tuple[i])}});
    doc["arguments"] = argdoc;
    doc["element"] = u.algebra().label(value);
    doc["in_separator"] = u.algebra().in_sigma(value);
    doc["ok"] = true;
    emit(report, doc);
    return IMCA_OK;
  });
}

imca_status imca_check_axioms(imca_universe* uh, const char* schemas_json, char** report) {
  return guarded(report, [&]() -> imca_status {
    imca::Universe& u = universe_of(uh);
    imca::SchemaInstances schemas;
    if (schemas_json && *schemas_json) {
      nlohmann::json doc = nlohmann::json::parse(schemas_json, nullptr, false);
      if (doc.is_discarded()) imca::fail(imca::ErrKind::Parse, "malformed schema instance JSON");
      auto read = [&](const char* key, std::vector<imca::ContextedFormula>& out) {
        if (!doc.contains(key)) return;
        for (const auto& s : doc[key]) out.push_back(imca::parse_formula(s.get<std::string>()));
      };
      read("sep", schemas.sep);
      read("eps_ind", schemas.eps_ind);
      read("col", schemas.col);
      schemas.inf_bound = doc.value("inf_bound", 4u);
      if (schemas.sep.empty() && schemas.eps_ind.empty() && schemas.col.empty()) {
        imca::SchemaInstances defaults = imca::default_schema_instances();
        schemas.sep = std::move(defaults.sep);
        schemas.eps_ind = std::move(defaults.eps_ind);
        schemas.col = std::move(defaults.col);
      }
    } else {
      schemas = imca::default_schema_instances();
    }
    std::vector<imca::AxiomReport> reports = imca::check_axioms(u, schemas);
    ordered_json doc = skeleton(u.algebra(), "check-axioms");
    doc["depth"] = u.depth();
    doc["inf_bound"] = schemas.inf_bound;
    bool all = true;
    ordered_json axioms = ordered_json::array();
    for (const auto& r : reports) {
      axioms.push_back(axiom_json(r));
      all = all && r.verified;
    }
    doc["axioms"] = axioms;
    doc["ok"] = all;
    emit(report, doc);
    return all ? IMCA_OK : IMCA_VERIFICATION_FAILED;
  });
}

} // extern "C"
