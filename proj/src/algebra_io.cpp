#include "algebra_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace imca {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(ErrKind::Parse, std::string("malformed JSON in ") + what);
  return doc;
}

LatticeCandidate lattice_candidate_from_doc(const json& doc) {
  std::vector<std::string> labels;
  if (doc.contains("elements")) {
    if (!doc["elements"].is_array()) fail(ErrKind::Parse, "'elements' must be an array");
    for (const auto& e : doc["elements"]) labels.push_back(e.get<std::string>());
  }
  if (!doc.contains("order")) fail(ErrKind::Parse, "algebra file needs an 'order'");
  const json& order = doc["order"];
  if (order.is_string()) {
    std::string spec = order.get<std::string>();
    if (spec == "chain") {
      if (labels.empty()) fail(ErrKind::Parse, "chain order needs an element list");
      std::vector<std::pair<std::string, std::string>> pairs;
      for (size_t i = 0; i + 1 < labels.size(); ++i) pairs.emplace_back(labels[i], labels[i + 1]);
      return close_order(std::move(labels), pairs);
    }
    if (spec.rfind("powerset:", 0) == 0) {
      uint32_t base = static_cast<uint32_t>(std::stoul(spec.substr(9)));
      LatticeCandidate cand = Lattice::powerset(base).to_candidate();
      if (!labels.empty()) {
        if (labels.size() != cand.labels.size())
          fail(ErrKind::Parse, "powerset element list has the wrong size");
        cand.labels = labels;
      }
      return cand;
    }
    fail(ErrKind::Parse, "unknown order spec '" + spec + "'");
  }
  if (!order.is_array()) fail(ErrKind::Parse, "'order' must be pairs, \"chain\" or \"powerset:k\"");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : order) {
    if (!p.is_array() || p.size() != 2) fail(ErrKind::Parse, "order pairs must be [lo, hi]");
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return close_order(std::move(labels), pairs);
}

} // namespace

LoadResult load_algebra_checked(std::string_view json_text) {
  LoadResult res;
  json doc = parse_json(json_text, "algebra definition");
  if (!doc.is_object()) fail(ErrKind::Parse, "algebra definition must be a JSON object");

  LatticeCandidate lat_cand = lattice_candidate_from_doc(doc);
  res.lattice_report = validate_lattice(lat_cand);
  if (!res.lattice_report.ok) return res;

  AlgebraCandidate cand;
  cand.name = doc.value("name", "unnamed");
  cand.lattice = Lattice::from_candidate(lat_cand);
  const Lattice& lat = cand.lattice;
  uint32_t n = lat.size();

  if (!doc.contains("implication")) fail(ErrKind::Parse, "algebra file needs an 'implication'");
  const json& imp = doc["implication"];
  if (imp.is_string()) {
    if (imp.get<std::string>() != "heyting")
      fail(ErrKind::Parse, "implication must be a table or \"heyting\"");
    HeytingResult hr = heyting_implication(lat);
    if (!hr.ok) {
      res.algebra_report.add(hr.witness.law, hr.witness.witness);
      return res;
    }
    cand.imp = std::move(hr.imp);
  } else {
    if (!imp.is_array() || imp.size() != n)
      fail(ErrKind::Parse, "implication table must have one row per element");
    cand.imp.assign(static_cast<size_t>(n) * n, 0);
    for (uint32_t a = 0; a < n; ++a) {
      if (!imp[a].is_array() || imp[a].size() != n)
        fail(ErrKind::Parse, "implication row has the wrong length");
      for (uint32_t b = 0; b < n; ++b) {
        Elem v = lat.find(imp[a][b].get<std::string>());
        if (v == kNoElem)
          fail(ErrKind::Parse, "implication table references unknown label '" +
                                   imp[a][b].get<std::string>() + "'");
        cand.imp[static_cast<size_t>(a) * n + b] = v;
      }
    }
  }

  if (!doc.contains("separator")) fail(ErrKind::Parse, "algebra file needs a 'separator'");
  const json& sep = doc["separator"];
  cand.in_sigma.assign(n, 0);
  if (sep.is_string()) {
    std::string spec = sep.get<std::string>();
    if (spec == "top")
      cand.in_sigma[lat.top()] = 1;
    else if (spec == "all")
      cand.in_sigma.assign(n, 1);
    else
      fail(ErrKind::Parse, "separator must be a label list, \"top\" or \"all\"");
  } else if (sep.is_array()) {
    for (const auto& e : sep) {
      Elem v = lat.find(e.get<std::string>());
      if (v == kNoElem)
        fail(ErrKind::Parse, "separator references unknown label '" + e.get<std::string>() + "'");
      cand.in_sigma[v] = 1;
    }
  } else {
    fail(ErrKind::Parse, "separator must be a label list, \"top\" or \"all\"");
  }

  res.algebra_report = validate_algebra(cand);
  if (!res.algebra_report.ok) return res;
  res.algebra = Algebra::from_candidate(std::move(cand));
  return res;
}

std::shared_ptr<const Algebra> load_algebra(std::string_view json_text) {
  LoadResult res = load_algebra_checked(json_text);
  if (!res.ok()) {
    const ValidationReport& rep =
        res.lattice_report.ok ? res.algebra_report : res.lattice_report;
    std::string msg = "algebra definition fails validation:";
    for (const auto& v : rep.violations) {
      msg += " " + v.law;
      if (!v.witness.empty()) {
        msg += "(";
        for (size_t i = 0; i < v.witness.size(); ++i) msg += (i ? "," : "") + v.witness[i];
        msg += ")";
      }
    }
    fail(ErrKind::Validation, msg);
  }
  return res.algebra;
}

std::shared_ptr<const Algebra> load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::Parse, "cannot open algebra file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_algebra(ss.str());
}

std::string save_algebra(const Algebra& alg) {
  const Lattice& lat = alg.lattice();
  uint32_t n = lat.size();
  nlohmann::ordered_json doc;
  doc["name"] = alg.name();
  json elements = json::array();
  for (Elem a = 0; a < n; ++a) elements.push_back(lat.label(a));
  doc["elements"] = elements;
  json order = json::array();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (a != b && lat.leq(a, b)) order.push_back(json::array({lat.label(a), lat.label(b)}));
  doc["order"] = order;
  json imp = json::array();
  for (Elem a = 0; a < n; ++a) {
    json row = json::array();
    for (Elem b = 0; b < n; ++b) row.push_back(lat.label(alg.imp(a, b)));
    imp.push_back(row);
  }
  doc["implication"] = imp;
  json sep = json::array();
  for (Elem a : alg.sigma_list()) sep.push_back(lat.label(a));
  doc["separator"] = sep;
  return doc.dump(2) + "\n";
}

std::string fingerprint(const Algebra& alg) {
  const Lattice& lat = alg.lattice();
  uint32_t n = lat.size();
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_byte = [&](uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  auto mix32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) mix_byte(static_cast<uint8_t>(v >> (8 * i)));
  };
  auto mix_str = [&](const std::string& s) {
    for (char c : s) mix_byte(static_cast<uint8_t>(c));
    mix_byte(0);
  };
  mix32(n);
  for (Elem a = 0; a < n; ++a) mix_str(lat.label(a));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mix_byte(lat.leq(a, b) ? 1 : 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mix32(alg.imp(a, b));
  for (Elem a = 0; a < n; ++a) mix_byte(alg.in_sigma(a) ? 1 : 0);
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

} // namespace imca
