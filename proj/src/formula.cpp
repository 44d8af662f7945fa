#include "formula.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"

namespace imca {

uint32_t Formula::var_id(std::string_view name) {
  for (uint32_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  vars.emplace_back(name);
  return static_cast<uint32_t>(vars.size() - 1);
}

namespace {

struct FParser {
  std::string_view text;
  size_t pos = 0;
  Formula f;
  std::vector<uint32_t> scope; // context vars then binders

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrKind::Parse, "formula parse error at offset " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool lit(std::string_view s) {
    skip_ws();
    if (text.substr(pos, s.size()) == s) {
      pos += s.size();
      return true;
    }
    return false;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  // keyword-aware identifier peek
  std::string peek_ident() {
    skip_ws();
    size_t i = pos;
    while (i < text.size() && ident_char(text[i])) ++i;
    return std::string(text.substr(pos, i - pos));
  }

  std::string ident() {
    std::string s = peek_ident();
    if (s.empty()) err("expected identifier");
    pos += s.size();
    return s;
  }

  uint32_t var_ref(const std::string& name) {
    uint32_t id = f.var_id(name);
    if (std::find(scope.begin(), scope.end(), id) == scope.end())
      err("unbound variable '" + name + "'");
    return id;
  }

  int32_t parse_formula() {
    int32_t lhs = parse_or();
    if (lit("->")) {
      int32_t rhs = parse_formula();
      return f.add({FKind::Imp, 0, 0, lhs, rhs});
    }
    return lhs;
  }

  int32_t parse_or() {
    int32_t lhs = parse_and();
    while (lit("\\/")) {
      int32_t rhs = parse_and();
      lhs = f.add({FKind::Or, 0, 0, lhs, rhs});
    }
    return lhs;
  }

  int32_t parse_and() {
    int32_t lhs = parse_unary();
    while (lit("/\\")) {
      int32_t rhs = parse_unary();
      lhs = f.add({FKind::And, 0, 0, lhs, rhs});
    }
    return lhs;
  }

  int32_t parse_quantifier(bool existential) {
    std::string binder = ident();
    uint32_t bid = f.var_id(binder);
    uint32_t bound = 0;
    bool bounded = false;
    std::string next = peek_ident();
    if (next == "in") {
      pos += 2;
      bound = var_ref(ident());
      bounded = true;
      if (bound == bid) err("bounded quantifier binder must differ from its bound");
    }
    skip_ws();
    if (!lit(".")) err("expected '.' after quantifier");
    scope.push_back(bid);
    int32_t body = parse_formula();
    scope.pop_back();
    FKind kind = bounded ? (existential ? FKind::BExists : FKind::BForall)
                         : (existential ? FKind::Exists : FKind::Forall);
    return f.add({kind, bid, bound, body, -1});
  }

  int32_t parse_unary() {
    std::string word = peek_ident();
    if (word == "exists") {
      pos += word.size();
      return parse_quantifier(true);
    }
    if (word == "forall") {
      pos += word.size();
      return parse_quantifier(false);
    }
    return parse_atom();
  }

  int32_t parse_atom() {
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      int32_t inner = parse_formula();
      if (!lit(")")) err("expected ')'");
      return inner;
    }
    std::string word = peek_ident();
    if (word.empty()) err("expected atom");
    if (word == "False") {
      pos += word.size();
      return f.add({FKind::Bot});
    }
    if (word == "sub") {
      pos += word.size();
      if (!lit("(")) err("expected '(' after sub");
      uint32_t x = var_ref(ident());
      if (!lit(",")) err("expected ',' in sub");
      uint32_t y = var_ref(ident());
      if (!lit(")")) err("expected ')'");
      // forall z in x. z in y, with a binder fresh for the formula
      uint32_t z = fresh_binder();
      int32_t memf = f.add({FKind::Mem, z, y, -1, -1});
      return f.add({FKind::BForall, z, x, memf, -1});
    }
    pos += word.size();
    uint32_t lhs = var_ref(word);
    skip_ws();
    if (lit("=")) {
      uint32_t rhs = var_ref(ident());
      return f.add({FKind::Eq, lhs, rhs, -1, -1});
    }
    std::string kw = peek_ident();
    if (kw == "in") {
      pos += 2;
      uint32_t rhs = var_ref(ident());
      return f.add({FKind::Mem, lhs, rhs, -1, -1});
    }
    err("expected 'in' or '=' after variable");
  }

  uint32_t fresh_binder() {
    for (uint32_t i = 0;; ++i) {
      std::string cand = i == 0 ? "z" : "z" + std::to_string(i);
      bool taken = false;
      for (const auto& v : f.vars)
        if (v == cand) taken = true;
      if (!taken) return f.var_id(cand);
    }
  }
};

} // namespace

ContextedFormula parse_formula(std::string_view text) {
  FParser p;
  p.text = text;
  ContextedFormula cf;
  if (!p.lit("[")) p.err("formula must start with a context '[x,y]'");
  p.skip_ws();
  if (!p.lit("]")) {
    while (true) {
      std::string name = p.ident();
      for (const auto& seen : cf.context)
        if (seen == name) p.err("duplicate context variable '" + name + "'");
      cf.context.push_back(name);
      p.scope.push_back(p.f.var_id(name));
      p.skip_ws();
      if (p.lit("]")) break;
      if (!p.lit(",")) p.err("expected ',' or ']' in context");
    }
  }
  if (!p.lit("|-")) p.err("expected '|-' after context");
  p.f.root = p.parse_formula();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input");
  cf.formula = std::move(p.f);
  return cf;
}

namespace {

int32_t desugar_node(const Formula& in, Formula& out, int32_t node) {
  if (node < 0) return -1;
  const FNode& n = in.nodes[node];
  switch (n.kind) {
    case FKind::Bot:
    case FKind::Mem:
    case FKind::Eq:
      return out.add(n);
    case FKind::And:
    case FKind::Or:
    case FKind::Imp: {
      int32_t l = desugar_node(in, out, n.l);
      int32_t r = desugar_node(in, out, n.r);
      return out.add({n.kind, 0, 0, l, r});
    }
    case FKind::Exists:
    case FKind::Forall: {
      int32_t body = desugar_node(in, out, n.l);
      return out.add({n.kind, n.v1, 0, body, -1});
    }
    case FKind::BExists: {
      int32_t body = desugar_node(in, out, n.l);
      int32_t mem = out.add({FKind::Mem, n.v1, n.v2, -1, -1});
      int32_t conj = out.add({FKind::And, 0, 0, mem, body});
      return out.add({FKind::Exists, n.v1, 0, conj, -1});
    }
    case FKind::BForall: {
      int32_t body = desugar_node(in, out, n.l);
      int32_t mem = out.add({FKind::Mem, n.v1, n.v2, -1, -1});
      int32_t imp = out.add({FKind::Imp, 0, 0, mem, body});
      return out.add({FKind::Forall, n.v1, 0, imp, -1});
    }
  }
  return -1;
}

} // namespace

ContextedFormula desugar_bounded(const ContextedFormula& cf) {
  ContextedFormula out;
  out.context = cf.context;
  out.formula.vars = cf.formula.vars;
  out.formula.root = desugar_node(cf.formula, out.formula, cf.formula.root);
  return out;
}

ContextedFormula rename_context_var(const ContextedFormula& cf, const std::string& from,
                                    const std::string& to) {
  ContextedFormula out = cf;
  for (auto& v : out.context)
    if (v == from) v = to;
  for (auto& v : out.formula.vars)
    if (v == from) v = to;
  return out;
}

std::string show_formula(const Formula& f, int32_t node) {
  if (node < 0) return "?";
  const FNode& n = f.nodes[node];
  switch (n.kind) {
    case FKind::Bot: return "False";
    case FKind::Mem: return f.vars[n.v1] + " in " + f.vars[n.v2];
    case FKind::Eq: return f.vars[n.v1] + " = " + f.vars[n.v2];
    case FKind::And: return "(" + show_formula(f, n.l) + " /\\ " + show_formula(f, n.r) + ")";
    case FKind::Or: return "(" + show_formula(f, n.l) + " \\/ " + show_formula(f, n.r) + ")";
    case FKind::Imp: return "(" + show_formula(f, n.l) + " -> " + show_formula(f, n.r) + ")";
    case FKind::Exists: return "exists " + f.vars[n.v1] + ". " + show_formula(f, n.l);
    case FKind::Forall: return "forall " + f.vars[n.v1] + ". " + show_formula(f, n.l);
    case FKind::BExists:
      return "exists " + f.vars[n.v1] + " in " + f.vars[n.v2] + ". " + show_formula(f, n.l);
    case FKind::BForall:
      return "forall " + f.vars[n.v1] + " in " + f.vars[n.v2] + ". " + show_formula(f, n.l);
  }
  return "?";
}

std::string ContextedFormula::show() const {
  std::string out = "[";
  for (size_t i = 0; i < context.size(); ++i) out += (i ? "," : "") + context[i];
  out += "] |- ";
  return out + show_formula(formula, formula.root);
}

} // namespace imca
