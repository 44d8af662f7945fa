#include "term.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"

namespace imca {

namespace {

uint64_t node_hash(const TermNode& n) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  mix(static_cast<uint64_t>(n.tag));
  mix(n.a);
  mix(n.b);
  return h;
}

std::vector<NameId> merge_sorted(const std::vector<NameId>& a, const std::vector<NameId>& b) {
  std::vector<NameId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

} // namespace

NameId TermPool::name_id(std::string_view name) {
  auto it = name_ids_.find(std::string(name));
  if (it != name_ids_.end()) return it->second;
  NameId id = static_cast<NameId>(names_.size());
  names_.emplace_back(name);
  name_ids_.emplace(names_.back(), id);
  return id;
}

TermId TermPool::make(TermNode n) {
  uint64_t h = node_hash(n);
  auto& bucket = intern_[h];
  for (TermId t : bucket) {
    const TermNode& m = nodes_[t];
    if (m.tag == n.tag && m.a == n.a && m.b == n.b) return t;
  }
  TermId t = static_cast<TermId>(nodes_.size());
  nodes_.push_back(n);
  switch (n.tag) {
    case Tag::Var: fvs_.push_back({n.a}); break;
    case Tag::Param: fvs_.push_back({}); break;
    case Tag::App: fvs_.push_back(merge_sorted(fvs_[n.a], fvs_[n.b])); break;
    case Tag::Abs: {
      std::vector<NameId> fv = fvs_[n.b];
      fv.erase(std::remove(fv.begin(), fv.end(), n.a), fv.end());
      fvs_.push_back(std::move(fv));
      break;
    }
  }
  bucket.push_back(t);
  return t;
}

TermId TermPool::var(NameId name) { return make({Tag::Var, name, 0}); }
TermId TermPool::param(Elem value) { return make({Tag::Param, value, 0}); }
TermId TermPool::app(TermId fn, TermId arg) { return make({Tag::App, fn, arg}); }
TermId TermPool::abs(NameId binder, TermId body) { return make({Tag::Abs, binder, body}); }

bool TermPool::free_in(TermId t, NameId v) const {
  const auto& fv = fvs_[t];
  return std::binary_search(fv.begin(), fv.end(), v);
}

NameId TermPool::fresh_name(NameId base, TermId avoid1, TermId avoid2) {
  const std::string& stem = names_[base];
  for (uint32_t i = 1;; ++i) {
    NameId cand = name_id(stem + std::to_string(i));
    if (!free_in(avoid1, cand) && !free_in(avoid2, cand)) return cand;
  }
}

TermId TermPool::subst(TermId t, NameId var, TermId value) {
  if (!free_in(t, var)) return t;
  TermNode n = nodes_[t];
  switch (n.tag) {
    case Tag::Var: return value; // n.a == var by the free_in guard
    case Tag::Param: return t;
    case Tag::App: return app(subst(n.a, var, value), subst(n.b, var, value));
    case Tag::Abs: {
      if (n.a == var) return t;
      NameId binder = n.a;
      TermId body = n.b;
      if (free_in(value, binder)) {
        NameId renamed = fresh_name(binder, body, value);
        body = subst(body, binder, this->var(renamed));
        binder = renamed;
      }
      return abs(binder, subst(body, var, value));
    }
  }
  return t;
}

std::optional<TermId> TermPool::beta_step(TermId t) {
  TermNode n = nodes_[t];
  switch (n.tag) {
    case Tag::Var:
    case Tag::Param: return std::nullopt;
    case Tag::Abs: {
      auto body = beta_step(n.b);
      if (body) return abs(n.a, *body);
      return std::nullopt;
    }
    case Tag::App: {
      TermNode fn = nodes_[n.a];
      if (fn.tag == Tag::Abs) return subst(fn.b, fn.a, n.b);
      if (auto left = beta_step(n.a)) return app(*left, n.b);
      if (auto right = beta_step(n.b)) return app(n.a, *right);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

TermPool::Norm TermPool::normalize(TermId t, uint32_t fuel) {
  uint32_t steps = 0;
  while (steps < fuel) {
    auto next = beta_step(t);
    if (!next) return {t, true, steps};
    t = *next;
    ++steps;
  }
  return {t, !beta_step(t).has_value(), steps};
}

TermId TermPool::fix(TermId f) {
  NameId x = name_id("x");
  if (free_in(f, x)) x = fresh_name(x, f, f);
  TermId half = abs(x, app(f, app(var(x), var(x))));
  return app(half, half);
}

std::string TermPool::show(TermId t, const Algebra* alg) const {
  const TermNode& n = nodes_[t];
  switch (n.tag) {
    case Tag::Var: return names_[n.a];
    case Tag::Param:
      if (alg && n.a < alg->size()) return "#" + alg->label(n.a);
      return "#" + std::to_string(n.a);
    case Tag::Abs: return "\\" + names_[n.a] + "." + show(n.b, alg);
    case Tag::App: {
      const TermNode& fn = nodes_[n.a];
      std::string l = show(n.a, alg);
      if (fn.tag == Tag::Abs) l = "(" + l + ")";
      const TermNode& arg = nodes_[n.b];
      std::string r = show(n.b, alg);
      if (arg.tag == Tag::App || arg.tag == Tag::Abs) r = "(" + r + ")";
      return l + " " + r;
    }
  }
  return "?";
}

Combinators Combinators::make(TermPool& pool) {
  auto v = [&](const char* s) { return pool.var(s); };
  auto lam = [&](const char* s, TermId b) { return pool.abs(s, b); };
  auto ap = [&](TermId a, TermId b) { return pool.app(a, b); };

  Combinators c{};
  c.k = lam("x", lam("y", v("x")));
  c.kbar = lam("x", lam("y", v("y")));
  c.s = lam("x", lam("y", lam("z", ap(ap(v("x"), v("z")), ap(v("y"), v("z"))))));
  c.p = lam("x", lam("y", lam("z", ap(ap(v("z"), v("x")), v("y")))));
  c.p1 = lam("x", ap(v("x"), c.k));
  c.p2 = lam("x", ap(v("x"), c.kbar));
  c.j1 = lam("x", lam("z", lam("w", ap(v("z"), v("x")))));
  c.j2 = lam("x", lam("z", lam("w", ap(v("w"), v("x")))));
  c.e = lam("x", lam("z", ap(v("z"), v("x"))));
  // Curry's fixpoint, packaged: y f reduces to the unfolded form in one step
  TermId inner = lam("x", ap(v("f"), ap(v("x"), v("x"))));
  c.y = lam("f", ap(inner, inner));
  return c;
}

namespace {

struct Parser {
  TermPool& pool;
  const Algebra* alg;
  std::string_view text;
  size_t pos = 0;
  Combinators comb;
  std::vector<NameId> binders;

  Parser(TermPool& p, const Algebra* a, std::string_view t)
      : pool(p), alg(a), text(t), comb(Combinators::make(p)) {}

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrKind::Parse, "term parse error at offset " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) err("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  std::optional<TermId> builtin(const std::string& name) const {
    if (name == "k") return comb.k;
    if (name == "kbar") return comb.kbar;
    if (name == "s") return comb.s;
    if (name == "p") return comb.p;
    if (name == "p1") return comb.p1;
    if (name == "p2") return comb.p2;
    if (name == "j1") return comb.j1;
    if (name == "j2") return comb.j2;
    if (name == "e") return comb.e;
    if (name == "y") return comb.y;
    return std::nullopt;
  }

  bool bound(NameId id) const {
    return std::find(binders.begin(), binders.end(), id) != binders.end();
  }

  TermId parse_atom_ident() {
    std::string name = ident();
    NameId id = pool.name_id(name);
    if (bound(id)) return pool.var(id);
    if (auto b = builtin(name)) return *b;
    return pool.var(id);
  }

  TermId parse_param() {
    // '#' already consumed
    size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '\\' || c == '.')
        break;
      ++pos;
    }
    if (pos == start) err("expected element label after '#'");
    std::string label(text.substr(start, pos - start));
    if (!alg) err("parameters require an algebra");
    Elem el = alg->find(label);
    if (el == kNoElem) err("unknown element label '" + label + "'");
    return pool.param(el);
  }

  std::optional<TermId> try_atom() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    char c = text[pos];
    if (c == '(') {
      ++pos;
      TermId t = parse_term();
      skip_ws();
      if (!eat(')')) err("expected ')'");
      return t;
    }
    if (c == '#') {
      ++pos;
      return parse_param();
    }
    if (ident_char(c) && !std::isdigit(static_cast<unsigned char>(c))) return parse_atom_ident();
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_atom_ident();
    return std::nullopt;
  }

  TermId parse_term() {
    skip_ws();
    if (pos < text.size() && text[pos] == '\\') {
      ++pos;
      std::string name = ident();
      NameId id = pool.name_id(name);
      skip_ws();
      if (!eat('.')) err("expected '.' after binder");
      binders.push_back(id);
      TermId body = parse_term();
      binders.pop_back();
      return pool.abs(id, body);
    }
    auto first = try_atom();
    if (!first) err("expected term");
    TermId t = *first;
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '\\') {
        // allow `f \x. b` to parse the abstraction as the final argument
        TermId arg = parse_term();
        t = pool.app(t, arg);
        return t;
      }
      auto next = try_atom();
      if (!next) break;
      t = pool.app(t, *next);
    }
    return t;
  }
};

} // namespace

TermId parse_term(TermPool& pool, std::string_view text, const Algebra* alg) {
  Parser p(pool, alg, text);
  TermId t = p.parse_term();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input");
  return t;
}

} // namespace imca
