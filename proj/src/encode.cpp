#include "encode.hpp"

#include <algorithm>

#include "error.hpp"

namespace imca {

Elem Encoder::encode(TermId t) {
  std::vector<std::pair<NameId, Elem>> env;
  return encode_rec(t, env);
}

Elem Encoder::encode(TermId t, std::span<const std::pair<NameId, Elem>> env) {
  std::vector<std::pair<NameId, Elem>> stack(env.begin(), env.end());
  return encode_rec(t, stack);
}

Elem Encoder::encode_rec(TermId t, std::vector<std::pair<NameId, Elem>>& env) {
  const TermNode& n = pool_->node(t);
  if (n.tag == Tag::Param) return n.a;
  if (n.tag == Tag::Var) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == n.a) return it->second;
    fail(ErrKind::InvalidArgument, "cannot encode open term: unbound variable '" + pool_->name(n.a) + "'");
  }

  Key key;
  key.term = t;
  const auto& fv = pool_->free_vars(t);
  key.bindings.reserve(fv.size());
  for (NameId v : fv) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) {
        key.bindings.emplace_back(v, it->second);
        break;
      }
    // unbound free variables surface when the Var leaf is reached
  }
  if (key.bindings.size() != fv.size())
    fail(ErrKind::InvalidArgument, "cannot encode open term");
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  Elem result;
  if (n.tag == Tag::App) {
    Elem f = encode_rec(n.a, env);
    Elem a = encode_rec(n.b, env);
    result = alg_->apply(f, a);
  } else { // Abs
    const Lattice& lat = alg_->lattice();
    Elem acc = lat.top();
    for (Elem a = 0; a < lat.size(); ++a) {
      env.emplace_back(n.a, a);
      Elem body = encode_rec(n.b, env);
      env.pop_back();
      acc = lat.meet2(acc, alg_->imp(a, body));
    }
    result = acc;
  }
  memo_.emplace(std::move(key), result);
  return result;
}

namespace {

void skip_ws(std::string_view s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

std::string take_until(std::string_view s, size_t& i, std::string_view stops) {
  skip_ws(s, i);
  size_t start = i;
  while (i < s.size() && stops.find(s[i]) == std::string_view::npos) ++i;
  std::string out(s.substr(start, i - start));
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
  return out;
}

} // namespace

Judgement parse_judgement(AlgebraSession& session, std::string_view text) {
  size_t turnstile = text.find("|-");
  if (turnstile == std::string_view::npos)
    fail(ErrKind::Parse, "judgement must contain '|-'");
  std::string_view ctx_part = text.substr(0, turnstile);
  std::string_view rest = text.substr(turnstile + 2);

  Judgement j;
  size_t i = 0;
  skip_ws(ctx_part, i);
  while (i < ctx_part.size()) {
    std::string name = take_until(ctx_part, i, ":");
    if (i >= ctx_part.size() || ctx_part[i] != ':')
      fail(ErrKind::Parse, "context entry must look like 'x:label'");
    ++i;
    std::string label = take_until(ctx_part, i, ",");
    if (name.empty() || label.empty()) fail(ErrKind::Parse, "empty context entry");
    Elem el = session.algebra->find(label);
    if (el == kNoElem) fail(ErrKind::Parse, "unknown element label '" + label + "'");
    j.context.emplace_back(session.pool.name_id(name), el);
    if (i < ctx_part.size() && ctx_part[i] == ',') ++i;
    skip_ws(ctx_part, i);
  }

  size_t colon = rest.rfind(':');
  if (colon == std::string_view::npos)
    fail(ErrKind::Parse, "judgement must end with ': label'");
  std::string term_text(rest.substr(0, colon));
  size_t k = colon + 1;
  std::string target = take_until(rest, k, "");
  Elem el = session.algebra->find(target);
  if (el == kNoElem) fail(ErrKind::Parse, "unknown element label '" + target + "'");
  j.term = parse_term(session.pool, term_text, session.algebra.get());
  j.target = el;
  return j;
}

bool check_sequent(AlgebraSession& session, const Judgement& j) {
  for (NameId v : session.pool.free_vars(j.term)) {
    bool found = false;
    for (const auto& [name, el] : j.context)
      if (name == v) found = true;
    if (!found)
      fail(ErrKind::InvalidArgument,
           "free variable '" + session.pool.name(v) + "' not bound by the context");
  }
  Elem value = session.encoder.encode(j.term, j.context);
  return session.algebra->leq(value, j.target);
}

} // namespace imca
