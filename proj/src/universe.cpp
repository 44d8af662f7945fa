#include "universe.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"

namespace imca {

namespace {

uint64_t graph_hash(const std::vector<std::pair<WId, Elem>>& graph) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (auto [w, e] : graph) {
    h = (h ^ w) * 0x100000001b3ULL;
    h = (h ^ e) * 0x100000001b3ULL;
  }
  return h;
}

uint64_t pair_key(WId a, WId b) { return (static_cast<uint64_t>(a) << 32) | b; }

} // namespace

WId Universe::intern(WNode node) {
  uint64_t h = graph_hash(node.graph);
  auto& bucket = intern_[h];
  for (WId w : bucket)
    if (pool_[w].graph == node.graph) return w;
  WId w = static_cast<WId>(pool_.size());
  pool_.push_back(std::move(node));
  bucket.push_back(w);
  return w;
}

WId Universe::make(std::vector<std::pair<WId, Elem>> graph) {
  std::sort(graph.begin(), graph.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (size_t i = 0; i + 1 < graph.size(); ++i)
    if (graph[i].first == graph[i + 1].first)
      fail(ErrKind::InvalidArgument, "graph assigns two values to one member");
  WNode node;
  uint32_t rank = 1;
  for (auto [w, e] : graph) {
    if (w >= pool_.size()) fail(ErrKind::InvalidArgument, "graph member does not exist yet");
    if (e >= session_->algebra->size())
      fail(ErrKind::InvalidArgument, "graph value is not an element of the algebra");
    rank = std::max(rank, pool_[w].rank + 1);
  }
  if (rank > limits_.max_rank)
    fail(ErrKind::Budget, "rank overflow: element would have rank " + std::to_string(rank) +
                              " above the cap " + std::to_string(limits_.max_rank));
  node.graph = std::move(graph);
  node.rank = rank;
  return intern(std::move(node));
}

Universe Universe::build(std::shared_ptr<AlgebraSession> session, uint32_t depth,
                         UniverseLimits limits) {
  if (depth < 1) fail(ErrKind::InvalidArgument, "universe depth must be at least 1");
  Universe u;
  u.session_ = std::move(session);
  u.depth_ = depth;
  u.limits_ = limits;
  u.pool_.push_back(WNode{{}, 1});
  u.intern_[graph_hash({})].push_back(0);
  u.strata_.push_back({0});

  uint32_t n = u.session_->algebra->size();
  for (uint32_t k = 2; k <= depth; ++k) {
    const std::vector<WId> base = u.strata_.back();
    // |Part(W_{k-1}, A)| = (|A|+1)^{|W_{k-1}|}, guarded against overflow
    uint64_t count = 1;
    bool over = false;
    for (size_t i = 0; i < base.size() && !over; ++i) {
      if (count > limits.stratum_budget / (n + 1))
        over = true;
      else
        count *= (n + 1);
    }
    if (over || count > limits.stratum_budget)
      fail(ErrKind::Budget, "stratum W_" + std::to_string(k) + " would hold " +
                                (over ? "more than " : "") + std::to_string(count) +
                                " elements, above the budget " +
                                std::to_string(limits.stratum_budget));

    std::vector<WId> stratum_ids;
    std::vector<uint32_t> odometer(base.size(), 0); // 0 = absent, 1..n = element+1
    std::vector<std::pair<WId, Elem>> graph;
    while (true) {
      graph.clear();
      for (size_t i = 0; i < base.size(); ++i)
        if (odometer[i] != 0) graph.emplace_back(base[i], odometer[i] - 1);
      stratum_ids.push_back(u.make(graph));
      size_t pos = 0;
      while (pos < odometer.size() && odometer[pos] == n) odometer[pos++] = 0;
      if (pos == odometer.size()) break;
      ++odometer[pos];
    }
    std::sort(stratum_ids.begin(), stratum_ids.end());
    stratum_ids.erase(std::unique(stratum_ids.begin(), stratum_ids.end()), stratum_ids.end());
    u.strata_.push_back(std::move(stratum_ids));
  }
  return u;
}

const std::vector<WId>& Universe::stratum(uint32_t k) const {
  if (k < 1 || k > depth_) fail(ErrKind::InvalidArgument, "stratum index out of range");
  return strata_[k - 1];
}

Elem Universe::mem_value(WId a, WId b) {
  uint64_t key = pair_key(a, b);
  auto it = mem_memo_.find(key);
  if (it != mem_memo_.end()) return it->second;
  const Algebra& alg = *session_->algebra;
  std::vector<Elem> family;
  family.reserve(pool_[b].graph.size());
  for (auto [t, val] : pool_[b].graph) family.push_back(alg.conj(val, eq_value(t, a)));
  Elem result = uexists(alg, family);
  mem_memo_.emplace(key, result);
  return result;
}

Elem Universe::subseteq_value(WId a, WId b) {
  uint64_t key = pair_key(a, b);
  auto it = sub_memo_.find(key);
  if (it != sub_memo_.end()) return it->second;
  const Algebra& alg = *session_->algebra;
  const Lattice& lat = alg.lattice();
  Elem acc = lat.top();
  for (auto [t, val] : pool_[a].graph) acc = lat.meet2(acc, alg.imp(val, mem_value(t, b)));
  sub_memo_.emplace(key, acc);
  return acc;
}

Elem Universe::eq_value(WId a, WId b) {
  uint64_t key = pair_key(a, b);
  auto it = eq_memo_.find(key);
  if (it != eq_memo_.end()) return it->second;
  Elem result = session_->algebra->conj(subseteq_value(a, b), subseteq_value(b, a));
  eq_memo_.emplace(key, result);
  return result;
}

void Universe::clear_value_memos() {
  mem_memo_.clear();
  eq_memo_.clear();
  sub_memo_.clear();
}

WId Universe::pair_witness(WId a, WId b) {
  Elem top = session_->algebra->top();
  if (a == b) return make({{a, top}});
  return make({{a, top}, {b, top}});
}

WId Universe::union_witness(WId a) {
  Elem top = session_->algebra->top();
  std::vector<std::pair<WId, Elem>> graph;
  for (auto [u, uval] : pool_[a].graph)
    for (auto [w, wval] : pool_[u].graph) graph.emplace_back(w, top);
  std::sort(graph.begin(), graph.end());
  graph.erase(std::unique(graph.begin(), graph.end()), graph.end());
  return make(std::move(graph));
}

WId Universe::power_witness(WId a) {
  const Algebra& alg = *session_->algebra;
  uint32_t n = alg.size();
  std::vector<WId> dom;
  for (auto [u, val] : pool_[a].graph) dom.push_back(u);
  uint64_t count = 1;
  for (size_t i = 0; i < dom.size(); ++i) {
    if (count > limits_.stratum_budget / n)
      fail(ErrKind::Budget, "power witness domain |A|^" + std::to_string(dom.size()) +
                                " exceeds the budget");
    count *= n;
  }
  std::vector<std::pair<WId, Elem>> graph;
  std::vector<Elem> odometer(dom.size(), 0);
  std::vector<std::pair<WId, Elem>> total;
  while (true) {
    total.clear();
    for (size_t i = 0; i < dom.size(); ++i) total.emplace_back(dom[i], odometer[i]);
    graph.emplace_back(make(total), alg.top());
    size_t pos = 0;
    while (pos < odometer.size() && odometer[pos] == n - 1) odometer[pos++] = 0;
    if (pos == odometer.size()) break;
    ++odometer[pos];
  }
  std::sort(graph.begin(), graph.end());
  graph.erase(std::unique(graph.begin(), graph.end()), graph.end());
  return make(std::move(graph));
}

WId Universe::power_relabel(WId a, WId c) {
  std::vector<WId> dom;
  for (auto [u, val] : pool_[a].graph) dom.push_back(u);
  for (auto [u, val] : pool_[c].graph) dom.push_back(u);
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  const Algebra& alg = *session_->algebra;
  std::vector<std::pair<WId, Elem>> graph;
  graph.reserve(dom.size());
  for (WId u : dom) graph.emplace_back(u, alg.conj(mem_value(u, a), mem_value(u, c)));
  return make(std::move(graph));
}

WId Universe::sep_witness(WId a, const std::function<Elem(WId)>& phi) {
  const Algebra& alg = *session_->algebra;
  std::vector<std::pair<WId, Elem>> graph;
  graph.reserve(pool_[a].graph.size());
  for (auto [u, val] : pool_[a].graph) graph.emplace_back(u, alg.conj(val, phi(u)));
  return make(std::move(graph));
}

Elem Universe::numeral_elem(uint32_t n) {
  while (church_elems_.size() <= n) {
    uint32_t m = static_cast<uint32_t>(church_elems_.size());
    TermPool& pool = session_->pool;
    NameId f = pool.name_id("f"), x = pool.name_id("x");
    TermId body = pool.var(x);
    for (uint32_t i = 0; i < m; ++i) body = pool.app(pool.var(f), body);
    TermId church = pool.abs(f, pool.abs(x, body));
    church_terms_.push_back(church);
    church_elems_.push_back(session_->encoder.encode(church));
  }
  return church_elems_[n];
}

WId Universe::numeral(uint32_t n) {
  while (numerals_.size() <= n) {
    uint32_t m = static_cast<uint32_t>(numerals_.size());
    std::vector<std::pair<WId, Elem>> graph;
    graph.reserve(m);
    for (uint32_t i = 0; i < m; ++i) graph.emplace_back(numerals_[i], numeral_elem(i));
    numerals_.push_back(make(std::move(graph)));
  }
  return numerals_[n];
}

WId Universe::omega_approx(uint32_t bound) {
  std::vector<std::pair<WId, Elem>> graph;
  graph.reserve(bound);
  for (uint32_t i = 0; i < bound; ++i) graph.emplace_back(numeral(i), numeral_elem(i));
  return make(std::move(graph));
}

WId Universe::collection_witness(uint32_t k) {
  Elem top = session_->algebra->top();
  std::vector<std::pair<WId, Elem>> graph;
  for (WId w : stratum(k)) graph.emplace_back(w, top);
  return make(std::move(graph));
}

std::string Universe::show(WId w) const {
  const WNode& n = pool_[w];
  if (n.graph.empty()) return "{}";
  std::string out = "{";
  for (size_t i = 0; i < n.graph.size(); ++i) {
    if (i) out += ", ";
    out += show(n.graph[i].first) + ":" + session_->algebra->label(n.graph[i].second);
  }
  return out + "}";
}

namespace {

struct WParser {
  Universe& u;
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrKind::Parse, "element literal parse error at offset " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  WId parse() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '{') err("expected '{'");
    ++pos;
    std::vector<std::pair<WId, Elem>> graph;
    skip_ws();
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return u.make(std::move(graph));
    }
    while (true) {
      WId member = parse();
      skip_ws();
      if (pos >= text.size() || text[pos] != ':') err("expected ':' after member");
      ++pos;
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && text[pos] != ',' && text[pos] != '}' &&
             !std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
      std::string label(text.substr(start, pos - start));
      Elem el = u.algebra().find(label);
      if (el == kNoElem) err("unknown element label '" + label + "'");
      graph.emplace_back(member, el);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        return u.make(std::move(graph));
      }
      err("expected ',' or '}'");
    }
  }
};

} // namespace

WId Universe::parse_welement(std::string_view text) {
  WParser p{*this, text};
  WId w = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input");
  return w;
}

} // namespace imca
