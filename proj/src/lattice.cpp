#include "lattice.hpp"

#include <algorithm>

#include "error.hpp"

namespace imca {

namespace {

// Greatest element of the set marked by `in`, or kNoElem if none dominates
// all the others. Antisymmetry makes it unique.
Elem greatest_of(const LatticeCandidate& c, const std::vector<uint8_t>& in) {
  uint32_t n = c.size();
  for (Elem m = 0; m < n; ++m) {
    if (!in[m]) continue;
    bool top_of_set = true;
    for (Elem x = 0; x < n && top_of_set; ++x)
      if (in[x] && !c.rel(x, m)) top_of_set = false;
    if (top_of_set) return m;
  }
  return kNoElem;
}

Elem least_of(const LatticeCandidate& c, const std::vector<uint8_t>& in) {
  uint32_t n = c.size();
  for (Elem m = 0; m < n; ++m) {
    if (!in[m]) continue;
    bool bottom_of_set = true;
    for (Elem x = 0; x < n && bottom_of_set; ++x)
      if (in[x] && !c.rel(m, x)) bottom_of_set = false;
    if (bottom_of_set) return m;
  }
  return kNoElem;
}

// Lower bounds of {a,b}.
std::vector<uint8_t> common_lower(const LatticeCandidate& c, Elem a, Elem b) {
  uint32_t n = c.size();
  std::vector<uint8_t> in(n, 0);
  for (Elem x = 0; x < n; ++x) in[x] = c.rel(x, a) && c.rel(x, b);
  return in;
}

std::vector<uint8_t> common_upper(const LatticeCandidate& c, Elem a, Elem b) {
  uint32_t n = c.size();
  std::vector<uint8_t> in(n, 0);
  for (Elem x = 0; x < n; ++x) in[x] = c.rel(a, x) && c.rel(b, x);
  return in;
}

std::string subset_label(const LatticeCandidate& c, const std::vector<uint8_t>& in) {
  std::string s = "{";
  bool first = true;
  for (Elem x = 0; x < c.size(); ++x) {
    if (!in[x]) continue;
    if (!first) s += ",";
    s += c.labels[x];
    first = false;
  }
  return s + "}";
}

} // namespace

ValidationReport validate_lattice(const LatticeCandidate& cand, uint32_t subset_bound) {
  ValidationReport rep;
  uint32_t n = cand.size();
  if (n == 0) {
    rep.add("nonempty", {});
    return rep;
  }
  if (cand.leq.size() != static_cast<size_t>(n) * n) {
    rep.add("relation-shape", {});
    return rep;
  }
  for (Elem a = 0; a < n; ++a)
    if (!cand.rel(a, a)) rep.add("reflexivity", {cand.labels[a]});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (a != b && cand.rel(a, b) && cand.rel(b, a))
        rep.add("antisymmetry", {cand.labels[a], cand.labels[b]});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!cand.rel(a, b)) continue;
      for (Elem c = 0; c < n; ++c)
        if (cand.rel(b, c) && !cand.rel(a, c))
          rep.add("transitivity", {cand.labels[a], cand.labels[b], cand.labels[c]});
    }
  if (!rep.ok) return rep; // bound computations assume a partial order

  std::vector<uint8_t> all(n, 1);
  if (greatest_of(cand, all) == kNoElem) rep.add("top-exists", {});
  if (least_of(cand, all) == kNoElem) rep.add("bottom-exists", {});

  if (n <= subset_bound) {
    // every subset, including the empty one, must have a glb and a lub
    std::vector<uint8_t> in(n, 0), bounds(n, 0);
    for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      for (Elem x = 0; x < n; ++x) in[x] = (mask >> x) & 1;
      for (Elem x = 0; x < n; ++x) {
        bool lower = true;
        for (Elem y = 0; y < n && lower; ++y)
          if (in[y] && !cand.rel(x, y)) lower = false;
        bounds[x] = lower;
      }
      if (greatest_of(cand, bounds) == kNoElem)
        rep.add("meet-exists", {subset_label(cand, in)});
      for (Elem x = 0; x < n; ++x) {
        bool upper = true;
        for (Elem y = 0; y < n && upper; ++y)
          if (in[y] && !cand.rel(y, x)) upper = false;
        bounds[x] = upper;
      }
      if (least_of(cand, bounds) == kNoElem)
        rep.add("join-exists", {subset_label(cand, in)});
    }
  } else {
    // binary closure: with top and bottom this certifies completeness of a
    // finite poset
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        if (greatest_of(cand, common_lower(cand, a, b)) == kNoElem)
          rep.add("meet-exists", {cand.labels[a], cand.labels[b]});
        if (least_of(cand, common_upper(cand, a, b)) == kNoElem)
          rep.add("join-exists", {cand.labels[a], cand.labels[b]});
      }
    rep.notes.push_back("subset sweep skipped (size above bound); binary closure checked");
  }
  return rep;
}

void Lattice::build_tables() {
  LatticeCandidate cand{labels_, leq_};
  meet_.assign(static_cast<size_t>(n_) * n_, kNoElem);
  join_.assign(static_cast<size_t>(n_) * n_, kNoElem);
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) {
      meet_[static_cast<size_t>(a) * n_ + b] = greatest_of(cand, common_lower(cand, a, b));
      join_[static_cast<size_t>(a) * n_ + b] = least_of(cand, common_upper(cand, a, b));
    }
  std::vector<uint8_t> all(n_, 1);
  top_ = greatest_of(cand, all);
  bottom_ = least_of(cand, all);
}

Lattice Lattice::from_candidate(const LatticeCandidate& cand) {
  ValidationReport rep = validate_lattice(cand);
  if (!rep.ok) {
    std::string msg = "not a complete lattice:";
    for (const auto& v : rep.violations) {
      msg += " " + v.law;
      if (!v.witness.empty()) {
        msg += "(";
        for (size_t i = 0; i < v.witness.size(); ++i)
          msg += (i ? "," : "") + v.witness[i];
        msg += ")";
      }
    }
    fail(ErrKind::Validation, msg);
  }
  Lattice l;
  l.n_ = cand.size();
  l.labels_ = cand.labels;
  l.leq_ = cand.leq;
  l.build_tables();
  return l;
}

LatticeCandidate close_order(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
  uint32_t n = static_cast<uint32_t>(labels.size());
  LatticeCandidate cand;
  cand.labels = std::move(labels);
  cand.leq.assign(static_cast<size_t>(n) * n, 0);
  auto idx = [&](const std::string& s) -> Elem {
    for (Elem i = 0; i < n; ++i)
      if (cand.labels[i] == s) return i;
    fail(ErrKind::InvalidArgument, "order pair references unknown label '" + s + "'");
  };
  for (Elem a = 0; a < n; ++a) cand.leq[static_cast<size_t>(a) * n + a] = 1;
  for (const auto& [lo, hi] : pairs) cand.leq[static_cast<size_t>(idx(lo)) * n + idx(hi)] = 1;
  // transitive closure
  for (Elem k = 0; k < n; ++k)
    for (Elem a = 0; a < n; ++a) {
      if (!cand.rel(a, k)) continue;
      for (Elem b = 0; b < n; ++b)
        if (cand.rel(k, b)) cand.leq[static_cast<size_t>(a) * n + b] = 1;
    }
  return cand;
}

Lattice Lattice::from_order(std::vector<std::string> labels,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  return from_candidate(close_order(std::move(labels), pairs));
}

Lattice Lattice::chain(uint32_t n) {
  if (n < 1) fail(ErrKind::InvalidArgument, "chain needs at least one element");
  LatticeCandidate cand;
  cand.labels.reserve(n);
  for (uint32_t i = 0; i < n; ++i) cand.labels.push_back(std::to_string(i));
  cand.leq.assign(static_cast<size_t>(n) * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) cand.leq[static_cast<size_t>(a) * n + b] = 1;
  return from_candidate(cand);
}

Lattice Lattice::powerset(uint32_t base) {
  if (base > 16) fail(ErrKind::Budget, "powerset base above 16 exceeds the enumeration budget");
  uint32_t n = 1u << base;
  LatticeCandidate cand;
  cand.labels.reserve(n);
  for (uint32_t mask = 0; mask < n; ++mask) {
    std::string s = "{";
    bool first = true;
    for (uint32_t i = 0; i < base; ++i) {
      if (!(mask >> i & 1)) continue;
      if (!first) s += ",";
      s += static_cast<char>('a' + i);
      first = false;
    }
    cand.labels.push_back(s + "}");
  }
  cand.leq.assign(static_cast<size_t>(n) * n, 0);
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      cand.leq[static_cast<size_t>(a) * n + b] = ((a & ~b) == 0);
  return from_candidate(cand);
}

void Lattice::check_elem(Elem a, const char* what) const {
  if (a >= n_) fail(ErrKind::InvalidArgument, std::string(what) + ": element does not belong to this lattice");
}

Elem Lattice::meet(std::span<const Elem> subset) const {
  Elem acc = top_;
  for (Elem x : subset) {
    check_elem(x, "meet");
    acc = meet2(acc, x);
  }
  return acc;
}

Elem Lattice::join(std::span<const Elem> subset) const {
  Elem acc = bottom_;
  for (Elem x : subset) {
    check_elem(x, "join");
    acc = join2(acc, x);
  }
  return acc;
}

Elem Lattice::find(std::string_view label) const {
  for (Elem i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  return kNoElem;
}

LatticeCandidate Lattice::to_candidate() const { return LatticeCandidate{labels_, leq_}; }

} // namespace imca
