#include "algebra.hpp"

#include <algorithm>

#include "error.hpp"

namespace imca {

Elem combinator_k(const Lattice& lat, std::span<const Elem> imp) {
  uint32_t n = lat.size();
  auto at = [&](Elem a, Elem b) { return imp[static_cast<size_t>(a) * n + b]; };
  Elem acc = lat.top();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) acc = lat.meet2(acc, at(a, at(b, a)));
  return acc;
}

Elem combinator_s(const Lattice& lat, std::span<const Elem> imp) {
  uint32_t n = lat.size();
  auto at = [&](Elem a, Elem b) { return imp[static_cast<size_t>(a) * n + b]; };
  Elem acc = lat.top();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        acc = lat.meet2(acc, at(at(a, at(b, c)), at(at(a, b), at(a, c))));
  return acc;
}

namespace {

Elem peirce_meet(const Lattice& lat, std::span<const Elem> imp) {
  uint32_t n = lat.size();
  auto at = [&](Elem a, Elem b) { return imp[static_cast<size_t>(a) * n + b]; };
  Elem acc = lat.top();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) acc = lat.meet2(acc, at(at(at(a, b), a), a));
  return acc;
}

// Witnesses are capped per law so one noisy failure cannot crowd the other
// laws out of the report.
constexpr size_t kMaxWitnessesPerLaw = 8;

bool room(const ValidationReport& rep, const char* law) {
  size_t count = 0;
  for (const auto& v : rep.violations)
    if (v.law == law) ++count;
  return count < kMaxWitnessesPerLaw;
}

} // namespace

ValidationReport validate_algebra(const AlgebraCandidate& cand, uint32_t subset_bound) {
  ValidationReport rep;
  const Lattice& lat = cand.lattice;
  uint32_t n = lat.size();
  if (cand.imp.size() != static_cast<size_t>(n) * n || cand.in_sigma.size() != n) {
    rep.add("table-shape", {});
    return rep;
  }
  for (Elem x : cand.imp)
    if (x >= n) {
      rep.add("table-shape", {});
      return rep;
    }
  auto at = [&](Elem a, Elem b) { return cand.imp[static_cast<size_t>(a) * n + b]; };

  // anti-monotone in the first component
  for (Elem a = 0; a < n; ++a)
    for (Elem a2 = 0; a2 < n; ++a2) {
      if (!lat.leq(a2, a)) continue;
      for (Elem b = 0; b < n; ++b)
        if (!lat.leq(at(a, b), at(a2, b)) && room(rep, "imp-anti-monotone-left"))
          rep.add("imp-anti-monotone-left", {lat.label(a2), lat.label(a), lat.label(b)});
    }
  // monotone in the second component
  for (Elem b = 0; b < n; ++b)
    for (Elem b2 = 0; b2 < n; ++b2) {
      if (!lat.leq(b, b2)) continue;
      for (Elem a = 0; a < n; ++a)
        if (!lat.leq(at(a, b), at(a, b2)) && room(rep, "imp-monotone-right"))
          rep.add("imp-monotone-right", {lat.label(a), lat.label(b), lat.label(b2)});
    }

  // a -> meet(S) = meet(a -> s). For finite lattices the binary and empty
  // cases generate all subsets; small carriers get the full sweep anyway.
  if (n <= subset_bound && n <= 20) {
    std::vector<Elem> subset, imps;
    for (Elem a = 0; a < n; ++a)
      for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        subset.clear();
        imps.clear();
        for (Elem x = 0; x < n; ++x)
          if (mask >> x & 1) {
            subset.push_back(x);
            imps.push_back(at(a, x));
          }
        if (at(a, lat.meet(subset)) != lat.meet(imps) && room(rep, "imp-meet-distribution")) {
          std::string label = "{";
          for (size_t i = 0; i < subset.size(); ++i)
            label += (i ? "," : "") + lat.label(subset[i]);
          rep.add("imp-meet-distribution", {lat.label(a), label + "}"});
        }
      }
  } else {
    for (Elem a = 0; a < n; ++a) {
      if (at(a, lat.top()) != lat.top() && room(rep, "imp-meet-distribution"))
        rep.add("imp-meet-distribution", {lat.label(a), "{}"});
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (at(a, lat.meet2(b, c)) != lat.meet2(at(a, b), at(a, c)) &&
              room(rep, "imp-meet-distribution"))
            rep.add("imp-meet-distribution", {lat.label(a), lat.label(b), lat.label(c)});
    }
    rep.notes.push_back("distribution checked via empty/binary meets (equivalent for finite lattices)");
  }

  // separator: upward closed, modus-ponens closed, contains K and S
  for (Elem a = 0; a < n; ++a) {
    if (!cand.in_sigma[a]) continue;
    for (Elem b = 0; b < n; ++b)
      if (lat.leq(a, b) && !cand.in_sigma[b] && room(rep, "separator-upward-closed"))
        rep.add("separator-upward-closed", {lat.label(a), lat.label(b)});
  }
  for (Elem a = 0; a < n; ++a) {
    if (!cand.in_sigma[a]) continue;
    for (Elem b = 0; b < n; ++b)
      if (cand.in_sigma[at(a, b)] && !cand.in_sigma[b] && room(rep, "separator-modus-ponens"))
        rep.add("separator-modus-ponens", {lat.label(a), lat.label(b)});
  }
  Elem k = combinator_k(lat, cand.imp);
  Elem s = combinator_s(lat, cand.imp);
  if (!cand.in_sigma[k]) rep.add("separator-contains-k", {lat.label(k)});
  if (!cand.in_sigma[s]) rep.add("separator-contains-s", {lat.label(s)});
  rep.notes.push_back("S read as a meet over a, b and c");
  return rep;
}

HeytingResult heyting_implication(const Lattice& lat) {
  uint32_t n = lat.size();
  HeytingResult res;
  res.imp.assign(static_cast<size_t>(n) * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem acc = lat.bottom();
      for (Elem x = 0; x < n; ++x)
        if (lat.leq(lat.meet2(x, a), b)) acc = lat.join2(acc, x);
      res.imp[static_cast<size_t>(a) * n + b] = acc;
    }
  // residuation: c <= a->b iff c /\ a <= b
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        bool lhs = lat.leq(c, res.imp[static_cast<size_t>(a) * n + b]);
        bool rhs = lat.leq(lat.meet2(c, a), b);
        if (lhs != rhs) {
          res.ok = false;
          res.witness = Violation{"residuation", {lat.label(a), lat.label(b), lat.label(c)}};
          return res;
        }
      }
  res.ok = true;
  return res;
}

AlgebraCandidate powerset_of_magma(const std::vector<std::string>& carrier,
                                   const std::vector<uint32_t>& op, std::string name) {
  uint32_t m = static_cast<uint32_t>(carrier.size());
  if (m == 0) fail(ErrKind::InvalidArgument, "magma carrier must be nonempty");
  if (op.size() != static_cast<size_t>(m) * m)
    fail(ErrKind::InvalidArgument, "magma operation table must be total");
  for (uint32_t x : op)
    if (x >= m) fail(ErrKind::InvalidArgument, "magma operation table must be total");

  AlgebraCandidate cand;
  cand.name = std::move(name);
  LatticeCandidate lc = Lattice::powerset(m).to_candidate();
  for (uint32_t mask = 0; mask < lc.labels.size(); ++mask) {
    std::string s = "{";
    bool first = true;
    for (uint32_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      if (!first) s += ",";
      s += carrier[i];
      first = false;
    }
    lc.labels[mask] = s + "}";
  }
  cand.lattice = Lattice::from_candidate(lc);
  uint32_t n = cand.lattice.size();
  cand.imp.assign(static_cast<size_t>(n) * n, 0);
  for (uint32_t A = 0; A < n; ++A)
    for (uint32_t B = 0; B < n; ++B) {
      uint32_t res = 0;
      for (uint32_t r = 0; r < m; ++r) {
        bool in = true;
        for (uint32_t a = 0; a < m && in; ++a)
          if ((A >> a & 1) && !(B >> op[static_cast<size_t>(r) * m + a] & 1)) in = false;
        if (in) res |= 1u << r;
      }
      cand.imp[static_cast<size_t>(A) * n + B] = res;
    }
  cand.in_sigma.assign(n, 1);
  cand.in_sigma[0] = 0; // the empty set
  return cand;
}

std::shared_ptr<const Algebra> Algebra::from_candidate(AlgebraCandidate cand) {
  ValidationReport rep = validate_algebra(cand);
  if (!rep.ok) {
    std::string msg = "not an implicative algebra:";
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
  auto alg = std::shared_ptr<Algebra>(new Algebra());
  alg->name_ = std::move(cand.name);
  alg->lat_ = std::move(cand.lattice);
  alg->imp_ = std::move(cand.imp);
  alg->sigma_ = std::move(cand.in_sigma);
  uint32_t n = alg->lat_.size();
  for (Elem a = 0; a < n; ++a)
    if (alg->sigma_[a]) alg->sigma_list_.push_back(a);
  alg->k_ = combinator_k(alg->lat_, alg->imp_);
  alg->s_ = combinator_s(alg->lat_, alg->imp_);
  alg->classical_ = alg->sigma_[peirce_meet(alg->lat_, alg->imp_)] != 0;
  alg->app_.assign(static_cast<size_t>(n) * n, kNoElem);
  alg->conj_.assign(static_cast<size_t>(n) * n, kNoElem);
  alg->disj_.assign(static_cast<size_t>(n) * n, kNoElem);
  return alg;
}

Elem Algebra::apply(Elem a, Elem b) const {
  size_t key = static_cast<size_t>(a) * lat_.size() + b;
  Elem cached = app_[key];
  if (cached != kNoElem) return cached;
  Elem acc = lat_.top();
  for (Elem x = 0; x < lat_.size(); ++x)
    if (lat_.leq(a, imp(b, x))) acc = lat_.meet2(acc, x);
  app_[key] = acc;
  return acc;
}

Elem Algebra::conj(Elem a, Elem b) const {
  size_t key = static_cast<size_t>(a) * lat_.size() + b;
  Elem cached = conj_[key];
  if (cached != kNoElem) return cached;
  Elem acc = lat_.top();
  for (Elem x = 0; x < lat_.size(); ++x) acc = lat_.meet2(acc, imp(imp(a, imp(b, x)), x));
  conj_[key] = acc;
  return acc;
}

Elem Algebra::disj(Elem a, Elem b) const {
  size_t key = static_cast<size_t>(a) * lat_.size() + b;
  Elem cached = disj_[key];
  if (cached != kNoElem) return cached;
  Elem acc = lat_.top();
  for (Elem x = 0; x < lat_.size(); ++x)
    acc = lat_.meet2(acc, imp(imp(a, x), imp(imp(b, x), x)));
  disj_[key] = acc;
  return acc;
}

Elem uforall(const Algebra& alg, std::span<const Elem> family) {
  return alg.lattice().meet(family);
}

Elem uexists(const Algebra& alg, std::span<const Elem> family) {
  const Lattice& lat = alg.lattice();
  Elem acc = lat.top();
  for (Elem x = 0; x < lat.size(); ++x) {
    Elem inner = lat.top();
    for (Elem a : family) inner = lat.meet2(inner, alg.imp(a, x));
    acc = lat.meet2(acc, alg.imp(inner, x));
  }
  return acc;
}

} // namespace imca
