#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "error.hpp"
#include "helpers.hpp"
#include "izf.hpp"
#include "universe.hpp"

using namespace imca;
using namespace imca::test;

namespace {

Universe b2_universe(uint32_t depth) {
  return Universe::build(shipped_session("b2.json"), depth);
}

} // namespace

TEST_CASE("stratum sizes over the two-chain") {
  Universe u1 = b2_universe(1);
  CHECK(u1.stratum(1).size() == 1);
  CHECK(u1.node(u1.empty()).graph.empty());

  Universe u2 = b2_universe(2);
  CHECK(u2.stratum(2).size() == 3); // empty, {0->0}, {0->1}

  Universe u3 = b2_universe(3);
  CHECK(u3.stratum(3).size() == 27); // (2+1)^3 partial maps

  Universe c = Universe::build(shipped_session("c3.json"), 2);
  CHECK(c.stratum(2).size() == 4);
}

TEST_CASE("strata are cumulative and rank-stratified") {
  Universe u = b2_universe(3);
  const auto& w2 = u.stratum(2);
  const auto& w3 = u.stratum(3);
  for (WId w : w2) CHECK(std::find(w3.begin(), w3.end(), w) != w3.end());
  for (WId w : w3) {
    CHECK(u.rank(w) <= 3);
    for (auto [m, val] : u.node(w).graph) CHECK(u.rank(m) < u.rank(w));
  }
}

TEST_CASE("the enumeration budget names the offending stratum") {
  auto session = shipped_session("b2.json");
  CHECK_THROWS_AS((void)Universe::build(session, 4), Error);
  try {
    (void)Universe::build(shipped_session("b2.json"), 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::Budget);
    CHECK(std::string(e.what()).find("W_4") != std::string::npos);
  }
}

TEST_CASE("membership valuations over the two-chain") {
  Universe u = b2_universe(2);
  WId empty = u.empty();
  WId in1 = u.make({{empty, 1}});
  WId in0 = u.make({{empty, 0}});
  CHECK(u.mem_value(empty, in1) == 1);
  CHECK(u.mem_value(empty, in0) == 0);
  // membership in the empty function is the empty existential
  for (WId w : u.stratum(2)) CHECK(u.mem_value(w, empty) == uexists(u.algebra(), {}));
}

TEST_CASE("equality valuations") {
  Universe u = b2_universe(2);
  WId empty = u.empty();
  const Algebra& alg = u.algebra();
  CHECK(u.eq_value(empty, empty) == alg.conj(alg.top(), alg.top()));
  WId in1 = u.make({{empty, 1}});
  WId in0 = u.make({{empty, 0}});
  CHECK(u.eq_value(in1, in0) == 0);
  CHECK(u.subseteq_value(in0, in1) == 1); // 0 -> anything
}

TEST_CASE("reflexive inclusion dominates the j realizer") {
  Universe u = b2_universe(3);
  CoreRealizers cr = core_realizers(u);
  for (WId w : u.stratum(3)) CHECK(u.algebra().leq(cr.j, u.subseteq_value(w, w)));

  Universe c = Universe::build(shipped_session("c3_sigma_half.json"), 2);
  CoreRealizers crc = core_realizers(c);
  for (WId w : c.stratum(2)) CHECK(c.algebra().leq(crc.j, c.subseteq_value(w, w)));
}

TEST_CASE("witness constructors") {
  Universe u = b2_universe(2);
  WId empty = u.empty();
  WId pair = u.pair_witness(empty, empty);
  CHECK(u.node(pair).graph.size() == 1);
  CHECK(u.node(pair).graph[0] == std::pair<WId, Elem>{empty, 1});

  WId in1 = u.make({{empty, 1}});
  CHECK(u.union_witness(in1) == empty); // members have empty domains

  WId pow = u.power_witness(empty);
  REQUIRE(u.node(pow).graph.size() == 1); // A^{} is a singleton
  CHECK(u.node(pow).graph[0].first == empty);
  CHECK(u.node(pow).graph[0].second == u.algebra().top());

  WId coll = u.collection_witness(1);
  CHECK(u.node(coll).graph.size() == 1);

  WId sep = u.sep_witness(in1, [&](WId) { return u.algebra().bottom(); });
  CHECK(u.node(sep).graph[0].second == u.algebra().conj(1, 0));

  WId in0 = u.make({{empty, 0}});
  WId relabel = u.power_relabel(in1, u.make({{in0, 1}}));
  REQUIRE(u.node(relabel).graph.size() == 2); // dom(a) u dom(c) = {empty, in0}
  CHECK(u.node(relabel).graph[0].first == empty);
  CHECK(u.node(relabel).graph[0].second ==
        u.algebra().conj(u.mem_value(empty, in1), u.mem_value(empty, u.make({{in0, 1}}))));
}

TEST_CASE("numerals carry encoded numeral values") {
  Universe u = b2_universe(2);
  WId two = u.numeral(2);
  REQUIRE(u.node(two).graph.size() == 2);
  CHECK(u.node(two).graph[0].first == u.numeral(0));
  CHECK(u.node(two).graph[1].first == u.numeral(1));
  CHECK(u.node(two).graph[0].second == u.numeral_elem(0));
  CHECK(u.rank(two) == 3);
  WId omega = u.omega_approx(3);
  CHECK(u.node(omega).graph.size() == 3);
  CHECK(u.rank(omega) == 4);
}

TEST_CASE("rank caps surface as budget errors, not silent truncation") {
  auto session = shipped_session("b2.json");
  UniverseLimits limits;
  limits.max_rank = 3;
  Universe u = Universe::build(session, 2, limits);
  CHECK_THROWS_AS((void)u.numeral(3), Error);
}

TEST_CASE("power witness budget") {
  auto session = shipped_session("b2.json");
  UniverseLimits limits;
  limits.stratum_budget = 4;
  Universe u = Universe::build(session, 2, limits);
  WId full = u.make({{u.empty(), 1}});
  WId w2full = u.make({{full, 1}, {u.empty(), 1}});
  WId w3 = u.make({{w2full, 1}});
  (void)w3;
  // 2^3 total maps from a 3-element domain exceed the tiny budget
  WId big = u.make({{u.empty(), 0}, {full, 0}, {w2full, 0}});
  CHECK_THROWS_AS((void)u.power_witness(big), Error);
}

TEST_CASE("valuations are deterministic across memo resets and rebuilds") {
  Universe u = b2_universe(3);
  const auto& w3 = u.stratum(3);
  std::vector<Elem> first;
  for (WId a : w3)
    for (WId b : w3) first.push_back(u.eq_value(a, b));
  u.clear_value_memos();
  size_t i = 0;
  for (WId a : w3)
    for (WId b : w3) CHECK(u.eq_value(a, b) == first[i++]);

  Universe v = b2_universe(3);
  i = 0;
  for (WId a : v.stratum(3))
    for (WId b : v.stratum(3)) CHECK(v.eq_value(a, b) == first[i++]);
  CHECK(u.show(w3[5]) == v.show(v.stratum(3)[5]));
}

TEST_CASE("two-valued equality is extensional equality of collapses") {
  Universe u = b2_universe(3);
  const auto& w3 = u.stratum(3);
  for (WId a : w3) {
    HF ca = collapse(u, a);
    for (WId b : w3) {
      HF cb = collapse(u, b);
      CHECK((u.eq_value(a, b) == 1) == (ca == cb));
      CHECK((u.mem_value(a, b) == 1) == hf_mem(ca, cb));
      CHECK((u.subseteq_value(a, b) == 1) ==
            std::includes(cb.members.begin(), cb.members.end(), ca.members.begin(),
                          ca.members.end()));
    }
  }
}

TEST_CASE("element literals round-trip") {
  Universe u = Universe::build(shipped_session("c3.json"), 2);
  WId w = u.parse_welement("{ {}:0, {{}:1}:h }");
  CHECK(u.parse_welement(u.show(w)) == w);
  CHECK(u.rank(w) == 3);
  CHECK_THROWS_AS((void)u.parse_welement("{ {}:nope }"), Error);
  CHECK_THROWS_AS((void)u.parse_welement("{"), Error);
}

TEST_CASE("duplicate graph entries are rejected") {
  Universe u = b2_universe(2);
  CHECK_THROWS_AS((void)u.make({{u.empty(), 0}, {u.empty(), 1}}), Error);
}
