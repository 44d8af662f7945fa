#ifndef IMCA_UNIVERSE_HPP
#define IMCA_UNIVERSE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "encode.hpp"

namespace imca {

using WId = uint32_t;

// One node of the hierarchy: a partial function from previously built nodes
// to algebra elements. The graph is kept sorted by member id so that
// hash-consing gives canonical identities.
struct WNode {
  std::vector<std::pair<WId, Elem>> graph;
  uint32_t rank = 1;
};

struct UniverseLimits {
  uint64_t stratum_budget = 200000; // max elements enumerated per stratum
  uint32_t max_rank = 64;           // cap for witness constructors
};

// The truncated hierarchy W_1 c ... c W_depth over one algebra session,
// with memoized membership/equality/inclusion valuations. Construction is
// single-threaded; afterwards valuation queries behave as idempotent caches.
class Universe {
public:
  static Universe build(std::shared_ptr<AlgebraSession> session, uint32_t depth,
                        UniverseLimits limits = {});

  const Algebra& algebra() const { return *session_->algebra; }
  AlgebraSession& session() { return *session_; }
  uint32_t depth() const { return depth_; }
  const UniverseLimits& limits() const { return limits_; }

  WId empty() const { return 0; }
  // Interns a graph (sorted and deduplicated internally). Throws
  // Error{Budget} when the resulting rank would exceed the configured cap.
  WId make(std::vector<std::pair<WId, Elem>> graph);

  const WNode& node(WId w) const { return pool_[w]; }
  uint32_t rank(WId w) const { return pool_[w].rank; }
  size_t pool_size() const { return pool_.size(); }

  // Elements of W_k, ascending ids; k in [1, depth].
  const std::vector<WId>& stratum(uint32_t k) const;

  Elem mem_value(WId a, WId b);      // a in_W b
  Elem eq_value(WId a, WId b);       // a =_W b
  Elem subseteq_value(WId a, WId b); // a sub_W b

  // The named witness constructors of the axiom checks.
  WId pair_witness(WId a, WId b);
  WId union_witness(WId a);
  // Domain: all total maps from the domain of `a` into the carrier, value
  // top. Throws Error{Budget} when |A|^|dom(a)| exceeds the stratum budget.
  WId power_witness(WId a);
  // The relabeling companion: domain dom(a) u dom(c), value
  // (u in_W a) x (u in_W c).
  WId power_relabel(WId a, WId c);
  // Same domain as `a`, value a(u) x phi(u).
  WId sep_witness(WId a, const std::function<Elem(WId)>& phi);
  // Hereditary numeral: dom = { m^ | m < n }, value the encoded numeral m.
  WId numeral(uint32_t n);
  // Encoded Church numeral as an algebra element.
  Elem numeral_elem(uint32_t n);
  // Finite cut of omega^ with domain { n^ | n < bound }.
  WId omega_approx(uint32_t bound);
  // Constant-top function on the whole stratum k.
  WId collection_witness(uint32_t k);

  // For the determinism check: drops valuation memos, keeps the pool.
  void clear_value_memos();

  std::string show(WId w) const;
  // Literal syntax: `{}`, `{ {}:1 }`, `{ {}:0, {{}:1}:h }`.
  WId parse_welement(std::string_view text);

private:
  Universe() = default;

  std::shared_ptr<AlgebraSession> session_;
  uint32_t depth_ = 0;
  UniverseLimits limits_;

  std::vector<WNode> pool_;
  std::unordered_map<uint64_t, std::vector<WId>> intern_;
  std::vector<std::vector<WId>> strata_; // strata_[k-1] = W_k

  std::unordered_map<uint64_t, Elem> mem_memo_, eq_memo_, sub_memo_;
  std::vector<TermId> church_terms_;
  std::vector<Elem> church_elems_;
  std::vector<WId> numerals_;

  WId intern(WNode node);
};

} // namespace imca

#endif
