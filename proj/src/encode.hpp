#ifndef IMCA_ENCODE_HPP
#define IMCA_ENCODE_HPP

#include <memory>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "term.hpp"

namespace imca {

// Compiles closed terms (or terms closed under an environment) into lattice
// elements: parameters map to themselves, application to the meet-defined
// dot, abstraction to a meet of implications over the whole carrier.
// Memoized on (term, environment restricted to the term's free variables);
// the memo behaves as an idempotent cache.
class Encoder {
public:
  Encoder(TermPool& pool, const Algebra& alg) : pool_(&pool), alg_(&alg) {}

  // Throws Error{InvalidArgument} when the term has free variables outside
  // the environment.
  Elem encode(TermId t);
  Elem encode(TermId t, std::span<const std::pair<NameId, Elem>> env);

  const Algebra& algebra() const { return *alg_; }
  TermPool& pool() { return *pool_; }

  void clear_memo() { memo_.clear(); }

private:
  struct Key {
    TermId term;
    std::vector<std::pair<NameId, Elem>> bindings;
    bool operator==(const Key& o) const { return term == o.term && bindings == o.bindings; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      uint64_t h = 0xcbf29ce484222325ULL ^ k.term;
      for (auto [n, e] : k.bindings) {
        h = (h ^ n) * 0x100000001b3ULL;
        h = (h ^ e) * 0x100000001b3ULL;
      }
      return static_cast<size_t>(h);
    }
  };

  Elem encode_rec(TermId t, std::vector<std::pair<NameId, Elem>>& env);

  TermPool* pool_;
  const Algebra* alg_;
  std::unordered_map<Key, Elem, KeyHash> memo_;
};

// An encoding session: one algebra, one pool, one memo. Terms and parameters
// from different sessions must not be mixed.
struct AlgebraSession {
  std::shared_ptr<const Algebra> algebra;
  TermPool pool;
  Combinators comb;
  Encoder encoder;

  explicit AlgebraSession(std::shared_ptr<const Algebra> alg)
      : algebra(std::move(alg)), pool(), comb(Combinators::make(pool)), encoder(pool, *algebra) {}
};

// Gamma |- t : a, read as encode(t[Gamma]) <= a.
struct Judgement {
  std::vector<std::pair<NameId, Elem>> context;
  TermId term;
  Elem target;
};

// Syntax: `x:label, y:label |- term : label`; empty context `|- term : label`.
Judgement parse_judgement(AlgebraSession& session, std::string_view text);

bool check_sequent(AlgebraSession& session, const Judgement& j);

} // namespace imca

#endif
