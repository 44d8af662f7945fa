#ifndef IMCA_TERM_HPP
#define IMCA_TERM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"

namespace imca {

using TermId = uint32_t;
using NameId = uint32_t;

enum class Tag : uint8_t { Var, Param, App, Abs };

struct TermNode {
  Tag tag;
  uint32_t a; // Var: name, Param: element, App: function, Abs: binder name
  uint32_t b; // App: argument, Abs: body
};

// Hash-consed lambda terms with algebra-element parameters. Interning keeps
// encoding memo keys stable and makes alpha-insensitive sharing cheap after
// substitution.
class TermPool {
public:
  NameId name_id(std::string_view name);
  const std::string& name(NameId id) const { return names_[id]; }

  TermId var(std::string_view name) { return var(name_id(name)); }
  TermId var(NameId name);
  TermId param(Elem value);
  TermId app(TermId fn, TermId arg);
  TermId abs(std::string_view binder, TermId body) { return abs(name_id(binder), body); }
  TermId abs(NameId binder, TermId body);

  const TermNode& node(TermId t) const { return nodes_[t]; }
  // sorted name ids
  const std::vector<NameId>& free_vars(TermId t) const { return fvs_[t]; }
  bool closed(TermId t) const { return fvs_[t].empty(); }

  // Capture-avoiding; binders that would capture are renamed to the lowest
  // unused numeric suffix, deterministically.
  TermId subst(TermId t, NameId var, TermId value);

  // leftmost-outermost reduction step
  std::optional<TermId> beta_step(TermId t);

  struct Norm {
    TermId term;
    bool normal; // false when fuel ran out
    uint32_t steps;
  };
  Norm normalize(TermId t, uint32_t fuel);

  // (\x.f (x x)) (\x.f (x x)), the unfolded fixpoint of f; reduces to
  // f applied to itself in one step.
  TermId fix(TermId f);

  std::string show(TermId t, const Algebra* alg = nullptr) const;

  size_t size() const { return nodes_.size(); }

private:
  bool free_in(TermId t, NameId v) const;
  NameId fresh_name(NameId base, TermId avoid1, TermId avoid2);

  std::vector<TermNode> nodes_;
  std::vector<std::vector<NameId>> fvs_;
  std::unordered_map<uint64_t, std::vector<TermId>> intern_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NameId> name_ids_;
  TermId make(TermNode n);
};

// The shorthand combinator library; all closed pure terms.
struct Combinators {
  TermId k, kbar, s, p, p1, p2, j1, j2, e, y;
  static Combinators make(TermPool& pool);
};

// Grammar: `\x. body` for abstraction, left-associative juxtaposition for
// application, `#label` for algebra parameters, identifiers for variables.
// The shorthand names expand to their definitions unless shadowed by a
// binder. Throws Error{Parse} with a position on bad input.
TermId parse_term(TermPool& pool, std::string_view text, const Algebra* alg = nullptr);

} // namespace imca

#endif
