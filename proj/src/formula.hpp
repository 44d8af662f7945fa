#ifndef IMCA_FORMULA_HPP
#define IMCA_FORMULA_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace imca {

enum class FKind : uint8_t {
  Bot,
  Mem,     // v1 in v2
  Eq,      // v1 = v2
  And,     // l, r
  Or,
  Imp,
  Exists,  // binder v1, body l
  Forall,
  BExists, // binder v1 bounded by v2, body l
  BForall,
};

struct FNode {
  FKind kind;
  uint32_t v1 = 0; // variable or binder (index into Formula::vars)
  uint32_t v2 = 0; // second variable or bound set
  int32_t l = -1;
  int32_t r = -1;
};

// Formula syntax tree; nodes reference variables by index into `vars`.
struct Formula {
  std::vector<FNode> nodes;
  std::vector<std::string> vars;
  int32_t root = -1;

  uint32_t var_id(std::string_view name);
  int32_t add(FNode n) {
    nodes.push_back(n);
    return static_cast<int32_t>(nodes.size() - 1);
  }
};

// A formula with an explicit ordered context; every free variable of the
// formula appears in the context.
struct ContextedFormula {
  Formula formula;
  std::vector<std::string> context;

  std::string show() const;
};

// Grammar:
//   cf      := '[' vars? ']' '|-' formula
//   formula := or ('->' formula)?
//   or      := and ('\/' and)*
//   and     := unary ('/\' unary)*
//   unary   := ('exists'|'forall') VAR ('in' VAR)? '.' formula | atom
//   atom    := 'False' | 'sub' '(' VAR ',' VAR ')' | VAR 'in' VAR
//            | VAR '=' VAR | '(' formula ')'
// sub(x,y) expands to its bounded-forall shorthand. Unbound variables are a
// parse error.
ContextedFormula parse_formula(std::string_view text);

// Replaces bounded quantifiers by their unbounded expansions:
// exists z in y. f => exists z. (z in y /\ f), dually for forall.
ContextedFormula desugar_bounded(const ContextedFormula& cf);

// Renames a context variable (used to build axiom schemata instances).
ContextedFormula rename_context_var(const ContextedFormula& cf, const std::string& from,
                                    const std::string& to);

std::string show_formula(const Formula& f, int32_t node);

} // namespace imca

#endif
