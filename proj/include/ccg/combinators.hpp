#ifndef CCG_COMBINATORS_HPP
#define CCG_COMBINATORS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccg/category.hpp"

namespace ccg {

enum class RuleName {
  FwdApp,
  BwdApp,
  FwdComp,
  BwdComp,
  BwdXComp,
  FwdTypeRaise,
  BwdTypeRaise,
  Coord,
  Lex,
};

const char* rule_name(RuleName r);
const char* rule_symbol(RuleName r);  // >, <, >B, <B, <Bx, >T, <T, &, lex
std::optional<RuleName> rule_from_name(const std::string& name);

struct RuleSet {
  std::set<RuleName> enabled;
  int composition_depth = 1;
  // optional gate: a rule fires only if its result's outermost atom label is
  // in the listed set (empty set = no restriction)
  std::map<RuleName, std::set<std::string>> result_label_gate;

  static RuleSet defaults();
  bool is_enabled(RuleName r) const {
    return r == RuleName::Lex || enabled.count(r) > 0;
  }
  void disable(RuleName r) { enabled.erase(r); }
};

struct RuleApplication {
  RuleName rule;
  CatPtr left;
  CatPtr right;
  CatPtr result;
};

// Binary combinators.  An empty optional signals non-applicability; each
// call advances the context generation once.
std::optional<CatPtr> forward_apply(const CatPtr& f, const CatPtr& a,
                                    UnifyContext& ctx);
std::optional<CatPtr> backward_apply(const CatPtr& a, const CatPtr& f,
                                     UnifyContext& ctx);
std::optional<CatPtr> forward_compose(const CatPtr& f, const CatPtr& g,
                                      UnifyContext& ctx, int depth = 1);
std::optional<CatPtr> backward_compose(const CatPtr& g, const CatPtr& f,
                                       UnifyContext& ctx, int depth = 1);
std::optional<CatPtr> backward_cross_compose(const CatPtr& f, const CatPtr& g,
                                             UnifyContext& ctx, int depth = 1);

// Coordination schema over like categories; invoked by the parser on the
// two spans flanking a Conj item.
std::optional<CatPtr> coordinate(const CatPtr& left, const CatPtr& right,
                                 UnifyContext& ctx);

// forward: target/(target\x); backward: target\(target/x).
// Rejects non-atomic x (raising is restricted to atoms, done at lexicon
// compile time).
CatPtr type_raise(const CatPtr& x, const CatPtr& target, Slash direction);

// All enabled binary rule outputs on (left, right), deduplicated by
// (rule, result) structural equality, in rule enum order.  Type-raising is
// lexical-only and coordination is parser-driven; neither appears here.
std::vector<RuleApplication> apply_all(const CatPtr& left, const CatPtr& right,
                                       const RuleSet& rules, UnifyContext& ctx);

}  // namespace ccg

#endif
