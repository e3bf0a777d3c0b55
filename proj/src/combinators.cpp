#include "ccg/combinators.hpp"

#include <stdexcept>

namespace ccg {

const char* rule_name(RuleName r) {
  switch (r) {
    case RuleName::FwdApp: return "FwdApp";
    case RuleName::BwdApp: return "BwdApp";
    case RuleName::FwdComp: return "FwdComp";
    case RuleName::BwdComp: return "BwdComp";
    case RuleName::BwdXComp: return "BwdXComp";
    case RuleName::FwdTypeRaise: return "FwdTypeRaise";
    case RuleName::BwdTypeRaise: return "BwdTypeRaise";
    case RuleName::Coord: return "Coord";
    case RuleName::Lex: return "Lex";
  }
  return "?";
}

const char* rule_symbol(RuleName r) {
  switch (r) {
    case RuleName::FwdApp: return ">";
    case RuleName::BwdApp: return "<";
    case RuleName::FwdComp: return ">B";
    case RuleName::BwdComp: return "<B";
    case RuleName::BwdXComp: return "<Bx";
    case RuleName::FwdTypeRaise: return ">T";
    case RuleName::BwdTypeRaise: return "<T";
    case RuleName::Coord: return "&";
    case RuleName::Lex: return "lex";
  }
  return "?";
}

std::optional<RuleName> rule_from_name(const std::string& name) {
  static const RuleName all[] = {
      RuleName::FwdApp,   RuleName::BwdApp,       RuleName::FwdComp,
      RuleName::BwdComp,  RuleName::BwdXComp,     RuleName::FwdTypeRaise,
      RuleName::BwdTypeRaise, RuleName::Coord,    RuleName::Lex};
  for (RuleName r : all)
    if (name == rule_name(r)) return r;
  return std::nullopt;
}

RuleSet RuleSet::defaults() {
  RuleSet rs;
  rs.enabled = {RuleName::FwdApp,   RuleName::BwdApp,   RuleName::FwdComp,
                RuleName::BwdComp,  RuleName::BwdXComp, RuleName::FwdTypeRaise,
                RuleName::BwdTypeRaise, RuleName::Coord, RuleName::Lex};
  return rs;
}

namespace {

// Peel up to `depth` outer argument layers off `c`, all with slash `s`.
// Returns the core plus the peeled (slash, argument) pairs outermost first,
// or nullopt when fewer than `depth` matching layers exist.
std::optional<std::pair<CatPtr, std::vector<CatPtr>>> peel(const CatPtr& c,
                                                           Slash s,
                                                           int depth) {
  CatPtr core = c;
  std::vector<CatPtr> args;
  for (int d = 0; d < depth; ++d) {
    if (core->is_atom() || core->slash() != s) return std::nullopt;
    args.push_back(core->argument());
    core = core->result();
  }
  return std::make_pair(core, args);
}

CatPtr reattach(CatPtr base, Slash s, const std::vector<CatPtr>& args_outermost_first,
                const UnifyContext& ctx) {
  for (auto it = args_outermost_first.rbegin(); it != args_outermost_first.rend();
       ++it)
    base = Category::make_functor(base, s, capture_category(*it, ctx));
  return base;
}

std::optional<CatPtr> compose_impl(const CatPtr& primary_arg,
                                   const CatPtr& primary_result,
                                   const CatPtr& secondary, Slash peel_slash,
                                   Slash rebuild_slash, UnifyContext& ctx,
                                   int max_depth) {
  for (int d = 1; d <= max_depth; ++d) {
    auto peeled = peel(secondary, peel_slash, d);
    if (!peeled) break;
    std::optional<Clash> clash;
    bool mismatch = false;
    if (detail::unify_cat_nodes(primary_arg, peeled->first, ctx, clash,
                                mismatch)) {
      CatPtr base = capture_category(primary_result, ctx);
      CatPtr out = reattach(base, rebuild_slash, peeled->second, ctx);
      ctx.invalidate();
      return out;
    }
    ctx.invalidate();  // clear the failed attempt before the next depth
  }
  return std::nullopt;
}

}  // namespace

std::optional<CatPtr> forward_apply(const CatPtr& f, const CatPtr& a,
                                    UnifyContext& ctx) {
  if (f->is_atom() || f->slash() != Slash::Forward) return std::nullopt;
  std::optional<Clash> clash;
  bool mismatch = false;
  if (detail::unify_cat_nodes(f->argument(), a, ctx, clash, mismatch)) {
    CatPtr out = capture_category(f->result(), ctx);
    ctx.invalidate();
    return out;
  }
  ctx.invalidate();
  return std::nullopt;
}

std::optional<CatPtr> backward_apply(const CatPtr& a, const CatPtr& f,
                                     UnifyContext& ctx) {
  if (f->is_atom() || f->slash() != Slash::Backward) return std::nullopt;
  std::optional<Clash> clash;
  bool mismatch = false;
  if (detail::unify_cat_nodes(f->argument(), a, ctx, clash, mismatch)) {
    CatPtr out = capture_category(f->result(), ctx);
    ctx.invalidate();
    return out;
  }
  ctx.invalidate();
  return std::nullopt;
}

// X/Y + Y'/Z... => (X/Z...)  (B^n for n <= depth)
std::optional<CatPtr> forward_compose(const CatPtr& f, const CatPtr& g,
                                      UnifyContext& ctx, int depth) {
  if (f->is_atom() || f->slash() != Slash::Forward) return std::nullopt;
  return compose_impl(f->argument(), f->result(), g, Slash::Forward,
                      Slash::Forward, ctx, depth);
}

// Y\Z... + X\Y' => X\Z...
std::optional<CatPtr> backward_compose(const CatPtr& g, const CatPtr& f,
                                       UnifyContext& ctx, int depth) {
  if (f->is_atom() || f->slash() != Slash::Backward) return std::nullopt;
  return compose_impl(f->argument(), f->result(), g, Slash::Backward,
                      Slash::Backward, ctx, depth);
}

// Y/Z... + X\Y' => X/Z...  (the crossing: forward-slash result from a
// backward functor)
std::optional<CatPtr> backward_cross_compose(const CatPtr& f, const CatPtr& g,
                                             UnifyContext& ctx, int depth) {
  if (g->is_atom() || g->slash() != Slash::Backward) return std::nullopt;
  return compose_impl(g->argument(), g->result(), f, Slash::Forward,
                      Slash::Forward, ctx, depth);
}

std::optional<CatPtr> coordinate(const CatPtr& left, const CatPtr& right,
                                 UnifyContext& ctx) {
  CatUnifyOutcome out = unify_categories(left, right, ctx);
  if (out.ok()) return out.result;
  return std::nullopt;
}

CatPtr type_raise(const CatPtr& x, const CatPtr& target, Slash direction) {
  if (!x->is_atom())
    throw std::runtime_error("type_raise: only atomic categories are raised");
  CatPtr xc = clone_category(x);
  // One clone of the target used in both positions: the shared T makes the
  // raised category reentrant, so the result inherits whatever features the
  // argument's own result carries.
  CatPtr t = clone_category(target);
  if (direction == Slash::Forward)
    return Category::make_functor(
        t, Slash::Forward, Category::make_functor(t, Slash::Backward, xc));
  return Category::make_functor(
      t, Slash::Backward, Category::make_functor(t, Slash::Forward, xc));
}

static const CatPtr& outermost_result(const CatPtr& c) {
  const CatPtr* p = &c;
  while (!(*p)->is_atom()) p = &(*p)->result();
  return *p;
}

std::vector<RuleApplication> apply_all(const CatPtr& left, const CatPtr& right,
                                       const RuleSet& rules,
                                       UnifyContext& ctx) {
  std::vector<RuleApplication> out;
  auto admit = [&](RuleName r, const std::optional<CatPtr>& res) {
    if (!res) return;
    auto gate = rules.result_label_gate.find(r);
    if (gate != rules.result_label_gate.end() && !gate->second.empty() &&
        gate->second.count(outermost_result(*res)->atom().label) == 0)
      return;
    for (const auto& prev : out)
      if (prev.rule == r && equal_categories(prev.result, *res, true, false))
        return;
    out.push_back(RuleApplication{r, left, right, *res});
  };
  const int depth = rules.composition_depth;
  if (rules.is_enabled(RuleName::FwdApp))
    admit(RuleName::FwdApp, forward_apply(left, right, ctx));
  if (rules.is_enabled(RuleName::BwdApp))
    admit(RuleName::BwdApp, backward_apply(left, right, ctx));
  if (rules.is_enabled(RuleName::FwdComp))
    admit(RuleName::FwdComp, forward_compose(left, right, ctx, depth));
  if (rules.is_enabled(RuleName::BwdComp))
    admit(RuleName::BwdComp, backward_compose(left, right, ctx, depth));
  if (rules.is_enabled(RuleName::BwdXComp))
    admit(RuleName::BwdXComp, backward_cross_compose(left, right, ctx, depth));
  return out;
}

}  // namespace ccg
