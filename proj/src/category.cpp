#include "ccg/category.hpp"

#include <cctype>
#include <map>

namespace ccg {

namespace {

struct Parser {
  const std::string& text;
  const AtomInventory& atoms;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw CategoryParseError(msg, pos);
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  CatPtr parse_top() {
    CatPtr c = parse_expr();
    if (pos != text.size()) fail("trailing characters");
    return c;
  }

  CatPtr parse_expr() {
    CatPtr left = parse_part();
    while (peek() == '/' || peek() == '\\') {
      Slash s = peek() == '/' ? Slash::Forward : Slash::Backward;
      ++pos;
      CatPtr right = parse_part();
      left = Category::make_functor(left, s, right);
    }
    return left;
  }

  CatPtr parse_part() {
    if (peek() == '(') {
      std::size_t open = pos;
      ++pos;
      CatPtr c = parse_expr();
      if (peek() != ')') {
        pos = open;
        fail("unbalanced parenthesis");
      }
      ++pos;
      return c;
    }
    return parse_atom();
  }

  CatPtr parse_atom() {
    std::size_t start = pos;
    while (std::isalpha(static_cast<unsigned char>(peek()))) ++pos;
    if (pos == start) fail("expected atom");
    std::string label = text.substr(start, pos - start);
    if (!atoms.known(label)) {
      pos = start;
      fail("unknown atom label '" + label + "'");
    }
    Atom a{label, std::nullopt, FeatureStructure{}};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      a.arg_index = peek() - '0';
      ++pos;
    }
    if (peek() == '[') parse_features(a.features);
    return Category::make_atom(std::move(a));
  }

  void parse_features(FeatureStructure& fs) {
    ++pos;  // '['
    if (peek() == ']') {
      ++pos;
      return;
    }
    for (;;) {
      std::string attr = parse_name("attribute");
      if (peek() != '=') fail("expected '=' in feature list");
      ++pos;
      std::string val = parse_value();
      try {
        fs.set(attr, val);
      } catch (const std::runtime_error& e) {
        fail(e.what());
      }
      if (peek() == ',') {
        ++pos;
        continue;
      }
      if (peek() == ']') {
        ++pos;
        return;
      }
      fail("malformed feature list");
    }
  }

  std::string parse_name(const char* what) {
    std::size_t start = pos;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')
      ++pos;
    // a bare '-' is a value, not a name
    if (pos == start) fail(std::string("expected ") + what);
    return text.substr(start, pos - start);
  }

  std::string parse_value() {
    std::size_t start = pos;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
           peek() == '-' || peek() == '*')
      ++pos;
    if (pos == start) fail("expected feature value");
    return text.substr(start, pos - start);
  }
};

}  // namespace

CatPtr parse_category(const std::string& text, const AtomInventory& atoms) {
  if (text.empty()) throw CategoryParseError("empty category", 0);
  Parser p{text, atoms};
  return p.parse_top();
}

static void format_features(const FsNode* root, std::string& out) {
  if (root->atomic() || root->arcs.empty()) return;
  out += '[';
  bool first = true;
  for (const auto& [attr, child] : root->arcs) {
    if (!first) out += ',';
    first = false;
    out += attr;
    out += '=';
    if (child->atomic())
      out += child->value;
    else
      format_features(child, out);
  }
  out += ']';
}

static void format_rec(const CatPtr& c, std::string& out, bool with_arg_index,
                       bool parenthesize) {
  if (c->is_atom()) {
    const Atom& a = c->atom();
    out += a.label;
    if (with_arg_index && a.arg_index) out += std::to_string(*a.arg_index);
    format_features(a.features.root(), out);
    return;
  }
  if (parenthesize) out += '(';
  format_rec(c->result(), out, with_arg_index, !c->result()->is_atom());
  out += slash_char(c->slash());
  format_rec(c->argument(), out, with_arg_index, !c->argument()->is_atom());
  if (parenthesize) out += ')';
}

std::string format_category(const CatPtr& cat, bool with_arg_index) {
  std::string out;
  format_rec(cat, out, with_arg_index, false);
  return out;
}

int arity(const CatPtr& cat) {
  int n = 0;
  for (CatPtr c = cat; !c->is_atom(); c = c->result()) ++n;
  return n;
}

std::pair<int, int> directional_arity(const CatPtr& cat) {
  int left = 0, right = 0;
  for (CatPtr c = cat; !c->is_atom(); c = c->result()) {
    if (c->slash() == Slash::Forward)
      ++right;
    else
      ++left;
  }
  return {left, right};
}

bool equal_categories(const CatPtr& a, const CatPtr& b, bool with_features,
                      bool with_arg_index) {
  if (a->is_atom() != b->is_atom()) return false;
  if (a->is_atom()) {
    const Atom& x = a->atom();
    const Atom& y = b->atom();
    if (x.label != y.label) return false;
    if (with_arg_index && x.arg_index != y.arg_index) return false;
    if (with_features &&
        canonical_form(x.features) != canonical_form(y.features))
      return false;
    return true;
  }
  return a->slash() == b->slash() &&
         equal_categories(a->result(), b->result(), with_features,
                          with_arg_index) &&
         equal_categories(a->argument(), b->argument(), with_features,
                          with_arg_index);
}

static void key_rec(const CatPtr& c, bool with_features, std::string& out) {
  if (c->is_atom()) {
    out += c->atom().label;
    if (with_features) out += canonical_form(c->atom().features);
    return;
  }
  out += '(';
  key_rec(c->result(), with_features, out);
  out += slash_char(c->slash());
  key_rec(c->argument(), with_features, out);
  out += ')';
}

std::string canonical_key(const CatPtr& cat, bool with_features) {
  std::string out;
  key_rec(cat, with_features, out);
  return out;
}

// Both copies memoize on subterm identity: a raised category reuses one
// shared T node in result and argument position, and that reentrancy is
// what lets features flow from the argument into the result.
static CatPtr clone_rec(const CatPtr& cat,
                        std::map<const Category*, CatPtr>& seen) {
  auto it = seen.find(cat.get());
  if (it != seen.end()) return it->second;
  CatPtr out;
  if (cat->is_atom()) {
    const Atom& a = cat->atom();
    out = Category::make_atom(Atom{a.label, a.arg_index, a.features});
  } else {
    out = Category::make_functor(clone_rec(cat->result(), seen), cat->slash(),
                                 clone_rec(cat->argument(), seen));
  }
  seen.emplace(cat.get(), out);
  return out;
}

CatPtr clone_category(const CatPtr& cat) {
  std::map<const Category*, CatPtr> seen;
  return clone_rec(cat, seen);
}

static CatPtr capture_rec(const CatPtr& cat, const UnifyContext& ctx,
                          std::map<const Category*, CatPtr>& seen) {
  auto it = seen.find(cat.get());
  if (it != seen.end()) return it->second;
  CatPtr out;
  if (cat->is_atom()) {
    const Atom& a = cat->atom();
    out = Category::make_atom(Atom{
        a.label, a.arg_index, FeatureStructure::capture(a.features.root(), ctx)});
  } else {
    out = Category::make_functor(capture_rec(cat->result(), ctx, seen),
                                 cat->slash(),
                                 capture_rec(cat->argument(), ctx, seen));
  }
  seen.emplace(cat.get(), out);
  return out;
}

CatPtr capture_category(const CatPtr& cat, const UnifyContext& ctx) {
  std::map<const Category*, CatPtr> seen;
  return capture_rec(cat, ctx, seen);
}

namespace detail {

bool unify_cat_nodes(const CatPtr& x, const CatPtr& y, const UnifyContext& ctx,
                     std::optional<Clash>& clash, bool& skeleton_mismatch) {
  if (x->is_atom() != y->is_atom()) {
    skeleton_mismatch = true;
    return false;
  }
  if (x->is_atom()) {
    if (x->atom().label != y->atom().label) {
      skeleton_mismatch = true;
      return false;
    }
    std::vector<std::string> path;
    return unify_nodes(x->atom().features.root(), y->atom().features.root(),
                       ctx, path, clash);
  }
  if (x->slash() != y->slash()) {
    skeleton_mismatch = true;
    return false;
  }
  return unify_cat_nodes(x->result(), y->result(), ctx, clash,
                         skeleton_mismatch) &&
         unify_cat_nodes(x->argument(), y->argument(), ctx, clash,
                         skeleton_mismatch);
}

}  // namespace detail

CatUnifyOutcome unify_categories(const CatPtr& x, const CatPtr& y,
                                 UnifyContext& ctx) {
  CatUnifyOutcome out;
  if (detail::unify_cat_nodes(x, y, ctx, out.clash, out.skeleton_mismatch))
    out.result = capture_category(x, ctx);
  ctx.invalidate();
  return out;
}

bool is_raised_shape(const CatPtr& cat) {
  if (cat->is_atom() || !cat->argument() || cat->argument()->is_atom())
    return false;
  const CatPtr& t = cat->result();
  const CatPtr& inner = cat->argument();
  if (cat->slash() == Slash::Forward && inner->slash() == Slash::Backward)
    return equal_categories(t, inner->result(), true, false);
  if (cat->slash() == Slash::Backward && inner->slash() == Slash::Forward)
    return equal_categories(t, inner->result(), true, false);
  return false;
}

}  // namespace ccg
