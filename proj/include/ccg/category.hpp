#ifndef CCG_CATEGORY_HPP
#define CCG_CATEGORY_HPP

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccg/features.hpp"

namespace ccg {

// Declared atom labels; the built-in inventory can be extended from
// features.cfg (see GrammarConfig in lexicon.hpp).
class AtomInventory {
 public:
  AtomInventory() : labels_{"S", "NP", "N", "PP", "Conj", "Punct"} {}
  void declare(const std::string& label) { labels_.insert(label); }
  bool known(const std::string& label) const { return labels_.count(label) > 0; }
  const std::set<std::string>& labels() const { return labels_; }

 private:
  std::set<std::string> labels_;
};

enum class Slash { Forward, Backward };

inline char slash_char(Slash s) { return s == Slash::Forward ? '/' : '\\'; }

struct Atom {
  std::string label;
  std::optional<int> arg_index;  // the 0/1/2 in NP0, NP1; display metadata
  FeatureStructure features;
};

class Category;
using CatPtr = std::shared_ptr<const Category>;

// Immutable category: either an atom or result <slash> argument.
class Category {
 public:
  static CatPtr make_atom(Atom a) {
    auto c = std::make_shared<Category>();
    c->atom_ = std::move(a);
    return c;
  }
  static CatPtr make_atom(const std::string& label) {
    return make_atom(Atom{label, std::nullopt, FeatureStructure{}});
  }
  static CatPtr make_functor(CatPtr result, Slash slash, CatPtr argument) {
    auto c = std::make_shared<Category>();
    c->result_ = std::move(result);
    c->slash_ = slash;
    c->argument_ = std::move(argument);
    return c;
  }

  bool is_atom() const { return atom_.has_value(); }
  const Atom& atom() const { return *atom_; }
  const CatPtr& result() const { return result_; }
  const CatPtr& argument() const { return argument_; }
  Slash slash() const { return slash_; }

 private:
  std::optional<Atom> atom_;
  CatPtr result_;
  CatPtr argument_;
  Slash slash_ = Slash::Forward;
};

struct CategoryParseError : std::runtime_error {
  CategoryParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

// Text notation: atoms [A-Za-z]+[0-9]? with an optional [attr=val,...]
// feature list; '/' and '\' are left-associative, parentheses override.
CatPtr parse_category(const std::string& text, const AtomInventory& atoms);

// Canonical text: functors in result or argument position are
// parenthesized, atoms and the top level are bare.
std::string format_category(const CatPtr& cat, bool with_arg_index = true);

int arity(const CatPtr& cat);
std::pair<int, int> directional_arity(const CatPtr& cat);  // (left, right)

// Structural equality; features compared by canonical form.
bool equal_categories(const CatPtr& a, const CatPtr& b,
                      bool with_features = true, bool with_arg_index = false);

// Stable identity string used for chart packing and deduplication.
// Ignores arg_index (role indices do not affect combination).
std::string canonical_key(const CatPtr& cat, bool with_features = true);

// Deep copy with fresh feature structures (e.g. into a parse context).
CatPtr clone_category(const CatPtr& cat);

// Copy a category materializing scratch feature bindings valid under ctx.
CatPtr capture_category(const CatPtr& cat, const UnifyContext& ctx);

struct CatUnifyOutcome {
  CatPtr result;                 // null on failure
  std::optional<Clash> clash;    // set on feature clash
  bool skeleton_mismatch = false;
  bool ok() const { return result != nullptr; }
};

// Success iff the slash skeletons and atom labels match and all paired
// feature structures unify; result is a fresh category (built on the left
// operand's skeleton, so arg indices come from it).
CatUnifyOutcome unify_categories(const CatPtr& x, const CatPtr& y,
                                 UnifyContext& ctx);

// T/(T\X) or T\(T/X) with T compared including features.
bool is_raised_shape(const CatPtr& cat);

namespace detail {
// Non-invalidating: unify the feature structures of paired atoms inside the
// caller's live generation.  Returns false on mismatch or clash.
bool unify_cat_nodes(const CatPtr& x, const CatPtr& y, const UnifyContext& ctx,
                     std::optional<Clash>& clash, bool& skeleton_mismatch);
}  // namespace detail

}  // namespace ccg

#endif
