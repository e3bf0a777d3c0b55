#ifndef CCG_LTAG_HPP
#define CCG_LTAG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ccg/category.hpp"
#include "ccg/lexicon.hpp"

namespace ccg {

enum class NodeKind { Substitution, Anchor, Foot };

struct LtagNode {
  std::string label;  // atom label for sub/foot, POS symbol for the anchor
  NodeKind kind = NodeKind::Substitution;
  std::vector<std::pair<std::string, std::string>> features;
};

// An elementary tree reduced to its frontier: root label, ordered frontier
// nodes (surface order), tree-level features.
struct LtagTree {
  std::string name;
  std::string root_label;
  std::vector<LtagNode> frontier;
  std::vector<std::pair<std::string, std::string>> tree_features;

  bool has_foot() const;
  int anchor_position() const;  // index into frontier, -1 if missing
};

struct ConversionResult {
  CatPtr category;
  std::string tree_name;
  std::vector<std::string> contributing_trees;
  std::vector<std::string> warnings;
};

struct LtagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// S-expression tree files:
//   (name ROOT (tfeat=val ...) (LABEL !sub [feat=val ...]) (POS !anchor) ...)
// markers: !sub (substitution), !anchor, !foot.
std::vector<LtagTree> load_ltag_file(std::istream& in);

// Initial tree: root label becomes the result, the leftmost pre-anchor
// substitution node (the subject) the innermost backward argument, the
// remaining substitution nodes are added working inward from the frontier
// edges so the argument nearest the anchor ends up outermost.  Auxiliary
// trees are routed to convert_modifier.  A VP root renders as S\NP.
ConversionResult convert_tree(const LtagTree& tree, const GrammarConfig& cfg);

// Auxiliary tree with foot label == root label: X/X when the anchor
// precedes the foot, X\X when it follows; internal substitution arguments
// are added as in convert_tree.
ConversionResult convert_modifier(const LtagTree& tree,
                                  const GrammarConfig& cfg);

// Converts each tree, deduplicates structurally identical categories, and
// drops wh/relative extraction variants with a warning (extraction lives in
// the wh-word lexicon, not the verb categories).
std::vector<ConversionResult> convert_family(const std::vector<LtagTree>& trees,
                                             const GrammarConfig& cfg);

// Install tree-level features on the result atom and frontier-node features
// on the matching argument atoms; attributes outside the declared inventory
// are dropped with a warning.
CatPtr map_tree_features(const LtagTree& tree, const CatPtr& cat,
                         const GrammarConfig& cfg,
                         std::vector<std::string>* warnings);

// cat.db-format line for a converted tree: "POS: category #comment-tags".
void write_cat_db(std::ostream& out, const std::vector<LtagTree>& trees,
                  const std::vector<ConversionResult>& results);

}  // namespace ccg

#endif
