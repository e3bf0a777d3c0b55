#include "ccg/ltag.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ccg {

bool LtagTree::has_foot() const {
  for (const auto& n : frontier)
    if (n.kind == NodeKind::Foot) return true;
  return false;
}

int LtagTree::anchor_position() const {
  for (std::size_t i = 0; i < frontier.size(); ++i)
    if (frontier[i].kind == NodeKind::Anchor) return static_cast<int>(i);
  return -1;
}

namespace {

struct SexpToken {
  enum Kind { Open, Close, Symbol } kind;
  std::string text;
};

std::vector<SexpToken> tokenize(std::istream& in) {
  std::vector<SexpToken> out;
  char c;
  std::string sym;
  auto flush = [&]() {
    if (!sym.empty()) {
      out.push_back({SexpToken::Symbol, sym});
      sym.clear();
    }
  };
  while (in.get(c)) {
    if (c == ';') {  // comment to end of line
      flush();
      while (in.get(c) && c != '\n') {
      }
    } else if (c == '(') {
      flush();
      out.push_back({SexpToken::Open, "("});
    } else if (c == ')') {
      flush();
      out.push_back({SexpToken::Close, ")"});
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      sym += c;
    }
  }
  flush();
  return out;
}

std::pair<std::string, std::string> parse_feat(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos)
    throw LtagError("expected attr=val, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

}  // namespace

std::vector<LtagTree> load_ltag_file(std::istream& in) {
  auto toks = tokenize(in);
  std::size_t pos = 0;
  auto need = [&](SexpToken::Kind k, const char* what) {
    if (pos >= toks.size() || toks[pos].kind != k)
      throw LtagError(std::string("tree file: expected ") + what +
                      " near token " + std::to_string(pos));
    return toks[pos++];
  };
  std::vector<LtagTree> out;
  while (pos < toks.size()) {
    need(SexpToken::Open, "'('");
    LtagTree tree;
    tree.name = need(SexpToken::Symbol, "tree name").text;
    tree.root_label = need(SexpToken::Symbol, "root label").text;
    need(SexpToken::Open, "'(' (tree feature list)");
    while (pos < toks.size() && toks[pos].kind == SexpToken::Symbol)
      tree.tree_features.push_back(parse_feat(toks[pos++].text));
    need(SexpToken::Close, "')' (tree feature list)");
    while (pos < toks.size() && toks[pos].kind == SexpToken::Open) {
      ++pos;
      LtagNode node;
      node.label = need(SexpToken::Symbol, "node label").text;
      std::string marker = need(SexpToken::Symbol, "node marker").text;
      if (marker == "!sub")
        node.kind = NodeKind::Substitution;
      else if (marker == "!anchor")
        node.kind = NodeKind::Anchor;
      else if (marker == "!foot")
        node.kind = NodeKind::Foot;
      else
        throw LtagError("tree '" + tree.name + "': unknown marker '" + marker +
                        "'");
      while (pos < toks.size() && toks[pos].kind == SexpToken::Symbol)
        node.features.push_back(parse_feat(toks[pos++].text));
      need(SexpToken::Close, "')' (node)");
      tree.frontier.push_back(std::move(node));
    }
    need(SexpToken::Close, "')' (tree)");
    out.push_back(std::move(tree));
  }
  return out;
}

namespace {

// Frontier substitution nodes with their role indices: in initial trees the
// subject is 0 and the rest are numbered 1.. in frontier order; modifier
// trees have no subject and start at 1.
std::vector<std::pair<int, int>> sub_indices(const LtagTree& tree) {
  std::vector<std::pair<int, int>> out;  // (frontier pos, arg index)
  int anchor = tree.anchor_position();
  int subject = -1;
  if (!tree.has_foot()) {
    for (std::size_t i = 0; i < tree.frontier.size(); ++i)
      if (tree.frontier[i].kind == NodeKind::Substitution &&
          static_cast<int>(i) < anchor) {
        subject = static_cast<int>(i);
        break;
      }
  }
  if (subject >= 0) out.emplace_back(subject, 0);
  int next = 1;
  for (std::size_t i = 0; i < tree.frontier.size(); ++i)
    if (tree.frontier[i].kind == NodeKind::Substitution &&
        static_cast<int>(i) != subject)
      out.emplace_back(static_cast<int>(i), next++);
  return out;
}

CatPtr render_root(const std::string& label, const GrammarConfig& cfg,
                   const LtagTree& tree) {
  // VP-rooted trees render as S\NP
  if (label == "VP")
    return Category::make_functor(Category::make_atom("S"), Slash::Backward,
                                  Category::make_atom("NP"));
  if (!cfg.atoms.known(label))
    throw LtagError("tree '" + tree.name + "': root label '" + label +
                    "' is not a declared atom");
  return Category::make_atom(label);
}

CatPtr bare_arg(const LtagNode& node, int arg_index, const LtagTree& tree,
                const GrammarConfig& cfg) {
  if (!cfg.atoms.known(node.label))
    throw LtagError("tree '" + tree.name + "': frontier label '" + node.label +
                    "' is not a declared atom");
  return Category::make_atom(Atom{node.label, arg_index, FeatureStructure{}});
}

// Attach non-subject arguments working inward: the substitution node
// farthest from the anchor is added first (innermost), the nearest last
// (outermost), so the category consumes the adjacent argument first.
CatPtr attach_internal_args(CatPtr cat, const LtagTree& tree,
                            const std::vector<std::pair<int, int>>& subs,
                            int skip_frontier_pos, const GrammarConfig& cfg) {
  int anchor = tree.anchor_position();
  std::vector<std::pair<int, int>> rest;
  for (const auto& s : subs)
    if (s.first != skip_frontier_pos) rest.push_back(s);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](const auto& a, const auto& b) {
                     return std::abs(a.first - anchor) >
                            std::abs(b.first - anchor);
                   });
  for (const auto& [fpos, idx] : rest) {
    const LtagNode& node = tree.frontier[fpos];
    Slash s = fpos > anchor ? Slash::Forward : Slash::Backward;
    cat = Category::make_functor(cat, s, bare_arg(node, idx, tree, cfg));
  }
  return cat;
}

}  // namespace

ConversionResult convert_tree(const LtagTree& tree, const GrammarConfig& cfg) {
  if (tree.has_foot()) return convert_modifier(tree, cfg);
  int anchors = 0;
  for (const auto& n : tree.frontier) anchors += n.kind == NodeKind::Anchor;
  if (anchors != 1)
    throw LtagError("tree '" + tree.name + "': unsupported: " +
                    std::to_string(anchors) + " anchors");

  ConversionResult res;
  res.tree_name = tree.name;
  res.contributing_trees = {tree.name};

  auto subs = sub_indices(tree);
  CatPtr cat = render_root(tree.root_label, cfg, tree);
  int subject_pos = -1;
  if (!subs.empty() && subs.front().second == 0) {
    subject_pos = subs.front().first;
    cat = Category::make_functor(
        cat, Slash::Backward,
        bare_arg(tree.frontier[subject_pos], 0, tree, cfg));
  }
  cat = attach_internal_args(cat, tree, subs, subject_pos, cfg);
  res.category = map_tree_features(tree, cat, cfg, &res.warnings);
  return res;
}

ConversionResult convert_modifier(const LtagTree& tree,
                                  const GrammarConfig& cfg) {
  int foot = -1, anchor = tree.anchor_position();
  for (std::size_t i = 0; i < tree.frontier.size(); ++i)
    if (tree.frontier[i].kind == NodeKind::Foot) {
      if (foot >= 0)
        throw LtagError("tree '" + tree.name + "': unsupported: two feet");
      foot = static_cast<int>(i);
    }
  if (foot < 0)
    throw LtagError("tree '" + tree.name + "': not an auxiliary tree");
  if (anchor < 0)
    throw LtagError("tree '" + tree.name + "': missing anchor");
  if (tree.frontier[foot].label != tree.root_label)
    throw LtagError("tree '" + tree.name + "': unsupported: foot label '" +
                    tree.frontier[foot].label + "' differs from root '" +
                    tree.root_label + "'");

  ConversionResult res;
  res.tree_name = tree.name;
  res.contributing_trees = {tree.name};
  res.warnings.push_back("tree '" + tree.name +
                         "': auxiliary tree converted with the X/X-X\\X "
                         "modifier schema");

  CatPtr x_res = render_root(tree.root_label, cfg, tree);
  CatPtr x_arg = render_root(tree.root_label, cfg, tree);
  Slash s = anchor < foot ? Slash::Forward : Slash::Backward;
  CatPtr cat = Category::make_functor(x_res, s, x_arg);
  cat = attach_internal_args(cat, tree, sub_indices(tree), -1, cfg);
  res.category = map_tree_features(tree, cat, cfg, &res.warnings);
  return res;
}

namespace {

bool is_extraction_tree(const LtagTree& tree) {
  for (const auto& [attr, val] : tree.tree_features)
    if ((attr == "wh" || attr == "rel") && val == "+") return true;
  return false;
}

}  // namespace

std::vector<ConversionResult> convert_family(
    const std::vector<LtagTree>& trees, const GrammarConfig& cfg) {
  std::vector<ConversionResult> out;
  std::vector<std::string> family_warnings;
  for (const auto& tree : trees) {
    if (is_extraction_tree(tree)) {
      family_warnings.push_back(
          "dropped extraction tree '" + tree.name +
          "': extraction is carried by the wh-word and relative-pronoun "
          "lexicon");
      continue;
    }
    ConversionResult r = convert_tree(tree, cfg);
    bool merged = false;
    for (auto& prev : out)
      if (equal_categories(prev.category, r.category, true, false)) {
        prev.contributing_trees.push_back(tree.name);
        for (auto& w : r.warnings) prev.warnings.push_back(std::move(w));
        merged = true;
        break;
      }
    if (!merged) out.push_back(std::move(r));
  }
  if (!family_warnings.empty()) {
    if (out.empty()) {
      // warnings-only result: the whole family was extraction variants
      ConversionResult r;
      r.warnings = std::move(family_warnings);
      out.push_back(std::move(r));
    } else {
      for (auto& w : family_warnings)
        out.front().warnings.push_back(std::move(w));
    }
  }
  return out;
}

CatPtr map_tree_features(const LtagTree& tree, const CatPtr& cat,
                         const GrammarConfig& cfg,
                         std::vector<std::string>* warnings) {
  auto subs = sub_indices(tree);
  std::map<int, const LtagNode*> by_index;
  for (const auto& [fpos, idx] : subs) by_index[idx] = &tree.frontier[fpos];

  auto install = [&](const Atom& a,
                     const std::vector<std::pair<std::string, std::string>>&
                         feats) {
    Atom merged{a.label, a.arg_index, a.features};
    for (const auto& [attr, val] : feats) {
      auto resolved = cfg.resolve_attr(attr);
      if (!resolved) {
        if (warnings)
          warnings->push_back("tree '" + tree.name + "': dropped feature '" +
                              attr + "=" + val +
                              "' (not in the feature inventory)");
        continue;
      }
      if (merged.features.get(*resolved)) continue;
      merged.features.set(*resolved, val);
    }
    return Category::make_atom(std::move(merged));
  };

  std::function<CatPtr(const CatPtr&, bool)> walk =
      [&](const CatPtr& c, bool at_result) -> CatPtr {
    if (c->is_atom()) {
      const Atom& a = c->atom();
      if (at_result) return install(a, tree.tree_features);
      if (a.arg_index) {
        auto it = by_index.find(*a.arg_index);
        if (it != by_index.end()) return install(a, it->second->features);
      }
      return Category::make_atom(Atom{a.label, a.arg_index, a.features});
    }
    return Category::make_functor(walk(c->result(), at_result), c->slash(),
                                  walk(c->argument(), false));
  };
  return walk(cat, true);
}

void write_cat_db(std::ostream& out, const std::vector<LtagTree>& trees,
                  const std::vector<ConversionResult>& results) {
  std::map<std::string, std::string> anchor_pos;
  for (const auto& t : trees) {
    int a = t.anchor_position();
    if (a >= 0) anchor_pos[t.name] = t.frontier[a].label;
  }
  for (const auto& r : results) {
    for (const auto& w : r.warnings) out << "# warning: " << w << '\n';
    if (!r.category) continue;
    std::string pos = "X";
    if (!r.contributing_trees.empty()) {
      auto it = anchor_pos.find(r.contributing_trees.front());
      if (it != anchor_pos.end()) pos = it->second;
    }
    out << "# from";
    for (const auto& t : r.contributing_trees) out << ' ' << t;
    out << '\n';
    out << pos << ": " << format_category(r.category) << '\n';
  }
}

}  // namespace ccg
