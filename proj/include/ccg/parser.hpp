#ifndef CCG_PARSER_HPP
#define CCG_PARSER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ccg/combinators.hpp"
#include "ccg/lexicon.hpp"

namespace ccg {

struct FilterConfig {
  bool span_filter = true;
  int n_best = 0;  // 0 = no cut
};

// Scoring hook for the first parsing stage; statistical models plug in
// here.  The baseline is a deterministic frequency table with a uniform
// fallback.
class CategoryScorer {
 public:
  virtual ~CategoryScorer() = default;
  virtual double score(const std::vector<std::string>& tokens, int token_index,
                       const LexEntry& entry) const = 0;
};

class FrequencyScorer : public CategoryScorer {
 public:
  FrequencyScorer() = default;
  void set_count(const std::string& word, const std::string& category_text,
                 double count);
  // optional freq.db: word TAB category TAB count
  static FrequencyScorer load(std::istream& in);
  double score(const std::vector<std::string>& tokens, int token_index,
               const LexEntry& entry) const override;

 private:
  std::map<std::pair<std::string, std::string>, double> counts_;
};

struct FilteredEntry {
  LexEntry entry;
  std::string reason;  // "span-filter" or "n-best"
};

struct TokenAssignment {
  int token_index = 0;
  std::vector<LexEntry> surviving;
  std::vector<FilteredEntry> filtered_out;
};

// Stage one: per-token category selection.  The span filter drops entries
// whose directional arity cannot be satisfied by the tokens on each side;
// raised entries and Conj are exempt.  The n-best cut keeps the top-scored
// base entries; raised entries are rank-penalized to the end of the list
// but never removed by the cut alone.
std::vector<TokenAssignment> select_categories(
    const std::vector<std::string>& tokens, const CompiledLexicon& lex,
    const CategoryScorer& scorer, const FilterConfig& filters);

struct LexBack {
  int token_index = 0;
  LexEntry entry;
};

struct Back {
  RuleName rule = RuleName::Lex;
  int left = -1;   // item ids; -1 for lexical backs
  int right = -1;
  int conj = -1;   // the Conj item bridged by a Coord back (display only)
  std::shared_ptr<LexBack> lex;
};

struct ChartItem {
  int start = 0, end = 0;
  CatPtr category;
  std::vector<Back> backs;  // packed derivational histories
};

class Chart {
 public:
  explicit Chart(int n_tokens) : n_(n_tokens) {}
  int size() const { return n_; }
  const std::vector<ChartItem>& items() const { return items_; }
  const std::vector<int>& cell(int start, int end) const;
  int add(int start, int end, const CatPtr& cat, Back back);
  std::string dump() const;  // one item per line, stable format
  std::size_t item_count() const { return items_.size(); }

 private:
  int n_;
  std::vector<ChartItem> items_;
  std::map<std::pair<int, int>, std::vector<int>> cells_;
  std::map<std::tuple<int, int, std::string>, int> index_;
};

Chart parse(const std::vector<std::string>& tokens, const CompiledLexicon& lex,
            const RuleSet& rules, const CategoryScorer& scorer,
            const FilterConfig& filters = FilterConfig{});

struct Derivation {
  RuleName rule = RuleName::Lex;
  CatPtr category;
  std::shared_ptr<LexBack> lex;  // set on leaves
  std::shared_ptr<Derivation> left, right;
  std::shared_ptr<Derivation> conj;  // conjunction leaf under a Coord node
};
using DerivPtr = std::shared_ptr<Derivation>;

// Unpack up to `limit` derivations whose root unifies with `goal`,
// depth-first in chart order.
std::vector<DerivPtr> derivations(const Chart& chart, const CatPtr& goal,
                                  int limit);

// Derivation counts per distinct root category over the full span,
// keyed by canonical category form.
std::map<std::string, std::uint64_t> root_counts(const Chart& chart);

// Full-span root categories that unify with goal (canonical keys).
std::vector<std::string> goal_roots(const Chart& chart, const CatPtr& goal);

// Exhaustive enumeration of binary bracketings and rule choices, no
// packing, no filters.  Testing oracle; refuses more than 8 tokens or more
// than 4 lexical entries per token.
std::map<std::string, std::uint64_t> brute_force_parse(
    const std::vector<std::string>& tokens, const CompiledLexicon& lex,
    const RuleSet& rules);

bool derivation_is_sound(const Derivation& d, const RuleSet& rules);

}  // namespace ccg

#endif
