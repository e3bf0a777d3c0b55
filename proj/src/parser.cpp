#include "ccg/parser.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ccg {

void FrequencyScorer::set_count(const std::string& word,
                                const std::string& category_text,
                                double count) {
  counts_[{word, category_text}] = count;
}

FrequencyScorer FrequencyScorer::load(std::istream& in) {
  FrequencyScorer s;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word, cat, count;
    if (std::getline(ls, word, '\t') && std::getline(ls, cat, '\t') &&
        std::getline(ls, count))
      s.set_count(word, cat, std::stod(count));
  }
  return s;
}

double FrequencyScorer::score(const std::vector<std::string>&, int,
                              const LexEntry& entry) const {
  auto it = counts_.find({entry.word, format_category(entry.category)});
  return it == counts_.end() ? 1.0 : it->second;
}

namespace {

bool is_conj(const CatPtr& c) {
  return c->is_atom() && c->atom().label == "Conj";
}

bool span_exempt(const LexEntry& e) {
  return e.source == Provenance::Raised || is_conj(e.category);
}

}  // namespace

std::vector<TokenAssignment> select_categories(
    const std::vector<std::string>& tokens, const CompiledLexicon& lex,
    const CategoryScorer& scorer, const FilterConfig& filters) {
  const int n = static_cast<int>(tokens.size());
  std::vector<TokenAssignment> out;
  for (int i = 0; i < n; ++i) {
    TokenAssignment ta;
    ta.token_index = i;
    std::vector<std::pair<double, LexEntry>> base;
    std::vector<LexEntry> raised;
    for (const auto& e : lex.lookup(tokens[i])) {
      if (filters.span_filter && !span_exempt(e)) {
        auto [left, right] = directional_arity(e.category);
        if (left > i || right > n - 1 - i) {
          ta.filtered_out.push_back({e, "span-filter"});
          continue;
        }
      }
      if (e.source == Provenance::Raised)
        raised.push_back(e);
      else
        base.emplace_back(scorer.score(tokens, i, e), e);
    }
    std::stable_sort(base.begin(), base.end(),
                     [](const auto& a, const auto& b) {
                       return a.first > b.first;
                     });
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (filters.n_best > 0 && static_cast<int>(k) >= filters.n_best)
        ta.filtered_out.push_back({base[k].second, "n-best"});
      else
        ta.surviving.push_back(base[k].second);
    }
    // dispreferred but still available: raised entries rank last and are
    // never removed by the n-best cut
    for (auto& e : raised) ta.surviving.push_back(std::move(e));
    out.push_back(std::move(ta));
  }
  return out;
}

const std::vector<int>& Chart::cell(int start, int end) const {
  static const std::vector<int> empty;
  auto it = cells_.find({start, end});
  return it == cells_.end() ? empty : it->second;
}

int Chart::add(int start, int end, const CatPtr& cat, Back back) {
  auto key = std::make_tuple(start, end, canonical_key(cat));
  auto it = index_.find(key);
  if (it != index_.end()) {
    items_[it->second].backs.push_back(std::move(back));
    return it->second;
  }
  int id = static_cast<int>(items_.size());
  items_.push_back(ChartItem{start, end, cat, {std::move(back)}});
  cells_[{start, end}].push_back(id);
  index_.emplace(std::move(key), id);
  return id;
}

std::string Chart::dump() const {
  std::ostringstream out;
  for (std::size_t id = 0; id < items_.size(); ++id) {
    const ChartItem& it = items_[id];
    out << id << ": [" << it.start << "," << it.end << ") "
        << format_category(it.category);
    for (const auto& b : it.backs) {
      if (b.lex)
        out << " <- lex(" << b.lex->token_index << " '" << b.lex->entry.word
            << "')";
      else if (b.rule == RuleName::Coord)
        out << " <- Coord(" << b.left << "," << b.conj << "," << b.right << ")";
      else
        out << " <- " << rule_name(b.rule) << "(" << b.left << "," << b.right
            << ")";
    }
    out << '\n';
  }
  return out.str();
}

Chart parse(const std::vector<std::string>& tokens, const CompiledLexicon& lex,
            const RuleSet& rules, const CategoryScorer& scorer,
            const FilterConfig& filters) {
  const int n = static_cast<int>(tokens.size());
  Chart chart(n);
  UnifyContext ctx;
  auto assignments = select_categories(tokens, lex, scorer, filters);

  for (int i = 0; i < n; ++i) {
    for (const auto& e : assignments[i].surviving) {
      // copy lexical material into this parse's unification context
      LexEntry local = e;
      local.category = clone_category(e.category);
      Back b;
      b.rule = RuleName::Lex;
      b.lex = std::make_shared<LexBack>(LexBack{i, local});
      chart.add(i, i + 1, local.category, std::move(b));
    }
  }

  for (int width = 2; width <= n; ++width) {
    for (int i = 0; i + width <= n; ++i) {
      const int k = i + width;
      for (int j = i + 1; j < k; ++j) {
        for (int li : chart.cell(i, j)) {
          for (int ri : chart.cell(j, k)) {
            auto apps = apply_all(chart.items()[li].category,
                                  chart.items()[ri].category, rules, ctx);
            for (auto& app : apps) {
              Back b;
              b.rule = app.rule;
              b.left = li;
              b.right = ri;
              chart.add(i, k, app.result, std::move(b));
            }
          }
        }
      }
      if (rules.is_enabled(RuleName::Coord)) {
        for (int j = i + 1; j < k - 1; ++j) {
          for (int m = j + 1; m < k; ++m) {
            for (int ci : chart.cell(j, m)) {
              if (!is_conj(chart.items()[ci].category)) continue;
              for (int li : chart.cell(i, j)) {
                for (int ri : chart.cell(m, k)) {
                  auto res = coordinate(chart.items()[li].category,
                                        chart.items()[ri].category, ctx);
                  if (!res) continue;
                  Back b;
                  b.rule = RuleName::Coord;
                  b.left = li;
                  b.right = ri;
                  b.conj = ci;
                  chart.add(i, k, *res, std::move(b));
                }
              }
            }
          }
        }
      }
    }
  }
  return chart;
}

namespace {

void gen_derivs(const Chart& chart, int item_id, int limit,
                std::vector<DerivPtr>& out) {
  if (static_cast<int>(out.size()) >= limit) return;
  const ChartItem& item = chart.items()[item_id];
  for (const auto& b : item.backs) {
    if (static_cast<int>(out.size()) >= limit) return;
    if (b.lex) {
      auto d = std::make_shared<Derivation>();
      d->rule = RuleName::Lex;
      d->category = item.category;
      d->lex = b.lex;
      out.push_back(std::move(d));
      continue;
    }
    std::vector<DerivPtr> lefts, rights;
    gen_derivs(chart, b.left, limit, lefts);
    gen_derivs(chart, b.right, limit, rights);
    DerivPtr conj_leaf;
    if (b.rule == RuleName::Coord && b.conj >= 0) {
      std::vector<DerivPtr> cs;
      gen_derivs(chart, b.conj, 1, cs);
      if (!cs.empty()) conj_leaf = cs.front();
    }
    for (const auto& l : lefts) {
      for (const auto& r : rights) {
        if (static_cast<int>(out.size()) >= limit) return;
        auto d = std::make_shared<Derivation>();
        d->rule = b.rule;
        d->category = item.category;
        d->left = l;
        d->right = r;
        d->conj = conj_leaf;
        out.push_back(std::move(d));
      }
    }
  }
}

}  // namespace

std::vector<DerivPtr> derivations(const Chart& chart, const CatPtr& goal,
                                  int limit) {
  std::vector<DerivPtr> out;
  UnifyContext ctx;
  for (int id : chart.cell(0, chart.size())) {
    if (static_cast<int>(out.size()) >= limit) break;
    auto u = unify_categories(chart.items()[id].category, goal, ctx);
    if (!u.ok()) continue;
    gen_derivs(chart, id, limit, out);
  }
  return out;
}

std::map<std::string, std::uint64_t> root_counts(const Chart& chart) {
  std::vector<std::uint64_t> memo(chart.items().size(), 0);
  std::vector<char> done(chart.items().size(), 0);
  std::function<std::uint64_t(int)> count = [&](int id) -> std::uint64_t {
    if (done[id]) return memo[id];
    std::uint64_t total = 0;
    for (const auto& b : chart.items()[id].backs) {
      if (b.lex)
        total += 1;
      else
        total += count(b.left) * count(b.right);
    }
    done[id] = 1;
    memo[id] = total;
    return total;
  };
  std::map<std::string, std::uint64_t> out;
  for (int id : chart.cell(0, chart.size()))
    out[canonical_key(chart.items()[id].category)] += count(id);
  return out;
}

std::vector<std::string> goal_roots(const Chart& chart, const CatPtr& goal) {
  std::vector<std::string> out;
  UnifyContext ctx;
  for (int id : chart.cell(0, chart.size())) {
    auto u = unify_categories(chart.items()[id].category, goal, ctx);
    if (u.ok()) out.push_back(canonical_key(chart.items()[id].category));
  }
  return out;
}

std::map<std::string, std::uint64_t> brute_force_parse(
    const std::vector<std::string>& tokens, const CompiledLexicon& lex,
    const RuleSet& rules) {
  const int n = static_cast<int>(tokens.size());
  if (n == 0 || n > 8)
    throw std::runtime_error("brute_force_parse: sentence length out of bounds");
  for (const auto& t : tokens)
    if (lex.lookup(t).size() > 4)
      throw std::runtime_error("brute_force_parse: more than 4 entries for '" +
                               t + "'");

  UnifyContext ctx;
  // memo per span: one root category per enumerated derivation, duplicates
  // retained (no packing)
  std::map<std::pair<int, int>, std::vector<CatPtr>> memo;
  std::function<const std::vector<CatPtr>&(int, int)> enumerate =
      [&](int i, int k) -> const std::vector<CatPtr>& {
    auto it = memo.find({i, k});
    if (it != memo.end()) return it->second;
    std::vector<CatPtr> roots;
    if (k - i == 1) {
      for (const auto& e : lex.lookup(tokens[i]))
        roots.push_back(clone_category(e.category));
    } else {
      for (int j = i + 1; j < k; ++j)
        for (const auto& l : enumerate(i, j))
          for (const auto& r : enumerate(j, k))
            for (const auto& app : apply_all(l, r, rules, ctx))
              roots.push_back(app.result);
      if (rules.is_enabled(RuleName::Coord)) {
        for (int j = i + 1; j < k - 1; ++j)
          for (int m = j + 1; m < k; ++m)
            for (const auto& c : enumerate(j, m)) {
              if (!is_conj(c)) continue;
              for (const auto& l : enumerate(i, j))
                for (const auto& r : enumerate(m, k))
                  if (auto res = coordinate(l, r, ctx))
                    roots.push_back(*res);
            }
      }
    }
    return memo[{i, k}] = std::move(roots);
  };

  std::map<std::string, std::uint64_t> out;
  for (const auto& root : enumerate(0, n)) out[canonical_key(root)] += 1;
  return out;
}

bool derivation_is_sound(const Derivation& d, const RuleSet& rules) {
  if (d.rule == RuleName::Lex) return d.lex != nullptr;
  if (!d.left || !d.right) return false;
  if (!derivation_is_sound(*d.left, rules) ||
      !derivation_is_sound(*d.right, rules))
    return false;
  UnifyContext ctx;
  const CatPtr& l = d.left->category;
  const CatPtr& r = d.right->category;
  std::optional<CatPtr> res;
  switch (d.rule) {
    case RuleName::FwdApp: res = forward_apply(l, r, ctx); break;
    case RuleName::BwdApp: res = backward_apply(l, r, ctx); break;
    case RuleName::FwdComp:
      res = forward_compose(l, r, ctx, rules.composition_depth);
      break;
    case RuleName::BwdComp:
      res = backward_compose(l, r, ctx, rules.composition_depth);
      break;
    case RuleName::BwdXComp:
      res = backward_cross_compose(l, r, ctx, rules.composition_depth);
      break;
    case RuleName::Coord: res = coordinate(l, r, ctx); break;
    default: return false;
  }
  return res && canonical_key(*res) == canonical_key(d.category);
}

}  // namespace ccg
