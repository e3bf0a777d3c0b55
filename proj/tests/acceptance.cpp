// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "ccg/ltag.hpp"
#include "ccg/parser.hpp"
#include "naive_unifier.hpp"

using namespace ccg;

#ifndef CCG_DATA_DIR
#define CCG_DATA_DIR "data"
#endif

namespace {

const std::string kLexDir = std::string(CCG_DATA_DIR) + "/lexicon";
const std::string kCorpus = std::string(CCG_DATA_DIR) + "/corpus/corpus30.txt";

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

const LexiconFiles& files() {
  static LexiconFiles f = LexiconFiles::load_dir(kLexDir);
  return f;
}

const CompiledLexicon& lexicon() {
  static CompiledLexicon lex = compile(files());
  return lex;
}

std::vector<std::string> toks(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

CatPtr goal() {
  static CatPtr g = parse_category("S[bar=-]", files().config.atoms);
  return g;
}

std::uint64_t goal_count(const std::string& sentence, const RuleSet& rules,
                         const CompiledLexicon& lex,
                         const FilterConfig& filters = FilterConfig{}) {
  FrequencyScorer scorer;
  Chart chart = parse(toks(sentence), lex, rules, scorer, filters);
  std::uint64_t n = 0;
  auto counts = root_counts(chart);
  for (const auto& key : goal_roots(chart, goal())) n += counts[key];
  return n;
}

std::vector<DerivPtr> goal_derivs(const std::string& sentence,
                                  const RuleSet& rules, int limit = 1000) {
  FrequencyScorer scorer;
  Chart chart =
      parse(toks(sentence), lexicon(), rules, scorer, FilterConfig{});
  return derivations(chart, goal(), limit);
}

// --------------------------------------------------------------------------

// 1. VP coordination with application + coordination only, under a second.
Check criterion1() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  RuleSet rules;
  rules.enabled = {RuleName::FwdApp, RuleName::BwdApp, RuleName::Coord};
  auto derivs = goal_derivs(
      "Paddington makes marmalade sandwiches and eats them every day", rules);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(!derivs.empty(), "no derivation");
  c.expect(secs < 1.0, "took " + std::to_string(secs) + "s");
  for (const auto& d : derivs)
    c.expect(derivation_is_sound(*d, rules), "unsound derivation");
  return c;
}

// 2. Gapping requires hidden raising, forward composition, coordination.
Check criterion2() {
  Check c;
  const std::string s = "Paddington loves and Betsy hates marmalade sandwiches";
  auto derivs = goal_derivs(s, RuleSet::defaults());
  c.expect(!derivs.empty(), "no derivation");
  for (const auto& d : derivs) {
    bool raised_leaf = false, fwd_comp = false, coord = false;
    std::function<void(const Derivation&)> walk = [&](const Derivation& n) {
      if (n.rule == RuleName::Lex && n.lex &&
          n.lex->entry.source == Provenance::Raised &&
          format_category(n.lex->entry.category) == "S/(S\\NP)")
        raised_leaf = true;
      if (n.rule == RuleName::FwdComp) fwd_comp = true;
      if (n.rule == RuleName::Coord) coord = true;
      if (n.left) walk(*n.left);
      if (n.right) walk(*n.right);
    };
    walk(*d);
    c.expect(raised_leaf, "derivation without a raised S/(S\\NP) leaf");
    c.expect(fwd_comp, "derivation without forward composition");
    c.expect(coord, "derivation without coordination");
  }
  // an empty raise.cfg leaves the sentence unparseable
  CompiledLexicon unraised = compile(lexicon().base_entries(), {});
  c.expect(goal_count(s, RuleSet::defaults(), unraised) == 0,
           "parses without hidden raising");
  return c;
}

// 3. Heavy-NP shift needs BwdXComp; criteria 1-2 survive without it.
Check criterion3() {
  Check c;
  const std::string s =
      "Paddington loves dearly his very sticky marmalade sandwiches";
  auto derivs = goal_derivs(s, RuleSet::defaults());
  c.expect(!derivs.empty(), "no derivation");
  for (const auto& d : derivs) {
    bool xcomp = false;
    std::function<void(const Derivation&)> walk = [&](const Derivation& n) {
      if (n.rule == RuleName::BwdXComp) xcomp = true;
      if (n.left) walk(*n.left);
      if (n.right) walk(*n.right);
    };
    walk(*d);
    c.expect(xcomp, "derivation without crossing composition");
  }
  RuleSet without = RuleSet::defaults();
  without.disable(RuleName::BwdXComp);
  c.expect(goal_count(s, without, lexicon()) == 0,
           "parses without crossing composition");
  c.expect(!criterion1().ok ? false : true, "criterion 1 broke");
  c.expect(
      goal_count("Paddington loves and Betsy hates marmalade sandwiches",
                 without, lexicon()) > 0,
      "criterion 2 sentence broke without crossing composition");
  return c;
}

// 4. The transitive and ditransitive trees convert to the expected shapes.
Check criterion4() {
  Check c;
  auto cfg = GrammarConfig::defaults();
  auto convert = [&](const std::string& text) {
    std::istringstream in(text);
    auto trees = load_ltag_file(in);
    return convert_tree(trees.at(0), cfg);
  };
  auto trans = convert("(Tnx0Vnx1 S () (NP !sub) (V !anchor) (NP !sub))");
  c.expect(format_category(trans.category, false) == "(S\\NP)/NP",
           "transitive gave " + format_category(trans.category, false));
  auto ditrans = convert(
      "(Tnx0Vnx1pnx2 S () (NP !sub) (V !anchor) (NP !sub) (PP !sub))");
  c.expect(format_category(ditrans.category, false) == "((S\\NP)/PP)/NP",
           "ditransitive gave " + format_category(ditrans.category, false));

  // the shipped tree file converts to the same skeletons
  std::ifstream shipped(std::string(CCG_DATA_DIR) + "/trees/verbs.ltag");
  auto trees = load_ltag_file(shipped);
  bool saw_ditrans = false;
  for (const auto& t : trees) {
    auto r = convert_tree(t, cfg);
    if (t.name == "Tnx0Vnx1pnx2") {
      saw_ditrans = true;
      c.expect(canonical_key(r.category, false) ==
                   canonical_key(ditrans.category, false),
               "shipped ditransitive skeleton differs");
    }
  }
  c.expect(saw_ditrans, "shipped ditransitive tree missing");
  return c;
}

// 5. Quasi-destructiveness and oracle agreement over 10,000 random pairs.
Check criterion5() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(424242);
  int agreements = 0;
  const int kPairs = 10000;
  for (int i = 0; i < kPairs; ++i) {
    FeatureStructure a = oracle::random_fs(rng);
    FeatureStructure b = oracle::random_fs(rng);
    std::uint64_t ha = snapshot_hash(a), hb = snapshot_hash(b);

    oracle::Pool pool;
    auto [oracle_ok, oracle_result] = oracle::oracle_unify(a, b, pool);
    UnifyContext ctx;
    auto out = unify(a, b, ctx);

    bool agree = out.ok() == oracle_ok;
    if (agree && out.ok())
      agree = oracle::same_as_oracle(*out.result, oracle_result, pool);
    agree = agree && snapshot_hash(a) == ha && snapshot_hash(b) == hb;
    if (agree) ++agreements;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(agreements == kPairs,
           std::to_string(kPairs - agreements) + " disagreements");
  c.expect(secs < 10.0, "took " + std::to_string(secs) + "s");
  return c;
}

// 6. Chart parser equals brute-force enumeration over the corpus.
Check criterion6() {
  Check c;
  std::ifstream corpus(kCorpus);
  if (!corpus) {
    c.fail("corpus missing");
    return c;
  }
  RuleSet rules = RuleSet::defaults();
  FrequencyScorer scorer;
  FilterConfig off;
  off.span_filter = false;
  std::string line;
  int n = 0;
  while (std::getline(corpus, line)) {
    if (line.empty()) continue;
    ++n;
    auto tokens = toks(line);
    Chart chart = parse(tokens, lexicon(), rules, scorer, off);
    auto packed = root_counts(chart);
    auto brute = brute_force_parse(tokens, lexicon(), rules);
    if (packed != brute) c.fail("mismatch on '" + line + "'");
  }
  c.expect(n == 30, "expected 30 sentences, saw " + std::to_string(n));
  return c;
}

// 7. Span filter: same goal cells, strictly fewer items somewhere.
Check criterion7() {
  Check c;
  std::ifstream corpus(kCorpus);
  RuleSet rules = RuleSet::defaults();
  FrequencyScorer scorer;
  FilterConfig on, off;
  off.span_filter = false;
  std::string line;
  bool strictly_smaller = false;
  while (std::getline(corpus, line)) {
    if (line.empty()) continue;
    auto tokens = toks(line);
    Chart with = parse(tokens, lexicon(), rules, scorer, on);
    Chart without = parse(tokens, lexicon(), rules, scorer, off);
    auto goal_map = [&](const Chart& ch) {
      std::map<std::string, std::uint64_t> out;
      auto counts = root_counts(ch);
      for (const auto& key : goal_roots(ch, goal())) out[key] = counts[key];
      return out;
    };
    if (goal_map(with) != goal_map(without))
      c.fail("goal cell changed on '" + line + "'");
    if (with.item_count() > without.item_count())
      c.fail("filter grew the chart on '" + line + "'");
    if (with.item_count() < without.item_count()) strictly_smaller = true;
  }
  c.expect(strictly_smaller, "no sentence had a strictly smaller chart");
  return c;
}

// 8. No raised shapes in the working files; compiled DB raises subject NPs.
Check criterion8() {
  Check c;
  for (const auto& syn : files().syn)
    for (const auto& cat : syn.parsed)
      if (is_raised_shape(cat))
        c.fail("raised shape in syn.db under '" + syn.index_word + "'");
  for (const auto& entry : files().catdb)
    for (const auto& clause : entry.clauses)
      if (is_raised_shape(clause.category))
        c.fail("raised shape in cat.db clause '" + clause.text + "'");

  // every word with an atomic NP base entry has raised entries
  for (const auto& [word, entries] : lexicon().entries()) {
    bool has_np = false, has_raised = false;
    for (const auto& e : entries) {
      if (e.source == Provenance::Base && e.category->is_atom() &&
          e.category->atom().label == "NP")
        has_np = true;
      if (e.source == Provenance::Raised && is_raised_shape(e.category))
        has_raised = true;
    }
    if (has_np && !has_raised) c.fail("'" + word + "' has no raised entry");
  }
  return c;
}

// 9. cat.db categories survive parse -> format -> parse.
Check criterion9() {
  Check c;
  int n = 0;
  for (const auto& entry : files().catdb)
    for (const auto& clause : entry.clauses) {
      ++n;
      CatPtr once = clause.category;
      CatPtr again =
          parse_category(format_category(once), files().config.atoms);
      if (!equal_categories(once, again, true, true))
        c.fail("round-trip changed '" + clause.text + "'");
    }
  c.expect(n > 0, "no clauses found");
  return c;
}

// 10. +BAR: complementizers gate sentential subjects, not complements.
Check criterion10() {
  Check c;
  RuleSet rules = RuleSet::defaults();
  c.expect(goal_count("that Betsy sleeps matters", rules, lexicon()) > 0,
           "sentential subject with complementizer failed");
  c.expect(goal_count("Betsy sleeps matters", rules, lexicon()) == 0,
           "bare sentential subject parsed");
  c.expect(goal_count("Paddington thinks that Betsy sleeps", rules,
                      lexicon()) > 0,
           "that-complement failed");
  c.expect(goal_count("Paddington thinks Betsy sleeps", rules, lexicon()) > 0,
           "bare complement failed");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    Check (*run)();
  };
  const Criterion criteria[] = {
      {"1 VP coordination (application + coordination only)", criterion1},
      {"2 gapping via hidden subject raising", criterion2},
      {"3 heavy-NP shift via crossing composition", criterion3},
      {"4 elementary tree conversion fidelity", criterion4},
      {"5 quasi-destructive unification vs naive oracle", criterion5},
      {"6 chart parser equals brute-force enumeration", criterion6},
      {"7 span filter soundness and reduction", criterion7},
      {"8 hidden raising invisible in working files", criterion8},
      {"9 cat.db round-trip", criterion9},
      {"10 +BAR sentential subjects and complements", criterion10},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    if (c.ok) {
      std::printf("PASS criterion %s\n", cr.label);
    } else {
      std::printf("FAIL criterion %s: %s\n", cr.label, c.detail.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
