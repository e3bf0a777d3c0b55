#ifndef CCG_LEXICON_HPP
#define CCG_LEXICON_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccg/category.hpp"
#include "ccg/combinators.hpp"

namespace ccg {

struct DbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Atom inventory extensions, the declared feature inventory, and attribute
// aliases, loaded from features.cfg.
struct GrammarConfig {
  AtomInventory atoms;
  std::vector<std::string> features;
  std::map<std::string, std::string> aliases;  // external name -> feature

  // The built-in inventory plus the default 13-feature set.
  static GrammarConfig defaults();
  static GrammarConfig load(std::istream& in);

  bool feature_known(const std::string& name) const;
  // Resolve an attribute through the alias table; nullopt if unknown.
  std::optional<std::string> resolve_attr(const std::string& name) const;
};

struct SynEntry {
  std::string index_word;
  int entry_count = 0;
  std::string pos;
  std::vector<std::string> cats;      // category texts as written
  std::vector<CatPtr> parsed;         // same order
};

// #NP1caseacc -> set case=acc on the atom labeled NP with arg index 1
struct FeatureTag {
  std::string label;
  int arg_index = 0;
  std::string attr;
  std::string value;
};
// #INTRANS etc: a clause label
struct FlagTag {
  std::string name;
};
using ResolvedTag = std::variant<FeatureTag, FlagTag>;

struct CatClause {
  std::string text;
  CatPtr category;
  std::vector<std::string> tags;
  std::vector<ResolvedTag> resolved;
};

struct CatDbEntry {
  std::string pos;
  std::vector<CatClause> clauses;
};

struct MorphEntry {
  std::string surface;
  std::string lemma;
  std::string pos;
  std::vector<std::pair<std::string, std::string>> features;
};

struct RaiseRule {
  std::string source_label;  // must be atomic
  Slash direction = Slash::Forward;
  std::string target_label;
};

enum class Provenance { Base, Raised };

struct LexEntry {
  std::string word;
  std::string pos;
  CatPtr category;
  Provenance source = Provenance::Base;
};

std::vector<SynEntry> load_syn_db(std::istream& in, const GrammarConfig& cfg);
std::vector<CatDbEntry> load_cat_db(std::istream& in, const GrammarConfig& cfg);
std::vector<MorphEntry> load_morph_db(std::istream& in,
                                      const GrammarConfig& cfg);
std::vector<RaiseRule> load_raise_cfg(std::istream& in,
                                      const GrammarConfig& cfg);

ResolvedTag resolve_tag(const std::string& tag, const GrammarConfig& cfg);

// The working (pre-compile) lexicon: the five database files of one
// lexicon directory.
struct LexiconFiles {
  GrammarConfig config;
  std::vector<SynEntry> syn;
  std::vector<CatDbEntry> catdb;
  std::vector<MorphEntry> morph;
  std::vector<RaiseRule> raise_rules;

  // Expects syn.db, cat.db, morph.db, features.cfg, raise.cfg.
  static LexiconFiles load_dir(const std::string& dir);
};

// Resolve a surface form to fully-featured lexical entries, merging the
// three feature sources: category-DB tree-level features, syntactic-DB
// lexical features, then morphology.  Inconsistent combinations are dropped
// with a diagnostic line.
std::vector<LexEntry> resolve(const std::string& word, const LexiconFiles& lex,
                              std::vector<std::string>* diagnostics = nullptr);

class CompiledLexicon {
 public:
  const std::vector<LexEntry>& lookup(const std::string& surface) const;
  const std::map<std::string, std::vector<LexEntry>>& entries() const {
    return entries_;
  }
  std::vector<LexEntry> base_entries() const;
  std::size_t base_count() const;
  std::size_t raised_count() const;

  void add(LexEntry e) { entries_[e.word].push_back(std::move(e)); }

 private:
  std::map<std::string, std::vector<LexEntry>> entries_;
};

// Adds one hidden type-raised entry per base entry matching a raise rule;
// base entries come first per surface form, raised duplicates are skipped.
CompiledLexicon compile(const std::vector<LexEntry>& base,
                        const std::vector<RaiseRule>& raise_rules);

// resolve() over the whole vocabulary, then compile().
CompiledLexicon compile(const LexiconFiles& lex,
                        std::vector<std::string>* diagnostics = nullptr);

// word TAB pos TAB category TAB base|raised
void write_compiled(std::ostream& out, const CompiledLexicon& lex);

}  // namespace ccg

#endif
