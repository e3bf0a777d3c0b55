#include "ccg/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ccg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_char(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void db_fail(const std::string& what, int line) {
  throw DbError(what + " (line " + std::to_string(line) + ")");
}

}  // namespace

GrammarConfig GrammarConfig::defaults() {
  GrammarConfig cfg;
  cfg.features = {"case", "num",  "pers", "vform", "tense",     "wh",     "bar",
                  "comp", "pron", "refl", "inv",   "conj-head", "passive"};
  cfg.aliases = {{"mode", "vform"}};
  return cfg;
}

bool GrammarConfig::feature_known(const std::string& name) const {
  return std::find(features.begin(), features.end(), name) != features.end();
}

std::optional<std::string> GrammarConfig::resolve_attr(
    const std::string& name) const {
  if (feature_known(name)) return name;
  auto it = aliases.find(name);
  if (it != aliases.end() && feature_known(it->second)) return it->second;
  return std::nullopt;
}

GrammarConfig GrammarConfig::load(std::istream& in) {
  GrammarConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto toks = split_ws(line);
    if (toks[0] == "atom" && toks.size() == 2) {
      cfg.atoms.declare(toks[1]);
    } else if (toks[0] == "feature" && toks.size() == 2) {
      cfg.features.push_back(toks[1]);
    } else if (toks[0] == "alias" && toks.size() == 3) {
      cfg.aliases[toks[1]] = toks[2];
    } else {
      db_fail("features.cfg: bad directive '" + line + "'", lineno);
    }
  }
  return cfg;
}

std::vector<SynEntry> load_syn_db(std::istream& in, const GrammarConfig& cfg) {
  std::vector<SynEntry> out;
  std::string line;
  int lineno = 0;
  SynEntry cur;
  bool open = false;
  int record_line = 0;

  auto flush = [&]() {
    if (!open) return;
    if (cur.index_word.empty() || cur.pos.empty())
      db_fail("syn.db: incomplete record", record_line);
    if (static_cast<int>(cur.cats.size()) != cur.entry_count)
      throw DbError("syn.db: entry count mismatch for '" + cur.index_word +
                    "': declared " + std::to_string(cur.entry_count) +
                    ", found " + std::to_string(cur.cats.size()));
    for (const auto& text : cur.cats) {
      try {
        cur.parsed.push_back(parse_category(text, cfg.atoms));
      } catch (const CategoryParseError& e) {
        throw DbError("syn.db: bad category '" + text + "' for '" +
                      cur.index_word + "': " + e.what());
      }
    }
    out.push_back(std::move(cur));
    cur = SynEntry{};
    open = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t[0] == '#') continue;
    if (!open) {
      open = true;
      record_line = lineno;
    }
    if (t.rfind("INDEX:", 0) == 0) {
      std::string rest = trim(t.substr(6));
      std::size_t slash = rest.rfind('/');
      if (slash == std::string::npos) db_fail("syn.db: INDEX needs word/count", lineno);
      cur.index_word = rest.substr(0, slash);
      try {
        cur.entry_count = std::stoi(rest.substr(slash + 1));
      } catch (...) {
        db_fail("syn.db: bad entry count", lineno);
      }
    } else if (t.rfind("POS:", 0) == 0) {
      cur.pos = trim(t.substr(4));
    } else if (t.rfind("CAT:", 0) == 0) {
      cur.cats = split_ws(t.substr(4));
    } else {
      db_fail("syn.db: unrecognized line '" + t + "'", lineno);
    }
  }
  flush();
  return out;
}

ResolvedTag resolve_tag(const std::string& tag, const GrammarConfig& cfg) {
  std::string name = tag;
  if (!name.empty() && name[0] == '#') name = name.substr(1);
  if (name.empty()) throw DbError("empty tag");

  // feature tag: <atom-label><digit><attr><value>
  std::string label;
  for (const auto& a : cfg.atoms.labels())
    if (name.rfind(a, 0) == 0 && a.size() > label.size() &&
        name.size() > a.size() && std::isdigit((unsigned char)name[a.size()]))
      label = a;
  if (label.empty()) return FlagTag{name};

  int idx = name[label.size()] - '0';
  std::string rest = name.substr(label.size() + 1);
  std::string attr;
  for (const auto& f : cfg.features)
    if (rest.rfind(f, 0) == 0 && f.size() > attr.size() && rest.size() > f.size())
      attr = f;
  if (attr.empty())
    throw DbError("unknown tag '#" + name + "': no declared feature matches");
  return FeatureTag{label, idx, attr, rest.substr(attr.size())};
}

namespace {

// Atom carrying a given label and arg index, if present.
const Atom* find_indexed_atom(const CatPtr& cat, const std::string& label,
                              int idx) {
  if (cat->is_atom()) {
    const Atom& a = cat->atom();
    if (a.label == label && a.arg_index && *a.arg_index == idx) return &a;
    return nullptr;
  }
  if (const Atom* r = find_indexed_atom(cat->result(), label, idx)) return r;
  return find_indexed_atom(cat->argument(), label, idx);
}

}  // namespace

std::vector<CatDbEntry> load_cat_db(std::istream& in,
                                    const GrammarConfig& cfg) {
  std::vector<CatDbEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t colon = t.find(':');
    if (colon == std::string::npos) db_fail("cat.db: missing 'POS:'", lineno);
    CatDbEntry entry;
    entry.pos = trim(t.substr(0, colon));
    auto toks = split_ws(t.substr(colon + 1));
    for (const auto& tok : toks) {
      if (tok[0] == '#') {
        if (entry.clauses.empty())
          db_fail("cat.db: tag '" + tok + "' before any category", lineno);
        CatClause& cl = entry.clauses.back();
        cl.tags.push_back(tok);
        ResolvedTag rt = resolve_tag(tok, cfg);
        if (const auto* ft = std::get_if<FeatureTag>(&rt)) {
          if (!find_indexed_atom(cl.category, ft->label, ft->arg_index))
            db_fail("cat.db: tag '" + tok + "' targets no atom " + ft->label +
                        std::to_string(ft->arg_index) + " in " + cl.text,
                    lineno);
        }
        cl.resolved.push_back(std::move(rt));
      } else {
        CatClause cl;
        cl.text = tok;
        try {
          cl.category = parse_category(tok, cfg.atoms);
        } catch (const CategoryParseError& e) {
          throw DbError("cat.db: bad category '" + tok + "' on line " +
                        std::to_string(lineno) + " column " +
                        std::to_string(e.offset + 1) + ": " + e.what());
        }
        entry.clauses.push_back(std::move(cl));
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<MorphEntry> load_morph_db(std::istream& in,
                                      const GrammarConfig& cfg) {
  std::vector<MorphEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto fields = split_char(trim(line), '\t');
    if (fields.size() < 3 || fields.size() > 4)
      db_fail("morph.db: expected surface<TAB>lemma<TAB>pos[<TAB>features]",
              lineno);
    MorphEntry e;
    e.surface = trim(fields[0]);
    e.lemma = trim(fields[1]);
    e.pos = trim(fields[2]);
    if (fields.size() == 4 && !trim(fields[3]).empty()) {
      for (const auto& kv : split_char(trim(fields[3]), ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          db_fail("morph.db: bad feature '" + kv + "'", lineno);
        std::string attr = trim(kv.substr(0, eq));
        auto resolved = cfg.resolve_attr(attr);
        if (!resolved)
          db_fail("morph.db: attribute '" + attr + "' not in the feature inventory",
                  lineno);
        e.features.emplace_back(*resolved, trim(kv.substr(eq + 1)));
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RaiseRule> load_raise_cfg(std::istream& in,
                                      const GrammarConfig& cfg) {
  std::vector<RaiseRule> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto toks = split_ws(t);
    if (toks.size() != 3)
      db_fail("raise.cfg: expected 'SOURCE_ATOM DIRECTION TARGET_ATOM'", lineno);
    RaiseRule r;
    CatPtr src = parse_category(toks[0], cfg.atoms);
    if (!src->is_atom())
      db_fail("raise.cfg: source pattern '" + toks[0] + "' is not atomic",
              lineno);
    r.source_label = src->atom().label;
    if (toks[1] == "forward")
      r.direction = Slash::Forward;
    else if (toks[1] == "backward")
      r.direction = Slash::Backward;
    else
      db_fail("raise.cfg: direction must be forward|backward", lineno);
    CatPtr tgt = parse_category(toks[2], cfg.atoms);
    if (!tgt->is_atom())
      db_fail("raise.cfg: target '" + toks[2] + "' is not atomic", lineno);
    r.target_label = tgt->atom().label;
    out.push_back(std::move(r));
  }
  return out;
}

LexiconFiles LexiconFiles::load_dir(const std::string& dir) {
  auto open = [&](const char* name) {
    std::ifstream f(dir + "/" + name);
    if (!f) throw DbError("cannot open " + dir + "/" + name);
    return f;
  };
  LexiconFiles lex;
  {
    auto f = open("features.cfg");
    lex.config = GrammarConfig::load(f);
  }
  {
    auto f = open("syn.db");
    lex.syn = load_syn_db(f, lex.config);
  }
  {
    auto f = open("cat.db");
    lex.catdb = load_cat_db(f, lex.config);
  }
  {
    auto f = open("morph.db");
    lex.morph = load_morph_db(f, lex.config);
  }
  {
    auto f = open("raise.cfg");
    lex.raise_rules = load_raise_cfg(f, lex.config);
  }
  return lex;
}

namespace {

// Add attr=val unless already present; an existing different value is a
// merge conflict.
bool try_add(FeatureStructure& fs, const std::string& attr,
             const std::string& val, std::string& why) {
  auto existing = fs.get(attr);
  if (existing) {
    if (*existing == val) return true;
    why = attr + ": " + *existing + " vs " + val;
    return false;
  }
  fs.set(attr, val);
  return true;
}

struct Installer {
  const std::vector<ResolvedTag>* tags = nullptr;
  const std::vector<std::pair<std::string, std::string>>* morph = nullptr;
  std::string fail_reason;

  // clause and syn skeletons are equal; returns null on a merge conflict
  CatPtr build(const CatPtr& clause, const CatPtr& syn, bool at_result) {
    if (clause->is_atom()) {
      const Atom& ca = clause->atom();
      Atom merged{ca.label, ca.arg_index, ca.features};
      if (tags) {
        for (const auto& rt : *tags) {
          const auto* ft = std::get_if<FeatureTag>(&rt);
          if (!ft || ft->label != ca.label || !ca.arg_index ||
              *ca.arg_index != ft->arg_index)
            continue;
          if (!try_add(merged.features, ft->attr, ft->value, fail_reason))
            return nullptr;
        }
      }
      for (const auto& [attr, val] : syn->atom().features.flat())
        if (!try_add(merged.features, attr, val, fail_reason)) return nullptr;
      if (at_result && morph) {
        for (const auto& [attr, val] : *morph)
          if (!try_add(merged.features, attr, val, fail_reason)) return nullptr;
      }
      return Category::make_atom(std::move(merged));
    }
    CatPtr res = build(clause->result(), syn->result(), at_result);
    if (!res) return nullptr;
    CatPtr arg = build(clause->argument(), syn->argument(), false);
    if (!arg) return nullptr;
    return Category::make_functor(std::move(res), clause->slash(),
                                  std::move(arg));
  }
};

bool skeleton_match(const CatPtr& a, const CatPtr& b) {
  return equal_categories(a, b, /*with_features=*/false, /*with_arg_index=*/true);
}

void note(std::vector<std::string>* diags, const std::string& msg) {
  if (diags) diags->push_back(msg);
}

}  // namespace

std::vector<LexEntry> resolve(const std::string& word, const LexiconFiles& lex,
                              std::vector<std::string>* diagnostics) {
  struct Candidate {
    std::string lemma;
    std::optional<std::string> pos;
    std::vector<std::pair<std::string, std::string>> feats;
  };
  std::vector<Candidate> candidates;
  for (const auto& m : lex.morph)
    if (m.surface == word) candidates.push_back({m.lemma, m.pos, m.features});
  if (candidates.empty()) candidates.push_back({word, std::nullopt, {}});

  std::vector<LexEntry> out;
  bool any_syn = false;
  for (const auto& cand : candidates) {
    for (const auto& syn : lex.syn) {
      if (syn.index_word != cand.lemma) continue;
      if (cand.pos && *cand.pos != syn.pos) continue;
      any_syn = true;
      for (std::size_t ci = 0; ci < syn.parsed.size(); ++ci) {
        const CatPtr& syn_cat = syn.parsed[ci];
        std::vector<const CatClause*> matching;
        for (const auto& db : lex.catdb) {
          if (db.pos != syn.pos) continue;
          for (const auto& cl : db.clauses)
            if (skeleton_match(cl.category, syn_cat)) matching.push_back(&cl);
        }
        auto emit = [&](const CatPtr& clause_cat,
                        const std::vector<ResolvedTag>* tags) {
          Installer inst;
          inst.tags = tags;
          inst.morph = &cand.feats;
          CatPtr cat = inst.build(clause_cat, syn_cat, true);
          if (!cat) {
            note(diagnostics, "dropped " + word + "/" + syn.pos + " " +
                                  syn.cats[ci] + ": feature conflict on " +
                                  inst.fail_reason);
            return;
          }
          for (const auto& prev : out)
            if (prev.pos == syn.pos &&
                equal_categories(prev.category, cat, true, true))
              return;
          out.push_back(LexEntry{word, syn.pos, cat, Provenance::Base});
        };
        if (matching.empty()) {
          emit(syn_cat, nullptr);
        } else {
          for (const CatClause* cl : matching) emit(cl->category, &cl->resolved);
        }
      }
    }
  }
  if (!any_syn)
    note(diagnostics, "unknown word '" + word + "' (no syntactic DB entry)");
  return out;
}

const std::vector<LexEntry>& CompiledLexicon::lookup(
    const std::string& surface) const {
  static const std::vector<LexEntry> empty;
  auto it = entries_.find(surface);
  return it == entries_.end() ? empty : it->second;
}

std::vector<LexEntry> CompiledLexicon::base_entries() const {
  std::vector<LexEntry> out;
  for (const auto& [_, v] : entries_)
    for (const auto& e : v)
      if (e.source == Provenance::Base) out.push_back(e);
  return out;
}

std::size_t CompiledLexicon::base_count() const {
  std::size_t n = 0;
  for (const auto& [_, v] : entries_)
    for (const auto& e : v) n += e.source == Provenance::Base;
  return n;
}

std::size_t CompiledLexicon::raised_count() const {
  std::size_t n = 0;
  for (const auto& [_, v] : entries_)
    for (const auto& e : v) n += e.source == Provenance::Raised;
  return n;
}

CompiledLexicon compile(const std::vector<LexEntry>& base,
                        const std::vector<RaiseRule>& raise_rules) {
  CompiledLexicon out;
  for (const auto& e : base) {
    LexEntry b = e;
    b.source = Provenance::Base;
    out.add(std::move(b));
  }
  // hidden raising: generated at compile time, never present in the
  // working lexicon
  std::map<std::string, std::vector<LexEntry>> raised_by_word;
  for (const auto& e : base) {
    if (!e.category->is_atom()) continue;
    for (const auto& rule : raise_rules) {
      if (e.category->atom().label != rule.source_label) continue;
      CatPtr target = Category::make_atom(rule.target_label);
      CatPtr raised = type_raise(e.category, target, rule.direction);
      bool dup = false;
      for (const auto& prev : out.lookup(e.word))
        if (equal_categories(prev.category, raised, true, false)) dup = true;
      for (const auto& prev : raised_by_word[e.word])
        if (equal_categories(prev.category, raised, true, false)) dup = true;
      if (dup) continue;
      raised_by_word[e.word].push_back(
          LexEntry{e.word, e.pos, raised, Provenance::Raised});
    }
  }
  for (auto& [word, v] : raised_by_word)
    for (auto& e : v) out.add(std::move(e));
  return out;
}

CompiledLexicon compile(const LexiconFiles& lex,
                        std::vector<std::string>* diagnostics) {
  std::vector<std::string> vocab;
  auto push_unique = [&](const std::string& w) {
    if (std::find(vocab.begin(), vocab.end(), w) == vocab.end())
      vocab.push_back(w);
  };
  for (const auto& s : lex.syn) push_unique(s.index_word);
  for (const auto& m : lex.morph) push_unique(m.surface);

  std::vector<LexEntry> base;
  for (const auto& w : vocab) {
    auto entries = resolve(w, lex, diagnostics);
    base.insert(base.end(), entries.begin(), entries.end());
  }
  return compile(base, lex.raise_rules);
}

void write_compiled(std::ostream& out, const CompiledLexicon& lex) {
  for (const auto& [word, v] : lex.entries())
    for (const auto& e : v)
      out << word << '\t' << e.pos << '\t' << format_category(e.category)
          << '\t' << (e.source == Provenance::Base ? "base" : "raised")
          << '\n';
}

}  // namespace ccg
