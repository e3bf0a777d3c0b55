// ccgtool: parse sentences, convert elementary trees, compile lexicon
// databases, and run batch evaluations.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccg/lexicon.hpp"
#include "ccg/ltag.hpp"
#include "ccg/parser.hpp"
#include "ccg/render.hpp"

namespace {

struct Options {
  std::string lexicon_dir;
  std::string goal = "S[bar=-]";
  std::string rules;
  std::vector<std::string> disabled_rules;
  int composition_depth = 1;
  int n_best = 0;
  int max_derivations = 10;
  std::string format = "tree-ascii";
  std::vector<std::string> disabled_filters;
};

std::vector<std::string> tokenize(const std::string& sentence) {
  std::vector<std::string> out;
  std::istringstream in(sentence);
  std::string tok;
  const std::string punct = ".,;:!?";
  while (in >> tok) {
    while (!tok.empty() && punct.find(tok.back()) != std::string::npos)
      tok.pop_back();
    if (tok.empty()) continue;  // punctuation tokens are skipped
    out.push_back(tok);
  }
  return out;
}

ccg::RuleSet make_rules(const Options& opt) {
  ccg::RuleSet rs = ccg::RuleSet::defaults();
  if (!opt.rules.empty()) {
    rs.enabled.clear();
    std::istringstream in(opt.rules);
    std::string name;
    while (std::getline(in, name, ',')) {
      auto r = ccg::rule_from_name(name);
      if (!r) throw std::runtime_error("unknown rule name '" + name + "'");
      rs.enabled.insert(*r);
    }
  }
  for (const auto& name : opt.disabled_rules) {
    auto r = ccg::rule_from_name(name);
    if (!r) throw std::runtime_error("unknown rule name '" + name + "'");
    rs.disable(*r);
  }
  rs.composition_depth = opt.composition_depth;
  return rs;
}

ccg::FilterConfig make_filters(const Options& opt) {
  ccg::FilterConfig f;
  f.n_best = opt.n_best;
  for (const auto& name : opt.disabled_filters) {
    if (name == "span")
      f.span_filter = false;
    else if (name == "n-best")
      f.n_best = 0;
    else
      throw std::runtime_error("unknown filter '" + name + "'");
  }
  return f;
}

struct Session {
  ccg::LexiconFiles files;
  ccg::CompiledLexicon lex;
  ccg::FrequencyScorer scorer;
  ccg::CatPtr goal;
  ccg::RuleSet rules;
  ccg::FilterConfig filters;
};

Session open_session(const Options& opt) {
  if (opt.lexicon_dir.empty())
    throw std::runtime_error(
        "no lexicon directory (use --lexicon or set CCG_LEXICON)");
  Session s;
  s.files = ccg::LexiconFiles::load_dir(opt.lexicon_dir);
  std::vector<std::string> diags;
  s.lex = ccg::compile(s.files, &diags);
  for (const auto& d : diags) std::cerr << "lexicon: " << d << '\n';
  std::ifstream freq(opt.lexicon_dir + "/freq.db");
  if (freq) s.scorer = ccg::FrequencyScorer::load(freq);
  s.goal = ccg::parse_category(opt.goal, s.files.config.atoms);
  s.rules = make_rules(opt);
  s.filters = make_filters(opt);
  return s;
}

int report_unknown(const std::vector<std::string>& tokens,
                   const ccg::CompiledLexicon& lex) {
  int unknown = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (lex.lookup(tokens[i]).empty()) {
      std::cerr << "unknown word '" << tokens[i] << "' at token " << i << '\n';
      ++unknown;
    }
  return unknown;
}

int cmd_parse(const std::string& sentence, const Options& opt) {
  Session s = open_session(opt);
  auto tokens = tokenize(sentence);
  if (tokens.empty()) {
    std::cerr << "empty sentence\n";
    return 1;
  }
  report_unknown(tokens, s.lex);
  ccg::Chart chart = ccg::parse(tokens, s.lex, s.rules, s.scorer, s.filters);
  auto derivs = ccg::derivations(chart, s.goal, opt.max_derivations);
  if (derivs.empty()) {
    std::cerr << "no parse\n";
    return 1;
  }
  for (std::size_t i = 0; i < derivs.size(); ++i) {
    if (opt.format == "tree-ascii") {
      std::cout << "derivation " << (i + 1) << ":\n"
                << ccg::render_ascii(*derivs[i]) << '\n';
    } else if (opt.format == "bracketed") {
      std::cout << ccg::render_bracketed(*derivs[i]) << '\n';
    } else if (opt.format == "json-lines") {
      std::cout << ccg::render_json(*derivs[i]) << '\n';
    } else {
      throw std::runtime_error("unknown format '" + opt.format + "'");
    }
  }
  return 0;
}

int cmd_convert(const std::string& tree_file, const std::string& out_file) {
  std::ifstream in(tree_file);
  if (!in) throw std::runtime_error("cannot open " + tree_file);
  auto trees = ccg::load_ltag_file(in);

  // tree families share the name prefix before the first '_'
  std::vector<std::pair<std::string, std::vector<ccg::LtagTree>>> families;
  for (const auto& t : trees) {
    std::string fam = t.name.substr(0, t.name.find('_'));
    auto it = std::find_if(families.begin(), families.end(),
                           [&](const auto& f) { return f.first == fam; });
    if (it == families.end())
      families.push_back({fam, {t}});
    else
      it->second.push_back(t);
  }

  std::ofstream out(out_file);
  if (!out) throw std::runtime_error("cannot write " + out_file);
  auto cfg = ccg::GrammarConfig::defaults();
  for (const auto& [fam, members] : families) {
    auto results = ccg::convert_family(members, cfg);
    for (const auto& r : results)
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    ccg::write_cat_db(out, members, results);
  }
  return 0;
}

int cmd_compile(const Options& opt, const std::string& out_file) {
  if (opt.lexicon_dir.empty())
    throw std::runtime_error(
        "no lexicon directory (use --lexicon or set CCG_LEXICON)");
  auto files = ccg::LexiconFiles::load_dir(opt.lexicon_dir);
  std::vector<std::string> diags;
  auto lex = ccg::compile(files, &diags);
  for (const auto& d : diags) std::cerr << "lexicon: " << d << '\n';
  std::string path =
      out_file.empty() ? opt.lexicon_dir + "/compiled.db" : out_file;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  ccg::write_compiled(out, lex);
  std::cout << "base " << lex.base_count() << " raised " << lex.raised_count()
            << '\n';
  return 0;
}

int cmd_batch(const std::string& file, const Options& opt) {
  Session s = open_session(opt);
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::string line;
  int total = 0, parsed = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++total;
    auto tokens = tokenize(line);
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t count = 0;
    if (!tokens.empty()) {
      ccg::Chart chart =
          ccg::parse(tokens, s.lex, s.rules, s.scorer, s.filters);
      auto counts = ccg::root_counts(chart);
      for (const auto& key : ccg::goal_roots(chart, s.goal))
        count += counts[key];
    }
    auto ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (count > 0) ++parsed;
    nlohmann::json j;
    j["sentence"] = line;
    j["parsed"] = count > 0;
    j["derivations"] = count;
    j["ms"] = ms;
    std::cout << j.dump() << '\n';
  }
  nlohmann::json summary;
  summary["sentences"] = total;
  summary["parsed"] = parsed;
  summary["coverage"] = total ? static_cast<double>(parsed) / total : 0.0;
  std::cout << summary.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CCG grammar development toolkit"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("CCG_LEXICON")) opt.lexicon_dir = env;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--lexicon", opt.lexicon_dir, "lexicon directory");
    cmd->add_option("--goal", opt.goal, "goal category");
    cmd->add_option("--rules", opt.rules, "comma-separated enabled rules");
    cmd->add_option("--disable-rule", opt.disabled_rules,
                    "disable a rule by name");
    cmd->add_option("--composition-depth", opt.composition_depth,
                    "maximum composition depth");
    cmd->add_option("--n-best", opt.n_best, "n-best category cut (0 = off)");
    cmd->add_option("--max-derivations", opt.max_derivations,
                    "derivations to print");
    cmd->add_option("--format", opt.format,
                    "output format: tree-ascii|bracketed|json-lines");
    cmd->add_option("--disable-filter", opt.disabled_filters,
                    "disable a selection filter: span|n-best");
  };

  std::string sentence, tree_file, out_file, batch_file;

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse one sentence");
  parse_cmd->add_option("sentence", sentence, "sentence text")->required();
  add_common(parse_cmd);

  CLI::App* convert_cmd =
      app.add_subcommand("convert", "convert elementary trees to categories");
  convert_cmd->add_option("trees", tree_file, ".ltag tree file")->required();
  convert_cmd->add_option("-o,--output", out_file, "output cat.db file")
      ->required();

  CLI::App* compile_cmd =
      app.add_subcommand("compile", "compile the lexicon database");
  compile_cmd->add_option("-o,--output", out_file, "output file");
  add_common(compile_cmd);

  CLI::App* batch_cmd = app.add_subcommand("batch", "parse a sentence file");
  batch_cmd->add_option("file", batch_file, "one sentence per line")
      ->required();
  add_common(batch_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(sentence, opt);
    if (convert_cmd->parsed()) return cmd_convert(tree_file, out_file);
    if (compile_cmd->parsed()) return cmd_compile(opt, out_file);
    if (batch_cmd->parsed()) return cmd_batch(batch_file, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
