#include "ccg/render.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace ccg {

namespace {

struct Block {
  std::vector<std::string> lines;
  int width = 0;
};

std::string center(const std::string& s, int width) {
  int pad = width - static_cast<int>(s.size());
  if (pad <= 0) return s;
  int left = pad / 2;
  return std::string(left, ' ') + s + std::string(pad - left, ' ');
}

Block leaf_block(const std::string& word, const std::string& cat) {
  Block b;
  b.width = static_cast<int>(std::max(word.size(), cat.size()));
  b.lines.push_back(center(word, b.width));
  b.lines.push_back(std::string(b.width, '-'));
  b.lines.push_back(center(cat, b.width));
  return b;
}

Block beside(const std::vector<Block>& blocks) {
  Block out;
  std::size_t height = 0;
  for (const auto& b : blocks) height = std::max(height, b.lines.size());
  for (const auto& b : blocks) out.width += b.width + 2;
  out.width -= 2;
  for (std::size_t row = 0; row < height; ++row) {
    std::string line;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      if (bi) line += "  ";
      const auto& b = blocks[bi];
      line += row < b.lines.size() ? b.lines[row] : std::string(b.width, ' ');
    }
    out.lines.push_back(std::move(line));
  }
  return out;
}

Block build(const Derivation& d) {
  if (d.rule == RuleName::Lex)
    return leaf_block(d.lex ? d.lex->entry.word : "?",
                      format_category(d.category));
  std::vector<Block> children;
  children.push_back(build(*d.left));
  if (d.conj) children.push_back(build(*d.conj));
  children.push_back(build(*d.right));
  Block b = beside(children);
  std::string rule(b.width, '-');
  rule += rule_symbol(d.rule);
  std::string cat = center(format_category(d.category), b.width);
  b.width = static_cast<int>(std::max({rule.size(), cat.size(),
                                       static_cast<std::size_t>(b.width)}));
  b.lines.push_back(std::move(rule));
  b.lines.push_back(std::move(cat));
  return b;
}

}  // namespace

std::string render_ascii(const Derivation& d) {
  Block b = build(d);
  std::string out;
  for (const auto& line : b.lines) {
    std::string trimmed = line;
    while (!trimmed.empty() && trimmed.back() == ' ') trimmed.pop_back();
    out += trimmed;
    out += '\n';
  }
  return out;
}

std::string render_bracketed(const Derivation& d) {
  if (d.rule == RuleName::Lex)
    return "{" + (d.lex ? d.lex->entry.word : "?") +
           " := " + format_category(d.category) + "}";
  std::string out = "(";
  out += rule_symbol(d.rule);
  out += ' ' + render_bracketed(*d.left);
  if (d.conj) out += ' ' + render_bracketed(*d.conj);
  out += ' ' + render_bracketed(*d.right);
  out += " => " + format_category(d.category) + ")";
  return out;
}

static nlohmann::json to_json(const Derivation& d) {
  nlohmann::json j;
  j["rule"] = rule_name(d.rule);
  j["cat"] = format_category(d.category);
  if (d.rule == RuleName::Lex) {
    j["word"] = d.lex ? d.lex->entry.word : "?";
    j["source"] =
        d.lex && d.lex->entry.source == Provenance::Raised ? "raised" : "base";
  } else {
    nlohmann::json children = nlohmann::json::array();
    children.push_back(to_json(*d.left));
    if (d.conj) children.push_back(to_json(*d.conj));
    children.push_back(to_json(*d.right));
    j["children"] = std::move(children);
  }
  return j;
}

std::string render_json(const Derivation& d) { return to_json(d).dump(); }

}  // namespace ccg
