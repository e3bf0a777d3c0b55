#ifndef CCG_RENDER_HPP
#define CCG_RENDER_HPP

#include <string>

#include "ccg/parser.hpp"

namespace ccg {

// Horizontal CCG derivation with rule symbols (>, <, >B, <B, <Bx, &, lex).
std::string render_ascii(const Derivation& d);

// One-line nested form: (SYM L R => CAT); leaves are {word := CAT}.
std::string render_bracketed(const Derivation& d);

// JSON object (nlohmann) serialized to one line.
std::string render_json(const Derivation& d);

}  // namespace ccg

#endif
