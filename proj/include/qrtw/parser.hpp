#pragma once

#include <string>
#include <vector>

#include "qrtw/rational_function.hpp"

namespace qrtw {

// Expression grammar (shared by the registry data files and CLI input files):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('-' | '+') factor | power
//   power  := atom ('^' integer)?        (integer exponent, may be negative)
//   atom   := identifier | number | '(' expr ')'
//   number := integer | integer '/' integer   ('/' binds as division, which
//                                              evaluates to the same value)
RationalFunction parse_expression(const std::string& text, const SymbolsPtr& syms);

// One definition per line: `name := expression`. Blank lines and lines whose
// first non-space character is '#' are skipped. A line `@vars s1 s2 ...`
// switches the symbol table for the definitions that follow.
struct Definition {
    std::string name;
    SymbolsPtr syms;
    RationalFunction value;
};

std::vector<Definition> parse_definitions(const std::string& text);
std::vector<Definition> parse_definition_file(const std::string& path);

} // namespace qrtw
