#ifndef GEX_WORDPARSE_HPP
#define GEX_WORDPARSE_HPP

#include <string>
#include <vector>

#include "gex/ncpoly.hpp"

namespace gex {

/// Grammar: whitespace-separated letters. `g<i>` a GUE variable, `s<i>` a
/// semicircular variable, `Z<i>` a formal matrix letter, `[a b; c d]` a
/// concrete matrix with rational entries (`re` or `re,im`); any letter may
/// carry `^k` repetition. Example: "g1 [1 0; 0 -1] g1^3".
Word parse_word(const std::string& text);

/// Parse failure with position information, mapped to usage errors by the CLI.
struct WordSyntaxError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

RatMatrix parse_matrix_literal(const std::string& body);

}  // namespace gex

#endif
