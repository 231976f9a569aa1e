#include "gex/wordparse.hpp"

#include <cctype>
#include <sstream>

namespace gex {

namespace {

CplxRational parse_entry(const std::string& tok) {
  auto comma = tok.find(',');
  if (comma == std::string::npos) return CplxRational(rational_from_string(tok));
  return {rational_from_string(tok.substr(0, comma)),
          rational_from_string(tok.substr(comma + 1))};
}

std::vector<std::string> split_tokens(const std::string& text) {
  // whitespace splits, except inside [...]
  std::vector<std::string> toks;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') {
      if (--depth < 0) throw WordSyntaxError("unbalanced ']' in word");
    }
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) throw WordSyntaxError("unbalanced '[' in word");
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

int parse_index(const std::string& tok, size_t from) {
  if (from >= tok.size()) throw WordSyntaxError("missing identity index in '" + tok + "'");
  for (size_t i = from; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw WordSyntaxError("malformed letter '" + tok + "'");
  return std::stoi(tok.substr(from));
}

}  // namespace

RatMatrix parse_matrix_literal(const std::string& body) {
  std::vector<std::vector<CplxRational>> rows;
  std::string row_text;
  std::istringstream rows_in(body);
  while (std::getline(rows_in, row_text, ';')) {
    std::istringstream row_in(row_text);
    std::vector<CplxRational> row;
    std::string tok;
    while (row_in >> tok) row.push_back(parse_entry(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw WordSyntaxError("empty matrix literal");
  size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw WordSyntaxError("matrix literal is not square");
  RatMatrix m(static_cast<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

Word parse_word(const std::string& text) {
  Word w = Word::one();
  auto toks = split_tokens(text);
  if (toks.empty()) throw WordSyntaxError("empty word");
  for (auto tok : toks) {
    int repeat = 1;
    auto caret = tok.rfind('^');
    if (caret != std::string::npos && tok.find(']', caret) == std::string::npos) {
      std::string k = tok.substr(caret + 1);
      if (k.empty()) throw WordSyntaxError("missing exponent in '" + tok + "'");
      for (char c : k)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw WordSyntaxError("malformed exponent in '" + tok + "'");
      repeat = std::stoi(k);
      if (repeat < 1) throw WordSyntaxError("exponent must be >= 1 in '" + tok + "'");
      tok = tok.substr(0, caret);
    }
    Word letter;
    if (tok.empty()) throw WordSyntaxError("empty letter");
    if (tok[0] == 'g') {
      letter = Word::variable(VecExpr::single(BasisSymbol::gue_v(parse_index(tok, 1))));
    } else if (tok[0] == 's') {
      letter = Word::variable(
          VecExpr::single(BasisSymbol::semi(BaseSpace::W, parse_index(tok, 1))));
    } else if (tok[0] == 'Z') {
      letter = Word::matrix(MatrixLetter::formal(tok));
      parse_index(tok, 1);  // validate
    } else if (tok[0] == '[') {
      if (tok.back() != ']') throw WordSyntaxError("malformed matrix literal '" + tok + "'");
      letter = Word::matrix(MatrixLetter::concrete(
          parse_matrix_literal(tok.substr(1, tok.size() - 2))));
    } else {
      throw WordSyntaxError("unknown letter '" + tok + "'");
    }
    for (int k = 0; k < repeat; ++k) w = w.times(letter);
  }
  return w;
}

}  // namespace gex
