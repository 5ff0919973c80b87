#pragma once

// Text formats:
//   presentation  "[generators] a b" / "[relators] abAB" / "[parabolic P] b"; '#' starts a comment,
//                 tokens are whitespace separated and may continue on following lines
//   matrix        first line "rows cols", then rows of integers or p/q rationals
//   cocycle       lines "g-word h-word value"; "1" is the empty word

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relhyp/electric.hpp"
#include "relhyp/error.hpp"
#include "relhyp/extension.hpp"
#include "relhyp/homology.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

struct Token {
  std::string text;
  std::size_t line = 0, column = 0;  // 1-based
};

namespace detail {

inline std::vector<std::vector<Token>> tokenize_lines(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line = 1, i = 0;
  while (i <= text.size()) {
    std::size_t end = text.find('\n', i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(i, end - i);
    if (auto h = row.find('#'); h != std::string_view::npos) row = row.substr(0, h);
    std::vector<Token> toks;
    std::size_t j = 0;
    while (j < row.size()) {
      if (std::isspace(static_cast<unsigned char>(row[j]))) {
        ++j;
        continue;
      }
      std::size_t s = j;
      if (row[j] == '[') {
        auto close = row.find(']', j);
        if (close == std::string_view::npos) throw parse_error("unterminated section header", line, j + 1);
        j = close + 1;
      } else {
        while (j < row.size() && !std::isspace(static_cast<unsigned char>(row[j]))) ++j;
      }
      toks.push_back({std::string(row.substr(s, j - s)), line, s + 1});
    }
    lines.push_back(std::move(toks));
    ++line;
    i = end + 1;
  }
  return lines;
}

// Longest-match scan of one token, reporting the column of the first unknown symbol.
inline Word parse_token_word(Alphabet const& A, Token const& t) {
  Word w;
  std::size_t longest = 0;
  for (auto const& s : A.symbols()) longest = std::max(longest, s.size());
  std::size_t i = 0;
  while (i < t.text.size()) {
    std::optional<Letter> hit;
    std::size_t len = std::min(longest, t.text.size() - i);
    for (; len > 0 && !hit; --len)
      if ((hit = A.find(std::string_view(t.text).substr(i, len)))) break;
    if (!hit) throw parse_error("unknown symbol '" + std::string(1, t.text[i]) + "'", t.line, t.column + i);
    w.push_back(*hit);
    i += len;
  }
  return w;
}

}  // namespace detail

inline RelativePresentation parse_presentation(std::string_view text) {
  enum class Section { none, generators, relators, parabolic };
  Section sec = Section::none;
  std::vector<Token> gens, rels;
  std::vector<std::pair<Token, std::vector<Token>>> parabolic;
  bool seen_gens = false, seen_rels = false;
  for (auto const& line : detail::tokenize_lines(text))
    for (auto const& t : line) {
      if (t.text.front() == '[') {
        std::string head = t.text.substr(1, t.text.size() - 2);
        std::istringstream hs(head);
        std::string kind, name, extra;
        hs >> kind >> name >> extra;
        if (kind == "generators" && name.empty()) {
          if (seen_gens) throw parse_error("duplicate [generators] section", t.line, t.column);
          sec = Section::generators;
          seen_gens = true;
        } else if (kind == "relators" && name.empty()) {
          if (seen_rels) throw parse_error("duplicate [relators] section", t.line, t.column);
          sec = Section::relators;
          seen_rels = true;
        } else if (kind == "parabolic" && !name.empty() && extra.empty()) {
          sec = Section::parabolic;
          parabolic.push_back({{name, t.line, t.column}, {}});
        } else {
          throw parse_error("unknown section '" + t.text + "'", t.line, t.column);
        }
        continue;
      }
      switch (sec) {
        case Section::none:
          throw parse_error("token outside any section", t.line, t.column);
        case Section::generators:
          gens.push_back(t);
          break;
        case Section::relators:
          rels.push_back(t);
          break;
        case Section::parabolic:
          parabolic.back().second.push_back(t);
          break;
      }
    }
  if (!seen_gens) throw parse_error("missing [generators] section", 1, 1);
  std::vector<std::string> names;
  for (auto const& g : gens) {
    for (auto const& n : names)
      if (n == g.text) throw parse_error("duplicate generator '" + g.text + "'", g.line, g.column);
    names.push_back(g.text);
  }
  Alphabet A;
  try {
    A = Alphabet::from_generators(names);
  } catch (error const& e) {
    throw parse_error(e.what(), gens.empty() ? 1 : gens.front().line, gens.empty() ? 1 : gens.front().column);
  }
  std::vector<Word> R;
  for (auto const& t : rels) {
    R.push_back(detail::parse_token_word(A, t));
    if (!is_freely_reduced(A, R.back())) throw parse_error("relator '" + t.text + "' is not freely reduced", t.line, t.column);
  }
  Presentation P(A, R);
  std::vector<ParabolicFamily> fams;
  for (auto const& [name, toks] : parabolic) {
    std::vector<std::string> g;
    for (auto const& t : toks) {
      auto x = A.find(t.text);
      if (!x || *x % 2 != 0)
        throw parse_error("parabolic symbol '" + t.text + "' is not a generator", t.line, t.column);
      g.push_back(t.text);
    }
    if (g.empty()) throw parse_error("parabolic block '" + name.text + "' is empty", name.line, name.column);
    try {
      fams.push_back(RelativePresentation::family(P, name.text, g));
    } catch (error const& e) {
      throw parse_error(e.what(), name.line, name.column);
    }
  }
  try {
    return RelativePresentation(P, fams);
  } catch (error const& e) {
    throw parse_error(e.what(), 1, 1);
  }
}

inline std::string serialize_presentation(RelativePresentation const& rp) {
  Alphabet const& A = rp.alphabet();
  std::string out = "[generators]";
  for (Letter x = 0; x < A.size(); x += 2) out += " " + A.name(x);
  out += "\n[relators]";
  for (auto const& r : rp.base().relators()) out += " " + A.format(r);
  out += "\n";
  for (auto const& f : rp.families()) {
    out += "[parabolic " + f.name + "]";
    for (Letter y : f.generators)
      if (y % 2 == 0) out += " " + A.name(y);
    out += "\n";
  }
  return out;
}

inline bool same_presentation(RelativePresentation const& a, RelativePresentation const& b) {
  if (!(a.alphabet() == b.alphabet()) || a.base().relators() != b.base().relators()) return false;
  if (a.families().size() != b.families().size()) return false;
  for (std::size_t i = 0; i < a.families().size(); ++i) {
    auto const &f = a.families()[i], &g = b.families()[i];
    if (f.name != g.name || f.generators != g.generators || f.relators != g.relators) return false;
  }
  return true;
}

inline Rat parse_rational(Token const& t) {
  auto slash = t.text.find('/');
  auto num = [&](std::string const& s, std::size_t col) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw parse_error("expected a number", t.line, col);
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw parse_error("expected a number", t.line, col + j);
    return Int(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return Rat(num(t.text, t.column));
  Int p = num(t.text.substr(0, slash), t.column), q = num(t.text.substr(slash + 1), t.column + slash + 1);
  if (q == 0) throw parse_error("zero denominator", t.line, t.column + slash + 1);
  return Rat(p, q);
}

inline Matrix<Rat> parse_matrix(std::string_view text) {
  std::vector<Token> toks;
  for (auto const& line : detail::tokenize_lines(text))
    for (auto const& t : line) toks.push_back(t);
  if (toks.size() < 2) throw parse_error("expected 'rows cols'", 1, 1);
  auto dim = [&](Token const& t) {
    Rat r = parse_rational(t);
    if (denominator(r) != 1 || r < 0) throw parse_error("dimension must be a non-negative integer", t.line, t.column);
    return static_cast<std::size_t>(numerator(r));
  };
  std::size_t rows = dim(toks[0]), cols = dim(toks[1]);
  if (toks.size() != 2 + rows * cols) {
    auto const& t = toks.back();
    throw parse_error("expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(toks.size() - 2),
                      t.line, t.column);
  }
  Matrix<Rat> M(rows, std::vector<Rat>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) M[i][j] = parse_rational(toks[2 + i * cols + j]);
  return M;
}

inline Matrix<Int> integer_matrix(Matrix<Rat> const& M) {
  Matrix<Int> out;
  for (auto const& row : M) {
    out.emplace_back();
    for (auto const& x : row) {
      if (denominator(x) != 1) throw domain_error("integer matrix expected");
      out.back().push_back(numerator(x));
    }
  }
  return out;
}

// Unlisted in-ball pairs are 0.
inline Cocycle parse_cocycle(std::string_view text, GroupBall const& B, ProductTable const& P) {
  Cocycle s = zero_cocycle(P);
  auto element = [&](Token const& t) {
    Word w = t.text == "1" ? Word{} : detail::parse_token_word(B.alphabet(), t);
    auto v = B.locate(w);
    if (!v) throw parse_error("element '" + t.text + "' is outside the ball", t.line, t.column);
    return *v;
  };
  for (auto const& line : detail::tokenize_lines(text)) {
    if (line.empty()) continue;
    if (line.size() != 3) throw parse_error("expected 'g h value'", line.front().line, line.front().column);
    Vertex g = element(line[0]), h = element(line[1]);
    Rat v = parse_rational(line[2]);
    if (denominator(v) != 1) throw parse_error("cocycle values are integers", line[2].line, line[2].column);
    if (P(g, h) == npos) throw parse_error("product leaves the ball", line[0].line, line[0].column);
    s.set(g, h, static_cast<std::int64_t>(numerator(v)));
  }
  return s;
}

}  // namespace relhyp
