#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relhyp/error.hpp"

namespace relhyp {

using Letter = std::size_t;
using Word = std::vector<Letter>;

// Symbols with a fixed-point-free inverse involution.
class Alphabet {
 public:
  Alphabet() = default;

  Alphabet(std::vector<std::string> symbols, std::vector<Letter> inverse_of)
      : symbols_(std::move(symbols)), inverse_(std::move(inverse_of)) {
    if (symbols_.size() != inverse_.size())
      throw interface_error("alphabet: symbol and inverse tables differ in size");
    for (Letter x = 0; x < symbols_.size(); ++x) {
      if (inverse_[x] >= symbols_.size())
        throw range_error("alphabet: inverse index out of range");
      if (inverse_[x] == x)
        throw domain_error("alphabet: symbol '" + symbols_[x] + "' is its own inverse");
      if (inverse_[inverse_[x]] != x)
        throw domain_error("alphabet: inverse table is not an involution");
      if (symbols_[x].empty()) throw domain_error("alphabet: empty symbol name");
      if (!index_.emplace(symbols_[x], x).second)
        throw domain_error("alphabet: duplicate symbol '" + symbols_[x] + "'");
    }
  }

  // Generator "a" gets inverse "A"; symbol order is a, A, b, B, ...
  static Alphabet from_generators(std::vector<std::string> const& gens) {
    std::vector<std::string> names;
    std::vector<Letter> inv;
    for (auto const& g : gens) {
      std::string up = g;
      for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (up == g) throw domain_error("generator '" + g + "' has no lowercase letter");
      names.push_back(g);
      names.push_back(up);
      inv.push_back(names.size() - 1);
      inv.push_back(names.size() - 2);
    }
    return Alphabet(std::move(names), std::move(inv));
  }

  std::size_t size() const { return symbols_.size(); }
  std::string const& name(Letter x) const { return symbols_.at(x); }
  std::vector<std::string> const& symbols() const { return symbols_; }
  Letter inverse(Letter x) const { return inverse_.at(x); }
  std::vector<Letter> const& inverse_table() const { return inverse_; }

  std::optional<Letter> find(std::string_view s) const {
    auto it = index_.find(std::string(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Greedy longest-match tokenization; throws unknown_symbol with offset.
  Word parse(std::string_view text) const {
    Word w;
    std::size_t longest = 0;
    for (auto const& s : symbols_) longest = std::max(longest, s.size());
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      bool found = false;
      for (std::size_t len = std::min(longest, text.size() - i); len > 0; --len) {
        if (auto x = find(text.substr(i, len))) {
          w.push_back(*x);
          i += len;
          found = true;
          break;
        }
      }
      if (!found)
        throw unknown_symbol("unknown symbol '" + std::string(1, text[i]) +
                             "' at offset " + std::to_string(i));
    }
    return w;
  }

  std::string format(Word const& w) const {
    std::string out;
    for (Letter x : w) out += name(x);
    return out;
  }

  bool operator==(Alphabet const& o) const {
    return symbols_ == o.symbols_ && inverse_ == o.inverse_;
  }

 private:
  std::vector<std::string> symbols_;
  std::vector<Letter> inverse_;
  std::unordered_map<std::string, Letter> index_;
};

inline void check_word(Alphabet const& A, Word const& w) {
  for (Letter x : w)
    if (x >= A.size()) throw unknown_symbol("letter index " + std::to_string(x) + " not in alphabet");
}

inline Word free_reduce(Alphabet const& A, Word const& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && A.inverse(out.back()) == x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline bool is_freely_reduced(Alphabet const& A, Word const& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (A.inverse(w[i - 1]) == w[i]) return false;
  return true;
}

// Free and cyclic reduction; the result is conjugate to w.
inline Word cyclic_reduce(Alphabet const& A, Word const& w) {
  Word r = free_reduce(A, w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && A.inverse(r[lo]) == r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

inline Word word_inverse(Alphabet const& A, Word const& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = A.inverse(x);
  return out;
}

inline Word concat(Word a, Word const& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Word cyclic_permute(Word const& w, std::size_t t) {
  if (t > w.size())
    throw range_error("cyclic_permute: shift " + std::to_string(t) + " exceeds length " +
                      std::to_string(w.size()));
  Word out(w.begin() + static_cast<std::ptrdiff_t>(t), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
  return out;
}

// Lexicographically least rotation; used as a key for cyclic words.
inline Word least_rotation(Word const& w) {
  Word best = w;
  for (std::size_t t = 1; t < w.size(); ++t) {
    Word c = cyclic_permute(w, t);
    if (c < best) best = std::move(c);
  }
  return best;
}

inline bool shortlex_less(Word const& a, Word const& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Edge endpoints for each letter of a groupoid generating graph.
class GeneratingGraph {
 public:
  explicit GeneratingGraph(Alphabet const& A) : alphabet_(&A), ends_(A.size()) {}

  void add_edge(Letter x, std::size_t source, std::size_t target) {
    ends_.at(x) = {source, target};
    ends_.at(alphabet_->inverse(x)) = {target, source};
  }

  std::optional<std::pair<std::size_t, std::size_t>> const& endpoints(Letter x) const {
    if (x >= ends_.size()) throw unknown_symbol("letter not in generating graph");
    return ends_[x];
  }

  Alphabet const& alphabet() const { return *alphabet_; }

 private:
  Alphabet const* alphabet_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> ends_;
};

inline bool admissible(Word const& w, GeneratingGraph const& G) {
  for (Letter x : w)
    if (!G.endpoints(x))
      throw unknown_symbol("generator '" + G.alphabet().name(x) + "' has no edge in the graph");
  for (std::size_t i = 1; i < w.size(); ++i)
    if (G.endpoints(w[i - 1])->second != G.endpoints(w[i])->first) return false;
  return true;
}

class Presentation {
 public:
  Presentation() = default;
  Presentation(Alphabet A, std::vector<Word> relators)
      : alphabet_(std::move(A)), relators_(std::move(relators)) {
    for (auto const& r : relators_) {
      check_word(alphabet_, r);
      if (r.empty()) throw domain_error("presentation: empty relator");
      if (!is_freely_reduced(alphabet_, r))
        throw domain_error("presentation: relator '" + alphabet_.format(r) + "' is not freely reduced");
    }
  }

  Alphabet const& alphabet() const { return alphabet_; }
  std::vector<Word> const& relators() const { return relators_; }
  std::size_t generator_count() const { return alphabet_.size() / 2; }

  std::size_t max_relator_length() const {
    std::size_t m = 0;
    for (auto const& r : relators_) m = std::max(m, r.size());
    return m;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
};

// All cyclic permutations of r and r^-1, deduplicated, in a fixed order.
inline std::vector<Word> relator_variants(Alphabet const& A, Word const& r) {
  std::vector<Word> out;
  Word ri = word_inverse(A, r);
  for (Word const* base : {&r, static_cast<Word const*>(&ri)})
    for (std::size_t t = 0; t < base->size(); ++t) {
      Word c = cyclic_permute(*base, t);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    }
  return out;
}

}  // namespace relhyp
