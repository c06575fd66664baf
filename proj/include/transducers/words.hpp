#ifndef TRANSDUCERS_WORDS_HPP_
#define TRANSDUCERS_WORDS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "transducers/errors.hpp"

namespace transducers {

/// A symbol is its canonical text: a single code point ("0", "%", "\n")
/// or a longer token such as an adorned pair "({1,2},0)".
using Symbol = std::string;
using Word = std::vector<Symbol>;

namespace symbols {
inline const Symbol kBackslash = "\\";
inline const Symbol kPercent = "%";
inline const Symbol kNewline = "\n";
inline const Symbol kHash = "#";
inline const Symbol kLeftMark = "⊢";   // ⊢
inline const Symbol kRightMark = "⊣";  // ⊣

inline bool is_endmarker(const Symbol& s) { return s == kLeftMark || s == kRightMark; }

// Named tokens accepted in machine files. HASH is accepted on input but "#"
// is always written back raw.
inline const std::vector<std::pair<std::string, Symbol>>& names() {
  static const std::vector<std::pair<std::string, Symbol>> table = {
      {"BACKSLASH", kBackslash}, {"PERCENT", kPercent}, {"NEWLINE", kNewline},
      {"LMARK", kLeftMark},      {"RMARK", kRightMark}, {"HASH", kHash},
  };
  return table;
}

// Brace escapes used inside word text ("x{bs}{nl}").
inline const std::vector<std::pair<std::string, Symbol>>& escapes() {
  static const std::vector<std::pair<std::string, Symbol>> table = {
      {"nl", kNewline},     {"bs", kBackslash},    {"pct", kPercent}, {"hash", kHash},
      {"lmark", kLeftMark}, {"rmark", kRightMark}, {"lbrace", "{"},   {"apos", "'"},
  };
  return table;
}
}  // namespace symbols

/// Splits UTF-8 text into code points.
inline std::vector<std::string> utf8_code_points(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    len = std::min(len, text.size() - i);
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

/// Finite ordered set of symbols. The order is the declaration order and
/// drives every lexicographic tie-break in the library.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<Symbol> symbols) : Alphabet(std::vector<Symbol>(symbols)) {}
  explicit Alphabet(std::vector<Symbol> symbols) {
    for (auto& s : symbols) add(s);
  }

  /// Adds a symbol; returns false if it was already present.
  bool add(const Symbol& s) {
    if (index_.count(s) != 0) return false;
    index_.emplace(s, symbols_.size());
    symbols_.push_back(s);
    return true;
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  bool contains(const Symbol& s) const { return index_.count(s) != 0; }

  std::optional<std::size_t> find(const Symbol& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Symbol& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw ForeignSymbol(s);
    return it->second;
  }

  bool contains_word(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [&](const Symbol& s) { return contains(s); });
  }

  void check_word(const Word& w) const {
    for (const auto& s : w) index_of(s);
  }

  /// Same members, irrespective of order.
  bool same_set(const Alphabet& other) const {
    if (size() != other.size()) return false;
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [&](const Symbol& s) { return other.contains(s); });
  }

  bool subset_of(const Alphabet& other) const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [&](const Symbol& s) { return other.contains(s); });
  }

  Alphabet united(const Alphabet& other) const {
    Alphabet out = *this;
    for (const auto& s : other) out.add(s);
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, std::size_t> index_;
};

inline Word reverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

/// Shortlex order on words (length first, then symbol text).
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Word built from single code points: word_of("1011") == {"1","0","1","1"}.
inline Word word_of(std::string_view text) { return utf8_code_points(text); }

/// Parses word text: raw code points plus brace escapes such as {nl}; any
/// other braced content becomes one multi-character symbol.
inline Word parse_word_text(std::string_view text) {
  Word out;
  auto points = utf8_code_points(text);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] != "{") {
      out.push_back(points[i]);
      continue;
    }
    int depth = 1;
    std::string content;
    std::size_t j = i + 1;
    for (; j < points.size(); ++j) {
      if (points[j] == "{") ++depth;
      if (points[j] == "}" && --depth == 0) break;
      content += points[j];
    }
    if (j == points.size()) throw FormatError("unterminated '{' in word text \"" + std::string(text) + "\"");
    auto it = std::find_if(symbols::escapes().begin(), symbols::escapes().end(),
                           [&](const auto& e) { return e.first == content; });
    out.push_back(it != symbols::escapes().end() ? it->second : content);
    i = j;
  }
  return out;
}

inline std::string symbol_text(const Symbol& s) {
  if (s == symbols::kNewline) return "{nl}";
  if (s == "{") return "{lbrace}";
  if (utf8_code_points(s).size() != 1) return "{" + s + "}";
  return s;
}

/// Inverse of parse_word_text for display and files.
inline std::string word_text(const Word& w) {
  std::string out;
  for (const auto& s : w) out += symbol_text(s);
  return out;
}

/// Word text that spells the empty word as ε.
inline std::string display_word(const Word& w) { return w.empty() ? "ε" : word_text(w); }

/// Symbol as written in alphabet lists and "on" fields of machine files.
inline std::string symbol_name(const Symbol& s) {
  for (const auto& [name, sym] : symbols::names()) {
    if (sym == s && name != "HASH") return name;
  }
  return s;
}

inline Symbol symbol_from_name(const std::string& name) {
  for (const auto& [n, sym] : symbols::names()) {
    if (n == name) return sym;
  }
  return name;
}

/// Calls visit(w) on every word of length <= max_len in length-then-lex
/// order over the alphabet's declaration order. Stops early if visit
/// returns false.
inline void enumerate_words(const Alphabet& alphabet, std::size_t max_len,
                            const std::function<bool(const Word&)>& visit) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (alphabet.empty() && len > 0) return;
    std::vector<std::size_t> digits(len, 0);
    Word w(len, alphabet.empty() ? Symbol{} : alphabet[0]);
    while (true) {
      if (!visit(w)) return;
      std::size_t pos = len;
      while (pos > 0) {
        --pos;
        if (++digits[pos] < alphabet.size()) {
          w[pos] = alphabet[digits[pos]];
          break;
        }
        digits[pos] = 0;
        w[pos] = alphabet[0];
        if (pos == 0) goto next_length;
      }
      if (len == 0) break;
    }
  next_length:;
  }
}

/// Number of words of length <= max_len, saturating at UINT64_MAX.
inline std::uint64_t count_words(std::size_t alphabet_size, std::size_t max_len) {
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (total > UINT64_MAX - layer) return UINT64_MAX;
    total += layer;
    if (alphabet_size != 0 && layer > UINT64_MAX / alphabet_size) {
      layer = UINT64_MAX;
    } else {
      layer *= alphabet_size;
    }
  }
  return total;
}

}  // namespace transducers

#endif  // TRANSDUCERS_WORDS_HPP_
