#ifndef TRANSDUCERS_REGEX_HPP_
#define TRANSDUCERS_REGEX_HPP_

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "transducers/lexer.hpp"
#include "transducers/nfa.hpp"
#include "transducers/words.hpp"

namespace transducers {

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

/// Plain regular expression over quoted symbols: '' is ε, + is union,
/// . (or juxtaposition) is concatenation, * is Kleene star.
struct RegexNode {
  enum class Kind { Epsilon, Letter, Union, Concat, Star };
  Kind kind;
  Symbol letter;
  Regex left;
  Regex right;
};

namespace regex {

inline Regex epsilon() { return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Epsilon, {}, {}, {}}); }
inline Regex letter(Symbol s) {
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Letter, std::move(s), {}, {}});
}
inline Regex alt(Regex a, Regex b) {
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Union, {}, std::move(a), std::move(b)});
}
inline Regex cat(Regex a, Regex b) {
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Concat, {}, std::move(a), std::move(b)});
}
inline Regex star(Regex a) {
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Star, {}, std::move(a), {}});
}
inline Regex word(const Word& w) {
  if (w.empty()) return epsilon();
  Regex r = letter(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) r = cat(r, letter(w[i]));
  return r;
}

namespace detail {

inline Regex parse_sum(Lexer& lex);

inline Regex parse_primary(Lexer& lex) {
  if (lex.peek().kind == TokenKind::Quoted) return word(lex.next().word);
  if (lex.accept("(")) {
    Regex r = parse_sum(lex);
    lex.expect(")");
    return r;
  }
  lex.fail("quoted symbol or '('");
}

inline Regex parse_postfix(Lexer& lex) {
  Regex r = parse_primary(lex);
  while (lex.accept("*")) r = star(r);
  return r;
}

inline bool starts_primary(const Lexer& lex) { return lex.peek().kind == TokenKind::Quoted || lex.at("("); }

inline Regex parse_concat(Lexer& lex) {
  Regex r = parse_postfix(lex);
  while (true) {
    if (lex.accept(".")) {
      r = cat(r, parse_postfix(lex));
    } else if (starts_primary(lex)) {
      r = cat(r, parse_postfix(lex));
    } else {
      return r;
    }
  }
}

inline Regex parse_sum(Lexer& lex) {
  Regex r = parse_concat(lex);
  while (lex.accept("+")) r = alt(r, parse_concat(lex));
  return r;
}

}  // namespace detail

/// Parses a regex at the lexer's position (used inside larger grammars).
inline Regex parse(Lexer& lex) { return detail::parse_sum(lex); }

inline Regex parse(std::string_view text) {
  Lexer lex(text);
  Regex r = parse(lex);
  if (lex.peek().kind != TokenKind::End) lex.fail("end of regex");
  return r;
}

inline void collect_letters(const Regex& r, Alphabet& out) {
  switch (r->kind) {
    case RegexNode::Kind::Epsilon:
      return;
    case RegexNode::Kind::Letter:
      out.add(r->letter);
      return;
    case RegexNode::Kind::Star:
      collect_letters(r->left, out);
      return;
    default:
      collect_letters(r->left, out);
      collect_letters(r->right, out);
  }
}

inline Alphabet alphabet_of(const Regex& r) {
  Alphabet out;
  collect_letters(r, out);
  return out;
}

inline std::string quote(const Word& w) {
  std::string body;
  for (const auto& s : w) body += s == "'" ? "{apos}" : symbol_text(s);
  return "'" + body + "'";
}

inline std::string to_text(const Regex& r) {
  switch (r->kind) {
    case RegexNode::Kind::Epsilon:
      return "''";
    case RegexNode::Kind::Letter:
      return quote({r->letter});
    case RegexNode::Kind::Union:
      return "(" + to_text(r->left) + "+" + to_text(r->right) + ")";
    case RegexNode::Kind::Concat:
      return "(" + to_text(r->left) + "." + to_text(r->right) + ")";
    case RegexNode::Kind::Star:
      return "(" + to_text(r->left) + ")*";
  }
  return {};
}

namespace detail {

struct Positions {
  std::vector<Symbol> letters;             // letter at each position
  std::vector<std::set<std::size_t>> follow;
};

struct Summary {
  bool nullable = false;
  std::set<std::size_t> first;
  std::set<std::size_t> last;
};

inline Summary linearize(const Regex& r, Positions& pos) {
  switch (r->kind) {
    case RegexNode::Kind::Epsilon:
      return {true, {}, {}};
    case RegexNode::Kind::Letter: {
      std::size_t p = pos.letters.size();
      pos.letters.push_back(r->letter);
      pos.follow.emplace_back();
      return {false, {p}, {p}};
    }
    case RegexNode::Kind::Union: {
      Summary a = linearize(r->left, pos);
      Summary b = linearize(r->right, pos);
      a.nullable = a.nullable || b.nullable;
      a.first.insert(b.first.begin(), b.first.end());
      a.last.insert(b.last.begin(), b.last.end());
      return a;
    }
    case RegexNode::Kind::Concat: {
      Summary a = linearize(r->left, pos);
      Summary b = linearize(r->right, pos);
      for (auto p : a.last) pos.follow[p].insert(b.first.begin(), b.first.end());
      Summary out;
      out.nullable = a.nullable && b.nullable;
      out.first = a.first;
      if (a.nullable) out.first.insert(b.first.begin(), b.first.end());
      out.last = b.last;
      if (b.nullable) out.last.insert(a.last.begin(), a.last.end());
      return out;
    }
    case RegexNode::Kind::Star: {
      Summary a = linearize(r->left, pos);
      for (auto p : a.last) pos.follow[p].insert(a.first.begin(), a.first.end());
      a.nullable = true;
      return a;
    }
  }
  return {};
}

}  // namespace detail

/// Glushkov position automaton: state 0 is initial, state i+1 stands for
/// the i-th letter occurrence of the expression.
inline Nfa glushkov(const Regex& r, const Alphabet& alphabet) {
  detail::Positions pos;
  detail::Summary top = detail::linearize(r, pos);
  Nfa out(alphabet.united(alphabet_of(r)));
  out.add_state("0");
  for (std::size_t p = 0; p < pos.letters.size(); ++p) out.add_state(std::to_string(p + 1));
  out.set_initial(0);
  out.set_final(0, top.nullable);
  for (auto p : top.first) out.add_transition(0, pos.letters[p], p + 1);
  for (auto p : top.last) out.set_final(p + 1);
  for (std::size_t p = 0; p < pos.letters.size(); ++p) {
    for (auto q : pos.follow[p]) out.add_transition(p + 1, pos.letters[q], q + 1);
  }
  return out;
}

inline Nfa glushkov(const Regex& r) { return glushkov(r, alphabet_of(r)); }

/// Convenience: automaton for a regex given as text over an alphabet.
inline Nfa to_nfa(std::string_view text, const Alphabet& alphabet) { return glushkov(parse(text), alphabet); }

}  // namespace regex
}  // namespace transducers

#endif  // TRANSDUCERS_REGEX_HPP_
