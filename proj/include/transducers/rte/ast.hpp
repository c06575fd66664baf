#ifndef TRANSDUCERS_RTE_AST_HPP_
#define TRANSDUCERS_RTE_AST_HPP_

#include <memory>
#include <string>
#include <utility>

#include "transducers/lexer.hpp"
#include "transducers/regex.hpp"
#include "transducers/words.hpp"

namespace transducers {

struct RteNode;
using Rte = std::shared_ptr<const RteNode>;

struct RteNode {
  enum class Kind { Atom, Sum, Cat, Star, Hadamard, Compose, Reverse, Duplicate, RStar, Chain2, RChain2 };

  Kind kind = Kind::Atom;
  Word in;               // Atom
  Word out;              // Atom
  Rte left;              // first operand, or the only one
  Rte right;             // second operand of binary nodes; Compose(left, right) is left ∘ right
  Alphabet alphabet;     // Reverse, Duplicate
  Symbol separator;      // Duplicate
  Regex factor;          // Chain2, RChain2: the block language K
  SourceSpan span;
};

namespace rte {

inline Rte make(RteNode node) { return std::make_shared<const RteNode>(std::move(node)); }

inline Rte atom(Word in, Word out) {
  RteNode n;
  n.kind = RteNode::Kind::Atom;
  n.in = std::move(in);
  n.out = std::move(out);
  return make(std::move(n));
}
inline Rte atom(std::string_view in, std::string_view out) { return atom(word_of(in), word_of(out)); }

inline Rte binary(RteNode::Kind kind, Rte l, Rte r) {
  RteNode n;
  n.kind = kind;
  n.left = std::move(l);
  n.right = std::move(r);
  return make(std::move(n));
}
inline Rte unary(RteNode::Kind kind, Rte f) { return binary(kind, std::move(f), nullptr); }

inline Rte sum(Rte f, Rte g) { return binary(RteNode::Kind::Sum, std::move(f), std::move(g)); }
inline Rte cat(Rte f, Rte g) { return binary(RteNode::Kind::Cat, std::move(f), std::move(g)); }
inline Rte hadamard(Rte f, Rte g) { return binary(RteNode::Kind::Hadamard, std::move(f), std::move(g)); }
/// f ∘ g: g is applied first.
inline Rte compose(Rte f, Rte g) { return binary(RteNode::Kind::Compose, std::move(f), std::move(g)); }
inline Rte star(Rte f) { return unary(RteNode::Kind::Star, std::move(f)); }
inline Rte rstar(Rte f) { return unary(RteNode::Kind::RStar, std::move(f)); }

inline Rte reverse(Alphabet alphabet) {
  RteNode n;
  n.kind = RteNode::Kind::Reverse;
  n.alphabet = std::move(alphabet);
  return make(std::move(n));
}

inline Rte duplicate(Alphabet alphabet, Symbol separator = symbols::kHash) {
  RteNode n;
  n.kind = RteNode::Kind::Duplicate;
  n.alphabet = std::move(alphabet);
  n.separator = std::move(separator);
  return make(std::move(n));
}

inline Rte chain2(Regex k, Rte f, bool reversed = false) {
  RteNode n;
  n.kind = reversed ? RteNode::Kind::RChain2 : RteNode::Kind::Chain2;
  n.factor = std::move(k);
  n.left = std::move(f);
  return make(std::move(n));
}

inline bool is_binary(RteNode::Kind k) {
  using K = RteNode::Kind;
  return k == K::Sum || k == K::Cat || k == K::Hadamard || k == K::Compose;
}

}  // namespace rte

inline bool regex_equal(const Regex& a, const Regex& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->letter != b->letter) return false;
  return regex_equal(a->left, b->left) && regex_equal(a->right, b->right);
}

/// Structural equality, ignoring source spans.
inline bool rte_equal(const Rte& a, const Rte& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->in != b->in || a->out != b->out || a->separator != b->separator) return false;
  if (!(a->alphabet == b->alphabet)) return false;
  if (!regex_equal(a->factor, b->factor)) return false;
  return rte_equal(a->left, b->left) && rte_equal(a->right, b->right);
}

inline std::size_t rte_size(const Rte& e) {
  if (!e) return 0;
  return 1 + rte_size(e->left) + rte_size(e->right);
}

/// Symbols the expression can read.
inline Alphabet rte_input_alphabet(const Rte& e) {
  using K = RteNode::Kind;
  switch (e->kind) {
    case K::Atom:
      return Alphabet(e->in);
    case K::Sum:
    case K::Cat:
    case K::Hadamard:
      return rte_input_alphabet(e->left).united(rte_input_alphabet(e->right));
    case K::Star:
    case K::RStar:
      return rte_input_alphabet(e->left);
    case K::Compose:
      return rte_input_alphabet(e->right);
    case K::Reverse:
    case K::Duplicate:
      return e->alphabet;
    case K::Chain2:
    case K::RChain2:
      return regex::alphabet_of(e->factor);
  }
  return {};
}

/// Symbols the expression can write.
inline Alphabet rte_output_alphabet(const Rte& e) {
  using K = RteNode::Kind;
  switch (e->kind) {
    case K::Atom:
      return Alphabet(e->out);
    case K::Sum:
    case K::Cat:
    case K::Hadamard:
      return rte_output_alphabet(e->left).united(rte_output_alphabet(e->right));
    case K::Star:
    case K::RStar:
    case K::Chain2:
    case K::RChain2:
      return rte_output_alphabet(e->left);
    case K::Compose:
      return rte_output_alphabet(e->left);
    case K::Reverse:
      return e->alphabet;
    case K::Duplicate: {
      Alphabet out = e->alphabet;
      out.add(e->separator);
      return out;
    }
  }
  return {};
}

namespace detail {

inline std::string alphabet_quote(const Alphabet& a) { return regex::quote(a.symbols()); }

}  // namespace detail

/// Fully parenthesized concrete syntax; parse_rte reads it back.
inline std::string to_text(const Rte& e) {
  using K = RteNode::Kind;
  switch (e->kind) {
    case K::Atom:
      return "(" + regex::quote(e->in) + "|" + regex::quote(e->out) + ")";
    case K::Sum:
      return "(" + to_text(e->left) + " + " + to_text(e->right) + ")";
    case K::Cat:
      return "(" + to_text(e->left) + " . " + to_text(e->right) + ")";
    case K::Hadamard:
      return "(" + to_text(e->left) + " <*> " + to_text(e->right) + ")";
    case K::Compose:
      return "(" + to_text(e->left) + " @ " + to_text(e->right) + ")";
    case K::Star:
      return "(" + to_text(e->left) + ")*";
    case K::RStar:
      return "(" + to_text(e->left) + ")^r*";
    case K::Reverse:
      return "rev[" + detail::alphabet_quote(e->alphabet) + "]";
    case K::Duplicate:
      return "dup[" + detail::alphabet_quote(e->alphabet) + ", " + regex::quote({e->separator}) + "]";
    case K::Chain2:
      return "chain2[" + regex::to_text(e->factor) + "]{" + to_text(e->left) + "}";
    case K::RChain2:
      return "rchain2[" + regex::to_text(e->factor) + "]{" + to_text(e->left) + "}";
  }
  return {};
}

inline std::string kind_name(RteNode::Kind k) {
  using K = RteNode::Kind;
  switch (k) {
    case K::Atom: return "atom";
    case K::Sum: return "sum";
    case K::Cat: return "cat";
    case K::Star: return "star";
    case K::Hadamard: return "hadamard";
    case K::Compose: return "compose";
    case K::Reverse: return "reverse";
    case K::Duplicate: return "duplicate";
    case K::RStar: return "rstar";
    case K::Chain2: return "chain2";
    case K::RChain2: return "rchain2";
  }
  return {};
}

}  // namespace transducers

#endif  // TRANSDUCERS_RTE_AST_HPP_
