#ifndef TRANSDUCERS_RTE_REWRITE_HPP_
#define TRANSDUCERS_RTE_REWRITE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "transducers/errors.hpp"
#include "transducers/regex.hpp"
#include "transducers/rte/ast.hpp"
#include "transducers/rte/stdlib.hpp"

namespace transducers {

enum class RewritePass { HadamardElim, RStarElim, Chain2Elim, RChain2Elim };

inline std::optional<RewritePass> pass_from_name(const std::string& name) {
  if (name == "hadamard-elim") return RewritePass::HadamardElim;
  if (name == "rstar-elim") return RewritePass::RStarElim;
  if (name == "chain2-elim") return RewritePass::Chain2Elim;
  if (name == "rchain2-elim") return RewritePass::RChain2Elim;
  return std::nullopt;
}

/// First of #, $, §, ¤, &, then #1, #2, ... absent from `used`.
inline Symbol fresh_separator(const Alphabet& used) {
  for (const char* c : {"#", "$", "§", "¤", "&"}) {
    if (!used.contains(c)) return c;
  }
  for (int i = 1;; ++i) {
    Symbol s = "#" + std::to_string(i);
    if (!used.contains(s)) return s;
  }
}

namespace detail {

inline Rte eliminate_chain2(const Rte& e) {
  const bool reversed = e->kind == RteNode::Kind::RChain2;
  const Alphabet blocks = regex::alphabet_of(e->factor);
  const Symbol s = fresh_separator(blocks.united(rte_input_alphabet(e->left)));
  StdlibParams params;
  params.separator = s;
  params.k = e->factor;
  Rte gk = stdlib_expr("gK", blocks, params);
  // u1 s u2 s ... ↦ u1 s u1 s u2 s u2 s ...
  Rte g = rte::star(rte::cat(rte::duplicate(blocks, s), rte::atom(Word{s}, Word{s})));
  params.f = e->left;
  Rte h;
  if (!reversed) {
    h = stdlib_expr("pairApplier", blocks, params);
  } else {
    // Same shape, but the pairs are read from the right end backwards.
    Rte copy = stdlib_expr("copy", blocks);
    Rte erase = stdlib_expr("erase", blocks);
    Rte drop_sep = rte::atom(Word{s}, Word{});
    Rte pair = rte::compose(e->left, rte::cat(rte::cat(rte::cat(copy, drop_sep), copy), drop_sep));
    Alphabet marked = blocks;
    marked.add(s);
    Rte back = rte::compose(pair, rte::reverse(marked));
    Rte pairs = rte::compose(rte::cat(back, rte::star(back)), rte::reverse(marked));
    Rte drop = rte::cat(erase, drop_sep);
    h = rte::cat(rte::cat(drop, pairs), drop);
  }
  return rte::compose(h, rte::compose(g, gk));
}

inline Rte rewrite_node(const Rte& e, RewritePass pass) {
  using K = RteNode::Kind;
  if (pass == RewritePass::HadamardElim && e->kind == K::Hadamard) {
    const Alphabet sigma = rte_input_alphabet(e->left).united(rte_input_alphabet(e->right));
    const Symbol s = fresh_separator(sigma);
    Rte body = rte::cat(rte::cat(e->left, rte::atom(Word{s}, Word{})), e->right);
    return rte::compose(body, rte::duplicate(sigma, s));
  }
  if (pass == RewritePass::RStarElim && e->kind == K::RStar) {
    const Alphabet sigma = rte_input_alphabet(e->left);
    return rte::compose(rte::star(rte::compose(e->left, rte::reverse(sigma))), rte::reverse(sigma));
  }
  if ((pass == RewritePass::Chain2Elim && e->kind == K::Chain2) ||
      (pass == RewritePass::RChain2Elim && e->kind == K::RChain2)) {
    return eliminate_chain2(e);
  }
  return e;
}

}  // namespace detail

/// Replaces every occurrence of the pass's constructor, innermost first.
///   hadamard-elim  f ⊙ g        → (f·(#|ε)·g) ∘ duplicate
///   rstar-elim     f^r*         → (f ∘ reverse)* ∘ reverse
///   chain2-elim    [K,f]²⁺      → h ∘ g ∘ gK, g = (duplicate·(#|#))*
///   rchain2-elim   [K,f]^r-2+   → the same with the pairs consumed right to left
/// A separator absent from the relevant input alphabets is chosen for #.
inline Rte rewrite(const Rte& e, RewritePass pass) {
  if (!e) return e;
  Rte l = rewrite(e->left, pass);
  Rte r = rewrite(e->right, pass);
  Rte cur = e;
  if (l != e->left || r != e->right) {
    RteNode n = *e;
    n.left = l;
    n.right = r;
    cur = rte::make(std::move(n));
  }
  return detail::rewrite_node(cur, pass);
}

}  // namespace transducers

#endif  // TRANSDUCERS_RTE_REWRITE_HPP_
