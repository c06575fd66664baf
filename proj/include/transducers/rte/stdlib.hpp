#ifndef TRANSDUCERS_RTE_STDLIB_HPP_
#define TRANSDUCERS_RTE_STDLIB_HPP_

#include <string>
#include <vector>

#include "transducers/errors.hpp"
#include "transducers/regex.hpp"
#include "transducers/rte/ast.hpp"
#include "transducers/rte/domain.hpp"

namespace transducers {

struct StdlibParams {
  Symbol separator = symbols::kHash;
  Regex k;  // fK, gK
  Rte f;    // pairApplier
};

inline const std::vector<std::string>& stdlib_names() {
  static const std::vector<std::string> names = {"copy", "erase", "duplicate", "exchange", "fK", "gK", "pairApplier"};
  return names;
}

namespace detail {

// (a1|x1) + (a2|x2) + ... over the alphabet, starred.
inline Rte letterwise_star(const Alphabet& alphabet, bool keep) {
  if (alphabet.empty()) return rte::star(rte::atom(Word{}, Word{}));
  Rte sum;
  for (const auto& a : alphabet) {
    Rte one = rte::atom(Word{a}, keep ? Word{a} : Word{});
    sum = sum ? rte::sum(sum, one) : one;
  }
  return rte::star(sum);
}

inline Rte regex_identity(const Regex& r) {
  switch (r->kind) {
    case RegexNode::Kind::Epsilon:
      return rte::atom(Word{}, Word{});
    case RegexNode::Kind::Letter:
      return rte::atom(Word{r->letter}, Word{r->letter});
    case RegexNode::Kind::Union:
      return rte::sum(regex_identity(r->left), regex_identity(r->right));
    case RegexNode::Kind::Concat:
      return rte::cat(regex_identity(r->left), regex_identity(r->right));
    case RegexNode::Kind::Star:
      return rte::star(regex_identity(r->left));
  }
  return nullptr;
}

}  // namespace detail

/// Library of named expressions.
///   copy      (a|a)* over the alphabet
///   erase     (a|ε)* over the alphabet
///   duplicate (copy·(ε|#)) ⊙ copy
///   exchange  u#v ↦ vu
///   fK        identity on K, each letter a of the regex becoming (a|a)
///   gK        (fK·(ε|#))*
///   pairApplier  u1#u1#u2#u2#…un#un# ↦ f(u1u2)…f(u(n-1)un), for n ≥ 2
inline Rte stdlib_expr(const std::string& name, const Alphabet& alphabet, const StdlibParams& params = {}) {
  const Symbol& sep = params.separator;
  auto copy = [&] { return detail::letterwise_star(alphabet, true); };
  auto erase = [&] { return detail::letterwise_star(alphabet, false); };
  auto mark = [&](bool in, bool out) { return rte::atom(in ? Word{sep} : Word{}, out ? Word{sep} : Word{}); };
  if (name == "copy") return copy();
  if (name == "erase") return erase();
  if (name == "duplicate") return rte::hadamard(rte::cat(copy(), mark(false, true)), copy());
  if (name == "exchange") {
    return rte::hadamard(rte::cat(rte::cat(erase(), mark(true, false)), copy()),
                         rte::cat(rte::cat(copy(), mark(true, false)), erase()));
  }
  if (name == "fK" || name == "gK") {
    if (!params.k) throw std::invalid_argument(name + " needs a regex for K");
    Rte fk = detail::regex_identity(params.k);
    auto verdict = check_unambiguous(fk);
    if (!verdict.unambiguous) {
      throw AmbiguousK("regex '" + regex::to_text(params.k) + "' is ambiguous on '" + display_word(verdict.witness) + "'");
    }
    if (name == "fK") return fk;
    return rte::star(rte::cat(fk, mark(false, true)));
  }
  if (name == "pairApplier") {
    if (!params.f) throw std::invalid_argument("pairApplier needs an expression f");
    Rte join = rte::cat(rte::cat(rte::cat(copy(), mark(true, false)), copy()), mark(true, false));
    Rte pair = rte::compose(params.f, join);
    Rte drop = rte::cat(erase(), mark(true, false));
    return rte::cat(rte::cat(rte::cat(drop, pair), rte::star(pair)), drop);
  }
  throw UnknownName("unknown library expression '" + name + "'");
}

}  // namespace transducers

#endif  // TRANSDUCERS_RTE_STDLIB_HPP_
