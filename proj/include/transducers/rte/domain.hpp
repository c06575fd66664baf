#ifndef TRANSDUCERS_RTE_DOMAIN_HPP_
#define TRANSDUCERS_RTE_DOMAIN_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "transducers/errors.hpp"
#include "transducers/nfa.hpp"
#include "transducers/regex.hpp"
#include "transducers/rte/ast.hpp"

namespace transducers {

struct DomainResult {
  Nfa nfa;
  bool exact = true;  // false: nfa accepts a superset of the domain
};

/// Automaton for the block language K of a chained iteration, without ε,
/// determinized so that it has one run per accepted block.
inline Nfa block_automaton(const Regex& k) {
  const Alphabet sigma = regex::alphabet_of(k);
  Nfa plus(sigma, 2);
  plus.set_initial(0);
  plus.set_final(1);
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    plus.add_transition(0, x, 1);
    plus.add_transition(1, x, 1);
  }
  return nfa_trim(nfa_determinize(nfa_intersect(regex::glushkov(k, sigma), plus)));
}

/// Results per node, shared between calls on subexpressions.
using DomainMemo = std::map<const RteNode*, DomainResult>;

inline DomainResult rte_domain(const Rte& e, DomainMemo* memo);

namespace detail {

inline DomainResult compute_domain(const Rte& e, DomainMemo* memo) {
  using K = RteNode::Kind;
  auto rte_domain = [memo](const Rte& child) { return transducers::rte_domain(child, memo); };
  switch (e->kind) {
    case K::Atom:
      return {word_language(Alphabet(e->in), e->in), true};
    case K::Sum: {
      auto l = rte_domain(e->left);
      auto r = rte_domain(e->right);
      return {nfa_union(l.nfa, r.nfa), l.exact && r.exact};
    }
    case K::Cat: {
      auto l = rte_domain(e->left);
      auto r = rte_domain(e->right);
      return {nfa_concat(l.nfa, r.nfa), l.exact && r.exact};
    }
    case K::Hadamard: {
      auto l = rte_domain(e->left);
      auto r = rte_domain(e->right);
      return {nfa_intersect(l.nfa, r.nfa), l.exact && r.exact};
    }
    case K::Star:
    case K::RStar: {
      auto c = rte_domain(e->left);
      return {nfa_star(c.nfa), c.exact};
    }
    case K::Compose: {
      auto inner = rte_domain(e->right);
      return {inner.nfa, false};
    }
    case K::Reverse:
    case K::Duplicate:
      return {universal_language(e->alphabet), true};
    case K::Chain2:
    case K::RChain2: {
      const Nfa k = block_automaton(e->factor);
      Nfa blocks = nfa_concat(k, nfa_concat(k, nfa_star(k)));
      auto f = rte_domain(e->left);
      bool exact = f.exact && nfa_included(nfa_concat(k, k), f.nfa);
      return {std::move(blocks), exact};
    }
  }
  return {};
}

}  // namespace detail

/// Domain automaton built by structure. Sum, Cat and Star use run-preserving
/// constructions: a word has as many runs as it has parses, provided the
/// operands' automata are unambiguous.
inline DomainResult rte_domain(const Rte& e, DomainMemo* memo) {
  if (memo == nullptr) return detail::compute_domain(e, nullptr);
  auto it = memo->find(e.get());
  if (it != memo->end()) return it->second;
  DomainResult d = detail::compute_domain(e, memo);
  memo->emplace(e.get(), d);
  return d;
}

inline DomainResult rte_domain(const Rte& e) { return rte_domain(e, nullptr); }

struct UnambiguityVerdict {
  bool unambiguous = true;
  Word witness;
  std::string parse1;
  std::string parse2;
  std::string node;  // constructor of the offending node
};

namespace detail {

inline std::string join_factors(const Word& w, const std::vector<std::size_t>& cuts) {
  std::string s;
  std::size_t prev = 0;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    std::size_t end = i < cuts.size() ? cuts[i] : w.size();
    if (i > 0) s += "·";
    s += display_word(Word(w.begin() + static_cast<std::ptrdiff_t>(prev), w.begin() + static_cast<std::ptrdiff_t>(end)));
    prev = end;
  }
  return s;
}

// First two factorizations of w into nonempty blocks accepted by `block`,
// with at least `min_blocks` blocks, in lexicographic order of cut positions.
inline std::vector<std::string> factorizations(const Word& w, const Nfa& block, std::size_t min_blocks) {
  std::vector<std::string> found;
  std::vector<std::size_t> cuts;
  std::function<void(std::size_t)> go = [&](std::size_t start) {
    if (found.size() >= 2) return;
    if (start == w.size()) {
      if (cuts.size() < min_blocks) return;
      if (w.empty()) {
        found.push_back("ε");
      } else {
        found.push_back(join_factors(w, std::vector<std::size_t>(cuts.begin(), cuts.end() - 1)));
      }
      return;
    }
    for (std::size_t end = start + 1; end <= w.size(); ++end) {
      Word part(w.begin() + static_cast<std::ptrdiff_t>(start), w.begin() + static_cast<std::ptrdiff_t>(end));
      if (!block.alphabet().contains_word(part) || !nfa_accepts(block, part)) continue;
      cuts.push_back(end);
      go(end);
      cuts.pop_back();
    }
  };
  go(0);
  return found;
}

inline DomainResult exact_domain(const Rte& e) {
  auto d = rte_domain(e);
  if (!d.exact) throw InexactDomain("check_unambiguous: domain of '" + to_text(e) + "' is not exact");
  return d;
}

inline bool accepts(const Nfa& a, const Word& w) { return a.alphabet().contains_word(w) && nfa_accepts(a, w); }

}  // namespace detail

/// Checks, bottom-up, that every Sum has disjoint summand domains and every
/// Cat, Star, RStar, Chain2 and RChain2 node parses each word at most one
/// way. The first failing node is reported with a shortest witness and two
/// of its parses.
inline UnambiguityVerdict check_unambiguous(const Rte& e) {
  using K = RteNode::Kind;
  if (e->left) {
    auto v = check_unambiguous(e->left);
    if (!v.unambiguous) return v;
  }
  if (e->right) {
    auto v = check_unambiguous(e->right);
    if (!v.unambiguous) return v;
  }
  UnambiguityVerdict bad;
  bad.unambiguous = false;
  bad.node = kind_name(e->kind);
  switch (e->kind) {
    case K::Sum: {
      auto l = detail::exact_domain(e->left);
      auto r = detail::exact_domain(e->right);
      if (auto w = shortest_accepted(nfa_intersect(l.nfa, r.nfa))) {
        bad.witness = *w;
        bad.parse1 = "left summand";
        bad.parse2 = "right summand";
        return bad;
      }
      return {};
    }
    case K::Cat: {
      auto l = detail::exact_domain(e->left);
      auto r = detail::exact_domain(e->right);
      auto amb = nfa_ambiguous(nfa_concat(l.nfa, r.nfa));
      if (amb.unambiguous()) return {};
      const Word& w = *amb.witness;
      std::vector<std::string> parses;
      for (std::size_t k = 0; k <= w.size() && parses.size() < 2; ++k) {
        Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        Word v(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
        if (detail::accepts(l.nfa, u) && detail::accepts(r.nfa, v)) parses.push_back(display_word(u) + "·" + display_word(v));
      }
      bad.witness = w;
      bad.parse1 = parses.size() > 0 ? parses[0] : "";
      bad.parse2 = parses.size() > 1 ? parses[1] : "";
      return bad;
    }
    case K::Star:
    case K::RStar: {
      auto c = detail::exact_domain(e->left);
      if (detail::accepts(c.nfa, {})) {
        bad.witness = {};
        bad.parse1 = "ε";
        bad.parse2 = "ε·ε";
        return bad;
      }
      auto amb = nfa_ambiguous(nfa_star(c.nfa));
      if (amb.unambiguous()) return {};
      bad.witness = *amb.witness;
      auto parses = detail::factorizations(bad.witness, c.nfa, 0);
      bad.parse1 = parses.size() > 0 ? parses[0] : "";
      bad.parse2 = parses.size() > 1 ? parses[1] : "";
      return bad;
    }
    case K::Chain2:
    case K::RChain2: {
      const Nfa k = block_automaton(e->factor);
      auto amb = nfa_ambiguous(nfa_concat(k, nfa_concat(k, nfa_star(k))));
      if (amb.unambiguous()) return {};
      bad.witness = *amb.witness;
      auto parses = detail::factorizations(bad.witness, k, 2);
      bad.parse1 = parses.size() > 0 ? parses[0] : "";
      bad.parse2 = parses.size() > 1 ? parses[1] : "";
      return bad;
    }
    default:
      return {};
  }
}

}  // namespace transducers

#endif  // TRANSDUCERS_RTE_DOMAIN_HPP_
