#ifndef TRANSDUCERS_RTE_EVAL_HPP_
#define TRANSDUCERS_RTE_EVAL_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "transducers/errors.hpp"
#include "transducers/machines.hpp"
#include "transducers/nfa.hpp"
#include "transducers/outcome.hpp"
#include "transducers/rte/ast.hpp"
#include "transducers/rte/domain.hpp"

namespace transducers {

inline constexpr std::uint64_t kDefaultParseCap = 100'000;

struct RteEvalOptions {
  std::uint64_t parse_cap = kDefaultParseCap;
};

/// All-parses evaluator. Results for a node over a factor w[i..j) are
/// memoized per input word; the word fed to the outer side of a composition
/// gets its own table.
class RteEvaluator {
 public:
  // Output word -> number of parses producing it.
  using Outputs = std::map<Word, std::uint64_t>;

  explicit RteEvaluator(RteEvalOptions options = {}) : options_(options) {}

  Outputs outputs(const Rte& e, const Word& w) {
    keep_alive(e);
    cache_.clear();
    return whole(e.get(), w);
  }

  EvalOutcome eval(const Rte& e, const Word& w) {
    const Outputs outs = outputs(e, w);
    std::vector<Word> words;
    std::uint64_t parses = 0;
    for (const auto& [v, n] : outs) {
      words.push_back(v);
      parses = detail::saturating_add(parses, n);
    }
    EvalOutcome o = EvalOutcome::from_outputs(std::move(words));
    o.ambiguous_but_consistent = o.is_unique() && parses > 1;
    return o;
  }

 private:
  using Key = std::tuple<const RteNode*, std::size_t, std::size_t, std::size_t, int>;

  using SpanTable = std::vector<std::vector<bool>>;  // [i][j]: w[i..j) accepted

  struct Context {
    const Word* w;
    std::map<Key, Outputs> memo;
    std::map<const RteNode*, SpanTable> blocks;
    std::map<const RteNode*, SpanTable> domains;
  };

  // Node addresses key the automaton caches, so the trees must outlive them.
  void keep_alive(const Rte& e) { roots_.insert(e); }

  // Deterministic automaton for a superset of the node's domain.
  const Nfa& domain_dfa(const RteNode* e) {
    auto it = dfa_.find(e);
    if (it != dfa_.end()) return it->second;
    Rte node(Rte{}, e);  // non-owning
    Nfa d = nfa_determinize(rte_domain(node, &domains_).nfa);
    return dfa_.emplace(e, std::move(d)).first->second;
  }

  static SpanTable span_table(const Nfa& dfa, const Word& w) {
    SpanTable table(w.size() + 1, std::vector<bool>(w.size() + 1, false));
    const auto initials = dfa.initial_states();
    if (initials.empty()) return table;
    std::vector<std::optional<std::size_t>> letters;
    for (const auto& a : w) letters.push_back(dfa.alphabet().find(a));
    for (std::size_t i = 0; i <= w.size(); ++i) {
      State q = initials.front();
      table[i][i] = dfa.is_final(q);
      for (std::size_t j = i; j < w.size(); ++j) {
        if (!letters[j]) break;
        const auto& next = dfa.successors(q, *letters[j]);
        if (next.empty()) break;
        q = next.front();
        table[i][j + 1] = dfa.is_final(q);
      }
    }
    return table;
  }

  bool maybe_in_domain(Context& ctx, const RteNode* e, std::size_t i, std::size_t j) {
    auto it = ctx.domains.find(e);
    if (it == ctx.domains.end()) it = ctx.domains.emplace(e, span_table(domain_dfa(e), *ctx.w)).first;
    return it->second[i][j];
  }

  enum Tag { kNode = 0, kStarRest = 1, kChainRest = 2 };

  const Outputs& whole(const RteNode* e, const Word& w) {
    auto key = std::make_pair(e, w);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Context ctx{&w, {}, {}, {}};
    Outputs out = run(ctx, e, 0, w.size());
    return cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  void check(const Outputs& o) const {
    std::uint64_t total = 0;
    for (const auto& [v, n] : o) total = detail::saturating_add(total, n);
    if (total > options_.parse_cap) {
      throw BudgetExceeded("eval_rte: more than " + std::to_string(options_.parse_cap) + " parses");
    }
  }

  static void add(Outputs& into, const Word& v, std::uint64_t n) {
    auto& slot = into[v];
    slot = detail::saturating_add(slot, n);
  }

  // Concatenations u·v (or v·u when swapped) over both tables.
  static void product(Outputs& into, const Outputs& a, const Outputs& b, bool swapped = false) {
    for (const auto& [u, m] : a) {
      for (const auto& [v, n] : b) add(into, swapped ? concat(v, u) : concat(u, v), detail::saturating_mul(m, n));
    }
  }

  Word slice(const Context& ctx, std::size_t i, std::size_t j) const {
    return Word(ctx.w->begin() + static_cast<std::ptrdiff_t>(i), ctx.w->begin() + static_cast<std::ptrdiff_t>(j));
  }

  const std::vector<std::vector<bool>>& block_table(Context& ctx, const RteNode* e) {
    auto it = ctx.blocks.find(e);
    if (it != ctx.blocks.end()) return it->second;
    const Nfa k = block_automaton(e->factor);
    const Word& w = *ctx.w;
    std::vector<std::vector<bool>> table(w.size() + 1, std::vector<bool>(w.size() + 1, false));
    const auto initials = k.initial_states();
    for (std::size_t i = 0; i < w.size() && !initials.empty(); ++i) {
      State q = initials.front();
      for (std::size_t j = i; j < w.size(); ++j) {
        auto x = k.alphabet().find(w[j]);
        if (!x) break;
        auto next = k.successors(q, *x);
        if (next.empty()) break;
        q = next.front();
        table[i][j + 1] = k.is_final(q);
      }
    }
    return ctx.blocks.emplace(e, std::move(table)).first->second;
  }

  // Memo entries are never erased, so returned references stay valid.
  const Outputs& run(Context& ctx, const RteNode* e, std::size_t i, std::size_t j) {
    static const Outputs kNone;
    if (!maybe_in_domain(ctx, e, i, j)) return kNone;
    Key key{e, i, j, 0, kNode};
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
    Outputs out = compute(ctx, e, i, j);
    check(out);
    return ctx.memo.emplace(key, std::move(out)).first->second;
  }

  Outputs compute(Context& ctx, const RteNode* e, std::size_t i, std::size_t j) {
    using K = RteNode::Kind;
    Outputs out;
    switch (e->kind) {
      case K::Atom:
        if (slice(ctx, i, j) == e->in) out[e->out] = 1;
        break;
      case K::Sum:
        for (const auto* side : {e->left.get(), e->right.get()}) {
          for (const auto& [v, n] : run(ctx, side, i, j)) add(out, v, n);
        }
        break;
      case K::Cat:
        for (std::size_t k = i; k <= j; ++k) {
          const auto& l = run(ctx, e->left.get(), i, k);
          if (l.empty()) continue;
          product(out, l, run(ctx, e->right.get(), k, j));
        }
        break;
      case K::Hadamard: {
        const auto& l = run(ctx, e->left.get(), i, j);
        if (!l.empty()) product(out, l, run(ctx, e->right.get(), i, j));
        break;
      }
      case K::Compose:
        for (const auto& [v, n] : run(ctx, e->right.get(), i, j)) {
          for (const auto& [u, m] : whole(e->left.get(), v)) add(out, u, detail::saturating_mul(n, m));
        }
        break;
      case K::Star:
      case K::RStar:
        out = star_rest(ctx, e, i, j);
        break;
      case K::Reverse: {
        Word w = slice(ctx, i, j);
        if (e->alphabet.contains_word(w)) out[reverse_word(std::move(w))] = 1;
        break;
      }
      case K::Duplicate: {
        Word w = slice(ctx, i, j);
        if (e->alphabet.contains_word(w)) {
          Word v = w;
          v.push_back(e->separator);
          v.insert(v.end(), w.begin(), w.end());
          out[std::move(v)] = 1;
        }
        break;
      }
      case K::Chain2:
      case K::RChain2: {
        const auto& table = block_table(ctx, e);
        for (std::size_t b = i + 1; b < j; ++b) {
          if (!table[i][b]) continue;
          for (const auto& [v, n] : chain_rest(ctx, e, i, b, j)) add(out, v, n);
        }
        break;
      }
    }
    return out;
  }

  // Factorizations of w[k..j) into nonempty factors of the starred child.
  const Outputs& star_rest(Context& ctx, const RteNode* e, std::size_t k, std::size_t j) {
    static const Outputs kEmptyFactorization = {{Word{}, 1}};
    if (k == j) return kEmptyFactorization;
    Key key{e, k, j, 0, kStarRest};
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
    Outputs out;
    const bool reversed = e->kind == RteNode::Kind::RStar;
    for (std::size_t m = k + 1; m <= j; ++m) {
      const auto& head = run(ctx, e->left.get(), k, m);
      if (head.empty()) continue;
      product(out, head, star_rest(ctx, e, m, j), reversed);
    }
    check(out);
    return ctx.memo.emplace(key, std::move(out)).first->second;
  }

  // w[a..j) factored with first block w[a..b) and at least one more block;
  // emits f on each consecutive pair of blocks.
  const Outputs& chain_rest(Context& ctx, const RteNode* e, std::size_t a, std::size_t b, std::size_t j) {
    Key key{e, a, b, j, kChainRest};
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
    const auto& table = block_table(ctx, e);
    const bool reversed = e->kind == RteNode::Kind::RChain2;
    Outputs out;
    for (std::size_t c = b + 1; c <= j; ++c) {
      if (!table[b][c]) continue;
      const auto& pair = run(ctx, e->left.get(), a, c);
      if (pair.empty()) continue;
      if (c == j) {
        for (const auto& [v, n] : pair) add(out, v, n);
      } else {
        product(out, pair, chain_rest(ctx, e, b, c, j), reversed);
      }
    }
    check(out);
    return ctx.memo.emplace(key, std::move(out)).first->second;
  }

  RteEvalOptions options_;
  std::set<Rte> roots_;
  DomainMemo domains_;
  std::map<const RteNode*, Nfa> dfa_;
  std::map<std::pair<const RteNode*, Word>, Outputs> cache_;
};

inline EvalOutcome eval_rte(const Rte& e, const Word& w, RteEvalOptions options = {}) {
  RteEvaluator ev(options);
  return ev.eval(e, w);
}

}  // namespace transducers

#endif  // TRANSDUCERS_RTE_EVAL_HPP_
