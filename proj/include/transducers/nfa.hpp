#ifndef TRANSDUCERS_NFA_HPP_
#define TRANSDUCERS_NFA_HPP_

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "transducers/errors.hpp"
#include "transducers/words.hpp"

namespace transducers {

using State = std::size_t;

struct NfaTransition {
  State from;
  std::size_t symbol;  // index into the alphabet
  State to;
  friend auto operator<=>(const NfaTransition&, const NfaTransition&) = default;
};

/// Epsilon-free nondeterministic finite acceptor. States are dense indices
/// with optional display names.
class Nfa {
 public:
  Nfa() = default;
  explicit Nfa(Alphabet alphabet, std::size_t states = 0) : alphabet_(std::move(alphabet)) {
    for (std::size_t i = 0; i < states; ++i) add_state();
  }

  State add_state(std::string name = {}) {
    State s = names_.size();
    names_.push_back(name.empty() ? std::to_string(s) : std::move(name));
    initial_.push_back(false);
    final_.push_back(false);
    delta_.emplace_back(alphabet_.size());
    return s;
  }

  void add_transition(State from, std::size_t symbol, State to) {
    assert(from < num_states() && to < num_states() && symbol < alphabet_.size());
    auto& targets = delta_[from][symbol];
    auto it = std::lower_bound(targets.begin(), targets.end(), to);
    if (it == targets.end() || *it != to) targets.insert(it, to);
  }

  void add_transition(State from, const Symbol& symbol, State to) {
    add_transition(from, alphabet_.index_of(symbol), to);
  }

  void set_initial(State s, bool value = true) { initial_[s] = value; }
  void set_final(State s, bool value = true) { final_[s] = value; }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& name(State s) const { return names_[s]; }
  bool is_initial(State s) const { return initial_[s]; }
  bool is_final(State s) const { return final_[s]; }

  std::vector<State> initial_states() const { return collect(initial_); }
  std::vector<State> final_states() const { return collect(final_); }

  const std::vector<State>& successors(State s, std::size_t symbol) const { return delta_[s][symbol]; }

  std::vector<NfaTransition> transitions() const {
    std::vector<NfaTransition> out;
    for (State s = 0; s < num_states(); ++s) {
      for (std::size_t a = 0; a < alphabet_.size(); ++a) {
        for (State t : delta_[s][a]) out.push_back({s, a, t});
      }
    }
    return out;
  }

  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& row : delta_) {
      for (const auto& targets : row) n += targets.size();
    }
    return n;
  }

  /// At most one initial state and one successor per (state, symbol).
  bool is_deterministic() const {
    if (initial_states().size() > 1) return false;
    for (const auto& row : delta_) {
      for (const auto& targets : row) {
        if (targets.size() > 1) return false;
      }
    }
    return true;
  }

  bool is_complete() const {
    for (const auto& row : delta_) {
      for (const auto& targets : row) {
        if (targets.empty()) return false;
      }
    }
    return true;
  }

 private:
  static std::vector<State> collect(const std::vector<bool>& flags) {
    std::vector<State> out;
    for (State s = 0; s < flags.size(); ++s) {
      if (flags[s]) out.push_back(s);
    }
    return out;
  }

  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
  std::vector<std::vector<std::vector<State>>> delta_;
};

namespace detail {

inline std::vector<State> step_set(const Nfa& a, const std::vector<State>& from, std::size_t symbol) {
  std::vector<State> out;
  for (State s : from) {
    const auto& succ = a.successors(s, symbol);
    out.insert(out.end(), succ.begin(), succ.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool any_final(const Nfa& a, const std::vector<State>& set) {
  return std::any_of(set.begin(), set.end(), [&](State s) { return a.is_final(s); });
}

inline Word replay(const std::vector<std::pair<std::size_t, std::size_t>>& parent, std::size_t node,
                   const Alphabet& alphabet) {
  Word w;
  while (parent[node].first != node) {
    w.push_back(alphabet[parent[node].second]);
    node = parent[node].first;
  }
  return reverse_word(std::move(w));
}

}  // namespace detail

inline bool nfa_accepts(const Nfa& a, const Word& w) {
  std::vector<std::size_t> letters;
  letters.reserve(w.size());
  for (const auto& s : w) letters.push_back(a.alphabet().index_of(s));
  auto current = a.initial_states();
  for (auto letter : letters) {
    current = detail::step_set(a, current, letter);
    if (current.empty()) return false;
  }
  return detail::any_final(a, current);
}

/// States reachable from the initial states.
inline std::vector<bool> accessible_states(const Nfa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::deque<State> queue;
  for (State s : a.initial_states()) {
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < a.alphabet().size(); ++x) {
      for (State t : a.successors(s, x)) {
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  }
  return seen;
}

/// States from which a final state is reachable.
inline std::vector<bool> coaccessible_states(const Nfa& a) {
  std::vector<std::vector<State>> preds(a.num_states());
  for (const auto& t : a.transitions()) preds[t.to].push_back(t.from);
  std::vector<bool> seen(a.num_states(), false);
  std::deque<State> queue;
  for (State s : a.final_states()) {
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : preds[s]) {
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

/// Restriction to the given states, renumbered in original order.
inline Nfa restrict_states(const Nfa& a, const std::vector<bool>& keep) {
  Nfa out(a.alphabet());
  std::vector<State> remap(a.num_states(), a.num_states());
  for (State s = 0; s < a.num_states(); ++s) {
    if (!keep[s]) continue;
    remap[s] = out.add_state(a.name(s));
    out.set_initial(remap[s], a.is_initial(s));
    out.set_final(remap[s], a.is_final(s));
  }
  for (const auto& t : a.transitions()) {
    if (keep[t.from] && keep[t.to]) out.add_transition(remap[t.from], t.symbol, remap[t.to]);
  }
  return out;
}

/// Sub-automaton of accessible and co-accessible states.
inline Nfa nfa_trim(const Nfa& a) {
  auto acc = accessible_states(a);
  auto coacc = coaccessible_states(a);
  std::vector<bool> keep(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) keep[s] = acc[s] && coacc[s];
  return restrict_states(a, keep);
}

inline std::string subset_name(const Nfa& a, const std::vector<State>& set) {
  std::string name = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i != 0) name += ",";
    name += a.name(set[i]);
  }
  return name + "}";
}

/// Subset construction. The result is complete and deterministic; each state
/// is named after its member list in original state order ("{1,2}", "{}").
/// States are numbered in breadth-first discovery order.
inline Nfa nfa_determinize(const Nfa& a) {
  Nfa out(a.alphabet());
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State> set) {
    auto it = index.find(set);
    if (it != index.end()) return it->second;
    State s = out.add_state(subset_name(a, set));
    out.set_final(s, detail::any_final(a, set));
    index.emplace(set, s);
    subsets.push_back(std::move(set));
    return s;
  };
  State start = intern(a.initial_states());
  out.set_initial(start);
  for (State s = 0; s < subsets.size(); ++s) {
    for (std::size_t x = 0; x < a.alphabet().size(); ++x) {
      State t = intern(detail::step_set(a, subsets[s], x));
      out.add_transition(s, x, t);
    }
  }
  return out;
}

/// Same automaton over a larger alphabet; symbols are appended in order.
inline Nfa with_alphabet(const Nfa& a, const Alphabet& alphabet) {
  if (!a.alphabet().subset_of(alphabet)) {
    throw AlphabetMismatch("cannot restrict an automaton to a smaller alphabet");
  }
  Nfa out(alphabet);
  for (State s = 0; s < a.num_states(); ++s) {
    out.add_state(a.name(s));
    out.set_initial(s, a.is_initial(s));
    out.set_final(s, a.is_final(s));
  }
  for (const auto& t : a.transitions()) {
    out.add_transition(t.from, alphabet.index_of(a.alphabet()[t.symbol]), t.to);
  }
  return out;
}

struct LanguageEquivalence {
  std::optional<Word> counterexample;  // shortest, lex-least word in the symmetric difference
  bool equivalent() const { return !counterexample.has_value(); }
};

/// Language equivalence by breadth-first exploration of the product of the
/// two subset automata. Alphabets must hold the same symbols.
inline LanguageEquivalence dfa_equiv(const Nfa& a, const Nfa& b) {
  if (!a.alphabet().same_set(b.alphabet())) {
    throw AlphabetMismatch("dfa_equiv: automata are over different alphabets");
  }
  const Nfa bb = a.alphabet() == b.alphabet() ? b : with_alphabet(b, a.alphabet());
  using Pair = std::pair<std::vector<State>, std::vector<State>>;
  std::map<Pair, std::size_t> seen;
  std::vector<Pair> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> parent;
  auto push = [&](Pair p, std::size_t from, std::size_t letter) {
    if (seen.count(p) != 0) return false;
    seen.emplace(p, nodes.size());
    parent.emplace_back(from == SIZE_MAX ? nodes.size() : from, letter);
    nodes.push_back(std::move(p));
    return true;
  };
  push({a.initial_states(), bb.initial_states()}, SIZE_MAX, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    bool fa = detail::any_final(a, nodes[i].first);
    bool fb = detail::any_final(bb, nodes[i].second);
    if (fa != fb) return {detail::replay(parent, i, a.alphabet())};
    for (std::size_t x = 0; x < a.alphabet().size(); ++x) {
      Pair next{detail::step_set(a, nodes[i].first, x), detail::step_set(bb, nodes[i].second, x)};
      push(std::move(next), i, x);
    }
  }
  return {};
}

struct AmbiguityResult {
  std::optional<Word> witness;  // a shortest word with two accepting runs
  bool unambiguous() const { return !witness.has_value(); }
};

/// Self-product with a divergence flag: explores (p, q, diverged) from all
/// initial pairs; ambiguous iff a final pair is reachable with diverged set.
inline AmbiguityResult nfa_ambiguous(const Nfa& input) {
  const Nfa a = nfa_trim(input);
  using Config = std::tuple<State, State, bool>;
  std::map<Config, std::size_t> seen;
  std::vector<Config> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> parent;
  auto push = [&](Config c, std::size_t from, std::size_t letter) {
    if (seen.count(c) != 0) return;
    seen.emplace(c, nodes.size());
    parent.emplace_back(from == SIZE_MAX ? nodes.size() : from, letter);
    nodes.push_back(c);
  };
  auto initials = a.initial_states();
  for (State p : initials) {
    for (State q : initials) push({p, q, p != q}, SIZE_MAX, 0);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [p, q, diverged] = nodes[i];
    if (diverged && a.is_final(p) && a.is_final(q)) return {detail::replay(parent, i, a.alphabet())};
    for (std::size_t x = 0; x < a.alphabet().size(); ++x) {
      for (State p2 : a.successors(p, x)) {
        for (State q2 : a.successors(q, x)) push({p2, q2, diverged || p2 != q2}, i, x);
      }
    }
  }
  return {};
}

inline bool nfa_is_empty(const Nfa& a) {
  auto acc = accessible_states(a);
  for (State s = 0; s < a.num_states(); ++s) {
    if (acc[s] && a.is_final(s)) return false;
  }
  return true;
}

/// Shortest lex-least accepted word, if any.
inline std::optional<Word> shortest_accepted(const Nfa& a) {
  std::map<std::vector<State>, std::size_t> seen;
  std::vector<std::vector<State>> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> parent;
  nodes.push_back(a.initial_states());
  seen.emplace(nodes[0], 0);
  parent.emplace_back(0, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (detail::any_final(a, nodes[i])) return detail::replay(parent, i, a.alphabet());
    for (std::size_t x = 0; x < a.alphabet().size(); ++x) {
      auto next = detail::step_set(a, nodes[i], x);
      if (next.empty() || seen.count(next) != 0) continue;
      seen.emplace(next, nodes.size());
      parent.emplace_back(i, x);
      nodes.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Builders. Unless stated otherwise they preserve runs: every accepting run
// of the result corresponds to exactly one tuple of runs of the operands,
// so nfa_ambiguous on a result detects ambiguity introduced by the operation.

inline Nfa empty_language(const Alphabet& alphabet) { return Nfa(alphabet); }

inline Nfa universal_language(const Alphabet& alphabet) {
  Nfa out(alphabet, 1);
  out.set_initial(0);
  out.set_final(0);
  for (std::size_t x = 0; x < alphabet.size(); ++x) out.add_transition(0, x, 0);
  return out;
}

inline Nfa word_language(const Alphabet& alphabet, const Word& w) {
  Nfa out(alphabet, w.size() + 1);
  out.set_initial(0);
  out.set_final(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.add_transition(i, w[i], i + 1);
  return out;
}

/// Same automaton with the given initial states only.
inline Nfa with_initial(const Nfa& a, const std::vector<State>& initial) {
  Nfa out = a;
  for (State s = 0; s < out.num_states(); ++s) out.set_initial(s, false);
  for (State s : initial) out.set_initial(s);
  return out;
}

/// Disjoint union; both operands must share the alphabet.
inline Nfa nfa_union(const Nfa& a, const Nfa& b) {
  const Alphabet alphabet = a.alphabet().united(b.alphabet());
  const Nfa left = with_alphabet(a, alphabet);
  const Nfa right = with_alphabet(b, alphabet);
  Nfa out(alphabet);
  for (const Nfa* part : {&left, &right}) {
    State base = out.num_states();
    for (State s = 0; s < part->num_states(); ++s) {
      State n = out.add_state(part->name(s));
      out.set_initial(n, part->is_initial(s));
      out.set_final(n, part->is_final(s));
    }
    for (const auto& t : part->transitions()) out.add_transition(base + t.from, t.symbol, base + t.to);
  }
  return out;
}

/// Product automaton (intersection); runs are pairs of runs.
inline Nfa nfa_intersect(const Nfa& a, const Nfa& b) {
  const Alphabet alphabet = a.alphabet().united(b.alphabet());
  const Nfa left = with_alphabet(a, alphabet);
  const Nfa right = with_alphabet(b, alphabet);
  Nfa out(alphabet);
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) {
    auto it = index.find({p, q});
    if (it != index.end()) return it->second;
    State s = out.add_state("(" + left.name(p) + "," + right.name(q) + ")");
    out.set_final(s, left.is_final(p) && right.is_final(q));
    index.emplace(std::make_pair(p, q), s);
    pairs.emplace_back(p, q);
    return s;
  };
  for (State p : left.initial_states()) {
    for (State q : right.initial_states()) out.set_initial(intern(p, q));
  }
  for (State i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (std::size_t x = 0; x < alphabet.size(); ++x) {
      for (State p2 : left.successors(p, x)) {
        for (State q2 : right.successors(q, x)) out.add_transition(i, x, intern(p2, q2));
      }
    }
  }
  return out;
}

/// Complement via the complete subset automaton (does not preserve runs).
inline Nfa nfa_complement(const Nfa& a) {
  Nfa d = nfa_determinize(a);
  for (State s = 0; s < d.num_states(); ++s) d.set_final(s, !d.is_final(s));
  return d;
}

/// L(a) minus L(b).
inline Nfa nfa_difference(const Nfa& a, const Nfa& b) {
  const Alphabet alphabet = a.alphabet().united(b.alphabet());
  return nfa_trim(nfa_intersect(with_alphabet(a, alphabet), nfa_complement(with_alphabet(b, alphabet))));
}

inline bool nfa_disjoint(const Nfa& a, const Nfa& b) { return nfa_is_empty(nfa_intersect(a, b)); }

/// L(a) included in L(b).
inline bool nfa_included(const Nfa& a, const Nfa& b) { return nfa_is_empty(nfa_difference(a, b)); }

/// Copies each initial state into a fresh one without incoming transitions;
/// the originals lose initial status. Runs are preserved one-to-one.
inline Nfa normalize_initial(const Nfa& a) {
  Nfa out(a.alphabet());
  for (State s = 0; s < a.num_states(); ++s) {
    out.add_state(a.name(s));
    out.set_final(s, a.is_final(s));
  }
  for (const auto& t : a.transitions()) out.add_transition(t.from, t.symbol, t.to);
  for (State i : a.initial_states()) {
    State fresh = out.add_state(a.name(i) + "'");
    out.set_initial(fresh);
    out.set_final(fresh, a.is_final(i));
    for (std::size_t x = 0; x < a.alphabet().size(); ++x) {
      for (State t : a.successors(i, x)) out.add_transition(fresh, x, t);
    }
  }
  return restrict_states(out, accessible_states(out));
}

/// Concatenation. Accepting runs correspond to (run of a on u, run of b on v)
/// with w = uv; the switch position is visible in the state sequence.
inline Nfa nfa_concat(const Nfa& a_in, const Nfa& b_in) {
  const Alphabet alphabet = a_in.alphabet().united(b_in.alphabet());
  const Nfa a = normalize_initial(with_alphabet(a_in, alphabet));
  const Nfa b = with_alphabet(b_in, alphabet);
  const auto a_init = a.initial_states();
  const auto b_init = b.initial_states();
  const bool a_nullable = std::any_of(a_init.begin(), a_init.end(), [&](State s) { return a.is_final(s); });
  const bool b_nullable = std::any_of(b_init.begin(), b_init.end(), [&](State s) { return b.is_final(s); });
  Nfa out(alphabet);
  for (State s = 0; s < a.num_states(); ++s) {
    out.add_state("a." + a.name(s));
    out.set_initial(s, a.is_initial(s));
    // A-final states are final in the result only for v = ε and u ≠ ε;
    // u = v = ε is accepted through b's initial states.
    out.set_final(s, b_nullable && a.is_final(s) && !a.is_initial(s));
  }
  const State base = a.num_states();
  for (State s = 0; s < b.num_states(); ++s) {
    State n = out.add_state("b." + b.name(s));
    out.set_initial(n, a_nullable && b.is_initial(s));
    out.set_final(n, b.is_final(s));
  }
  for (const auto& t : a.transitions()) out.add_transition(t.from, t.symbol, t.to);
  for (const auto& t : b.transitions()) out.add_transition(base + t.from, t.symbol, base + t.to);
  for (State f = 0; f < a.num_states(); ++f) {
    if (!a.is_final(f) || a.is_initial(f)) continue;
    for (State i : b.initial_states()) {
      for (std::size_t x = 0; x < alphabet.size(); ++x) {
        for (State q : b.successors(i, x)) out.add_transition(f, x, base + q);
      }
    }
  }
  return out;
}

/// Kleene star with nonempty factors. A state entered by starting a new
/// factor is kept distinct from the same state entered inside a factor, so
/// two factorizations of one word always give two runs.
inline Nfa nfa_star(const Nfa& a_in) {
  const Nfa a = normalize_initial(a_in);
  const Alphabet& alphabet = a.alphabet();
  Nfa out(alphabet);
  const State start = out.add_state("s");
  out.set_initial(start);
  out.set_final(start);
  std::vector<std::array<State, 2>> copy(a.num_states(), {0, 0});
  for (State s = 0; s < a.num_states(); ++s) {
    if (a.is_initial(s)) continue;
    for (int mark = 0; mark < 2; ++mark) {
      copy[s][mark] = out.add_state(a.name(s) + (mark ? "^" : ""));
      out.set_final(copy[s][mark], a.is_final(s));
    }
  }
  for (State i : a.initial_states()) {
    for (std::size_t x = 0; x < alphabet.size(); ++x) {
      for (State q : a.successors(i, x)) out.add_transition(start, x, copy[q][1]);
    }
  }
  for (State p = 0; p < a.num_states(); ++p) {
    if (a.is_initial(p)) continue;
    for (int mark = 0; mark < 2; ++mark) {
      for (std::size_t x = 0; x < alphabet.size(); ++x) {
        for (State q : a.successors(p, x)) out.add_transition(copy[p][mark], x, copy[q][0]);
        if (!a.is_final(p)) continue;
        for (State i : a.initial_states()) {
          for (State q : a.successors(i, x)) out.add_transition(copy[p][mark], x, copy[q][1]);
        }
      }
    }
  }
  return out;
}

}  // namespace transducers

#endif  // TRANSDUCERS_NFA_HPP_
