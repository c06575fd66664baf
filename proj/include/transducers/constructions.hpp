#ifndef TRANSDUCERS_CONSTRUCTIONS_HPP_
#define TRANSDUCERS_CONSTRUCTIONS_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "transducers/analysis.hpp"
#include "transducers/machines.hpp"
#include "transducers/nfa.hpp"
#include "transducers/nft_ops.hpp"

namespace transducers {

// ---------------------------------------------------------------------------
// Sequential composition

namespace detail {

inline std::optional<std::pair<State, Word>> run_sequential(const SequentialTransducer& t, State q, const Word& u) {
  Word out;
  for (const auto& a : u) {
    const auto* step = t.step(q, a);
    if (step == nullptr) return std::nullopt;
    out.insert(out.end(), step->output.begin(), step->output.end());
    q = step->to;
  }
  return std::make_pair(q, std::move(out));
}

}  // namespace detail

/// Product machine realizing b ∘ a: b consumes a's initial output before the
/// first letter, each transition output, and a's terminal output at the end.
inline SequentialTransducer compose_sequential(const SequentialTransducer& a, const SequentialTransducer& b) {
  if (!a.output.subset_of(b.input)) {
    throw AlphabetMismatch("compose_sequential: output alphabet of the first machine is not in the input of the second");
  }
  SequentialTransducer out{a.input, b.output, {}, 0, {}, {}, {}};
  if (a.states.empty() || b.states.empty()) {
    out.states.push_back("⊥");
    return out;
  }
  auto start = detail::run_sequential(b, b.initial, a.initial_output);
  if (!start) {
    out.states.push_back("⊥");
    return out;
  }
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) {
    auto [it, inserted] = index.emplace(std::make_pair(p, q), pairs.size());
    if (inserted) {
      pairs.emplace_back(p, q);
      out.states.push_back("(" + a.states[p] + "," + b.states[q] + ")");
    }
    return it->second;
  };
  out.initial = intern(a.initial, start->first);
  out.initial_output = concat(b.initial_output, start->second);
  for (State s = 0; s < pairs.size(); ++s) {
    const auto [p, q] = pairs[s];
    for (const auto& x : a.input) {
      const auto* step = a.step(p, x);
      if (step == nullptr) continue;
      auto run = detail::run_sequential(b, q, step->output);
      if (!run) continue;
      State to = intern(step->to, run->first);
      out.transitions.push_back({s, x, run->second, to});
    }
    auto ta = a.terminal.find(p);
    if (ta == a.terminal.end()) continue;
    auto run = detail::run_sequential(b, q, ta->second);
    if (!run) continue;
    auto tb = b.terminal.find(run->first);
    if (tb == b.terminal.end()) continue;
    out.terminal[s] = concat(run->second, tb->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regular look-ahead

struct LookaheadEntry {
  Nfa guard;  // language the remaining suffix must belong to
  bool universal = false;
  Word output;
  State to = 0;
};

struct LookaheadInitial {
  Nfa guard;  // language the whole input must belong to
  bool universal = false;
  State state = 0;
  Word output;
};

/// Deterministic one-way transducer whose choices consult regular guards on
/// the unread suffix. Guards of one choice list are pairwise disjoint.
struct LookaheadDft {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  std::vector<LookaheadInitial> initial;
  std::map<std::pair<State, Symbol>, std::vector<LookaheadEntry>> steps;
  std::map<State, Word> terminal;
};

/// Pairwise emptiness of guard intersections, per choice list.
inline bool lookahead_guards_disjoint(const LookaheadDft& t) {
  auto disjoint = [](const auto& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (list[i].universal || list[j].universal) return false;
        if (!nfa_disjoint(list[i].guard, list[j].guard)) return false;
      }
    }
    return true;
  };
  if (!disjoint(t.initial)) return false;
  for (const auto& [key, list] : t.steps) {
    if (!disjoint(list)) return false;
  }
  return true;
}

/// Makes a functional transducer deterministic with regular look-ahead by
/// following the least accepting path: among successors q1 < q2 < ... the
/// guard of qi is Accept(qi) minus Accept(q1) ∪ ... ∪ Accept(q(i-1)). A
/// choice with a single candidate gets the universal guard. `order` lists
/// the states from least to greatest (default: declaration order).
inline LookaheadDft determinize_with_lookahead(const Nft& t, std::vector<State> order = {}) {
  if (!check_functional(t).functional) throw NotFunctionalInput("determinize_with_lookahead: input is not functional");
  if (order.empty()) {
    order.resize(t.states.size());
    std::iota(order.begin(), order.end(), State{0});
  }
  if (order.size() != t.states.size()) throw std::invalid_argument("state order must list every state once");
  std::vector<std::size_t> rank(t.states.size(), SIZE_MAX);
  for (std::size_t r = 0; r < order.size(); ++r) rank.at(order[r]) = r;
  if (std::count(rank.begin(), rank.end(), SIZE_MAX) != 0) {
    throw std::invalid_argument("state order must list every state once");
  }

  const Nfa a = input_automaton(t);
  const auto acc = accessible_states(a);
  const auto coacc = coaccessible_states(a);
  auto useful = [&](State s) { return acc[s] && coacc[s]; };
  const Nfa universal = universal_language(t.input);

  // Guard for candidate i of a choice list sorted by rank.
  auto guard_for = [&](const std::vector<State>& targets, std::size_t i) {
    Nfa accept = with_initial(a, {targets[i]});
    if (i == 0) return nfa_trim(accept);
    std::vector<State> earlier(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(i));
    return nfa_difference(accept, with_initial(a, earlier));
  };

  LookaheadDft out{t.input, t.output, t.states, {}, {}, {}};

  std::vector<StateOutput> inits;
  for (const auto& i : t.initial) {
    if (!useful(i.state)) continue;
    if (std::none_of(inits.begin(), inits.end(), [&](const auto& e) { return e.state == i.state; })) inits.push_back(i);
  }
  std::sort(inits.begin(), inits.end(), [&](const auto& x, const auto& y) { return rank[x.state] < rank[y.state]; });
  std::vector<State> init_states;
  for (const auto& i : inits) init_states.push_back(i.state);
  for (std::size_t k = 0; k < inits.size(); ++k) {
    if (inits.size() == 1) {
      out.initial.push_back({universal, true, inits[k].state, inits[k].output});
    } else {
      out.initial.push_back({guard_for(init_states, k), false, inits[k].state, inits[k].output});
    }
  }

  for (State p = 0; p < t.states.size(); ++p) {
    if (!useful(p)) continue;
    for (const auto& x : t.input) {
      std::vector<const NftTransition*> cands;
      for (const auto& tr : t.transitions) {
        if (tr.from != p || tr.input != x || !useful(tr.to)) continue;
        if (std::none_of(cands.begin(), cands.end(), [&](const auto* c) { return c->to == tr.to; })) {
          cands.push_back(&tr);
        }
      }
      if (cands.empty()) continue;
      std::sort(cands.begin(), cands.end(), [&](const auto* u, const auto* v) { return rank[u->to] < rank[v->to]; });
      std::vector<State> targets;
      for (const auto* c : cands) targets.push_back(c->to);
      auto& list = out.steps[{p, x}];
      for (std::size_t k = 0; k < cands.size(); ++k) {
        if (cands.size() == 1) {
          list.push_back({universal, true, cands[k]->output, cands[k]->to});
        } else {
          list.push_back({guard_for(targets, k), false, cands[k]->output, cands[k]->to});
        }
      }
    }
  }
  for (const auto& f : t.final) {
    if (useful(f.state) && out.terminal.count(f.state) == 0) out.terminal[f.state] = f.output;
  }
  if (!lookahead_guards_disjoint(out)) throw std::logic_error("determinize_with_lookahead: overlapping guards");
  return out;
}

inline EvalOutcome eval_lookahead(const LookaheadDft& t, const Word& w) {
  t.input.check_word(w);
  auto holds = [](const auto& entry, const Word& suffix) { return entry.universal || nfa_accepts(entry.guard, suffix); };
  const LookaheadInitial* start = nullptr;
  for (const auto& i : t.initial) {
    if (holds(i, w)) {
      start = &i;
      break;
    }
  }
  if (start == nullptr) return EvalOutcome::not_in_domain();
  State q = start->state;
  Word out = start->output;
  for (std::size_t k = 0; k < w.size(); ++k) {
    auto it = t.steps.find({q, w[k]});
    if (it == t.steps.end()) return EvalOutcome::not_in_domain();
    const Word suffix(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
    const LookaheadEntry* chosen = nullptr;
    for (const auto& e : it->second) {
      if (holds(e, suffix)) {
        chosen = &e;
        break;
      }
    }
    if (chosen == nullptr) return EvalOutcome::not_in_domain();
    out.insert(out.end(), chosen->output.begin(), chosen->output.end());
    q = chosen->to;
  }
  auto term = t.terminal.find(q);
  if (term == t.terminal.end()) return EvalOutcome::not_in_domain();
  out.insert(out.end(), term->second.begin(), term->second.end());
  return EvalOutcome::unique(std::move(out));
}

/// Replaces look-ahead by guessing: each choice moves to its target and
/// starts a copy of the (determinized) guard automaton, which runs alongside
/// on the suffix and must accept at the end. Pending obligations of one guard
/// share a subset of its states.
inline Nft lookahead_to_unambiguous(const LookaheadDft& t) {
  std::vector<Nfa> dfas;
  std::vector<std::vector<bool>> live;
  auto register_guard = [&](const Nfa& guard) {
    dfas.push_back(nfa_determinize(guard));
    live.push_back(coaccessible_states(dfas.back()));
    return dfas.size() - 1;
  };
  std::vector<std::optional<std::size_t>> init_guard;
  for (const auto& i : t.initial) init_guard.push_back(i.universal ? std::nullopt : std::optional(register_guard(i.guard)));
  std::map<std::pair<State, Symbol>, std::vector<std::optional<std::size_t>>> step_guard;
  for (const auto& [key, list] : t.steps) {
    auto& ids = step_guard[key];
    for (const auto& e : list) ids.push_back(e.universal ? std::nullopt : std::optional(register_guard(e.guard)));
  }

  using Obligations = std::set<std::pair<std::size_t, State>>;
  using Config = std::pair<State, Obligations>;
  Nft out{t.input, t.output, {}, {}, {}, {}};
  std::map<Config, State> index;
  std::vector<Config> configs;
  auto intern = [&](const Config& c) {
    auto [it, inserted] = index.emplace(c, configs.size());
    if (inserted) {
      configs.push_back(c);
      std::string name = t.states[c.first];
      if (!c.second.empty()) {
        name += "[";
        bool first = true;
        for (const auto& [g, s] : c.second) {
          name += (first ? "" : ",") + std::string("g") + std::to_string(g) + ":" + dfas[g].name(s);
          first = false;
        }
        name += "]";
      }
      out.states.push_back(name);
    }
    return it->second;
  };
  // Adds a fresh obligation; false if the guard rejects everything.
  auto oblige = [&](Obligations& obs, std::optional<std::size_t> g) {
    if (!g) return true;
    State s = dfas[*g].initial_states().front();
    if (!live[*g][s]) return false;
    obs.insert({*g, s});
    return true;
  };

  for (std::size_t k = 0; k < t.initial.size(); ++k) {
    Obligations obs;
    if (!oblige(obs, init_guard[k])) continue;
    out.initial.push_back({intern({t.initial[k].state, obs}), t.initial[k].output});
  }
  for (State s = 0; s < configs.size(); ++s) {
    const Config c = configs[s];
    for (const auto& x : t.input) {
      auto it = t.steps.find({c.first, x});
      if (it == t.steps.end()) continue;
      Obligations advanced;
      bool alive = true;
      for (const auto& [g, st] : c.second) {
        State next = dfas[g].successors(st, dfas[g].alphabet().index_of(x)).front();
        if (!live[g][next]) {
          alive = false;
          break;
        }
        advanced.insert({g, next});
      }
      if (!alive) continue;
      const auto& guards = step_guard[{c.first, x}];
      for (std::size_t k = 0; k < it->second.size(); ++k) {
        Obligations obs = advanced;
        if (!oblige(obs, guards[k])) continue;
        State to = intern({it->second[k].to, obs});
        out.transitions.push_back({s, x, it->second[k].output, to});
      }
    }
    auto term = t.terminal.find(c.first);
    if (term == t.terminal.end()) continue;
    bool satisfied = std::all_of(c.second.begin(), c.second.end(),
                                 [&](const auto& o) { return dfas[o.first].is_final(o.second); });
    if (satisfied) out.final.push_back({s, term->second});
  }
  return trim_nft(out);
}

// ---------------------------------------------------------------------------
// Unambiguity of transducers and the Elgot decomposition

/// Automaton whose states are the initial entries and transitions of t, so
/// that its runs are exactly the runs of t (parallel transitions with
/// different outputs stay distinct).
inline Nfa run_automaton(const Nft& t) {
  Nfa out(t.input);
  std::vector<std::size_t> final_entries(t.states.size(), 0);
  for (const auto& f : t.final) ++final_entries[f.state];
  for (std::size_t k = 0; k < t.initial.size(); ++k) {
    State s = out.add_state("init" + std::to_string(k));
    out.set_initial(s);
    out.set_final(s, final_entries[t.initial[k].state] > 0);
  }
  const State base = t.initial.size();
  for (std::size_t j = 0; j < t.transitions.size(); ++j) {
    State s = out.add_state("tr" + std::to_string(j));
    out.set_final(s, final_entries[t.transitions[j].to] > 0);
  }
  for (std::size_t j = 0; j < t.transitions.size(); ++j) {
    const auto& tr = t.transitions[j];
    for (std::size_t k = 0; k < t.initial.size(); ++k) {
      if (t.initial[k].state == tr.from) out.add_transition(k, tr.input, base + j);
    }
    for (std::size_t l = 0; l < t.transitions.size(); ++l) {
      if (t.transitions[l].to == tr.from) out.add_transition(base + l, tr.input, base + j);
    }
  }
  return out;
}

/// A word with two accepting runs of t, if any.
inline std::optional<Word> nft_ambiguity_witness(const Nft& t_in) {
  const Nft t = trim_nft(t_in);
  if (auto w = nfa_ambiguous(run_automaton(t)).witness) return w;
  const Nfa a = input_automaton(t);
  for (State q = 0; q < t.states.size(); ++q) {
    auto n = std::count_if(t.final.begin(), t.final.end(), [&](const auto& f) { return f.state == q; });
    if (n < 2) continue;
    Nfa reach = a;
    for (State s = 0; s < reach.num_states(); ++s) reach.set_final(s, s == q);
    if (auto w = shortest_accepted(reach)) return w;
  }
  return std::nullopt;
}

/// f adorns each letter with the subset-construction state before it; g
/// reads the reversed adorned word and walks the unique accepting run
/// backwards, emitting reversed outputs. r ∘ g ∘ r ∘ f realizes t.
struct ElgotDecomposition {
  SequentialTransducer adorner;  // f
  SequentialTransducer reader;   // g
};

inline ElgotDecomposition elgot_decompose(const Nft& t_in) {
  if (auto w = nft_ambiguity_witness(t_in)) {
    throw AmbiguousInput("elgot_decompose: input has two accepting runs on '" + display_word(*w) + "'");
  }
  const Nft t = trim_nft(t_in);
  const Nfa a = input_automaton(t);
  auto final_output = [&](State q) -> std::optional<Word> {
    for (const auto& f : t.final) {
      if (f.state == q) return f.output;
    }
    return std::nullopt;
  };
  auto initial_output = [&](State q) -> std::optional<Word> {
    for (const auto& i : t.initial) {
      if (i.state == q) return i.output;
    }
    return std::nullopt;
  };

  // f: reachable nonempty subsets.
  SequentialTransducer f{t.input, {}, {}, 0, {}, {}, {}};
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](const std::vector<State>& set) {
    auto [it, inserted] = index.emplace(set, subsets.size());
    if (inserted) {
      subsets.push_back(set);
      f.states.push_back(subset_name(a, set));
    }
    return it->second;
  };
  struct Adorned {
    std::size_t from_subset;
    std::size_t letter;
    std::size_t to_subset;
  };
  std::vector<Adorned> adorned;
  if (!a.initial_states().empty()) {
    f.initial = intern(a.initial_states());
    for (State s = 0; s < subsets.size(); ++s) {
      if (detail::any_final(a, subsets[s])) f.terminal[s] = {};
      for (std::size_t x = 0; x < t.input.size(); ++x) {
        auto next = detail::step_set(a, subsets[s], x);
        if (next.empty()) continue;
        State to = intern(next);
        Symbol sym = "(" + f.states[s] + "," + t.input[x] + ")";
        f.output.add(sym);
        f.transitions.push_back({s, t.input[x], {sym}, to});
        adorned.push_back({s, x, to});
      }
    }
  } else {
    f.states.push_back("{}");
  }
  // Domain within {ε}: keep the reader's alphabet nonempty with an unused letter.
  if (f.output.empty() && !t.input.empty()) f.output.add("(" + f.states[f.initial] + "," + t.input[0] + ")");

  // g: a start state followed by the states of t.
  SequentialTransducer g{f.output, t.output, {"start"}, 0, {}, {}, {}};
  for (const auto& s : t.states) g.states.push_back(s);
  auto g_state = [](State q) { return q + 1; };
  auto predecessor = [&](const std::vector<State>& from, std::size_t x, State q) -> const NftTransition* {
    const NftTransition* found = nullptr;
    for (const auto& tr : t.transitions) {
      if (tr.to != q || tr.input != t.input[x] || !std::binary_search(from.begin(), from.end(), tr.from)) continue;
      if (found != nullptr) throw std::logic_error("elgot_decompose: predecessor is not unique");
      found = &tr;
    }
    return found;
  };
  for (const auto& ad : adorned) {
    const Symbol sym = "(" + f.states[ad.from_subset] + "," + t.input[ad.letter] + ")";
    const auto& from = subsets[ad.from_subset];
    const auto& to = subsets[ad.to_subset];
    std::vector<State> finals;
    for (State q : to) {
      if (final_output(q)) finals.push_back(q);
    }
    if (finals.size() > 1) throw std::logic_error("elgot_decompose: two final states in one subset");
    if (finals.size() == 1) {
      if (const auto* tr = predecessor(from, ad.letter, finals[0])) {
        g.transitions.push_back({0, sym, concat(reverse_word(*final_output(finals[0])), reverse_word(tr->output)),
                                 g_state(tr->from)});
      }
    }
    for (State q : to) {
      if (const auto* tr = predecessor(from, ad.letter, q)) {
        g.transitions.push_back({g_state(q), sym, reverse_word(tr->output), g_state(tr->from)});
      }
    }
  }
  for (State q = 0; q < t.states.size(); ++q) {
    if (auto out = initial_output(q)) g.terminal[g_state(q)] = reverse_word(*out);
  }
  for (State q : a.initial_states()) {
    auto fo = final_output(q);
    if (fo) g.terminal[0] = reverse_word(concat(*initial_output(q), *fo));
  }
  return {std::move(f), std::move(g)};
}

/// r ∘ g ∘ r ∘ f applied to w.
inline EvalOutcome apply_elgot(const ElgotDecomposition& d, const Word& w) {
  auto first = eval_sequential(d.adorner, w);
  if (!first.is_unique()) return first;
  auto second = eval_sequential(d.reader, reverse_word(first.value()));
  if (!second.is_unique()) return second;
  return EvalOutcome::unique(reverse_word(second.value()));
}

}  // namespace transducers

#endif  // TRANSDUCERS_CONSTRUCTIONS_HPP_
