#ifndef TRANSDUCERS_NFT_OPS_HPP_
#define TRANSDUCERS_NFT_OPS_HPP_

#include <vector>

#include "transducers/machines.hpp"
#include "transducers/nfa.hpp"

namespace transducers {

/// Keeps the states that lie on some accepting run, renumbered in order.
inline Nft trim_nft(const Nft& t) {
  const Nfa a = input_automaton(t);
  const auto acc = accessible_states(a);
  const auto coacc = coaccessible_states(a);
  Nft out{t.input, t.output, {}, {}, {}, {}};
  std::vector<State> remap(t.states.size(), SIZE_MAX);
  for (State s = 0; s < t.states.size(); ++s) {
    if (!acc[s] || !coacc[s]) continue;
    remap[s] = out.states.size();
    out.states.push_back(t.states[s]);
  }
  for (const auto& i : t.initial) {
    if (remap[i.state] != SIZE_MAX) out.initial.push_back({remap[i.state], i.output});
  }
  for (const auto& f : t.final) {
    if (remap[f.state] != SIZE_MAX) out.final.push_back({remap[f.state], f.output});
  }
  for (const auto& tr : t.transitions) {
    if (remap[tr.from] != SIZE_MAX && remap[tr.to] != SIZE_MAX) {
      out.transitions.push_back({remap[tr.from], tr.input, tr.output, remap[tr.to]});
    }
  }
  return out;
}

/// The same machine viewed as a (deterministic) Nft.
inline Nft to_nft(const SequentialTransducer& t) {
  Nft out{t.input, t.output, t.states, {}, {}, {}};
  if (!t.states.empty()) out.initial.push_back({t.initial, t.initial_output});
  for (const auto& [s, w] : t.terminal) out.final.push_back({s, w});
  for (const auto& tr : t.transitions) out.transitions.push_back({tr.from, tr.input, tr.output, tr.to});
  return out;
}

/// Tagged union: states of a become "1.q", states of b become "2.q".
/// The result maps w to the union of both output sets.
inline Nft nft_disjoint_union(const Nft& a, const Nft& b) {
  if (!a.input.same_set(b.input)) throw AlphabetMismatch("nft_disjoint_union: input alphabets differ");
  Nft out{a.input, a.output.united(b.output), {}, {}, {}, {}};
  for (const auto& s : a.states) out.states.push_back("1." + s);
  for (const auto& s : b.states) out.states.push_back("2." + s);
  const State base = a.states.size();
  out.initial = a.initial;
  out.final = a.final;
  out.transitions = a.transitions;
  for (const auto& i : b.initial) out.initial.push_back({base + i.state, i.output});
  for (const auto& f : b.final) out.final.push_back({base + f.state, f.output});
  for (const auto& tr : b.transitions) out.transitions.push_back({base + tr.from, tr.input, tr.output, base + tr.to});
  return out;
}

}  // namespace transducers

#endif  // TRANSDUCERS_NFT_OPS_HPP_
