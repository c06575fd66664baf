#ifndef TRANSDUCERS_MACHINES_HPP_
#define TRANSDUCERS_MACHINES_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "transducers/errors.hpp"
#include "transducers/nfa.hpp"
#include "transducers/outcome.hpp"
#include "transducers/words.hpp"

namespace transducers {

/// Looks up a state by name; throws if absent.
inline State state_index(const std::vector<std::string>& states, const std::string& name) {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw FormatError("unknown state '" + name + "'");
  return static_cast<State>(it - states.begin());
}

// ---------------------------------------------------------------------------
// One-way input-deterministic transducer (1DFT)

struct SequentialTransition {
  State from;
  Symbol input;
  Word output;
  State to;
};

struct SequentialTransducer {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  State initial = 0;
  Word initial_output;
  std::vector<SequentialTransition> transitions;
  std::map<State, Word> terminal;

  /// First transition for (state, symbol), if any.
  const SequentialTransition* step(State s, const Symbol& a) const {
    for (const auto& t : transitions) {
      if (t.from == s && t.input == a) return &t;
    }
    return nullptr;
  }
};

inline EvalOutcome eval_sequential(const SequentialTransducer& t, const Word& w) {
  t.input.check_word(w);
  if (t.states.empty()) return EvalOutcome::not_in_domain();
  State q = t.initial;
  Word out = t.initial_output;
  for (const auto& a : w) {
    const auto* step = t.step(q, a);
    if (step == nullptr) return EvalOutcome::not_in_domain();
    out.insert(out.end(), step->output.begin(), step->output.end());
    q = step->to;
  }
  auto it = t.terminal.find(q);
  if (it == t.terminal.end()) return EvalOutcome::not_in_domain();
  out.insert(out.end(), it->second.begin(), it->second.end());
  return EvalOutcome::unique(std::move(out));
}

// ---------------------------------------------------------------------------
// One-way nondeterministic transducer (1NFT)

struct NftTransition {
  State from;
  Symbol input;
  Word output;
  State to;
};

struct StateOutput {
  State state;
  Word output;
};

struct Nft {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  std::vector<StateOutput> initial;
  std::vector<StateOutput> final;
  std::vector<NftTransition> transitions;
};

/// Underlying input automaton (outputs dropped, parallel transitions merged).
inline Nfa input_automaton(const Nft& t) {
  Nfa a(t.input);
  for (const auto& name : t.states) a.add_state(name);
  for (const auto& i : t.initial) a.set_initial(i.state);
  for (const auto& f : t.final) a.set_final(f.state);
  for (const auto& tr : t.transitions) a.add_transition(tr.from, tr.input, tr.to);
  return a;
}

inline constexpr std::uint64_t kDefaultRunCap = 1'000'000;

namespace detail {
inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}
}  // namespace detail

/// Set of outputs over all accepting runs. Throws RunExplosion when the
/// number of accepting runs exceeds run_cap.
inline std::set<Word> eval_nft(const Nft& t, const Word& w, std::uint64_t run_cap = kDefaultRunCap) {
  t.input.check_word(w);
  // state -> output so far -> number of runs producing it
  std::map<State, std::map<Word, std::uint64_t>> current;
  for (const auto& i : t.initial) {
    auto& slot = current[i.state][i.output];
    slot = detail::saturating_add(slot, 1);
  }
  for (const auto& a : w) {
    std::map<State, std::map<Word, std::uint64_t>> next;
    std::size_t entries = 0;
    for (const auto& [q, outs] : current) {
      for (const auto& tr : t.transitions) {
        if (tr.from != q || tr.input != a) continue;
        for (const auto& [out, runs] : outs) {
          auto& slot = next[tr.to][concat(out, tr.output)];
          if (slot == 0) ++entries;
          slot = detail::saturating_add(slot, runs);
        }
      }
    }
    if (entries > run_cap) throw RunExplosion("eval_nft: more than " + std::to_string(run_cap) + " partial runs");
    current = std::move(next);
    if (current.empty()) return {};
  }
  std::set<Word> result;
  std::uint64_t accepting = 0;
  for (const auto& f : t.final) {
    auto it = current.find(f.state);
    if (it == current.end()) continue;
    for (const auto& [out, runs] : it->second) {
      accepting = detail::saturating_add(accepting, runs);
      result.insert(concat(out, f.output));
    }
  }
  if (accepting > run_cap) throw RunExplosion("eval_nft: more than " + std::to_string(run_cap) + " accepting runs");
  return result;
}

inline EvalOutcome eval_nft_outcome(const Nft& t, const Word& w) {
  auto outs = eval_nft(t, w);
  return EvalOutcome::from_outputs({outs.begin(), outs.end()});
}

// ---------------------------------------------------------------------------
// Two-way deterministic transducer (2DFT) over the tape ⊢w⊣

enum class Move { Left, Right };

struct TwoWayTransition {
  State from;
  Symbol read;  // input symbol, ⊢ or ⊣
  Word output;
  Move move;
  State to;
};

struct TwoWayDft {
  Alphabet input;
  Alphabet output;  // may contain the endmarkers
  std::vector<std::string> states;
  State initial = 0;
  std::set<State> final;
  std::vector<TwoWayTransition> transitions;

  const TwoWayTransition* step(State s, const Symbol& a) const {
    for (const auto& t : transitions) {
      if (t.from == s && t.read == a) return &t;
    }
    return nullptr;
  }
};

struct TwoWayOptions {
  bool strip = false;  // drop a leading ⊢ and trailing ⊣ from the output
};

/// Runs the head from position 0 in the initial state until a final state
/// is entered. An undefined step or a repeated configuration rejects.
inline EvalOutcome eval_2dft(const TwoWayDft& t, const Word& w, TwoWayOptions options = {}) {
  t.input.check_word(w);
  if (t.states.empty()) return EvalOutcome::not_in_domain();
  Word tape;
  tape.reserve(w.size() + 2);
  tape.push_back(symbols::kLeftMark);
  tape.insert(tape.end(), w.begin(), w.end());
  tape.push_back(symbols::kRightMark);

  std::vector<std::vector<bool>> visited(t.states.size(), std::vector<bool>(tape.size(), false));
  State q = t.initial;
  std::size_t pos = 0;
  Word out;
  while (!t.final.count(q)) {
    if (pos >= tape.size()) throw HeadOutOfTape("eval_2dft: head left the tape");
    if (visited[q][pos]) return EvalOutcome::not_in_domain();
    visited[q][pos] = true;
    const auto* step = t.step(q, tape[pos]);
    if (step == nullptr) return EvalOutcome::not_in_domain();
    out.insert(out.end(), step->output.begin(), step->output.end());
    q = step->to;
    if (step->move == Move::Left) {
      if (pos == 0) throw HeadOutOfTape("eval_2dft: moved left of ⊢");
      --pos;
    } else {
      ++pos;
    }
  }
  return EvalOutcome::unique(options.strip ? strip_endmarkers(std::move(out)) : std::move(out));
}

// ---------------------------------------------------------------------------
// One-way register transducer; a streaming string transducer when copyless

struct RegisterToken {
  bool is_register = false;
  std::string value;  // register name or output symbol
  friend bool operator==(const RegisterToken&, const RegisterToken&) = default;
};

using RegisterExpr = std::vector<RegisterToken>;

inline RegisterToken reg(std::string name) { return {true, std::move(name)}; }
inline RegisterToken lit(Symbol s) { return {false, std::move(s)}; }

struct RegisterTransition {
  State from;
  Symbol input;
  State to;
  // Registers absent from the list keep their value.
  std::vector<std::pair<std::string, RegisterExpr>> updates;
};

struct RegisterTransducer {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  std::vector<std::string> registers;
  State initial = 0;
  std::map<std::string, Word> init;
  std::vector<RegisterTransition> transitions;
  std::map<State, RegisterExpr> outputs;

  const RegisterTransition* step(State s, const Symbol& a) const {
    for (const auto& t : transitions) {
      if (t.from == s && t.input == a) return &t;
    }
    return nullptr;
  }
};

inline Word eval_register_expr(const RegisterExpr& e, const std::map<std::string, Word>& valuation) {
  Word out;
  for (const auto& tok : e) {
    if (!tok.is_register) {
      out.push_back(tok.value);
      continue;
    }
    auto it = valuation.find(tok.value);
    if (it == valuation.end()) throw UndefinedStep("unknown register '" + tok.value + "'");
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

struct RegisterOptions {
  bool parallel = true;  // simultaneous substitution; false applies updates in listed order
};

/// Updates are simultaneous substitutions: every right-hand side reads the
/// valuation from before the step.
inline EvalOutcome eval_register(const RegisterTransducer& t, const Word& w, RegisterOptions options = {}) {
  t.input.check_word(w);
  if (t.states.empty()) return EvalOutcome::not_in_domain();
  std::map<std::string, Word> val;
  for (const auto& r : t.registers) {
    auto it = t.init.find(r);
    val[r] = it == t.init.end() ? Word{} : it->second;
  }
  State q = t.initial;
  for (const auto& a : w) {
    const auto* step = t.step(q, a);
    if (step == nullptr) return EvalOutcome::not_in_domain();
    if (options.parallel) {
      auto next = val;
      for (const auto& [r, e] : step->updates) next[r] = eval_register_expr(e, val);
      val = std::move(next);
    } else {
      for (const auto& [r, e] : step->updates) val[r] = eval_register_expr(e, val);
    }
    q = step->to;
  }
  auto it = t.outputs.find(q);
  if (it == t.outputs.end()) return EvalOutcome::not_in_domain();
  return EvalOutcome::unique(eval_register_expr(it->second, val));
}

struct CopylessVerdict {
  bool copyless = true;
  State state = 0;
  Symbol symbol;
  std::string reg;
};

/// Copyless iff within every update each register occurs at most once across
/// all right-hand sides together (an unlisted register counts as X := X).
/// Transitions are scanned by state, then input symbol order.
inline CopylessVerdict validate_copyless(const RegisterTransducer& t) {
  std::vector<const RegisterTransition*> order;
  for (const auto& tr : t.transitions) order.push_back(&tr);
  std::stable_sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
    if (a->from != b->from) return a->from < b->from;
    return t.input.find(a->input).value_or(SIZE_MAX) < t.input.find(b->input).value_or(SIZE_MAX);
  });
  for (const auto* tr : order) {
    std::map<std::string, int> uses;
    for (const auto& r : t.registers) {
      bool listed = std::any_of(tr->updates.begin(), tr->updates.end(),
                                [&](const auto& u) { return u.first == r; });
      if (!listed) ++uses[r];
    }
    for (const auto& [target, expr] : tr->updates) {
      for (const auto& tok : expr) {
        if (tok.is_register) ++uses[tok.value];
      }
    }
    for (const auto& r : t.registers) {
      if (uses[r] > 1) return {false, tr->from, tr->input, r};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Structural validation

struct Defect {
  std::string kind;  // DuplicateTransition, FallsOffTape, UndeclaredState, ...
  std::string message;
};

namespace detail {

inline void check_alphabet(const Alphabet& sigma, std::vector<Defect>& out, bool forbid_marks) {
  if (sigma.empty()) out.push_back({"EmptyAlphabet", "input alphabet is empty"});
  if (!forbid_marks) return;
  for (const auto& s : sigma) {
    if (symbols::is_endmarker(s)) out.push_back({"EndmarkerInAlphabet", "endmarker '" + s + "' in input alphabet"});
  }
}

inline void check_state(std::size_t n, State s, const std::string& where, std::vector<Defect>& out) {
  if (s >= n) out.push_back({"UndeclaredState", where + ": state index " + std::to_string(s) + " is not declared"});
}

inline void check_word(const Alphabet& sigma, const Word& w, const std::string& where, std::vector<Defect>& out) {
  for (const auto& s : w) {
    if (!sigma.contains(s)) out.push_back({"UndeclaredSymbol", where + ": symbol '" + s + "' is not declared"});
  }
}

inline void check_unique_states(const std::vector<std::string>& states, std::vector<Defect>& out) {
  std::set<std::string> seen;
  for (const auto& s : states) {
    if (!seen.insert(s).second) out.push_back({"DuplicateState", "state '" + s + "' declared twice"});
  }
}

}  // namespace detail

inline std::vector<Defect> validate_machine(const SequentialTransducer& t) {
  std::vector<Defect> out;
  detail::check_alphabet(t.input, out, true);
  detail::check_unique_states(t.states, out);
  const std::size_t n = t.states.size();
  if (n == 0) out.push_back({"NoStates", "machine declares no states"});
  detail::check_state(n, t.initial, "initial", out);
  detail::check_word(t.output, t.initial_output, "initial output", out);
  std::set<std::pair<State, Symbol>> seen;
  for (const auto& tr : t.transitions) {
    detail::check_state(n, tr.from, "transition", out);
    detail::check_state(n, tr.to, "transition", out);
    detail::check_word(t.input, {tr.input}, "transition input", out);
    detail::check_word(t.output, tr.output, "transition output", out);
    if (!seen.insert({tr.from, tr.input}).second) {
      out.push_back({"DuplicateTransition", "two transitions for (" + (tr.from < n ? t.states[tr.from] : "?") +
                                                ", " + symbol_name(tr.input) + ")"});
    }
  }
  for (const auto& [s, w] : t.terminal) {
    detail::check_state(n, s, "terminal", out);
    detail::check_word(t.output, w, "terminal output", out);
  }
  return out;
}

inline std::vector<Defect> validate_machine(const Nft& t) {
  std::vector<Defect> out;
  detail::check_alphabet(t.input, out, true);
  detail::check_unique_states(t.states, out);
  const std::size_t n = t.states.size();
  for (const auto& i : t.initial) {
    detail::check_state(n, i.state, "initial", out);
    detail::check_word(t.output, i.output, "initial output", out);
  }
  for (const auto& f : t.final) {
    detail::check_state(n, f.state, "final", out);
    detail::check_word(t.output, f.output, "final output", out);
  }
  for (const auto& tr : t.transitions) {
    detail::check_state(n, tr.from, "transition", out);
    detail::check_state(n, tr.to, "transition", out);
    detail::check_word(t.input, {tr.input}, "transition input", out);
    detail::check_word(t.output, tr.output, "transition output", out);
  }
  return out;
}

inline std::vector<Defect> validate_machine(const TwoWayDft& t) {
  std::vector<Defect> out;
  detail::check_alphabet(t.input, out, true);
  detail::check_unique_states(t.states, out);
  const std::size_t n = t.states.size();
  if (n == 0) out.push_back({"NoStates", "machine declares no states"});
  detail::check_state(n, t.initial, "initial", out);
  for (State f : t.final) detail::check_state(n, f, "final", out);
  std::set<std::pair<State, Symbol>> seen;
  for (const auto& tr : t.transitions) {
    detail::check_state(n, tr.from, "transition", out);
    detail::check_state(n, tr.to, "transition", out);
    if (!symbols::is_endmarker(tr.read)) detail::check_word(t.input, {tr.read}, "transition input", out);
    detail::check_word(t.output, tr.output, "transition output", out);
    const std::string where = "(" + (tr.from < n ? t.states[tr.from] : "?") + ", " + symbol_name(tr.read) + ")";
    if (!seen.insert({tr.from, tr.read}).second) {
      out.push_back({"DuplicateTransition", "two transitions for " + where});
    }
    if (tr.read == symbols::kLeftMark && tr.move == Move::Left) {
      out.push_back({"FallsOffTape", where + " moves left of ⊢"});
    }
    if (tr.read == symbols::kRightMark && tr.move == Move::Right && !t.final.count(tr.to)) {
      out.push_back({"FallsOffTape", where + " moves right of ⊣ into a non-final state"});
    }
  }
  return out;
}

inline std::vector<Defect> validate_machine(const RegisterTransducer& t) {
  std::vector<Defect> out;
  detail::check_alphabet(t.input, out, true);
  detail::check_unique_states(t.states, out);
  const std::size_t n = t.states.size();
  if (n == 0) out.push_back({"NoStates", "machine declares no states"});
  detail::check_state(n, t.initial, "initial", out);
  const std::set<std::string> regs(t.registers.begin(), t.registers.end());
  if (regs.size() != t.registers.size()) out.push_back({"DuplicateRegister", "register declared twice"});
  auto check_expr = [&](const RegisterExpr& e, const std::string& where) {
    for (const auto& tok : e) {
      if (tok.is_register && !regs.count(tok.value)) {
        out.push_back({"UndeclaredRegister", where + ": register '" + tok.value + "' is not declared"});
      }
      if (!tok.is_register) detail::check_word(t.output, {tok.value}, where, out);
    }
  };
  for (const auto& [r, w] : t.init) {
    if (!regs.count(r)) out.push_back({"UndeclaredRegister", "init: register '" + r + "' is not declared"});
    detail::check_word(t.output, w, "init", out);
  }
  std::set<std::pair<State, Symbol>> seen;
  for (const auto& tr : t.transitions) {
    detail::check_state(n, tr.from, "transition", out);
    detail::check_state(n, tr.to, "transition", out);
    detail::check_word(t.input, {tr.input}, "transition input", out);
    if (!seen.insert({tr.from, tr.input}).second) {
      out.push_back({"DuplicateTransition", "two transitions for (" + (tr.from < n ? t.states[tr.from] : "?") +
                                                ", " + symbol_name(tr.input) + ")"});
    }
    std::set<std::string> targets;
    for (const auto& [r, e] : tr.updates) {
      if (!regs.count(r)) out.push_back({"UndeclaredRegister", "update target '" + r + "' is not declared"});
      if (!targets.insert(r).second) out.push_back({"DuplicateUpdate", "register '" + r + "' updated twice"});
      check_expr(e, "update");
    }
  }
  for (const auto& [s, e] : t.outputs) {
    detail::check_state(n, s, "output", out);
    check_expr(e, "output");
  }
  return out;
}

// ---------------------------------------------------------------------------

using Machine = std::variant<SequentialTransducer, Nft, TwoWayDft, RegisterTransducer>;

inline std::string machine_kind(const Machine& m) {
  static const char* const kNames[] = {"sequential", "nft", "twoway", "register"};
  return kNames[m.index()];
}

inline const Alphabet& input_alphabet(const Machine& m) {
  return std::visit([](const auto& t) -> const Alphabet& { return t.input; }, m);
}

inline std::vector<Defect> validate_machine(const Machine& m) {
  return std::visit([](const auto& t) { return validate_machine(t); }, m);
}

/// Uniform evaluation; 2DFT outputs are stripped of endmarkers when asked.
inline EvalOutcome evaluate(const Machine& m, const Word& w, bool strip = false) {
  struct Visitor {
    const Word& w;
    bool strip;
    EvalOutcome operator()(const SequentialTransducer& t) const { return eval_sequential(t, w); }
    EvalOutcome operator()(const Nft& t) const { return eval_nft_outcome(t, w); }
    EvalOutcome operator()(const TwoWayDft& t) const { return eval_2dft(t, w, {strip}); }
    EvalOutcome operator()(const RegisterTransducer& t) const { return eval_register(t, w); }
  };
  return std::visit(Visitor{w, strip}, m);
}

}  // namespace transducers

#endif  // TRANSDUCERS_MACHINES_HPP_
