#ifndef TRANSDUCERS_IO_HPP_
#define TRANSDUCERS_IO_HPP_

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "transducers/errors.hpp"
#include "transducers/machines.hpp"
#include "transducers/nfa.hpp"

namespace transducers {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline Json alphabet_json(const Alphabet& a) {
  Json out = Json::array();
  for (const auto& s : a) out.push_back(symbol_name(s));
  return out;
}

inline Alphabet alphabet_from(const Json& j) {
  Alphabet a;
  for (const auto& s : j) {
    if (!a.add(symbol_from_name(s.get<std::string>()))) throw FormatError("symbol '" + s.get<std::string>() + "' listed twice");
  }
  return a;
}

inline Json state_output(const std::vector<std::string>& states, State s, const Word& w) {
  return Json{{"state", states.at(s)}, {"out", word_text(w)}};
}

inline Json register_expr_json(const RegisterExpr& e) {
  Json out = Json::array();
  for (const auto& tok : e) {
    if (tok.is_register) {
      out.push_back(Json{{"reg", tok.value}});
    } else {
      out.push_back(Json{{"lit", symbol_name(tok.value)}});
    }
  }
  return out;
}

inline RegisterExpr register_expr_from(const Json& j) {
  RegisterExpr e;
  for (const auto& tok : j) {
    if (tok.contains("reg")) {
      e.push_back(reg(tok.at("reg").get<std::string>()));
    } else if (tok.contains("lit")) {
      e.push_back(lit(symbol_from_name(tok.at("lit").get<std::string>())));
    } else {
      throw FormatError("register token needs \"reg\" or \"lit\"");
    }
  }
  return e;
}

inline Json header(const std::string& kind) { return Json{{"formatVersion", kFormatVersion}, {"kind", kind}}; }

inline Json to_json(const SequentialTransducer& t) {
  Json j = header("sequential");
  j["inputAlphabet"] = alphabet_json(t.input);
  j["outputAlphabet"] = alphabet_json(t.output);
  j["states"] = t.states;
  j["initial"] = state_output(t.states, t.initial, t.initial_output);
  j["final"] = Json::array();
  for (const auto& [s, w] : t.terminal) j["final"].push_back(state_output(t.states, s, w));
  j["transitions"] = Json::array();
  for (const auto& tr : t.transitions) {
    j["transitions"].push_back(Json{{"from", t.states.at(tr.from)},
                                    {"on", symbol_name(tr.input)},
                                    {"out", word_text(tr.output)},
                                    {"to", t.states.at(tr.to)}});
  }
  return j;
}

inline Json to_json(const Nft& t) {
  Json j = header("nft");
  j["inputAlphabet"] = alphabet_json(t.input);
  j["outputAlphabet"] = alphabet_json(t.output);
  j["states"] = t.states;
  j["initial"] = Json::array();
  for (const auto& i : t.initial) j["initial"].push_back(state_output(t.states, i.state, i.output));
  j["final"] = Json::array();
  for (const auto& f : t.final) j["final"].push_back(state_output(t.states, f.state, f.output));
  j["transitions"] = Json::array();
  for (const auto& tr : t.transitions) {
    j["transitions"].push_back(Json{{"from", t.states.at(tr.from)},
                                    {"on", symbol_name(tr.input)},
                                    {"out", word_text(tr.output)},
                                    {"to", t.states.at(tr.to)}});
  }
  return j;
}

inline Json to_json(const TwoWayDft& t) {
  Json j = header("twoway");
  j["inputAlphabet"] = alphabet_json(t.input);
  j["outputAlphabet"] = alphabet_json(t.output);
  j["states"] = t.states;
  j["initial"] = t.states.at(t.initial);
  j["final"] = Json::array();
  for (State f : t.final) j["final"].push_back(t.states.at(f));
  j["transitions"] = Json::array();
  for (const auto& tr : t.transitions) {
    j["transitions"].push_back(Json{{"from", t.states.at(tr.from)},
                                    {"on", symbol_name(tr.read)},
                                    {"out", word_text(tr.output)},
                                    {"move", tr.move == Move::Left ? "L" : "R"},
                                    {"to", t.states.at(tr.to)}});
  }
  return j;
}

inline Json to_json(const RegisterTransducer& t) {
  Json j = header("register");
  j["inputAlphabet"] = alphabet_json(t.input);
  j["outputAlphabet"] = alphabet_json(t.output);
  j["states"] = t.states;
  j["registers"] = t.registers;
  j["initial"] = t.states.at(t.initial);
  j["init"] = Json::object();
  for (const auto& r : t.registers) {
    auto it = t.init.find(r);
    j["init"][r] = word_text(it == t.init.end() ? Word{} : it->second);
  }
  j["transitions"] = Json::array();
  for (const auto& tr : t.transitions) {
    Json updates = Json::object();
    for (const auto& [r, e] : tr.updates) updates[r] = register_expr_json(e);
    j["transitions"].push_back(Json{{"from", t.states.at(tr.from)},
                                    {"on", symbol_name(tr.input)},
                                    {"to", t.states.at(tr.to)},
                                    {"updates", updates}});
  }
  j["outputs"] = Json::object();
  for (const auto& [s, e] : t.outputs) j["outputs"][t.states.at(s)] = register_expr_json(e);
  return j;
}

inline std::vector<std::string> states_from(const Json& j) { return j.at("states").get<std::vector<std::string>>(); }

inline SequentialTransducer sequential_from(const Json& j) {
  SequentialTransducer t;
  t.input = alphabet_from(j.at("inputAlphabet"));
  t.output = alphabet_from(j.at("outputAlphabet"));
  t.states = states_from(j);
  t.initial = state_index(t.states, j.at("initial").at("state").get<std::string>());
  t.initial_output = parse_word_text(j.at("initial").at("out").get<std::string>());
  for (const auto& f : j.at("final")) {
    State s = state_index(t.states, f.at("state").get<std::string>());
    if (t.terminal.count(s)) throw FormatError("state '" + t.states[s] + "' has two final outputs");
    t.terminal[s] = parse_word_text(f.at("out").get<std::string>());
  }
  for (const auto& tr : j.at("transitions")) {
    t.transitions.push_back({state_index(t.states, tr.at("from").get<std::string>()),
                             symbol_from_name(tr.at("on").get<std::string>()),
                             parse_word_text(tr.at("out").get<std::string>()),
                             state_index(t.states, tr.at("to").get<std::string>())});
  }
  return t;
}

inline Nft nft_from(const Json& j) {
  Nft t;
  t.input = alphabet_from(j.at("inputAlphabet"));
  t.output = alphabet_from(j.at("outputAlphabet"));
  t.states = states_from(j);
  for (const auto& i : j.at("initial")) {
    t.initial.push_back({state_index(t.states, i.at("state").get<std::string>()),
                         parse_word_text(i.at("out").get<std::string>())});
  }
  for (const auto& f : j.at("final")) {
    t.final.push_back({state_index(t.states, f.at("state").get<std::string>()),
                       parse_word_text(f.at("out").get<std::string>())});
  }
  for (const auto& tr : j.at("transitions")) {
    t.transitions.push_back({state_index(t.states, tr.at("from").get<std::string>()),
                             symbol_from_name(tr.at("on").get<std::string>()),
                             parse_word_text(tr.at("out").get<std::string>()),
                             state_index(t.states, tr.at("to").get<std::string>())});
  }
  return t;
}

inline TwoWayDft twoway_from(const Json& j) {
  TwoWayDft t;
  t.input = alphabet_from(j.at("inputAlphabet"));
  t.output = alphabet_from(j.at("outputAlphabet"));
  t.states = states_from(j);
  t.initial = state_index(t.states, j.at("initial").get<std::string>());
  for (const auto& f : j.at("final")) t.final.insert(state_index(t.states, f.get<std::string>()));
  for (const auto& tr : j.at("transitions")) {
    const auto move = tr.at("move").get<std::string>();
    if (move != "L" && move != "R") throw FormatError("move must be \"L\" or \"R\", got \"" + move + "\"");
    t.transitions.push_back({state_index(t.states, tr.at("from").get<std::string>()),
                             symbol_from_name(tr.at("on").get<std::string>()),
                             parse_word_text(tr.at("out").get<std::string>()),
                             move == "L" ? Move::Left : Move::Right,
                             state_index(t.states, tr.at("to").get<std::string>())});
  }
  return t;
}

inline RegisterTransducer register_from(const Json& j) {
  RegisterTransducer t;
  t.input = alphabet_from(j.at("inputAlphabet"));
  t.output = alphabet_from(j.at("outputAlphabet"));
  t.states = states_from(j);
  t.registers = j.at("registers").get<std::vector<std::string>>();
  t.initial = state_index(t.states, j.at("initial").get<std::string>());
  for (const auto& [r, w] : j.at("init").items()) t.init[r] = parse_word_text(w.get<std::string>());
  for (const auto& tr : j.at("transitions")) {
    RegisterTransition rt{state_index(t.states, tr.at("from").get<std::string>()),
                          symbol_from_name(tr.at("on").get<std::string>()),
                          state_index(t.states, tr.at("to").get<std::string>()),
                          {}};
    for (const auto& [r, e] : tr.at("updates").items()) rt.updates.emplace_back(r, register_expr_from(e));
    t.transitions.push_back(std::move(rt));
  }
  for (const auto& [s, e] : j.at("outputs").items()) t.outputs[state_index(t.states, s)] = register_expr_from(e);
  return t;
}

}  // namespace detail

inline Json machine_to_json(const Machine& m) {
  return std::visit([](const auto& t) { return detail::to_json(t); }, m);
}

/// Pretty-printed with two-space indentation and a final newline.
inline std::string dump_json(const Json& j) { return j.dump(2, ' ', false) + "\n"; }

inline std::string serialize_machine(const Machine& m) { return dump_json(machine_to_json(m)); }

inline void check_header(const Json& j) {
  if (!j.is_object()) throw FormatError("top level must be a JSON object");
  if (!j.contains("formatVersion") || j.at("formatVersion") != kFormatVersion) {
    throw FormatError("unsupported or missing formatVersion (expected 1)");
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) throw FormatError("missing \"kind\"");
}

/// Parses and validates a machine; structural defects are reported together.
inline Machine machine_from_json(const Json& j) {
  check_header(j);
  const std::string kind = j.at("kind").get<std::string>();
  Machine m;
  try {
    if (kind == "sequential") {
      m = detail::sequential_from(j);
    } else if (kind == "nft") {
      m = detail::nft_from(j);
    } else if (kind == "twoway") {
      m = detail::twoway_from(j);
    } else if (kind == "register") {
      m = detail::register_from(j);
    } else {
      throw FormatError("unknown machine kind \"" + kind + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed ") + kind + " machine: " + e.what());
  }
  auto defects = validate_machine(m);
  if (!defects.empty()) {
    std::string msg = "invalid " + kind + " machine:";
    for (const auto& d : defects) msg += "\n  " + d.kind + ": " + d.message;
    throw FormatError(msg);
  }
  return m;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

inline Machine load_machine(const std::string& path) { return machine_from_json(parse_json_text(read_file(path))); }

inline void save_machine(const std::string& path, const Machine& m) { write_file(path, serialize_machine(m)); }

// Plain automata, used for domains.

inline Json nfa_to_json(const Nfa& a) {
  Json j = detail::header("nfa");
  j["alphabet"] = detail::alphabet_json(a.alphabet());
  std::vector<std::string> names;
  for (State s = 0; s < a.num_states(); ++s) names.push_back(a.name(s));
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    for (State s = 0; s < names.size(); ++s) names[s] = "q" + std::to_string(s);
  }
  j["states"] = names;
  j["initial"] = Json::array();
  j["final"] = Json::array();
  for (State s : a.initial_states()) j["initial"].push_back(names[s]);
  for (State s : a.final_states()) j["final"].push_back(names[s]);
  j["transitions"] = Json::array();
  for (const auto& t : a.transitions()) {
    j["transitions"].push_back(
        Json{{"from", names[t.from]}, {"on", symbol_name(a.alphabet()[t.symbol])}, {"to", names[t.to]}});
  }
  return j;
}

inline Nfa nfa_from_json(const Json& j) {
  check_header(j);
  if (j.at("kind") != "nfa") throw FormatError("expected kind \"nfa\"");
  try {
    Nfa a(detail::alphabet_from(j.at("alphabet")));
    auto names = detail::states_from(j);
    for (const auto& n : names) a.add_state(n);
    for (const auto& s : j.at("initial")) a.set_initial(state_index(names, s.get<std::string>()));
    for (const auto& s : j.at("final")) a.set_final(state_index(names, s.get<std::string>()));
    for (const auto& t : j.at("transitions")) {
      a.add_transition(state_index(names, t.at("from").get<std::string>()),
                       symbol_from_name(t.at("on").get<std::string>()),
                       state_index(names, t.at("to").get<std::string>()));
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed nfa: ") + e.what());
  }
}

}  // namespace transducers

#endif  // TRANSDUCERS_IO_HPP_
