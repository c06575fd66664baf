#ifndef TRANSDUCERS_DOT_HPP_
#define TRANSDUCERS_DOT_HPP_

#include <sstream>
#include <string>

#include "transducers/machines.hpp"

namespace transducers {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string dot_word(const Word& w) { return dot_escape(display_word(w)); }

inline std::string register_expr_text(const RegisterExpr& e) {
  if (e.empty()) return "ε";
  std::string s;
  for (const auto& tok : e) s += tok.is_register ? tok.value : symbol_text(tok.value);
  return s;
}

class DotWriter {
 public:
  explicit DotWriter(const std::vector<std::string>& states) {
    out_ << "digraph machine {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::size_t s = 0; s < states.size(); ++s) out_ << "  s" << s << " [label=\"" << dot_escape(states[s]) << "\"];\n";
  }
  void initial(State s, const std::string& label) {
    out_ << "  in" << ins_ << " [shape=point];\n  in" << ins_ << " -> s" << s;
    if (!label.empty()) out_ << " [label=\"" << label << "\"]";
    out_ << ";\n";
    ++ins_;
  }
  void final(State s, const std::string& label) {
    out_ << "  out" << outs_ << " [shape=point];\n  s" << s << " -> out" << outs_;
    if (!label.empty()) out_ << " [label=\"" << label << "\"]";
    out_ << ";\n";
    ++outs_;
  }
  void edge(State from, State to, const std::string& label) {
    out_ << "  s" << from << " -> s" << to << " [label=\"" << label << "\"];\n";
  }
  std::string str() {
    out_ << "}\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
  std::size_t ins_ = 0;
  std::size_t outs_ = 0;
};

inline std::string to_dot(const SequentialTransducer& t) {
  DotWriter w(t.states);
  w.initial(t.initial, dot_word(t.initial_output));
  for (const auto& [s, out] : t.terminal) w.final(s, dot_word(out));
  for (const auto& tr : t.transitions) w.edge(tr.from, tr.to, dot_escape(symbol_text(tr.input)) + " | " + dot_word(tr.output));
  return w.str();
}

inline std::string to_dot(const Nft& t) {
  DotWriter w(t.states);
  for (const auto& i : t.initial) w.initial(i.state, dot_word(i.output));
  for (const auto& f : t.final) w.final(f.state, dot_word(f.output));
  for (const auto& tr : t.transitions) w.edge(tr.from, tr.to, dot_escape(symbol_text(tr.input)) + " | " + dot_word(tr.output));
  return w.str();
}

inline std::string to_dot(const TwoWayDft& t) {
  DotWriter w(t.states);
  w.initial(t.initial, "");
  for (State f : t.final) w.final(f, "");
  for (const auto& tr : t.transitions) {
    w.edge(tr.from, tr.to,
           dot_escape(symbol_text(tr.read)) + " | " + dot_word(tr.output) + ", " + (tr.move == Move::Left ? "L" : "R"));
  }
  return w.str();
}

inline std::string to_dot(const RegisterTransducer& t) {
  DotWriter w(t.states);
  std::string init;
  for (const auto& r : t.registers) {
    auto it = t.init.find(r);
    if (!init.empty()) init += "; ";
    init += r + ":=" + (it == t.init.end() || it->second.empty() ? "ε" : word_text(it->second));
  }
  w.initial(t.initial, dot_escape(init));
  for (const auto& [s, e] : t.outputs) w.final(s, dot_escape(register_expr_text(e)));
  for (const auto& tr : t.transitions) {
    std::string label = dot_escape(symbol_text(tr.input)) + " | ";
    for (std::size_t k = 0; k < tr.updates.size(); ++k) {
      if (k > 0) label += "; ";
      label += tr.updates[k].first + ":=" + dot_escape(register_expr_text(tr.updates[k].second));
    }
    w.edge(tr.from, tr.to, label);
  }
  return w.str();
}

}  // namespace detail

/// Graphviz rendering: one digraph, edges labelled "a | u" (two-way
/// machines add the head move, register machines list their updates).
inline std::string export_dot(const Machine& m) {
  return std::visit([](const auto& t) { return detail::to_dot(t); }, m);
}

}  // namespace transducers

#endif  // TRANSDUCERS_DOT_HPP_
