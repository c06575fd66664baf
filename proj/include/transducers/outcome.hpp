#ifndef TRANSDUCERS_OUTCOME_HPP_
#define TRANSDUCERS_OUTCOME_HPP_

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "transducers/words.hpp"

namespace transducers {

/// Result of applying a partial string function to one input.
struct EvalOutcome {
  enum class Kind { Unique, NotInDomain, Ambiguous };

  Kind kind = Kind::NotInDomain;
  std::vector<Word> outputs;  // one for Unique, >= 2 in shortlex order for Ambiguous
  // Several parses that all produced the same output.
  bool ambiguous_but_consistent = false;
  // Parse descriptions, filled by evaluators that can explain ambiguity.
  std::vector<std::string> parses;

  static EvalOutcome unique(Word w) {
    EvalOutcome o;
    o.kind = Kind::Unique;
    o.outputs.push_back(std::move(w));
    return o;
  }

  static EvalOutcome not_in_domain() { return {}; }

  /// Classifies a set of distinct outputs.
  static EvalOutcome from_outputs(std::vector<Word> outs) {
    std::sort(outs.begin(), outs.end(), shortlex_less);
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    if (outs.empty()) return not_in_domain();
    if (outs.size() == 1) return unique(std::move(outs[0]));
    EvalOutcome o;
    o.kind = Kind::Ambiguous;
    o.outputs = std::move(outs);
    return o;
  }

  bool is_unique() const { return kind == Kind::Unique; }
  bool in_domain() const { return kind != Kind::NotInDomain; }

  const Word& value() const {
    assert(kind == Kind::Unique);
    return outputs.front();
  }

  friend bool operator==(const EvalOutcome& a, const EvalOutcome& b) {
    return a.kind == b.kind && a.outputs == b.outputs;
  }
};

inline std::string describe(const EvalOutcome& o) {
  switch (o.kind) {
    case EvalOutcome::Kind::Unique:
      return word_text(o.value());
    case EvalOutcome::Kind::NotInDomain:
      return "NOT-IN-DOMAIN";
    case EvalOutcome::Kind::Ambiguous: {
      std::string s = "AMBIGUOUS:";
      for (const auto& w : o.outputs) s += " " + display_word(w);
      return s;
    }
  }
  return {};
}

/// Drops a leading ⊢ and a trailing ⊣.
inline Word strip_endmarkers(Word w) {
  if (!w.empty() && w.front() == symbols::kLeftMark) w.erase(w.begin());
  if (!w.empty() && w.back() == symbols::kRightMark) w.pop_back();
  return w;
}

inline EvalOutcome strip_endmarkers(EvalOutcome o) {
  for (auto& w : o.outputs) w = strip_endmarkers(std::move(w));
  if (o.kind == EvalOutcome::Kind::Ambiguous) return EvalOutcome::from_outputs(std::move(o.outputs));
  return o;
}

}  // namespace transducers

#endif  // TRANSDUCERS_OUTCOME_HPP_
