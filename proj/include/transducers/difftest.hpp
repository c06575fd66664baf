#ifndef TRANSDUCERS_DIFFTEST_HPP_
#define TRANSDUCERS_DIFFTEST_HPP_

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "transducers/analysis.hpp"
#include "transducers/errors.hpp"
#include "transducers/io.hpp"
#include "transducers/machines.hpp"
#include "transducers/outcome.hpp"
#include "transducers/rte.hpp"

namespace transducers {

/// A string function under test: a machine file, an expression file, or a
/// pipeline "s1∘s2∘…∘sn" of such files and "rev", applied right to left.
struct FunctionRef {
  std::string name;
  Alphabet input;  // empty for rev
  std::function<EvalOutcome(const Word&)> eval;
};

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline FunctionRef machine_ref(const std::string& name, Machine m, bool strip) {
  auto shared = std::make_shared<const Machine>(std::move(m));
  return {name, input_alphabet(*shared), [shared, strip](const Word& w) { return evaluate(*shared, w, strip); }};
}

inline FunctionRef rte_ref(const std::string& name, Rte e) {
  auto ev = std::make_shared<RteEvaluator>();
  return {name, rte_input_alphabet(e), [e, ev](const Word& w) { return ev->eval(e, w); }};
}

inline FunctionRef reverse_ref() {
  return {"rev", {}, [](const Word& w) { return EvalOutcome::unique(reverse_word(w)); }};
}

inline std::vector<std::string> split_pipeline(const std::string& source) {
  static const std::string kCompose = "∘";
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = source.find(kCompose, start);
    parts.push_back(source.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) break;
    start = at + kCompose.size();
  }
  return parts;
}

/// Loads a reference. Outputs of two-way machines are stripped of
/// endmarkers when `strip` is set.
inline FunctionRef load_ref(const std::string& source, bool strip) {
  auto stages = split_pipeline(source);
  if (stages.size() > 1) {
    std::vector<FunctionRef> refs;
    for (const auto& s : stages) refs.push_back(load_ref(s, strip));
    Alphabet input = refs.back().input;
    return {source, input, [refs](const Word& w) {
              EvalOutcome cur = EvalOutcome::unique(w);
              for (auto it = refs.rbegin(); it != refs.rend(); ++it) {
                if (!cur.is_unique()) return cur;
                cur = it->eval(cur.value());
              }
              return cur;
            }};
  }
  if (source == "rev") return reverse_ref();
  if (ends_with(source, ".rte")) return rte_ref(source, parse_rte(read_file(source)));
  return machine_ref(source, load_machine(source), strip);
}

struct DiffTestReport {
  std::string left;
  std::string right;
  Alphabet alphabet;
  std::size_t max_len = 0;
  std::uint64_t words_tested = 0;
  bool equal = true;
  Word word;  // first mismatch
  EvalOutcome left_outcome;
  EvalOutcome right_outcome;
  double elapsed_ms = 0;
};

namespace detail {

inline EvalOutcome guarded(const FunctionRef& f, const Word& w) {
  try {
    return f.eval(w);
  } catch (const ForeignSymbol&) {
    return EvalOutcome::not_in_domain();
  }
}

}  // namespace detail

/// Compares outcomes on every word up to max_len in length-then-lex order;
/// the first mismatch is therefore shortest and lexicographically least.
inline DiffTestReport difftest(const FunctionRef& left, const FunctionRef& right, const Alphabet& alphabet,
                               std::size_t max_len, bool strip = false) {
  if (count_words(alphabet.size(), max_len) > kWordBudget) {
    throw BudgetExceeded("difftest: more than " + std::to_string(kWordBudget) + " words up to length " +
                         std::to_string(max_len));
  }
  const auto start = std::chrono::steady_clock::now();
  DiffTestReport report;
  report.left = left.name;
  report.right = right.name;
  report.alphabet = alphabet;
  report.max_len = max_len;
  enumerate_words(alphabet, max_len, [&](const Word& w) {
    ++report.words_tested;
    EvalOutcome l = detail::guarded(left, w);
    EvalOutcome r = detail::guarded(right, w);
    if (strip) {
      l = strip_endmarkers(std::move(l));
      r = strip_endmarkers(std::move(r));
    }
    if (l == r) return true;
    report.equal = false;
    report.word = w;
    report.left_outcome = std::move(l);
    report.right_outcome = std::move(r);
    return false;
  });
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace transducers

#endif  // TRANSDUCERS_DIFFTEST_HPP_
