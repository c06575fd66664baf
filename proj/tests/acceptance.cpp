// Acceptance gate: one PASS/FAIL line per criterion, exact comparisons only.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace transducers;
using namespace testing_support;

namespace {

// Collects the first few failure details of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) detail_ << "\n    " << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string detail() const { return detail_.str(); }

 private:
  std::size_t failures_ = 0;
  std::ostringstream detail_;
};

std::string show(const EvalOutcome& o) { return describe(o); }

template <class T>
T load_as(const std::string& name) {
  return std::get<T>(load_machine(fixture(name)));
}

void binary_words(std::size_t lo, std::size_t hi, const std::function<void(const Word&)>& f) {
  enumerate_words(fixtures::binary(), hi, [&](const Word& x) {
    if (x.size() >= lo) f(x);
    return true;
  });
}

void five_way_increment(Check& c) {
  const Machine fig2right = load_machine(fixture("fig2right.json"));
  const Machine fig3 = load_machine(fixture("fig3.json"));
  const Machine fig4 = load_machine(fixture("fig4.json"));
  const Machine fig5 = load_machine(fixture("fig5.json"));
  const Rte inc = fixture_rte("increment.rte");
  std::size_t words = 0;
  binary_words(1, 12, [&](const Word& x) {
    ++words;
    const auto oracle = EvalOutcome::unique(add_msb_first(x, 1));
    const std::vector<std::pair<const char*, EvalOutcome>> results = {
        {"fig2right", evaluate(fig2right, x)}, {"fig3", evaluate(fig3, x, true)}, {"fig4", evaluate(fig4, x)},
        {"fig5", evaluate(fig5, x)},           {"increment.rte", run_rte(inc, x)},
    };
    // Agreement with the oracle implies pairwise agreement.
    for (const auto& [name, o] : results) {
      c.expect(o == oracle, std::string(name) + " on " + word_text(x) + ": " + show(o) + " != " + show(oracle));
    }
  });
  c.expect(words == 8190, "expected 8190 words, got " + std::to_string(words));
}

void lsb_left_increment(Check& c) {
  const auto inc = load_as<SequentialTransducer>("fig2left.json");
  const auto twice = compose_sequential(inc, inc);
  binary_words(1, 12, [&](const Word& x) {
    auto one = eval_sequential(inc, x);
    auto two = eval_sequential(twice, x);
    c.expect(one == EvalOutcome::unique(add_lsb_first(x, 1)), "fig2left on " + word_text(x) + ": " + show(one));
    c.expect(two == EvalOutcome::unique(add_lsb_first(x, 2)), "composed on " + word_text(x) + ": " + show(two));
  });
}

void comment_stripper(Check& c) {
  const auto t = load_as<SequentialTransducer>("fig1.json");
  // States 1 and 3 are terminal: a trailing comment without newline is
  // erased and accepted; a trailing lone backslash is outside the domain.
  const std::vector<std::pair<std::string, std::optional<std::string>>> corpus = {
      {"abc{nl}", "abc{nl}"},
      {"x\\%y%zz{nl}", "x\\%y{nl}"},
      {"a%b{nl}c{nl}", "a{nl}c{nl}"},
      {"%xyz{nl}", "{nl}"},
      {"\\%\\%{nl}", "\\%\\%{nl}"},
      {"\\\\%x{nl}", "\\\\{nl}"},
      {"y%z\\%{nl}", "y{nl}"},
      {"z%%%{nl}b", "z{nl}b"},
      {"abc%xyz", "abc"},
      {"ab\\", std::nullopt},
  };
  for (const auto& [in, out] : corpus) {
    auto expected = out ? unique(*out) : EvalOutcome::not_in_domain();
    auto got = eval_sequential(t, w(in));
    c.expect(got == expected, in + ": " + show(got) + " != " + show(expected));
  }
}

void functionality(Check& c) {
  c.expect(check_functional(load_as<Nft>("fig2right.json")).functional, "fig2right reported not functional");
  const auto mutant = load_as<Nft>("fig2right-mutant.json");
  auto v = check_functional(mutant);
  c.expect(!v.functional, "mutant reported functional");
  if (!v.functional) {
    auto outs = eval_nft(mutant, v.witness);
    c.expect(v.output1 != v.output2 && outs.count(v.output1) && outs.count(v.output2),
             "mutant witness " + display_word(v.witness) + " does not verify");
  }
  std::mt19937 rng(2024);
  for (int i = 0; i < 200; ++i) {
    Nft t = random_nft(rng, 4);
    auto exact = check_functional(t);
    auto brute = bruteforce_functional(t, 8);
    c.expect(brute.functional || !exact.functional,
             "case " + std::to_string(i) + ": missed violation on " + display_word(brute.witness));
    if (!exact.functional) {
      auto outs = eval_nft(t, exact.witness);
      c.expect(exact.output1 != exact.output2 && outs.count(exact.output1) && outs.count(exact.output2),
               "case " + std::to_string(i) + ": witness " + display_word(exact.witness) + " does not verify");
    }
  }
}

void equivalence(Check& c) {
  const auto t = load_as<Nft>("fig2right.json");
  auto same = equiv_functional(t, load_as<Nft>("fig2right-renamed.json"));
  c.expect(same.equivalent(), "renamed copy not equivalent");
  auto dom = equiv_functional(t, load_as<Nft>("fig2right-ones.json"));
  c.expect(dom.kind == FunctionalEquivalence::Kind::DomainOnly, "restricted variant: not a domain counterexample");
  c.expect(dom.word == w("0"), "restricted variant: counterexample " + display_word(dom.word) + " != 0");
}

void elgot(Check& c) {
  const auto t = load_as<Nft>("fig2right.json");
  const auto d = elgot_decompose(t);
  c.expect(validate_machine(Machine{d.adorner}).empty(), "f fails validation");
  c.expect(validate_machine(Machine{d.reader}).empty(), "g fails validation");
  binary_words(0, 12, [&](const Word& x) {
    auto got = apply_elgot(d, x);
    auto expected = eval_nft_outcome(t, x);
    c.expect(got == expected, word_text(x) + ": " + show(got) + " != " + show(expected));
  });
}

void lookahead(Check& c) {
  const auto t = load_as<Nft>("fig2right.json");
  const auto d = determinize_with_lookahead(t);
  c.expect(equiv_functional(t, lookahead_to_unambiguous(d)).equivalent(), "fig2right round trip not equivalent");
  const Alphabet bin = fixtures::binary();
  auto it = d.steps.find({0, "0"});
  c.expect(it != d.steps.end() && it->second.size() == 2, "state 1 on 0 does not offer two guarded choices");
  if (it != d.steps.end() && it->second.size() == 2) {
    const auto& stay = it->second[0];
    const auto& move = it->second[1];
    c.expect(stay.to == 0 && move.to == 1, "choices not ordered 1 < 2");
    c.expect(dfa_equiv(move.guard, regex::to_nfa("'1'*", bin)).equivalent(), "guard of state 2 is not 1*");
    c.expect(dfa_equiv(stay.guard, regex::to_nfa("'1'* . '0' . ('0' + '1')*", bin)).equivalent(),
             "guard of state 1 is not 1*0(0+1)*");
  }
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    Nft r = random_functional_nft(rng, 1 + i % 3);
    Nft back = lookahead_to_unambiguous(determinize_with_lookahead(r));
    c.expect(equiv_functional(r, back).equivalent(), "random case " + std::to_string(i) + " not equivalent");
    c.expect(!nft_ambiguity_witness(back), "random case " + std::to_string(i) + " result is ambiguous");
  }
}

void rte_goldens(Check& c) {
  auto amb = run_rte(fixture_rte("ambiguous.rte"), w("1011"));
  c.expect(amb.kind == EvalOutcome::Kind::Ambiguous && amb.outputs == std::vector<Word>{w("1000"), w("1010"), w("1011")},
           "ambiguous.rte on 1011: " + show(amb));
  auto dup = run_rte(fixture_rte("duplicate.rte"), w("10"));
  c.expect(dup == unique("10#10"), "duplicate on 10: " + show(dup));
  auto ex = run_rte(fixture_rte("exchange.rte"), w("01#1"));
  c.expect(ex == unique("101"), "exchange on 01#1: " + show(ex));
  auto dom = rte_domain(fixture_rte("increment0.rte"));
  c.expect(dom.exact, "dom(increment0) not exact");
  c.expect(dfa_equiv(dom.nfa, regex::to_nfa("('0' + '1')* . '0' . '1'*", fixtures::binary())).equivalent(),
           "dom(increment0) differs from (0+1)*01*");
  c.expect(check_unambiguous(fixture_rte("increment.rte")).unambiguous, "increment reported ambiguous");
}

std::vector<Word> factor_sequences(std::size_t lo, std::size_t hi, std::size_t max_factor) {
  std::vector<Word> factors;
  enumerate_words(fixtures::binary(), max_factor, [&](const Word& u) {
    factors.push_back(u);
    return true;
  });
  std::vector<Word> out;
  std::vector<Word> layer = {{}};
  for (std::size_t n = 1; n <= hi; ++n) {
    std::vector<Word> next;
    for (const auto& prefix : layer) {
      for (const auto& u : factors) {
        Word x = concat(prefix, u);
        x.push_back("#");
        next.push_back(std::move(x));
      }
    }
    layer = std::move(next);
    if (n >= lo) out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

void identity_suite(Check& c) {
  auto same = [&](const char* label, const Rte& a, const Rte& b, const Alphabet& sigma, std::size_t max_len) {
    enumerate_words(sigma, max_len, [&](const Word& x) {
      auto l = run_rte(a, x);
      auto r = run_rte(b, x);
      c.expect(l == r, std::string(label) + " on " + word_text(x) + ": " + show(l) + " != " + show(r));
      return true;
    });
  };
  const Alphabet bin = fixtures::binary();
  const Alphabet sep{"0", "1", "#"};
  Rte dup = fixture_rte("duplicate.rte");
  same("hadamard-elim duplicate", dup, rewrite(dup, RewritePass::HadamardElim), bin, 8);
  Rte ex = fixture_rte("exchange.rte");
  same("hadamard-elim exchange", ex, rewrite(ex, RewritePass::HadamardElim), sep, 8);
  Rte rs = fixture_rte("revstar.rte");
  Rte rs_elim = rewrite(rs, RewritePass::RStarElim);
  same("rstar-elim", rs, rs_elim, bin, 8);
  enumerate_words(bin, 10, [&](const Word& x) {
    auto got = run_rte(rs_elim, x);
    c.expect(got == EvalOutcome::unique(reverse_word(x)), "rstar-elim reverse on " + word_text(x) + ": " + show(got));
    return true;
  });
  Rte ch = fixture_rte("chain2h.rte");
  same("chain2-elim", ch, rewrite(ch, RewritePass::Chain2Elim), sep, 8);
  Rte h = fixture_rte("hchain.rte");
  for (const auto& x : factor_sequences(2, 4, 2)) {
    auto l = run_rte(ch, x);
    auto r = run_rte(h, x);
    c.expect(l.is_unique() && l == r, "chain2 vs g@f on " + word_text(x) + ": " + show(l) + " != " + show(r));
  }
}

void copyless(Check& c) {
  const auto fig4 = load_as<RegisterTransducer>("fig4.json");
  auto v = validate_copyless(fig4);
  c.expect(!v.copyless, "fig4 reported copyless");
  if (!v.copyless) {
    c.expect(fig4.states[v.state] == "1" && v.symbol == "0" && v.reg == "X",
             "violation at (" + fig4.states[v.state] + ", " + v.symbol + ", " + v.reg + ")");
  }
  c.expect(validate_copyless(load_as<RegisterTransducer>("fig5.json")).copyless, "fig5 reported copyful");
}

void cli_contract(Check& c) {
  auto dir = std::filesystem::temp_directory_path() / "transducers_acceptance";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "out").string();
  struct Invocation {
    std::vector<std::string> args;
    int status;
    std::string stdout_prefix;
  };
  const std::vector<Invocation> script = {
      {{"eval", "--machine", fixture("fig3.json"), "--input", "1011"}, 0, "1100\n"},
      {{"eval", "--expr", fixture("ambiguous.rte"), "--input", "1011"}, 3, "AMBIGUOUS: 1000 1010 1011\n"},
      {{"eval", "--machine", fixture("fig1.json"), "--input", "x{bs}{pct}y%zz{nl}"}, 0, "x\\%y{nl}\n"},
      {{"eval", "--machine", fixture("fig1.json"), "--input", "ab{bs}"}, 2, "NOT-IN-DOMAIN\n"},
      {{"eval", "--machine", fixture("does-not-exist.json"), "--input", "1"}, 1, ""},
      {{"check", "copyless", fixture("fig4.json")}, 3, "VIOLATION state=1 symbol=0 register=X\n"},
      {{"check", "functional", fixture("fig2right.json")}, 0, "FUNCTIONAL\n"},
      {{"check", "equiv", fixture("fig2right.json"), fixture("fig2right-renamed.json")}, 0, "EQUIVALENT\n"},
      {{"check", "unambiguous", fixture("ambiguous.rte")}, 3, "AMBIGUOUS"},
      {{"dom", fixture("increment0.rte"), "-o", out}, 0, "exact\n"},
      {{"difftest", "--left", fixture("fig5.json"), "--right", fixture("increment.rte"), "--maxlen", "12"}, 0, "EQUAL"},
      {{"frobnicate"}, 1, ""},
  };
  for (const auto& inv : script) {
    auto r = run_cli(inv.args);
    std::string cmd;
    for (const auto& a : inv.args) cmd += " " + a;
    c.expect(r.status == inv.status,
             "transducers" + cmd + ": exit " + std::to_string(r.status) + " != " + std::to_string(inv.status));
    c.expect(r.out.rfind(inv.stdout_prefix, 0) == 0, "transducers" + cmd + ": stdout " + r.out);
  }
  for (const char* name : {"fig1.json", "fig2left.json", "fig2right.json", "fig3.json", "fig4.json", "fig5.json"}) {
    const std::string text = read_file(fixture(name));
    c.expect(serialize_machine(load_machine(fixture(name))) == text, std::string(name) + " does not round-trip");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"five-way increment agreement", five_way_increment},
      {"lsb-left increment and composition", lsb_left_increment},
      {"comment stripper goldens", comment_stripper},
      {"functionality", functionality},
      {"equivalence reduction", equivalence},
      {"Elgot decomposition", elgot},
      {"look-ahead round trip", lookahead},
      {"expression goldens", rte_goldens},
      {"rewrite identity suite", identity_suite},
      {"copyless discrimination", copyless},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (c.ok() ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first << " (" << secs << " s)";
    std::cout << line.str() << c.detail() << std::endl;
    if (!c.ok()) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
