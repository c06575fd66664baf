#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace transducers;
using namespace testing_support;

TEST(Sequential, CommentStripper) {
  auto t = fixtures::fig1();
  EXPECT_EQ(eval_sequential(t, w("x\\%y%zz{nl}")), unique("x\\%y{nl}"));
  EXPECT_EQ(eval_sequential(t, w("abc")), unique("abc"));
  EXPECT_EQ(eval_sequential(t, w("a%b")), unique("a"));
  // A lone trailing backslash waits for the escaped symbol.
  EXPECT_EQ(eval_sequential(t, w("a\\")), EvalOutcome::not_in_domain());
  EXPECT_THROW(eval_sequential(t, w("q")), ForeignSymbol);
}

TEST(Sequential, IncrementLsbFirst) {
  auto t = fixtures::fig2left();
  EXPECT_EQ(eval_sequential(t, w("1011")), unique("0111"));
  EXPECT_EQ(eval_sequential(t, w("111")), unique("0001"));
  enumerate_words(fixtures::binary(), 12, [&](const Word& x) {
    EXPECT_EQ(eval_sequential(t, x), EvalOutcome::unique(add_lsb_first(x, 1))) << word_text(x);
    return true;
  });
}

TEST(Sequential, DomainMatchesTerminalStates) {
  auto t = fixtures::fig1();
  Nfa a(t.input, t.states.size());
  a.set_initial(t.initial);
  for (const auto& [s, out] : t.terminal) a.set_final(s);
  for (const auto& tr : t.transitions) a.add_transition(tr.from, tr.input, tr.to);
  const Alphabet small{"a", "\\", "%", "\n"};
  enumerate_words(small, 7, [&](const Word& x) {
    EXPECT_EQ(eval_sequential(t, x).in_domain(), nfa_accepts(a, x)) << word_text(x);
    return true;
  });
}

TEST(Nft, IncrementMsbFirst) {
  auto t = fixtures::fig2right();
  EXPECT_EQ(eval_nft(t, w("111")), std::set<Word>{w("1000")});
  EXPECT_EQ(eval_nft(t, w("1011")), std::set<Word>{w("1100")});
  enumerate_words(fixtures::binary(), 12, [&](const Word& x) {
    EXPECT_EQ(eval_nft_outcome(t, x), EvalOutcome::unique(add_msb_first(x, 1))) << word_text(x);
    return true;
  });
}

TEST(Nft, ParallelTransitionsGiveBothOutputs) {
  Nft t{Alphabet{"a"}, Alphabet{"0", "1"}, {"i", "f"}, {{0, {}}}, {{1, {}}}, {{0, "a", w("0"), 1}, {0, "a", w("1"), 1}}};
  EXPECT_EQ(eval_nft(t, w("a")), (std::set<Word>{w("0"), w("1")}));
  auto o = eval_nft_outcome(t, w("a"));
  EXPECT_EQ(o.kind, EvalOutcome::Kind::Ambiguous);
  EXPECT_EQ(describe(o), "AMBIGUOUS: 0 1");
}

TEST(Nft, RunCap) {
  Nft t{Alphabet{"a"}, Alphabet{"0"}, {"q"}, {{0, {}}}, {{0, {}}}, {{0, "a", {}, 0}, {0, "a", {}, 0}}};
  EXPECT_EQ(eval_nft(t, w("aaaa")).size(), 1u);
  EXPECT_THROW(eval_nft(t, Word(12, "a"), 1000), RunExplosion);
}

TEST(TwoWay, IncrementRawAndStripped) {
  auto t = fixtures::fig3();
  EXPECT_EQ(eval_2dft(t, w("1011")), unique("⊢1100⊣"));
  EXPECT_EQ(eval_2dft(t, w("11")), unique("⊢100⊣"));
  EXPECT_EQ(eval_2dft(t, w("1011"), {true}), unique("1100"));
  enumerate_words(fixtures::binary(), 12, [&](const Word& x) {
    EXPECT_EQ(eval_2dft(t, x, {true}), EvalOutcome::unique(add_msb_first(x, 1))) << word_text(x);
    return true;
  });
}

TEST(TwoWay, RepeatedConfigurationIsRejected) {
  TwoWayDft t;
  t.input = Alphabet{"a"};
  t.output = Alphabet{"a"};
  t.states = {"q", "f"};
  t.initial = 0;
  t.final = {1};
  t.transitions = {{0, symbols::kLeftMark, {}, Move::Right, 0}, {0, "a", {}, Move::Left, 0}};
  EXPECT_EQ(eval_2dft(t, w("a")), EvalOutcome::not_in_domain());
  EXPECT_EQ(eval_2dft(t, w("")), EvalOutcome::not_in_domain());
}

TEST(Register, IncrementWithParallelUpdates) {
  auto copyful = fixtures::fig4();
  auto copyless = fixtures::fig5();
  EXPECT_EQ(eval_register(copyful, w("1011")), unique("1100"));
  EXPECT_EQ(eval_register(copyless, w("1011")), unique("1100"));
  EXPECT_EQ(eval_register(copyless, w("111")), unique("1000"));
  enumerate_words(fixtures::binary(), 12, [&](const Word& x) {
    auto expected = EvalOutcome::unique(add_msb_first(x, 1));
    EXPECT_EQ(eval_register(copyful, x), expected) << word_text(x);
    EXPECT_EQ(eval_register(copyless, x), expected) << word_text(x);
    return true;
  });
}

TEST(Register, SequentialAssignmentDiffersOnTen) {
  auto t = fixtures::fig4();
  EXPECT_EQ(eval_register(t, w("10")), unique("11"));
  // Listed as Y then X, in-order updates happen to agree; X first does not.
  EXPECT_EQ(eval_register(t, w("10"), {false}), unique("11"));
  auto& upd = t.transitions[1].updates;
  std::swap(upd[0], upd[1]);
  EXPECT_EQ(eval_register(t, w("10")), unique("11"));
  EXPECT_EQ(eval_register(t, w("10"), {false}), unique("101"));
}

TEST(Register, CopylessValidation) {
  auto v = validate_copyless(fixtures::fig4());
  ASSERT_FALSE(v.copyless);
  EXPECT_EQ(fixtures::fig4().states[v.state], "1");
  EXPECT_EQ(v.symbol, "0");
  EXPECT_EQ(v.reg, "X");
  EXPECT_TRUE(validate_copyless(fixtures::fig5()).copyless);

  RegisterTransducer id;
  id.input = Alphabet{"a"};
  id.output = Alphabet{"a"};
  id.states = {"q"};
  id.registers = {"X", "Y"};
  id.transitions = {{0, "a", 0, {{"X", {reg("X")}}, {"Y", {reg("Y")}}}}};
  id.outputs = {{0, {reg("X"), reg("Y")}}};
  EXPECT_TRUE(validate_copyless(id).copyless);
}

TEST(Validate, FixturesAreWellFormed) {
  EXPECT_TRUE(validate_machine(Machine{fixtures::fig1()}).empty());
  EXPECT_TRUE(validate_machine(Machine{fixtures::fig2left()}).empty());
  EXPECT_TRUE(validate_machine(Machine{fixtures::fig2right()}).empty());
  EXPECT_TRUE(validate_machine(Machine{fixtures::fig3()}).empty());
  EXPECT_TRUE(validate_machine(Machine{fixtures::fig4()}).empty());
  EXPECT_TRUE(validate_machine(Machine{fixtures::fig5()}).empty());
}

TEST(Validate, Defects) {
  auto dup = fixtures::fig2left();
  dup.transitions.push_back({0, "1", w("1"), 1});
  auto d = validate_machine(dup);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].kind, "DuplicateTransition");

  auto falls = fixtures::fig3();
  falls.transitions[0].move = Move::Left;
  d = validate_machine(falls);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].kind, "FallsOffTape");
}

TEST(Functionality, FixturesAndMutant) {
  EXPECT_TRUE(check_functional(fixtures::fig2right()).functional);
  EXPECT_TRUE(bruteforce_functional(fixtures::fig2right(), 10).functional);

  auto v = check_functional(fixtures::fig2right_mutant());
  ASSERT_FALSE(v.functional);
  auto outs = eval_nft(fixtures::fig2right_mutant(), v.witness);
  EXPECT_NE(v.output1, v.output2);
  EXPECT_TRUE(outs.count(v.output1) && outs.count(v.output2));
  // "111" is also a witness, with the copy and the increment as its outputs.
  EXPECT_EQ(eval_nft(fixtures::fig2right_mutant(), w("111")), (std::set<Word>{w("111"), w("1000")}));
}

TEST(Functionality, SmallCases) {
  Nft single{Alphabet{"a"}, Alphabet{"0", "1"}, {"i", "f"}, {{0, {}}}, {{1, {}}}, {{0, "a", w("0"), 1}}};
  EXPECT_TRUE(check_functional(single).functional);
  Nft par = single;
  par.transitions.push_back({0, "a", w("1"), 1});
  auto v = check_functional(par);
  ASSERT_FALSE(v.functional);
  EXPECT_EQ(v.witness, w("a"));
  auto b = bruteforce_functional(par, 1);
  ASSERT_FALSE(b.functional);
  EXPECT_EQ(b.witness, w("a"));
  Nft empty{Alphabet{"a"}, Alphabet{"0"}, {"q"}, {}, {}, {}};
  EXPECT_TRUE(bruteforce_functional(empty, 5).functional);
  EXPECT_TRUE(check_functional(empty).functional);
}

TEST(Functionality, DelayBound) {
  auto c = delay_config(fixtures::fig2right());
  EXPECT_EQ(c.m, 2u);
  EXPECT_EQ(c.max_output, 1u);
  EXPECT_EQ(c.bound, 8u);
}

TEST(Functionality, AgreesWithBruteForceOnRandomMachines) {
  std::mt19937 rng(2024);
  int not_functional = 0;
  for (int i = 0; i < 200; ++i) {
    Nft t = random_nft(rng, 4);
    auto exact = check_functional(t);
    auto brute = bruteforce_functional(t, 8);
    if (!brute.functional) {
      EXPECT_FALSE(exact.functional) << "case " << i;
    }
    if (!exact.functional) {
      ++not_functional;
      auto outs = eval_nft(t, exact.witness);
      EXPECT_GE(outs.size(), 2u) << "case " << i;
      EXPECT_TRUE(outs.count(exact.output1) && outs.count(exact.output2)) << "case " << i;
    } else {
      enumerate_words(t.input, 8, [&](const Word& x) {
        EXPECT_LE(eval_nft(t, x).size(), 1u) << "case " << i;
        return true;
      });
    }
  }
  EXPECT_GT(not_functional, 0);
  EXPECT_LT(not_functional, 200);
}

TEST(Equivalence, Fixtures) {
  EXPECT_TRUE(equiv_functional(fixtures::fig2right(), fixtures::fig2right_renamed()).equivalent());
  auto r = equiv_functional(fixtures::fig2right(), fixtures::fig2right_ones());
  EXPECT_EQ(r.kind, FunctionalEquivalence::Kind::DomainOnly);
  EXPECT_EQ(r.word, w("0"));

  auto other = fixtures::fig2right();
  other.final[0].output = w("11");
  auto d = equiv_functional(fixtures::fig2right(), other);
  EXPECT_EQ(d.kind, FunctionalEquivalence::Kind::OutputsDiffer);
  EXPECT_EQ(d.word, Word{});
  EXPECT_EQ(d.left, w("1"));
  EXPECT_EQ(d.right, w("111"));

  EXPECT_THROW(equiv_functional(fixtures::fig2right_mutant(), fixtures::fig2right()), NotFunctionalInput);
}

TEST(Equivalence, SymmetricOnRandomMachines) {
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    Nft a = random_functional_nft(rng, 2);
    Nft b = random_functional_nft(rng, 2);
    EXPECT_TRUE(equiv_functional(a, a).equivalent());
    auto ab = equiv_functional(a, b);
    auto ba = equiv_functional(b, a);
    EXPECT_EQ(ab.equivalent(), ba.equivalent());
    if (!ab.equivalent()) {
      auto l = eval_nft_outcome(a, ab.word);
      auto r = eval_nft_outcome(b, ab.word);
      EXPECT_NE(l, r);
    }
  }
}

TEST(DisjointUnion, Semantics) {
  auto t = fixtures::fig2right();
  Nft empty{t.input, t.output, {"z"}, {}, {}, {}};
  auto u = nft_disjoint_union(t, empty);
  enumerate_words(t.input, 8, [&](const Word& x) {
    EXPECT_EQ(eval_nft(u, x), eval_nft(t, x));
    return true;
  });
  EXPECT_TRUE(check_functional(nft_disjoint_union(t, t)).functional);
  Nft a0{Alphabet{"a"}, Alphabet{"0", "1"}, {"i", "f"}, {{0, {}}}, {{1, {}}}, {{0, "a", w("0"), 1}}};
  Nft a1 = a0;
  a1.transitions[0].output = w("1");
  auto v = check_functional(nft_disjoint_union(a0, a1));
  ASSERT_FALSE(v.functional);
  EXPECT_EQ(v.witness, w("a"));
}
