#include <gtest/gtest.h>

#include "support.hpp"

using namespace transducers;
using namespace testing_support;

namespace {

const Alphabet kBin{"0", "1"};
const Alphabet kSep{"0", "1", "#"};

Rte parse(std::string_view text) { return parse_rte(text); }

Rte lib(const std::string& name, StdlibParams params = {}) { return stdlib_expr(name, kBin, params); }

// Every word u1#u2#...un# with n in [lo, hi] and |ui| <= max_factor.
std::vector<Word> factor_sequences(std::size_t lo, std::size_t hi, std::size_t max_factor) {
  std::vector<Word> factors;
  enumerate_words(kBin, max_factor, [&](const Word& u) {
    factors.push_back(u);
    return true;
  });
  std::vector<Word> out;
  std::vector<std::vector<Word>> layer = {{}};
  for (std::size_t n = 1; n <= hi; ++n) {
    std::vector<std::vector<Word>> next;
    for (const auto& seq : layer) {
      for (const auto& u : factors) {
        auto s = seq;
        s.push_back(u);
        next.push_back(std::move(s));
      }
    }
    layer = std::move(next);
    if (n < lo) continue;
    for (const auto& seq : layer) {
      Word x;
      for (const auto& u : seq) {
        x.insert(x.end(), u.begin(), u.end());
        x.push_back("#");
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<Word> split_blocks(const Word& x) {
  std::vector<Word> blocks(1);
  for (const auto& s : x) {
    if (s == "#") {
      blocks.emplace_back();
    } else {
      blocks.back().push_back(s);
    }
  }
  blocks.pop_back();
  return blocks;
}

// u1#...un# -> u2u1#u3u2#...unu(n-1)#
Word pair_exchange_oracle(const Word& x, bool reversed) {
  auto u = split_blocks(x);
  std::vector<Word> pieces;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    Word p = concat(u[i + 1], u[i]);
    p.push_back("#");
    pieces.push_back(std::move(p));
  }
  if (reversed) std::reverse(pieces.begin(), pieces.end());
  Word out;
  for (const auto& p : pieces) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void expect_same_function(const Rte& a, const Rte& b, const Alphabet& sigma, std::size_t max_len) {
  enumerate_words(sigma, max_len, [&](const Word& x) {
    EXPECT_EQ(run_rte(a, x), run_rte(b, x)) << word_text(x);
    return true;
  });
}

}  // namespace

TEST(RteParse, Shapes) {
  Rte e = parse("('1'|'0')*");
  ASSERT_EQ(e->kind, RteNode::Kind::Star);
  EXPECT_EQ(e->left->kind, RteNode::Kind::Atom);
  EXPECT_EQ(e->left->in, w("1"));
  EXPECT_EQ(e->left->out, w("0"));
  EXPECT_TRUE(rte_equal(parse("(('0'|'0')+('1'|'1'))*"), lib("copy")));
  Rte inc0 = parse("let copy = (('0'|'0')+('1'|'1'))*; copy . ('0'|'1') . ('1'|'0')*");
  EXPECT_TRUE(rte_equal(inc0, rte::cat(rte::cat(lib("copy"), rte::atom("0", "1")), rte::star(rte::atom("1", "0")))));
  EXPECT_TRUE(rte_equal(parse("rev['01']"), rte::reverse(kBin)));
  EXPECT_TRUE(rte_equal(parse("dup['01', '#']"), rte::duplicate(kBin)));
}

TEST(RteParse, PrecedenceAndRoundTrip) {
  Rte e = parse("('a'|'b') + ('c'|'d') . ('e'|'f')*");
  ASSERT_EQ(e->kind, RteNode::Kind::Sum);
  EXPECT_EQ(e->right->kind, RteNode::Kind::Cat);
  Rte h = parse("('a'|'b') <*> ('a'|'c') + ('a'|'d')");
  EXPECT_EQ(h->kind, RteNode::Kind::Hadamard);
  Rte c = parse("rev['ab'] @ rev['ab'] @ ('a'|'a')*");
  ASSERT_EQ(c->kind, RteNode::Kind::Compose);
  EXPECT_EQ(c->right->kind, RteNode::Kind::Compose);
  for (const char* name : {"increment.rte", "ambiguous.rte", "duplicate.rte", "exchange.rte", "hchain.rte",
                           "chain2h.rte", "increment0.rte", "revstar.rte"}) {
    Rte f = fixture_rte(name);
    EXPECT_TRUE(rte_equal(parse(to_text(f)), f)) << name;
  }
}

TEST(RteParse, Errors) {
  try {
    parse("('0'|'1') .\n  + ('1'|'0')");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.col(), 3u);
  }
  EXPECT_THROW(parse("nosuchname"), UnknownName);
  EXPECT_THROW(parse("('0'|'1'"), SyntaxError);
}

TEST(RteEval, Increment) {
  Rte inc = fixture_rte("increment.rte");
  EXPECT_EQ(run_rte(inc, w("1011")), unique("1100"));
  Rte inc1 = parse("('' | '1') . ('1'|'0')*");
  EXPECT_EQ(run_rte(inc1, w("111")), unique("1000"));
  enumerate_words(kBin, 10, [&](const Word& x) {
    EXPECT_EQ(run_rte(inc, x), EvalOutcome::unique(add_msb_first(x, 1))) << word_text(x);
    return true;
  });
}

TEST(RteEval, AmbiguousParse) {
  auto o = run_rte(fixture_rte("ambiguous.rte"), w("1011"));
  EXPECT_EQ(o.kind, EvalOutcome::Kind::Ambiguous);
  EXPECT_EQ(o.outputs, (std::vector<Word>{w("1000"), w("1010"), w("1011")}));
}

TEST(RteEval, ConsistentAmbiguityIsUnique) {
  Rte e = parse("('0'|'0')* . ('0'|'0')*");
  auto o = run_rte(e, w("00"));
  EXPECT_EQ(o, unique("00"));
  EXPECT_TRUE(o.ambiguous_but_consistent);
}

TEST(RteEval, Library) {
  EXPECT_EQ(run_rte(fixture_rte("duplicate.rte"), w("10")), unique("10#10"));
  EXPECT_EQ(run_rte(lib("duplicate"), w("10")), unique("10#10"));
  EXPECT_EQ(run_rte(fixture_rte("exchange.rte"), w("01#1")), unique("101"));
  EXPECT_EQ(run_rte(lib("exchange"), w("01#1")), unique("101"));
  EXPECT_EQ(run_rte(lib("copy"), w("1011")), unique("1011"));
  EXPECT_EQ(run_rte(lib("erase"), w("1011")), unique(""));
  StdlibParams k;
  k.k = regex::parse("('0' + '1')* . '#'");
  EXPECT_EQ(run_rte(stdlib_expr("gK", kSep, k), w("01#1#")), unique("01##1##"));
  EXPECT_EQ(run_rte(stdlib_expr("fK", kSep, k), w("01#")), unique("01#"));
  StdlibParams bad;
  bad.k = regex::parse("'0'* . '0'*");
  EXPECT_THROW(stdlib_expr("fK", kBin, bad), AmbiguousK);
  EXPECT_THROW(stdlib_expr("nope", kBin), UnknownName);
}

TEST(RteEval, ReverseAndHadamard) {
  Rte rev = rte::reverse(kBin);
  Rte copy = lib("copy");
  Rte inc = fixture_rte("increment.rte");
  Rte had = rte::hadamard(copy, inc);
  enumerate_words(kBin, 8, [&](const Word& x) {
    EXPECT_EQ(run_rte(rev, x), EvalOutcome::unique(reverse_word(x)));
    EXPECT_EQ(run_rte(had, x), EvalOutcome::unique(concat(x, add_msb_first(x, 1))));
    return true;
  });
}

TEST(RteEval, Chain2) {
  Rte c = fixture_rte("chain2h.rte");
  EXPECT_EQ(run_rte(c, w("01#1#00#")), unique("101#001#"));
  EXPECT_EQ(run_rte(c, w("01#1#")), unique("101#"));
  EXPECT_EQ(run_rte(c, w("01#")), EvalOutcome::not_in_domain());
  Rte r = rte::chain2(regex::parse("('0' + '1')* . '#'"), parse("exchange . ('#'|'#')"), true);
  EXPECT_EQ(run_rte(r, w("01#1#00#")), unique("001#101#"));
  for (const auto& x : factor_sequences(2, 4, 2)) {
    EXPECT_EQ(run_rte(c, x), EvalOutcome::unique(pair_exchange_oracle(x, false))) << word_text(x);
    EXPECT_EQ(run_rte(r, x), EvalOutcome::unique(pair_exchange_oracle(x, true))) << word_text(x);
  }
}

TEST(RteEval, HChainIsGAfterF) {
  Rte h = fixture_rte("hchain.rte");
  for (const auto& x : factor_sequences(2, 4, 3)) {
    EXPECT_EQ(run_rte(h, x), EvalOutcome::unique(pair_exchange_oracle(x, false))) << word_text(x);
  }
}

TEST(RteEval, ParseBudget) {
  Rte e = parse("('0'|'0')* . ('0'|'0')* . ('0'|'0')* . ('0'|'0')*");
  EXPECT_THROW(eval_rte(e, Word(40, "0"), {1000}), BudgetExceeded);
}

TEST(RteDomain, Increment0) {
  auto d = rte_domain(fixture_rte("increment0.rte"));
  EXPECT_TRUE(d.exact);
  EXPECT_TRUE(dfa_equiv(d.nfa, regex::to_nfa("('0' + '1')* . '0' . '1'*", kBin)).equivalent());
}

TEST(RteDomain, ReverseAndCompose) {
  auto r = rte_domain(rte::reverse(kBin));
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(dfa_equiv(r.nfa, universal_language(kBin)).equivalent());
  Rte c = rte::compose(fixture_rte("exchange.rte"), fixture_rte("duplicate.rte"));
  auto d = rte_domain(c);
  EXPECT_FALSE(d.exact);
  EXPECT_TRUE(dfa_equiv(with_alphabet(d.nfa, kBin), universal_language(kBin)).equivalent());
  enumerate_words(kBin, 8, [&](const Word& x) {
    EXPECT_EQ(run_rte(c, x), EvalOutcome::unique(concat(x, x)));
    return true;
  });
}

TEST(RteDomain, ExactDomainsMatchEvaluation) {
  for (const char* name : {"increment.rte", "ambiguous.rte", "duplicate.rte", "exchange.rte", "chain2h.rte",
                           "increment0.rte", "revstar.rte"}) {
    Rte e = fixture_rte(name);
    auto d = rte_domain(e);
    ASSERT_TRUE(d.exact) << name;
    Alphabet sigma = rte_input_alphabet(e);
    enumerate_words(sigma, 7, [&](const Word& x) {
      EXPECT_EQ(nfa_accepts(d.nfa, x), run_rte(e, x).in_domain()) << name << " " << word_text(x);
      return true;
    });
  }
}

TEST(RteUnambiguity, Verdicts) {
  EXPECT_TRUE(check_unambiguous(fixture_rte("increment.rte")).unambiguous);
  EXPECT_TRUE(check_unambiguous(rte::atom("01", "1")).unambiguous);
  auto v = check_unambiguous(fixture_rte("ambiguous.rte"));
  ASSERT_FALSE(v.unambiguous);
  EXPECT_EQ(v.witness, w("1"));
  EXPECT_EQ(v.node, "cat");
  EXPECT_NE(v.parse1, v.parse2);
  EXPECT_FALSE(check_unambiguous(parse("('0'|'0')* + ('0'|'1')")).unambiguous);
  EXPECT_FALSE(check_unambiguous(parse("(('0'|'0')*)*")).unambiguous);
  EXPECT_THROW(check_unambiguous(parse("(rev['01'] @ ('0'|'0')) . ('1'|'1')")), InexactDomain);
}

TEST(RteUnambiguity, UnambiguousNeverEvaluatesAmbiguously) {
  for (const char* name : {"increment.rte", "duplicate.rte", "exchange.rte", "chain2h.rte", "revstar.rte"}) {
    Rte e = fixture_rte(name);
    ASSERT_TRUE(check_unambiguous(e).unambiguous) << name;
    enumerate_words(rte_input_alphabet(e), 7, [&](const Word& x) {
      auto o = run_rte(e, x);
      EXPECT_NE(o.kind, EvalOutcome::Kind::Ambiguous) << name << " " << word_text(x);
      EXPECT_FALSE(o.ambiguous_but_consistent) << name << " " << word_text(x);
      return true;
    });
  }
}

TEST(RteRewrite, HadamardElim) {
  for (const char* name : {"duplicate.rte", "exchange.rte"}) {
    Rte e = fixture_rte(name);
    Rte r = rewrite(e, RewritePass::HadamardElim);
    EXPECT_EQ(to_text(r).find("<*>"), std::string::npos);
    expect_same_function(e, r, rte_input_alphabet(e), 7);
  }
  // The separator # is taken, so a fresh one is chosen.
  Rte e = fixture_rte("exchange.rte");
  EXPECT_NE(to_text(rewrite(e, RewritePass::HadamardElim)).find("'$'"), std::string::npos);
}

TEST(RteRewrite, RStarElim) {
  Rte e = fixture_rte("revstar.rte");
  Rte r = rewrite(e, RewritePass::RStarElim);
  std::string text = to_text(r);
  EXPECT_NE(text.find("@"), std::string::npos);
  EXPECT_NE(text.find("rev["), std::string::npos);
  EXPECT_EQ(text.find("^r*"), std::string::npos);
  enumerate_words(kBin, 10, [&](const Word& x) {
    EXPECT_EQ(run_rte(r, x), EvalOutcome::unique(reverse_word(x)));
    return true;
  });
  Rte blocks = parse("(('0'|'1') . ('1'|'0')*)^r*");
  expect_same_function(blocks, rewrite(blocks, RewritePass::RStarElim), kBin, 8);
}

TEST(RteRewrite, Chain2Elim) {
  Rte e = fixture_rte("chain2h.rte");
  Rte r = rewrite(e, RewritePass::Chain2Elim);
  EXPECT_EQ(to_text(r).find("chain2"), std::string::npos);
  EXPECT_EQ(run_rte(r, w("01#1#00#")), unique("101#001#"));
  for (const auto& x : factor_sequences(2, 4, 2)) EXPECT_EQ(run_rte(r, x), run_rte(e, x)) << word_text(x);
  expect_same_function(e, r, kSep, 6);
}

TEST(RteRewrite, RChain2Elim) {
  Rte e = rte::chain2(regex::parse("('0' + '1')* . '#'"), parse("exchange . ('#'|'#')"), true);
  Rte r = rewrite(e, RewritePass::RChain2Elim);
  EXPECT_EQ(to_text(r).find("chain2"), std::string::npos);
  for (const auto& x : factor_sequences(2, 4, 2)) EXPECT_EQ(run_rte(r, x), run_rte(e, x)) << word_text(x);
  expect_same_function(e, r, kSep, 6);
}

TEST(RteRewrite, FreshSeparator) {
  EXPECT_EQ(fresh_separator(kBin), "#");
  EXPECT_EQ(fresh_separator(kSep), "$");
  EXPECT_EQ(fresh_separator(Alphabet{"#", "$", "§", "¤", "&"}), "#1");
}
