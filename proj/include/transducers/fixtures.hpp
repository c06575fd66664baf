#ifndef TRANSDUCERS_FIXTURES_HPP_
#define TRANSDUCERS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "transducers/machines.hpp"
#include "transducers/words.hpp"

// Reference machines. The JSON files under fixtures/ are these machines
// serialized; tests check that the two agree.
namespace transducers::fixtures {

inline Alphabet binary() { return Alphabet(Word{"0", "1"}); }

/// Comment stripper: copies text, keeps a backslash-escaped symbol verbatim,
/// and erases from an unescaped % up to (not including) the next newline.
inline SequentialTransducer fig1() {
  using namespace symbols;
  const Alphabet sigma(Word{"a", "b", "c", "x", "y", "z", kBackslash, kPercent, kNewline});
  SequentialTransducer t{sigma, sigma, {"1", "2", "3"}, 0, {}, {}, {}};
  for (const auto& s : sigma) {
    if (s != kBackslash && s != kPercent) t.transitions.push_back({0, s, {s}, 0});
  }
  t.transitions.push_back({0, kBackslash, {kBackslash}, 1});
  t.transitions.push_back({0, kPercent, {}, 2});
  for (const auto& s : sigma) t.transitions.push_back({1, s, {s}, 0});
  for (const auto& s : sigma) {
    if (s != kNewline) t.transitions.push_back({2, s, {}, 2});
  }
  t.transitions.push_back({2, kNewline, {kNewline}, 0});
  t.terminal[0] = {};
  t.terminal[2] = {};
  return t;
}

/// Increment, least significant bit first: 1|0 while carrying, 0|1 stops
/// the carry, then copy. A carry left at the end emits the extra 1.
inline SequentialTransducer fig2left() {
  SequentialTransducer t{binary(), binary(), {"1", "2"}, 0, {}, {}, {}};
  t.transitions.push_back({0, "1", word_of("0"), 0});
  t.transitions.push_back({0, "0", word_of("1"), 1});
  t.transitions.push_back({1, "0", word_of("0"), 1});
  t.transitions.push_back({1, "1", word_of("1"), 1});
  t.terminal[0] = word_of("1");
  t.terminal[1] = {};
  return t;
}

/// Increment, most significant bit first: guess the last 0, copy before it,
/// flip it to 1 and the trailing 1s to 0. State 2 is also entered at the
/// start (output 1) for inputs in 1*.
inline Nft fig2right() {
  Nft t{binary(), binary(), {"1", "2"}, {}, {}, {}};
  t.initial = {{0, {}}, {1, word_of("1")}};
  t.final = {{1, {}}};
  t.transitions = {
      {0, "0", word_of("0"), 0},
      {0, "1", word_of("1"), 0},
      {0, "0", word_of("1"), 1},
      {1, "1", word_of("0"), 1},
  };
  return t;
}

/// Increment with a two-way head: find the last 0 by scanning right then
/// back, then copy up to it, write 1, and turn the remaining 1s into 0s.
inline TwoWayDft fig3() {
  using symbols::kLeftMark;
  using symbols::kRightMark;
  TwoWayDft t;
  t.input = binary();
  t.output = Alphabet(Word{"0", "1", kLeftMark, kRightMark});
  t.states = {"0", "1", "2", "3", "4", "5", "6"};
  t.initial = 0;
  t.final = {6};
  const auto L = Move::Left;
  const auto R = Move::Right;
  t.transitions = {
      {0, kLeftMark, {kLeftMark}, R, 1},
      {1, "1", {}, R, 1},
      {1, "0", {}, L, 2},
      {1, kRightMark, {}, L, 4},
      {2, "1", {}, L, 2},
      {2, "0", word_of("0"), R, 3},
      {2, kLeftMark, {}, R, 3},
      {3, "1", word_of("1"), R, 3},
      {3, "0", {}, R, 1},
      {4, "1", {}, L, 4},
      {4, "0", word_of("1"), R, 5},
      {4, kLeftMark, word_of("1"), R, 5},
      {5, "1", word_of("0"), R, 5},
      {5, kRightMark, {kRightMark}, R, 6},
  };
  return t;
}

/// Increment with two registers, updated in parallel: X holds the input so
/// far, Y its successor.
inline RegisterTransducer fig4() {
  RegisterTransducer t;
  t.input = binary();
  t.output = binary();
  t.states = {"1"};
  t.registers = {"X", "Y"};
  t.initial = 0;
  t.init = {{"X", {}}, {"Y", word_of("1")}};
  t.transitions = {
      {0, "1", 0, {{"X", {reg("X"), lit("1")}}, {"Y", {reg("Y"), lit("0")}}}},
      {0, "0", 0, {{"Y", {reg("X"), lit("1")}}, {"X", {reg("X"), lit("0")}}}},
  };
  t.outputs = {{0, {reg("Y")}}};
  return t;
}

/// Copyless increment: Z holds the prefix up to the last 0, X the 1-block
/// after it and Y the same block with 1s turned into 0s. Output Z1Y.
inline RegisterTransducer fig5() {
  RegisterTransducer t;
  t.input = binary();
  t.output = binary();
  t.states = {"1", "2"};
  t.registers = {"X", "Y", "Z"};
  t.initial = 0;
  t.init = {{"X", {}}, {"Y", {}}, {"Z", {}}};
  const std::vector<std::pair<std::string, RegisterExpr>> one = {
      {"X", {reg("X"), lit("1")}}, {"Y", {reg("Y"), lit("0")}}, {"Z", {reg("Z")}}};
  t.transitions = {
      {0, "1", 0, one},
      {0, "0", 1, {{"Z", {reg("X")}}, {"X", {}}, {"Y", {}}}},
      {1, "1", 1, one},
      {1, "0", 1, {{"Z", {reg("Z"), lit("0"), reg("X")}}, {"X", {}}, {"Y", {}}}},
  };
  const RegisterExpr out = {reg("Z"), lit("1"), reg("Y")};
  t.outputs = {{0, out}, {1, out}};
  return t;
}

/// fig2right with its states renamed.
inline Nft fig2right_renamed() {
  Nft t = fig2right();
  t.states = {"p", "q"};
  return t;
}

/// fig2right restricted to inputs in 1*.
inline Nft fig2right_ones() {
  Nft t{binary(), binary(), {"1"}, {}, {}, {}};
  t.initial = {{0, word_of("1")}};
  t.final = {{0, {}}};
  t.transitions = {{0, "1", word_of("0"), 0}};
  return t;
}

/// fig2right with state 1 also final; not functional.
inline Nft fig2right_mutant() {
  Nft t = fig2right();
  t.final.push_back({0, {}});
  return t;
}

/// One-state identity 1DFT over the alphabet.
inline SequentialTransducer identity_copy(const Alphabet& sigma) {
  SequentialTransducer t{sigma, sigma, {"0"}, 0, {}, {}, {}};
  for (const auto& s : sigma) t.transitions.push_back({0, s, {s}, 0});
  t.terminal[0] = {};
  return t;
}

}  // namespace transducers::fixtures

#endif  // TRANSDUCERS_FIXTURES_HPP_
