#ifndef TRANSDUCERS_TESTS_SUPPORT_HPP_
#define TRANSDUCERS_TESTS_SUPPORT_HPP_

#include <sys/wait.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "transducers/transducers.hpp"

namespace testing_support {

using namespace transducers;

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline Rte fixture_rte(const std::string& name) { return parse_rte(read_file(fixture(name))); }

inline Word w(std::string_view text) { return parse_word_text(text); }

inline EvalOutcome unique(std::string_view text) { return EvalOutcome::unique(w(text)); }

// One evaluator for the whole run keeps domain automata warm across words.
inline EvalOutcome run_rte(const Rte& e, const Word& x) {
  static RteEvaluator ev;
  return ev.eval(e, x);
}

// Arithmetic oracles. Bit strings keep their width; a carry out of the top
// widens by one digit.

inline std::uint64_t value_msb_first(const Word& bits) {
  std::uint64_t n = 0;
  for (const auto& b : bits) n = 2 * n + (b == "1" ? 1 : 0);
  return n;
}

inline Word bits_msb_first(std::uint64_t n, std::size_t min_width) {
  Word out;
  while (n > 0) {
    out.push_back(n % 2 ? "1" : "0");
    n /= 2;
  }
  while (out.size() < min_width) out.push_back("0");
  return reverse_word(out);
}

inline Word add_msb_first(const Word& bits, std::uint64_t k) {
  return bits_msb_first(value_msb_first(bits) + k, bits.size());
}

inline Word add_lsb_first(const Word& bits, std::uint64_t k) {
  return reverse_word(add_msb_first(reverse_word(bits), k));
}

// Accepting-run count of an Nfa on a word, by dynamic programming over
// positions.
inline std::uint64_t count_runs(const Nfa& a, const Word& word) {
  std::vector<std::uint64_t> ways(a.num_states(), 0);
  for (State s : a.initial_states()) ways[s] = 1;
  for (const auto& letter : word) {
    auto sym = a.alphabet().find(letter);
    if (!sym) return 0;
    std::vector<std::uint64_t> next(a.num_states(), 0);
    for (State s = 0; s < a.num_states(); ++s) {
      if (ways[s] == 0) continue;
      for (State t : a.successors(s, *sym)) next[t] += ways[s];
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (State s : a.final_states()) total += ways[s];
  return total;
}

// Accepting-run count of an Nft on a word. Runs differ by initial entry,
// transition or final entry.
inline std::uint64_t count_nft_runs(const Nft& t, const Word& word) {
  std::vector<std::uint64_t> ways(t.states.size(), 0);
  for (const auto& i : t.initial) ++ways[i.state];
  for (const auto& letter : word) {
    std::vector<std::uint64_t> next(t.states.size(), 0);
    for (const auto& tr : t.transitions) {
      if (tr.input == letter) next[tr.to] += ways[tr.from];
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& f : t.final) total += ways[f.state];
  return total;
}

inline Word random_word(std::mt19937& rng, const Alphabet& sigma, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, sigma.size() - 1);
  Word out(len(rng));
  for (auto& s : out) s = sigma[pick(rng)];
  return out;
}

// Random Nft over {a,b} -> {0,1} with outputs of length <= 2.
inline Nft random_nft(std::mt19937& rng, std::size_t states, double density = 0.3) {
  const Alphabet sigma{"a", "b"};
  const Alphabet gamma{"0", "1"};
  Nft t{sigma, gamma, {}, {}, {}, {}};
  for (std::size_t s = 0; s < states; ++s) t.states.push_back("q" + std::to_string(s));
  std::bernoulli_distribution coin(density);
  std::bernoulli_distribution half(0.5);
  for (State p = 0; p < states; ++p) {
    for (const auto& a : sigma) {
      for (State q = 0; q < states; ++q) {
        if (coin(rng)) t.transitions.push_back({p, a, random_word(rng, gamma, 2), q});
      }
    }
  }
  t.initial.push_back({0, random_word(rng, gamma, 2)});
  if (states > 1 && half(rng)) t.initial.push_back({1, random_word(rng, gamma, 1)});
  for (State s = 0; s < states; ++s) {
    if (half(rng)) t.final.push_back({s, random_word(rng, gamma, 2)});
  }
  return t;
}

// Random functional Nft with a nonempty accepting condition, by rejection.
inline Nft random_functional_nft(std::mt19937& rng, std::size_t states) {
  for (;;) {
    Nft t = random_nft(rng, states, 0.35);
    if (check_functional(t).functional && !t.final.empty()) return t;
  }
}

struct CommandResult {
  int status = -1;
  std::string out;
};

// Runs a shell command, capturing stdout.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

inline std::string cli() { return CLI_PATH; }

inline std::string quote_arg(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

inline CommandResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = quote_arg(cli());
  for (const auto& a : args) cmd += " " + quote_arg(a);
  return run_command(cmd + " 2>/dev/null");
}

}  // namespace testing_support

#endif  // TRANSDUCERS_TESTS_SUPPORT_HPP_
