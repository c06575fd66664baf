// Command-line front end.
//
// Exit status: 0 success or positive verdict, 2 input not in the domain,
// 3 negative verdict / ambiguous output / mismatch, 1 usage or load error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "transducers/transducers.hpp"

namespace {

using namespace transducers;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNotInDomain = 2;
constexpr int kNegative = 3;

int outcome_status(const EvalOutcome& o) {
  switch (o.kind) {
    case EvalOutcome::Kind::Unique:
      return kOk;
    case EvalOutcome::Kind::NotInDomain:
      return kNotInDomain;
    case EvalOutcome::Kind::Ambiguous:
      return kNegative;
  }
  return kError;
}

Nft load_nft(const std::string& path) {
  Machine m = load_machine(path);
  if (auto* t = std::get_if<Nft>(&m)) return *t;
  if (auto* t = std::get_if<SequentialTransducer>(&m)) return to_nft(*t);
  throw FormatError("'" + path + "' is a " + machine_kind(m) + " machine; expected nft or sequential");
}

template <class T>
T load_kind(const std::string& path, const char* kind) {
  Machine m = load_machine(path);
  if (auto* t = std::get_if<T>(&m)) return *t;
  throw FormatError("'" + path + "' is a " + machine_kind(m) + " machine; expected " + kind);
}

std::string show(const std::optional<Word>& w) { return w ? display_word(*w) : "undefined"; }

struct EvalArgs {
  std::string machine;
  std::string expr;
  std::string pipeline;
  std::string input;
  bool raw = false;
};

int run_eval(const EvalArgs& a) {
  const bool strip = !a.raw;
  FunctionRef f;
  if (!a.machine.empty()) {
    f = machine_ref(a.machine, load_machine(a.machine), strip);
  } else if (!a.expr.empty()) {
    f = rte_ref(a.expr, parse_rte(read_file(a.expr)));
  } else {
    f = load_ref(a.pipeline, strip);
  }
  EvalOutcome o = f.eval(parse_word_text(a.input));
  std::cout << describe(o) << "\n";
  return outcome_status(o);
}

int run_functional(const std::string& path) {
  auto v = check_functional(load_nft(path));
  if (v.functional) {
    std::cout << "FUNCTIONAL\n";
    return kOk;
  }
  std::cout << "NOT-FUNCTIONAL witness=" << display_word(v.witness) << " outputs=" << display_word(v.output1) << ","
            << display_word(v.output2) << "\n";
  return kNegative;
}

int run_equiv(const std::string& a, const std::string& b) {
  auto r = equiv_functional(load_nft(a), load_nft(b));
  if (r.equivalent()) {
    std::cout << "EQUIVALENT\n";
    return kOk;
  }
  std::cout << "NOT-EQUIVALENT "
            << (r.kind == FunctionalEquivalence::Kind::DomainOnly ? "domain" : "outputs")
            << " word=" << display_word(r.word) << " left=" << show(r.left) << " right=" << show(r.right) << "\n";
  return kNegative;
}

int run_unambiguous(const std::string& path) {
  auto v = check_unambiguous(parse_rte(read_file(path)));
  if (v.unambiguous) {
    std::cout << "UNAMBIGUOUS\n";
    return kOk;
  }
  std::cout << "AMBIGUOUS node=" << v.node << " witness=" << display_word(v.witness) << " parses=" << v.parse1
            << " | " << v.parse2 << "\n";
  return kNegative;
}

int run_copyless(const std::string& path) {
  auto t = load_kind<RegisterTransducer>(path, "register");
  auto v = validate_copyless(t);
  if (v.copyless) {
    std::cout << "COPYLESS\n";
    return kOk;
  }
  std::cout << "VIOLATION state=" << t.states[v.state] << " symbol=" << symbol_name(v.symbol) << " register=" << v.reg
            << "\n";
  return kNegative;
}

int run_compose(const std::string& a, const std::string& b, const std::string& out) {
  auto first = load_kind<SequentialTransducer>(a, "sequential");
  auto second = load_kind<SequentialTransducer>(b, "sequential");
  save_machine(out, compose_sequential(first, second));
  return kOk;
}

int run_elgot(const std::string& path, const std::string& prefix) {
  auto d = elgot_decompose(load_nft(path));
  save_machine(prefix + ".f.json", d.adorner);
  save_machine(prefix + ".g.json", d.reader);
  return kOk;
}

int run_rewrite(const std::string& pass_name, const std::string& path, const std::string& out) {
  auto pass = pass_from_name(pass_name);
  if (!pass) throw UnknownName("unknown pass '" + pass_name + "'");
  write_file(out, to_text(rewrite(parse_rte(read_file(path)), *pass)) + "\n");
  return kOk;
}

int run_dom(const std::string& path, const std::string& out) {
  auto d = rte_domain(parse_rte(read_file(path)));
  write_file(out, dump_json(nfa_to_json(nfa_trim(d.nfa))));
  std::cout << (d.exact ? "exact" : "over-approx") << "\n";
  return kOk;
}

int run_dot(const std::string& path, const std::string& out) {
  write_file(out, export_dot(load_machine(path)));
  return kOk;
}

struct DiffArgs {
  std::string left;
  std::string right;
  std::string alphabet;
  std::size_t max_len = 10;
  bool strip = false;
};

int run_difftest(const DiffArgs& a) {
  FunctionRef left = load_ref(a.left, a.strip);
  FunctionRef right = load_ref(a.right, a.strip);
  Alphabet sigma = a.alphabet.empty() ? left.input : Alphabet(parse_word_text(a.alphabet));
  auto r = difftest(left, right, sigma, a.max_len, a.strip);
  if (r.equal) {
    std::cout << "EQUAL words=" << r.words_tested << "\n";
    return kOk;
  }
  std::cout << "MISMATCH word=" << display_word(r.word) << " left=" << describe(r.left_outcome)
            << " right=" << describe(r.right_outcome) << "\n";
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate, check, convert and compare string transducers and transducer expressions."};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Apply a machine, expression or pipeline to one input word");
  auto* src_machine = eval->add_option("--machine", eval_args.machine, "Machine file (JSON)");
  auto* src_expr = eval->add_option("--expr", eval_args.expr, "Expression file");
  auto* src_pipe = eval->add_option("--pipeline", eval_args.pipeline, "Stages joined by ∘, applied right to left");
  src_machine->excludes(src_expr)->excludes(src_pipe);
  src_expr->excludes(src_pipe);
  eval->add_option("--input", eval_args.input, "Input word; {nl} {bs} {pct} {hash} name special symbols")->required();
  eval->add_flag("--raw", eval_args.raw, "Keep the endmarkers written by two-way machines");

  auto* check = app.add_subcommand("check", "Decision procedures");
  check->require_subcommand(1);
  std::string f1, f2;
  auto* functional = check->add_subcommand("functional", "Is the transducer functional?");
  functional->add_option("file", f1)->required();
  auto* equiv = check->add_subcommand("equiv", "Are two functional transducers equivalent?");
  equiv->add_option("first", f1)->required();
  equiv->add_option("second", f2)->required();
  auto* unamb = check->add_subcommand("unambiguous", "Does every parsing node of the expression parse uniquely?");
  unamb->add_option("expr", f1)->required();
  auto* copyless = check->add_subcommand("copyless", "Is the register transducer copyless?");
  copyless->add_option("file", f1)->required();

  std::string out;
  auto* compose = app.add_subcommand("compose", "Sequential composition: apply A, then B");
  compose->add_option("a", f1)->required();
  compose->add_option("b", f2)->required();
  compose->add_option("-o", out)->required();

  auto* elgot = app.add_subcommand("decompose-elgot", "Write PREFIX.f.json and PREFIX.g.json (rev∘g∘rev∘f)");
  elgot->add_option("file", f1)->required();
  elgot->add_option("-o", out, "Output prefix")->required();

  std::string pass;
  auto* rw = app.add_subcommand("rewrite", "Eliminate a constructor from an expression");
  rw->add_option("--pass", pass, "hadamard-elim | rstar-elim | chain2-elim | rchain2-elim")->required();
  rw->add_option("expr", f1)->required();
  rw->add_option("-o", out)->required();

  auto* dom = app.add_subcommand("dom", "Domain automaton of an expression");
  dom->add_option("expr", f1)->required();
  dom->add_option("-o", out)->required();

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a machine");
  dot->add_option("file", f1)->required();
  dot->add_option("-o", out)->required();

  DiffArgs diff_args;
  auto* diff = app.add_subcommand("difftest", "Compare two functions on all words up to a length");
  diff->add_option("--left", diff_args.left)->required();
  diff->add_option("--right", diff_args.right)->required();
  diff->add_option("--alphabet", diff_args.alphabet, "Symbols to enumerate (default: input alphabet of --left)");
  diff->add_option("--maxlen", diff_args.max_len, "Longest word tested")->capture_default_str();
  diff->add_flag("--strip", diff_args.strip, "Drop endmarkers before comparing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*eval) {
      if (eval_args.machine.empty() && eval_args.expr.empty() && eval_args.pipeline.empty()) {
        std::cerr << "eval: one of --machine, --expr, --pipeline is required\n";
        return kError;
      }
      return run_eval(eval_args);
    }
    if (*functional) return run_functional(f1);
    if (*equiv) return run_equiv(f1, f2);
    if (*unamb) return run_unambiguous(f1);
    if (*copyless) return run_copyless(f1);
    if (*compose) return run_compose(f1, f2, out);
    if (*elgot) return run_elgot(f1, out);
    if (*rw) return run_rewrite(pass, f1, out);
    if (*dom) return run_dom(f1, out);
    if (*dot) return run_dot(f1, out);
    if (*diff) return run_difftest(diff_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
