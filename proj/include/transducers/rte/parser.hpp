#ifndef TRANSDUCERS_RTE_PARSER_HPP_
#define TRANSDUCERS_RTE_PARSER_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "transducers/errors.hpp"
#include "transducers/lexer.hpp"
#include "transducers/regex.hpp"
#include "transducers/rte/ast.hpp"
#include "transducers/rte/stdlib.hpp"

namespace transducers {

struct RteParseOptions {
  // Alphabet for library names (copy, erase, duplicate, exchange) that are
  // used without a let-definition.
  Alphabet library_alphabet = Alphabet(Word{"0", "1"});
};

namespace detail {

// Grammar, loosest first:
//   program := ("let" IDENT "=" expr ";")* expr
//   expr    := hexpr ("@" expr)?
//   hexpr   := sum ("<*>" hexpr)?
//   sum     := term ("+" term)*
//   term    := postfix ("." postfix)*
//   postfix := primary ("*" | "^r*")*
//   primary := "(" QUOTED "|" QUOTED ")" | "(" expr ")" | IDENT
//            | "rev" "[" QUOTED "]" | "dup" "[" QUOTED "," QUOTED "]"
//            | ("chain2" | "rchain2") "[" REGEX "]" "{" expr "}"
class RteParser {
 public:
  RteParser(std::string_view text, RteParseOptions options) : lex_(text), options_(std::move(options)) {}

  Rte program() {
    while (lex_.peek().kind == TokenKind::Ident && lex_.peek().text == "let") {
      lex_.next();
      Token name = lex_.next();
      if (name.kind != TokenKind::Ident || keywords().count(name.text) != 0) {
        throw SyntaxError(name.span.line, name.span.col, "a name after 'let'");
      }
      lex_.expect("=");
      Rte body = expr();
      lex_.expect(";");
      lets_[name.text] = body;
    }
    Rte e = expr();
    if (lex_.peek().kind != TokenKind::End) lex_.fail("end of input");
    return e;
  }

 private:
  static const std::set<std::string>& keywords() {
    static const std::set<std::string> k = {"let", "rev", "dup", "chain2", "rchain2"};
    return k;
  }

  static Rte at(Rte e, SourceSpan span) {
    RteNode n = *e;
    n.span = span;
    return rte::make(std::move(n));
  }

  Rte expr() {
    SourceSpan span = lex_.peek().span;
    Rte f = hexpr();
    if (lex_.accept("@")) return at(rte::compose(f, expr()), span);
    return f;
  }

  Rte hexpr() {
    SourceSpan span = lex_.peek().span;
    Rte f = sum();
    if (lex_.accept("<*>")) return at(rte::hadamard(f, hexpr()), span);
    return f;
  }

  Rte sum() {
    SourceSpan span = lex_.peek().span;
    Rte f = term();
    while (lex_.accept("+")) f = at(rte::sum(f, term()), span);
    return f;
  }

  Rte term() {
    SourceSpan span = lex_.peek().span;
    Rte f = postfix();
    while (lex_.accept(".")) f = at(rte::cat(f, postfix()), span);
    return f;
  }

  Rte postfix() {
    SourceSpan span = lex_.peek().span;
    Rte f = primary();
    for (;;) {
      if (lex_.accept("*")) {
        f = at(rte::star(f), span);
      } else if (lex_.accept("^r*")) {
        f = at(rte::rstar(f), span);
      } else {
        return f;
      }
    }
  }

  Word quoted(const std::string& what) {
    if (lex_.peek().kind != TokenKind::Quoted) lex_.fail(what);
    return lex_.next().word;
  }

  Rte primary() {
    const Token tok = lex_.peek();
    if (lex_.at("(")) {
      if (lex_.peek(1).kind == TokenKind::Quoted && lex_.peek(2).kind == TokenKind::Punct && lex_.peek(2).text == "|") {
        lex_.next();
        Word in = quoted("input word");
        lex_.expect("|");
        Word out = quoted("output word");
        lex_.expect(")");
        return at(rte::atom(std::move(in), std::move(out)), tok.span);
      }
      lex_.next();
      Rte e = expr();
      lex_.expect(")");
      return e;
    }
    if (tok.kind != TokenKind::Ident) lex_.fail("an expression");
    lex_.next();
    if (tok.text == "rev") {
      lex_.expect("[");
      Alphabet a(quoted("alphabet"));
      lex_.expect("]");
      return at(rte::reverse(std::move(a)), tok.span);
    }
    if (tok.text == "dup") {
      lex_.expect("[");
      Alphabet a(quoted("alphabet"));
      lex_.expect(",");
      Token sep_tok = lex_.peek();
      Word sep = quoted("separator");
      if (sep.size() != 1) throw SyntaxError(sep_tok.span.line, sep_tok.span.col, "a single separator symbol");
      lex_.expect("]");
      return at(rte::duplicate(std::move(a), sep[0]), tok.span);
    }
    if (tok.text == "chain2" || tok.text == "rchain2") {
      lex_.expect("[");
      Regex k = regex::parse(lex_);
      lex_.expect("]");
      lex_.expect("{");
      Rte f = expr();
      lex_.expect("}");
      return at(rte::chain2(std::move(k), std::move(f), tok.text == "rchain2"), tok.span);
    }
    if (tok.text == "let") throw SyntaxError(tok.span.line, tok.span.col, "an expression ('let' only at the start)");
    auto it = lets_.find(tok.text);
    if (it != lets_.end()) return it->second;
    const auto& lib = stdlib_names();
    if (std::find(lib.begin(), lib.end(), tok.text) != lib.end() && tok.text != "fK" && tok.text != "gK" &&
        tok.text != "pairApplier") {
      return stdlib_expr(tok.text, options_.library_alphabet);
    }
    throw UnknownName("line " + std::to_string(tok.span.line) + ", column " + std::to_string(tok.span.col) +
                      ": unknown name '" + tok.text + "'");
  }

  Lexer lex_;
  RteParseOptions options_;
  std::map<std::string, Rte> lets_;
};

}  // namespace detail

inline Rte parse_rte(std::string_view text, RteParseOptions options = {}) {
  detail::RteParser p(text, std::move(options));
  return p.program();
}

}  // namespace transducers

#endif  // TRANSDUCERS_RTE_PARSER_HPP_
