#ifndef TRANSDUCERS_LEXER_HPP_
#define TRANSDUCERS_LEXER_HPP_

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "transducers/errors.hpp"
#include "transducers/words.hpp"

namespace transducers {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t col = 1;
};

enum class TokenKind { Ident, Quoted, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier or punctuation; raw body for quoted tokens
  Word word;         // decoded body of a quoted token
  SourceSpan span;
};

/// Tokenizer shared by the regex and expression grammars. '#' starts a
/// comment outside of quotes.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { tokens_ = run(); }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token next() {
    Token t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at(std::string_view punct) const {
    return peek().kind == TokenKind::Punct && peek().text == punct;
  }
  bool accept(std::string_view punct) {
    if (!at(punct)) return false;
    next();
    return true;
  }
  Token expect(std::string_view punct) {
    if (!at(punct)) fail("'" + std::string(punct) + "'");
    return next();
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().span.line, peek().span.col, expected);
  }

 private:
  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto advance = [&](std::size_t n) {
      for (std::size_t k = 0; k < n && i < text_.size(); ++k, ++i) {
        if (text_[i] == '\n') {
          ++line;
          col = 1;
        } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
          ++col;
        }
      }
    };
    static const char* const kPuncts[] = {"^r*", "<*>", "(", ")", "|", "+", ".", "*", "@",
                                          "[",   "]",   "{", "}", ",", ";", "="};
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (c == '#') {
        while (i < text_.size() && text_[i] != '\n') advance(1);
        continue;
      }
      Token tok;
      tok.span = {line, col};
      if (c == '\'') {
        std::size_t end = text_.find('\'', i + 1);
        if (end == std::string_view::npos) throw SyntaxError(line, col, "closing quote");
        tok.kind = TokenKind::Quoted;
        tok.text = std::string(text_.substr(i + 1, end - i - 1));
        try {
          tok.word = parse_word_text(tok.text);
        } catch (const FormatError&) {
          throw SyntaxError(line, col, "well-formed brace escape");
        }
        advance(end + 1 - i);
        out.push_back(std::move(tok));
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_' || text_[j] == '-')) {
          ++j;
        }
        tok.kind = TokenKind::Ident;
        tok.text = std::string(text_.substr(i, j - i));
        advance(j - i);
        out.push_back(std::move(tok));
        continue;
      }
      bool matched = false;
      for (const char* p : kPuncts) {
        std::string_view punct(p);
        if (text_.substr(i, punct.size()) == punct) {
          tok.kind = TokenKind::Punct;
          tok.text = std::string(punct);
          advance(punct.size());
          out.push_back(std::move(tok));
          matched = true;
          break;
        }
      }
      if (!matched) throw SyntaxError(line, col, "a token");
    }
    Token end;
    end.kind = TokenKind::End;
    end.span = {line, col};
    out.push_back(end);
    return out;
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace transducers

#endif  // TRANSDUCERS_LEXER_HPP_
