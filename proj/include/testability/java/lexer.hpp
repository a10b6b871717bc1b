#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace testability::java {

enum class TokenKind : unsigned char {
  Identifier,
  Keyword,
  IntegerLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  Operator,  // operators and separators
  EndOfFile,
};

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string_view text;  // view into the lexed source
  int line = 0;           // 1-based
  int column = 0;         // 1-based, in bytes
};

struct CommentSpan {
  int first_line = 0;
  int last_line = 0;
  bool block = false;  // /* */ or /** */, otherwise //
};

struct LexedSource {
  std::vector<Token> tokens;  // always ends with EndOfFile
  std::vector<CommentSpan> comments;
  int line_count = 0;
};

/// Splits Java source into tokens and comment spans. `source` must outlive
/// the result. `>` is always emitted as a single-character token so that
/// nested generic closers lex correctly; the parser reassembles shift
/// operators from adjacent `>` tokens. Throws ParseError on unterminated
/// literals or comments and on stray characters.
LexedSource lex(std::string_view source, const std::string& path);

bool is_java_keyword(std::string_view word) noexcept;

}  // namespace testability::java
