#include "testability/java/lexer.hpp"

#include <algorithm>
#include <array>

#include "testability/core/errors.hpp"

namespace testability::java {
namespace {

constexpr std::array<std::string_view, 53> kKeywords{
    "abstract", "assert",     "boolean",   "break",      "byte",
    "case",     "catch",      "char",      "class",      "const",
    "continue", "default",    "do",        "double",     "else",
    "enum",     "extends",    "final",     "finally",    "float",
    "for",      "goto",       "if",        "implements", "import",
    "instanceof", "int",      "interface", "long",       "native",
    "new",      "package",    "private",   "protected",  "public",
    "return",   "short",      "static",    "strictfp",   "super",
    "switch",   "synchronized", "this",    "throw",      "throws",
    "transient", "try",       "void",      "volatile",   "while",
    "true",     "false",      "null",
};

// Longest first so a greedy scan picks the right one.
constexpr std::array<std::string_view, 21> kMultiCharOperators{
    "...", "<<=", "::", "->", ">=", "<=", "==", "!=", "&&", "||", "++",
    "--",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<",
};

constexpr std::string_view kSingleCharOperators = "(){}[];,.@=><!~?:+-*/&|^%";

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_hex_digit(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& path) : src_(src), path_(path) {}

  LexedSource run() {
    LexedSource out;
    while (true) {
      skip_whitespace_and_comments(out.comments);
      if (pos_ >= src_.size()) break;
      out.tokens.push_back(next_token());
    }
    Token eof;
    eof.kind = TokenKind::EndOfFile;
    eof.line = line_;
    eof.column = column();
    out.tokens.push_back(eof);
    // A trailing newline does not open a new line.
    out.line_count = line_;
    if (!src_.empty() && (src_.back() == '\n' || src_.back() == '\r')) {
      out.line_count = line_ - 1;
    }
    return out;
  }

 private:
  int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_, line_, column(), what);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  // Consumes one character, tracking \n, \r\n and lone \r line breaks.
  void advance() {
    const char c = src_[pos_++];
    if (c == '\n' || (c == '\r' && peek() != '\n')) {
      ++line_;
      line_start_ = pos_;
    }
  }

  void skip_whitespace_and_comments(std::vector<CommentSpan>& comments) {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        const int first = line_;
        while (pos_ < src_.size() && peek() != '\n' && peek() != '\r') advance();
        comments.push_back({first, first, false});
      } else if (c == '/' && peek(1) == '*') {
        const int first = line_;
        const int first_col = column();
        advance();
        advance();
        bool closed = false;
        while (pos_ < src_.size()) {
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed) throw ParseError(path_, first, first_col, "unterminated comment");
        comments.push_back({first, line_, true});
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, int line, int col) const {
    Token t;
    t.kind = kind;
    t.text = src_.substr(start, pos_ - start);
    t.line = line;
    t.column = col;
    return t;
  }

  Token next_token() {
    const std::size_t start = pos_;
    const int line = line_;
    const int col = column();
    const auto c = static_cast<unsigned char>(peek());

    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(peek()))) advance();
      Token t = make(TokenKind::Identifier, start, line, col);
      if (is_java_keyword(t.text)) t.kind = TokenKind::Keyword;
      return t;
    }
    if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
      return number(start, line, col);
    }
    if (c == '"') {
      quoted('"', "unterminated string literal");
      return make(TokenKind::StringLiteral, start, line, col);
    }
    if (c == '\'') {
      quoted('\'', "unterminated character literal");
      return make(TokenKind::CharLiteral, start, line, col);
    }
    for (std::string_view op : kMultiCharOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokenKind::Operator, start, line, col);
      }
    }
    if (kSingleCharOperators.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::Operator, start, line, col);
    }
    fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  void quoted(char quote, const char* unterminated) {
    advance();
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n' || peek() == '\r') fail(unterminated);
      const char c = peek();
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) fail(unterminated);
        advance();
        continue;
      }
      advance();
      if (c == quote) return;
    }
  }

  Token number(std::size_t start, int line, int col) {
    bool is_float = false;
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() &&
             (pred(static_cast<unsigned char>(peek())) || peek() == '_')) {
        advance();
      }
    };
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      digits(is_hex_digit);
      if (peek() == '.') {
        is_float = true;
        advance();
        digits(is_hex_digit);
      }
      if (peek() == 'p' || peek() == 'P') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        digits(is_digit);
      }
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      digits([](unsigned char d) { return d == '0' || d == '1'; });
    } else {
      digits(is_digit);
      if (peek() == '.' && is_digit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        advance();
        digits(is_digit);
      } else if (peek() == '.' && !is_ident_start(static_cast<unsigned char>(peek(1))) &&
                 peek(1) != '.') {
        // "1." is a valid double literal
        is_float = true;
        advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (!is_digit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
        digits(is_digit);
      }
    }
    const char suffix = peek();
    if (suffix == 'l' || suffix == 'L') {
      advance();
    } else if (suffix == 'f' || suffix == 'F' || suffix == 'd' || suffix == 'D') {
      is_float = true;
      advance();
    }
    if (is_ident_part(static_cast<unsigned char>(peek()))) fail("malformed number literal");
    return make(is_float ? TokenKind::FloatLiteral : TokenKind::IntegerLiteral, start,
                line, col);
  }

  std::string_view src_;
  const std::string& path_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
};

}  // namespace

bool is_java_keyword(std::string_view word) noexcept {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexedSource lex(std::string_view source, const std::string& path) {
  // Skip a UTF-8 byte order mark.
  if (source.starts_with("\xEF\xBB\xBF")) {
    LexedSource out = Lexer(source.substr(3), path).run();
    return out;
  }
  return Lexer(source, path).run();
}

}  // namespace testability::java
