#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "mdpforge/dsl.hpp"

namespace mdpforge::dsl {

namespace {

constexpr std::array<std::string_view, 5> kKeywords = {"state", "terminal", "action", "gamma", "reward"};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const int line = line_;
      const int col = col_;
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '\n') {
        tokens.push_back({TokenKind::Newline, "\n", line, col});
        advance();
      } else if (is_ident_start(c)) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
        std::string word(text_.substr(start, pos_ - start));
        const bool keyword = std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
        tokens.push_back({keyword ? TokenKind::Keyword : TokenKind::Ident, std::move(word), line, col});
      } else if (starts_number()) {
        tokens.push_back(number(line, col));
      } else if (auto kind = punctuation(c)) {
        tokens.push_back({*kind, std::string(1, c), line, col});
        advance();
      } else {
        throw SourceError(ErrorCategory::Syntax, {line, col}, "unexpected character '" + display(c) + "'");
      }
    }
    tokens.push_back({TokenKind::Eof, "", line_, col_});
    return tokens;
  }

 private:
  void advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // Columns count code points, not UTF-8 continuation bytes.
      ++col_;
    }
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  bool starts_number() const {
    char c = peek(0);
    std::size_t i = 0;
    if (c == '-' || c == '+') c = peek(++i);
    return is_digit(c) || (c == '.' && is_digit(peek(i + 1)));
  }

  Token number(int line, int col) {
    const std::size_t start = pos_;
    if (peek(0) == '-' || peek(0) == '+') advance();
    while (is_digit(peek(0))) advance();
    if (peek(0) == '.') {
      advance();
      while (is_digit(peek(0))) advance();
    }
    if (peek(0) == 'e' || peek(0) == 'E') {
      std::size_t i = 1;
      if (peek(i) == '-' || peek(i) == '+') ++i;
      if (is_digit(peek(i))) {
        for (std::size_t k = 0; k < i; ++k) advance();
        while (is_digit(peek(0))) advance();
      }
    }
    std::string text(text_.substr(start, pos_ - start));
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || end != digits.data() + digits.size() || !std::isfinite(value)) {
      throw SourceError(ErrorCategory::Syntax, {line, col}, "invalid number '" + text + "'");
    }
    Token token{TokenKind::Number, std::move(text), line, col};
    token.number = value;
    return token;
  }

  static std::optional<TokenKind> punctuation(char c) {
    switch (c) {
      case '&': return TokenKind::Amp;
      case '|': return TokenKind::Pipe;
      case '>': return TokenKind::Gt;
      case '*': return TokenKind::Star;
      case '(': return TokenKind::LParen;
      case ')': return TokenKind::RParen;
      default: return std::nullopt;
    }
  }

  static std::string display(char c) {
    if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7F) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\x%02X", static_cast<unsigned char>(c));
      return buf;
    }
    return std::string(1, c);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "IDENT";
    case TokenKind::Amp: return "AMP";
    case TokenKind::Pipe: return "PIPE";
    case TokenKind::Gt: return "GT";
    case TokenKind::Star: return "STAR";
    case TokenKind::LParen: return "LPAREN";
    case TokenKind::RParen: return "RPAREN";
    case TokenKind::Number: return "NUMBER";
    case TokenKind::Keyword: return "KEYWORD";
    case TokenKind::Newline: return "NEWLINE";
    case TokenKind::Eof: return "EOF";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace mdpforge::dsl
