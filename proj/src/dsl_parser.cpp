#include <cstdio>
#include <unordered_map>

#include "mdpforge/dsl.hpp"

namespace mdpforge::dsl {

namespace {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

AstNode node_at(AstKind kind, SourcePos pos) {
  AstNode node;
  node.kind = kind;
  node.pos = pos;
  return node;
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::Eof: return "end of input";
    case TokenKind::Newline: return "end of line";
    case TokenKind::Keyword: return "keyword '" + token.text + "'";
    default: return std::string(to_string(token.kind)) + " '" + token.text + "'";
  }
}

// Recursive descent, one function per precedence level:
//
//   statement := alt ['>' alt]
//   alt       := conj ('|' conj)*
//   conj      := weighted ('&' weighted)*
//   weighted  := primary ('*' NUMBER)*
//   primary   := IDENT | 'reward' '(' NUMBER ')' | '(' statement ')'
class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::Eof) {
      throw SourceError(ErrorCategory::Syntax, {1, 1}, "token stream must end with EOF");
    }
  }

  DslDocument run() {
    while (peek().kind != TokenKind::Eof) {
      if (accept(TokenKind::Newline)) continue;
      if (peek().kind == TokenKind::Keyword && peek().text != "reward") {
        declaration();
      } else {
        doc_.statements.push_back(mapping());
      }
      end_of_statement();
    }
    return std::move(doc_);
  }

 private:
  const Token& peek() const { return tokens_[cursor_]; }

  const Token& next() {
    const Token& token = tokens_[cursor_];
    if (token.kind != TokenKind::Eof) ++cursor_;
    return token;
  }

  bool accept(TokenKind kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const Token& at, const std::string& expected) const {
    throw SourceError(ErrorCategory::Syntax, at.pos(), "expected " + expected + ", got " + describe(at));
  }

  const Token& expect(TokenKind kind, const std::string& expected) {
    if (peek().kind != kind) fail(peek(), expected);
    return next();
  }

  void end_of_statement() {
    if (peek().kind == TokenKind::Gt) {
      throw SourceError(ErrorCategory::Syntax, peek().pos(), "chained '>' is not allowed");
    }
    if (peek().kind != TokenKind::Eof) expect(TokenKind::Newline, "end of line");
  }

  void declaration() {
    const Token& keyword = next();
    if (keyword.text == "gamma") {
      if (doc_.gamma) {
        throw SourceError(ErrorCategory::Syntax, keyword.pos(), "gamma declared more than once");
      }
      const Token& value = expect(TokenKind::Number, "discount value");
      doc_.gamma = value.number;
      doc_.gamma_pos = value.pos();
      return;
    }

    if (peek().kind != TokenKind::Ident) fail(peek(), "identifier after '" + keyword.text + "'");
    while (peek().kind == TokenKind::Ident) {
      const Token& ident = next();
      if (names_.count(ident.text)) {
        throw SourceError(ErrorCategory::Syntax, ident.pos(), "duplicate declaration of '" + ident.text + "'");
      }
      if (keyword.text == "action") {
        names_[ident.text] = {AstKind::Action, doc_.actions.size()};
        doc_.actions.push_back({ident.text, ident.pos(), false});
      } else {
        names_[ident.text] = {AstKind::State, doc_.states.size()};
        doc_.states.push_back({ident.text, ident.pos(), keyword.text == "terminal"});
      }
    }
  }

  AstNode mapping() {
    AstNode lhs = alternatives();
    if (peek().kind != TokenKind::Gt) return lhs;
    const SourcePos pos = next().pos();
    AstNode rhs = alternatives();
    AstNode node = node_at(AstKind::Map, pos);
    node.children.push_back(std::move(lhs));
    node.children.push_back(std::move(rhs));
    return node;
  }

  AstNode alternatives() {
    AstNode first = conjunction();
    if (peek().kind != TokenKind::Pipe) return first;
    AstNode node = node_at(AstKind::Alt, first.pos);
    node.children.push_back(std::move(first));
    while (accept(TokenKind::Pipe)) node.children.push_back(conjunction());
    return node;
  }

  AstNode conjunction() {
    AstNode lhs = weighted();
    while (peek().kind == TokenKind::Amp) {
      const SourcePos pos = next().pos();
      AstNode node = node_at(AstKind::Conj, pos);
      node.children.push_back(std::move(lhs));
      node.children.push_back(weighted());
      lhs = std::move(node);
    }
    return lhs;
  }

  AstNode weighted() {
    AstNode operand = primary();
    while (peek().kind == TokenKind::Star) {
      next();
      const Token& factor = expect(TokenKind::Number, "weight");
      if (!(factor.number > 0.0)) {
        throw SourceError(ErrorCategory::Syntax, factor.pos(), "weight must be positive, got " + factor.text);
      }
      AstNode node = node_at(AstKind::Weighted, factor.pos());
      node.value = factor.number;
      node.children.push_back(std::move(operand));
      operand = std::move(node);
    }
    return operand;
  }

  AstNode primary() {
    const Token& token = peek();
    if (token.kind == TokenKind::Ident) {
      next();
      const auto it = names_.find(token.text);
      if (it == names_.end()) {
        throw SourceError(ErrorCategory::Syntax, token.pos(), "undeclared identifier '" + token.text + "'");
      }
      AstNode node = node_at(it->second.kind, token.pos());
      node.name = token.text;
      node.index = it->second.index;
      return node;
    }
    if (token.kind == TokenKind::Keyword && token.text == "reward") {
      next();
      expect(TokenKind::LParen, "'(' after reward");
      const Token& value = expect(TokenKind::Number, "reward value");
      expect(TokenKind::RParen, "')'");
      AstNode node = node_at(AstKind::Reward, token.pos());
      node.value = value.number;
      return node;
    }
    if (token.kind == TokenKind::LParen) {
      next();
      AstNode inner = mapping();
      if (peek().kind == TokenKind::Gt) {
        throw SourceError(ErrorCategory::Syntax, peek().pos(), "chained '>' is not allowed");
      }
      expect(TokenKind::RParen, "')'");
      return inner;
    }
    fail(token, "state, action, reward or '('");
  }

  struct Binding {
    AstKind kind;
    std::size_t index;
  };

  const std::vector<Token>& tokens_;
  std::size_t cursor_ = 0;
  DslDocument doc_;
  std::unordered_map<std::string, Binding> names_;
};

}  // namespace

std::string AstNode::to_string() const {
  auto join = [this](const char* head) {
    std::string out = std::string(head) + "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out += ",";
      out += children[i].to_string();
    }
    return out + ")";
  };
  switch (kind) {
    case AstKind::State:
    case AstKind::Action: return name;
    case AstKind::Reward: return "reward(" + format_number(value) + ")";
    case AstKind::Alt: return join("Alt");
    case AstKind::Conj: return join("Conj");
    case AstKind::Map: return join("Map");
    case AstKind::Weighted: return "Weighted(" + children.front().to_string() + "," + format_number(value) + ")";
  }
  return "?";
}

DslDocument parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

}  // namespace mdpforge::dsl
