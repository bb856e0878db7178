#pragma once

// Textual MDP description language.
//
// A document is a sequence of newline-separated statements:
//
//   gamma 0.9                 # optional, at most once
//   state start               # non-terminal states, in index order
//   terminal end              # terminal states share the state index space
//   action a0 a1
//   start & (a0 | a1) > end
//   start & a1 > reward(1.)
//
// Transition expressions use four operators. From tightest to loosest:
// `*` (weight), `&` (conjunction), `|` (alternatives), `>` (outcome mapping).
// Alternatives distribute over `&` and `>`, so a statement denotes the
// Cartesian product of its alternatives. Names must be declared before use.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdpforge/core.hpp"
#include "mdpforge/error.hpp"

namespace mdpforge::dsl {

enum class TokenKind { Ident, Amp, Pipe, Gt, Star, LParen, RParen, Number, Keyword, Newline, Eof };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string text;
  int line = 1;
  int col = 1;
  double number = 0.0;  // set for Number tokens

  SourcePos pos() const { return {line, col}; }
};

/// Splits source text into tokens. `#` starts a comment running to the end of
/// the line. Throws SourceError on an unexpected character.
std::vector<Token> tokenize(std::string_view text);

enum class AstKind { State, Action, Reward, Alt, Conj, Map, Weighted };

struct AstNode {
  AstKind kind = AstKind::State;
  SourcePos pos;
  std::string name;          // State, Action
  std::size_t index = 0;     // State, Action
  double value = 0.0;        // Reward value; Weighted factor
  std::vector<AstNode> children;  // Alt: >= 2; Conj, Map: {lhs, rhs}; Weighted: {operand}

  /// Compact structural rendering, e.g. "Map(Conj(a,b),Alt(c,d))".
  std::string to_string() const;
};

struct Declaration {
  std::string name;
  SourcePos pos;
  bool terminal = false;
};

struct DslDocument {
  std::vector<Declaration> states;
  std::vector<Declaration> actions;
  std::optional<double> gamma;
  SourcePos gamma_pos;
  std::vector<AstNode> statements;
};

/// Parses a token stream. Identifiers are resolved against the declarations
/// seen so far.
DslDocument parse(const std::vector<Token>& tokens);

/// Expands one statement into complete transition entries.
std::vector<TransitionEntry> expand_statement(const DslDocument& doc, const AstNode& statement);
/// Expands every statement, in order.
std::vector<TransitionEntry> expand(const DslDocument& doc);

/// Builds a spec through the core builder. Errors carry source positions.
MdpSpec build_spec(const DslDocument& doc);

/// Validation failure of a DSL document, positioned at the declaration of the
/// first state with a gap.
class DslValidationError : public SourceError {
 public:
  DslValidationError(SourcePos pos, const ValidationError& cause)
      : SourceError(ErrorCategory::Semantic, pos, cause.what()), missing_(cause.missing()) {}

  const std::vector<MissingPair>& missing() const noexcept { return missing_; }

 private:
  std::vector<MissingPair> missing_;
};

MdpSpec parse_spec(std::string_view text);
ValidatedMdp load_spec(std::string_view text, ValidateOptions options = {});
ValidatedMdp load_spec_file(const std::string& path, ValidateOptions options = {});

}  // namespace mdpforge::dsl
