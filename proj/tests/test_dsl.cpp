#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mdpforge/dsl.hpp"
#include "oracles.hpp"
#include "random_mdp.hpp"

using namespace mdpforge;
using namespace mdpforge::dsl;

namespace {

std::vector<TokenKind> kinds(std::string_view text) {
  std::vector<TokenKind> out;
  for (const auto& t : tokenize(text)) out.push_back(t.kind);
  return out;
}

const char* kHeader =
    "state a b e f sA sB sC sD\n"
    "action c d aA aB x\n";

std::string statement_ast(const std::string& statement) {
  const auto doc = parse(tokenize(std::string(kHeader) + statement));
  REQUIRE(doc.statements.size() == 1);
  return doc.statements[0].to_string();
}

std::vector<TransitionEntry> expand_text(const std::string& statements) {
  return expand(parse(tokenize(std::string(kHeader) + statements)));
}

SourceError error_of(const std::string& text) {
  try {
    load_spec(text);
  } catch (const SourceError& e) {
    return e;
  }
  FAIL("expected a SourceError for: " << text);
  return SourceError(ErrorCategory::Syntax, {0, 0}, "unreachable");
}

const char* kOneRound =
    "state start\n"
    "terminal end\n"
    "action a0 a1\n"
    "start & (a0 | a1) > end\n"
    "start & a1 > reward(1.)\n";

}  // namespace

TEST_CASE("tokenize examples") {
  using K = TokenKind;
  CHECK(kinds("start & a1 > reward(1.0)") ==
        std::vector<K>{K::Ident, K::Amp, K::Ident, K::Gt, K::Keyword, K::LParen, K::Number, K::RParen, K::Eof});
  CHECK(kinds("state * 3") == std::vector<K>{K::Keyword, K::Star, K::Number, K::Eof});
  try {
    tokenize("st@rt");
    FAIL("expected lex error");
  } catch (const SourceError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 3);
    CHECK(e.category() == ErrorCategory::Syntax);
  }
}

TEST_CASE("tokenize positions, comments and numbers") {
  const auto tokens = tokenize("# comment\n  foo | -2.5e1 # trailing\n(bar)");
  REQUIRE(tokens.size() == 9);
  CHECK(tokens[0].kind == TokenKind::Newline);
  CHECK(tokens[1].text == "foo");
  CHECK(tokens[1].line == 2);
  CHECK(tokens[1].col == 3);
  CHECK(tokens[3].kind == TokenKind::Number);
  CHECK(tokens[3].number == -25.0);
  CHECK(tokens[4].kind == TokenKind::Newline);
  CHECK(tokens[5].kind == TokenKind::LParen);
  CHECK(tokens[5].line == 3);
  CHECK(tokens[8].kind == TokenKind::Eof);
  CHECK(tokenize("1.")[0].number == 1.0);
  CHECK(tokenize(".5")[0].number == 0.5);
  CHECK_THROWS_AS(tokenize("1e999"), SourceError);
  // Columns count code points.
  try {
    tokenize("# é\né @");
    FAIL("expected lex error");
  } catch (const SourceError& e) {
    CHECK(e.line() == 2);
    CHECK(e.col() == 1);
  }
}

TEST_CASE("precedence") {
  CHECK(statement_ast("a & c > e | f") == "Map(Conj(a,c),Alt(e,f))");
  CHECK(statement_ast("sA & aA | sB & aB > e") == "Map(Alt(Conj(sA,aA),Conj(sB,aB)),e)");
  CHECK(statement_ast("(aA > sC) | (aB > sD)") == "Alt(Map(aA,sC),Map(aB,sD))");
  CHECK(statement_ast("a & x > a * 3 | b") == "Map(Conj(a,x),Alt(Weighted(a,3),b))");
  CHECK(statement_ast("a & x > reward(-1.) | reward(1.)") == "Map(Conj(a,x),Alt(reward(-1),reward(1)))");
  CHECK(statement_ast("(a | b) * 2 * 0.5 & c > e") == "Map(Conj(Weighted(Weighted(Alt(a,b),2),0.5),c),e)");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(parse(tokenize(std::string(kHeader) + "a & c > e > f")),
                       doctest::Contains("chained"), SourceError);
  CHECK_THROWS_WITH_AS(parse(tokenize(std::string(kHeader) + "(a & c > e > f)")),
                       doctest::Contains("chained"), SourceError);
  CHECK_THROWS_WITH_AS(parse(tokenize(std::string(kHeader) + "a & q > e")), doctest::Contains("undeclared"),
                       SourceError);
  CHECK_THROWS_AS(parse(tokenize(std::string(kHeader) + "a & c > e * 0")), SourceError);
  CHECK_THROWS_AS(parse(tokenize(std::string(kHeader) + "a & c > e * -1")), SourceError);
  CHECK_THROWS_AS(parse(tokenize(std::string(kHeader) + "a & c > (e")), SourceError);
  CHECK_THROWS_AS(parse(tokenize(std::string(kHeader) + "a & & c > e")), SourceError);
  CHECK_THROWS_AS(parse(tokenize("state a\nstate a\n")), SourceError);
  CHECK_THROWS_AS(parse(tokenize("gamma 0.5\ngamma 0.5\n")), SourceError);
  CHECK_THROWS_AS(parse(tokenize("state\n")), SourceError);
  // Declaration before use.
  CHECK_THROWS_AS(parse(tokenize("action x\na & x > a\nstate a\n")), SourceError);
  try {
    parse(tokenize(std::string(kHeader) + "a & c > e f"));
    FAIL("expected parse error");
  } catch (const SourceError& e) {
    CHECK(e.line() == 3);
    CHECK(e.col() == 11);
    CHECK(e.message().find("expected end of line") != std::string::npos);
  }
}

TEST_CASE("expansion examples") {
  const auto eight = expand_text("(a | b) & (c | d) > (e | f)");
  REQUIRE(eight.size() == 8);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& entry : eight) {
    CHECK(entry.weight == 1.0);
    seen.insert({entry.state, entry.action, std::get<NextState>(entry.outcome).state});
  }
  CHECK(seen.size() == 8);
  // a=0 b=1 e=2 f=3; c=0 d=1
  CHECK(eight.front() == TransitionEntry{0, 0, NextState{2}, 1.0});
  CHECK(eight.back() == TransitionEntry{1, 1, NextState{3}, 1.0});

  const auto weighted = expand_text("a & x > a * 3 | b");
  CHECK(weighted == std::vector<TransitionEntry>{{0, 4, NextState{0}, 3.0}, {0, 4, NextState{1}, 1.0}});

  const auto rewards = expand_text("a & x > reward(-1.) | reward(1.)");
  CHECK(rewards == std::vector<TransitionEntry>{{0, 4, Reward{-1.0}, 1.0}, {0, 4, Reward{1.0}, 1.0}});

  const auto mixed = expand_text("a & x > e | reward(2)");
  CHECK(mixed == std::vector<TransitionEntry>{{0, 4, NextState{2}, 1.0}, {0, 4, Reward{2.0}, 1.0}});

  const auto partial = expand_text("sA & ((aA > sC) | (aB > sD))");
  CHECK(partial == std::vector<TransitionEntry>{{4, 2, NextState{6}, 1.0}, {4, 3, NextState{7}, 1.0}});

  const auto nested = expand_text("(a * 2 | b) & c > (e * 3) * 0.5");
  CHECK(nested == std::vector<TransitionEntry>{{0, 0, NextState{2}, 3.0}, {1, 0, NextState{2}, 1.5}});
}

TEST_CASE("expansion errors") {
  CHECK_THROWS_WITH(expand_text("(aA > sC) | (aB > sD)"), doctest::Contains("missing state"));
  CHECK_THROWS_WITH(expand_text("a & b > e"), doctest::Contains("duplicate role"));
  CHECK_THROWS_WITH(expand_text("a & c & d > e"), doctest::Contains("duplicate role"));
  CHECK_THROWS_WITH(expand_text("a & c > e & f"), doctest::Contains("duplicate role"));
  CHECK_THROWS_WITH(expand_text("a & c > x"), doctest::Contains("cannot be an outcome"));
  CHECK_THROWS_WITH(expand_text("a & c & reward(1) > e"), doctest::Contains("right of '>'"));
  CHECK_THROWS_WITH(expand_text("a & c"), doctest::Contains("missing outcome"));
  CHECK_THROWS_WITH(expand_text("c > e"), doctest::Contains("missing state"));
  try {
    expand_text("\n\na & c > e\n  a & b > e");
    FAIL("expected expansion error");
  } catch (const SourceError& e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("load_spec examples") {
  const auto m = load_spec(kOneRound);
  CHECK(m.num_states() == 2);
  CHECK(m.num_actions() == 2);
  CHECK(m.states()[1].terminal);
  CHECK(m.expected_reward(0, 1) == 1.0);
  CHECK(m.discount() == 1.0);

  CHECK_THROWS_WITH_AS(load_spec(""), doctest::Contains("no states declared"), SourceError);
  CHECK_THROWS_WITH_AS(load_spec("# nothing\n"), doctest::Contains("no states declared"), SourceError);
  CHECK_THROWS_WITH_AS(load_spec("state s\n"), doctest::Contains("no actions declared"), SourceError);
  CHECK_THROWS_AS(load_spec(std::string("gamma 0.9\ngamma 0.8\n") + kOneRound), SourceError);
  CHECK(load_spec(std::string("gamma 0.9\n") + kOneRound).discount() == 0.9);

  const auto gamma_error = error_of(std::string("gamma 1.5\n") + kOneRound);
  CHECK(gamma_error.category() == ErrorCategory::Semantic);
  CHECK(gamma_error.line() == 1);
  CHECK(gamma_error.col() == 7);

  const auto terminal_error = error_of(std::string(kOneRound) + "end & a0 > start\n");
  CHECK(terminal_error.category() == ErrorCategory::Semantic);
  CHECK(terminal_error.line() == 6);
}

TEST_CASE("strict validation names the gap at the state declaration") {
  const std::string text =
      "state s0\n"
      "terminal s1\n"
      "action a0 a1\n"
      "s0 & a0 > s1\n"
      "s0 & a1 > reward(1)\n";
  try {
    load_spec(text);
    FAIL("expected validation error");
  } catch (const DslValidationError& e) {
    REQUIRE(e.missing().size() == 1);
    CHECK(e.missing()[0].state_name == "s0");
    CHECK(e.missing()[0].action_name == "a1");
    CHECK(e.message() == "missing transitions: MissingTransition(s0, a1)");
    CHECK(e.line() == 1);
    CHECK(e.col() == 7);
    CHECK(e.category() == ErrorCategory::Semantic);
  }
  const auto lenient = load_spec(text, {.allow_missing = true});
  CHECK(lenient.transition(0, 1, 0) == 1.0);
  CHECK(lenient.expected_reward(0, 1) == 1.0);
}

TEST_CASE("load_spec_file") {
  const auto m = load_spec_file(MDPFORGE_FIXTURES_DIR "/one_round_dmdp.mdp");
  CHECK(m == load_spec(kOneRound));
  try {
    load_spec_file(MDPFORGE_TEST_DATA_DIR "/does_not_exist.mdp");
    FAIL("expected IO error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Io);
  }
}

TEST_CASE("property: distributivity counts n*m*k") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng), m = size(rng), k = size(rng);
    std::ostringstream text;
    text << "state";
    for (int i = 0; i < n; ++i) text << " s" << i;
    for (int i = 0; i < k; ++i) text << " t" << i;
    text << "\naction";
    for (int i = 0; i < m; ++i) text << " a" << i;
    text << "\n";
    auto alt = [&text](const char* prefix, int count) {
      text << "(";
      for (int i = 0; i < count; ++i) text << (i ? " | " : "") << prefix << i;
      text << ")";
    };
    alt("s", n);
    text << " & ";
    alt("a", m);
    text << " > ";
    alt("t", k);
    const auto entries = expand(parse(tokenize(text.str())));
    CHECK(entries.size() == static_cast<std::size_t>(n * m * k));
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> distinct;
    for (const auto& e : entries) distinct.insert({e.state, e.action, std::get<NextState>(e.outcome).state});
    CHECK(distinct.size() == entries.size());
  }
}

TEST_CASE("property: parenthesization does not change expansion") {
  CHECK(expand_text("a & c > e") == expand_text("((a) & (c)) > ((e))"));
  CHECK(expand_text("a & c > e") == expand_text("(a & c > e)"));
  CHECK(expand_text("a & c > e") == expand_text("a & (c > e)"));
  CHECK(expand_text("a & c > e | f") == expand_text("(a) & c > (e | (f))"));
  CHECK(expand_text("a & c > e * 2") == expand_text("a & c > (e) * 2"));
}

TEST_CASE("property: round-trip through DSL text equals the core build") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto spec = testing::random_spec(rng);
    const std::string text = testing::to_dsl_text(spec);
    const auto parsed = parse_spec(text);
    CHECK(parsed.entries() == spec.entries());
    CHECK(parsed.states() == spec.states());
    CHECK(parsed.actions() == spec.actions());
    CHECK(load_spec(text) == validate(spec));
  }
}

TEST_CASE("property: error positions stay inside the source") {
  std::mt19937_64 rng(23);
  const std::string base = std::string("gamma 0.9\n") + kOneRound;
  const std::string junk = "&|>*()@$!#.-9 \nxreward";
  std::uniform_int_distribution<std::size_t> pick_pos(0, base.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_char(0, junk.size() - 1);
  int errors = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(trial % 3);
    for (int e = 0; e < edits; ++e) text[pick_pos(rng)] = junk[pick_char(rng)];
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    try {
      load_spec(text);
    } catch (const SourceError& e) {
      ++errors;
      REQUIRE(e.line() >= 1);
      REQUIRE(e.col() >= 1);
      const auto line = static_cast<std::size_t>(e.line());
      REQUIRE(line <= lines.size() + 1);
      const std::size_t width = line <= lines.size() ? lines[line - 1].size() : 0;
      CHECK(static_cast<std::size_t>(e.col()) <= width + 1);
    }
  }
  CHECK(errors > 500);
}
