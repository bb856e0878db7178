#include <fstream>
#include <sstream>

#include "mdpforge/dsl.hpp"

namespace mdpforge::dsl {

namespace {

// A transition with some roles still unfilled.
struct Partial {
  std::optional<std::size_t> state;
  std::optional<std::size_t> action;
  std::optional<Outcome> outcome;
  double weight = 1.0;
};

// Identifiers left of '>' are sources; right of it they are outcomes.
enum class Side { Source, Outcome };

[[noreturn]] void fail(SourcePos pos, const std::string& what) {
  throw SourceError(ErrorCategory::Syntax, pos, what);
}

Partial merge(const Partial& lhs, const Partial& rhs, SourcePos pos) {
  Partial out = lhs;
  if (rhs.state) {
    if (out.state) fail(pos, "duplicate role: state appears twice in one transition");
    out.state = rhs.state;
  }
  if (rhs.action) {
    if (out.action) fail(pos, "duplicate role: action appears twice in one transition");
    out.action = rhs.action;
  }
  if (rhs.outcome) {
    if (out.outcome) fail(pos, "duplicate role: outcome appears twice in one transition");
    out.outcome = rhs.outcome;
  }
  out.weight = lhs.weight * rhs.weight;
  return out;
}

std::vector<Partial> product(const std::vector<Partial>& lhs, const std::vector<Partial>& rhs, SourcePos pos) {
  std::vector<Partial> out;
  out.reserve(lhs.size() * rhs.size());
  for (const auto& l : lhs) {
    for (const auto& r : rhs) out.push_back(merge(l, r, pos));
  }
  return out;
}

std::vector<Partial> expand_node(const AstNode& node, Side side) {
  switch (node.kind) {
    case AstKind::State: {
      Partial p;
      if (side == Side::Source) {
        p.state = node.index;
      } else {
        p.outcome = NextState{node.index};
      }
      return {p};
    }
    case AstKind::Action: {
      if (side == Side::Outcome) fail(node.pos, "action '" + node.name + "' cannot be an outcome");
      Partial p;
      p.action = node.index;
      return {p};
    }
    case AstKind::Reward: {
      if (side == Side::Source) fail(node.pos, "reward must appear on the right of '>'");
      Partial p;
      p.outcome = Reward{node.value};
      return {p};
    }
    case AstKind::Alt: {
      std::vector<Partial> out;
      for (const auto& child : node.children) {
        auto part = expand_node(child, side);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case AstKind::Conj:
      return product(expand_node(node.children[0], side), expand_node(node.children[1], side), node.pos);
    case AstKind::Map:
      if (side == Side::Outcome) fail(node.pos, "nested '>' inside an outcome");
      return product(expand_node(node.children[0], Side::Source),
                     expand_node(node.children[1], Side::Outcome), node.pos);
    case AstKind::Weighted: {
      auto out = expand_node(node.children[0], side);
      for (auto& p : out) p.weight *= node.value;
      return out;
    }
  }
  fail(node.pos, "malformed expression");
}

}  // namespace

std::vector<TransitionEntry> expand_statement(const DslDocument&, const AstNode& statement) {
  std::vector<TransitionEntry> entries;
  for (const auto& p : expand_node(statement, Side::Source)) {
    std::string missing;
    auto note = [&missing](const char* role) { missing += missing.empty() ? role : std::string(", ") + role; };
    if (!p.state) note("state");
    if (!p.action) note("action");
    if (!p.outcome) note("outcome");
    if (!missing.empty()) fail(statement.pos, "incomplete transition: missing " + missing);
    entries.push_back({*p.state, *p.action, *p.outcome, p.weight});
  }
  return entries;
}

std::vector<TransitionEntry> expand(const DslDocument& doc) {
  std::vector<TransitionEntry> entries;
  for (const auto& statement : doc.statements) {
    auto part = expand_statement(doc, statement);
    entries.insert(entries.end(), part.begin(), part.end());
  }
  return entries;
}

MdpSpec build_spec(const DslDocument& doc) {
  MdpSpec spec;
  if (doc.gamma) {
    try {
      spec.set_discount(*doc.gamma);
    } catch (const Error& e) {
      throw SourceError(ErrorCategory::Semantic, doc.gamma_pos, e.what());
    }
  }
  for (const auto& s : doc.states) spec.add_state(s.name, s.terminal);
  for (const auto& a : doc.actions) spec.add_action(a.name);

  for (const auto& statement : doc.statements) {
    for (const auto& e : expand_statement(doc, statement)) {
      try {
        spec.add_transition(e.state, e.action, e.outcome, e.weight);
      } catch (const Error& err) {
        throw SourceError(err.category(), statement.pos, err.what());
      }
    }
  }
  return spec;
}

namespace {

DslDocument parse_document(std::string_view text) {
  DslDocument doc = parse(tokenize(text));
  if (doc.states.empty()) throw SourceError(ErrorCategory::Semantic, {1, 1}, "no states declared");
  if (doc.actions.empty()) throw SourceError(ErrorCategory::Semantic, {1, 1}, "no actions declared");
  return doc;
}

}  // namespace

MdpSpec parse_spec(std::string_view text) { return build_spec(parse_document(text)); }

ValidatedMdp load_spec(std::string_view text, ValidateOptions options) {
  const DslDocument doc = parse_document(text);
  const MdpSpec spec = build_spec(doc);
  try {
    return validate(spec, options);
  } catch (const ValidationError& e) {
    throw DslValidationError(doc.states[e.missing().front().state].pos, e);
  }
}

ValidatedMdp load_spec_file(const std::string& path, ValidateOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Io, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_spec(buffer.str(), options);
}

}  // namespace mdpforge::dsl
