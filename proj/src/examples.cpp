#include "mdpforge/examples.hpp"

#include <array>

namespace mdpforge::examples {

namespace {

NextState to(std::size_t s) { return NextState{s}; }
Reward pay(double r) { return Reward{r}; }

}  // namespace

ValidatedMdp one_round_dmdp() {
  MdpSpec spec;
  const auto start = spec.add_state("start");
  const auto end = spec.add_state("end", true);
  const auto a0 = spec.add_action();
  const auto a1 = spec.add_action();
  spec.add_transition(start, a0, to(end));
  spec.add_transition(start, a1, to(end));
  spec.add_transition(start, a1, pay(1.0));
  return validate(spec);
}

ValidatedMdp one_round_ndmdp() {
  MdpSpec spec;
  const auto start = spec.add_state("start");
  const auto end = spec.add_state("end", true);
  const auto a0 = spec.add_action();
  const auto a1 = spec.add_action();
  spec.add_transition(start, a0, to(end));
  spec.add_transition(start, a1, to(end));
  spec.add_transition(start, a0, pay(-1.0));
  spec.add_transition(start, a0, pay(1.0));
  spec.add_transition(start, a1, pay(0.0));
  spec.add_transition(start, a1, pay(1.0));
  return validate(spec);
}

namespace {

// Shared skeleton of the two-round models; returns {after_a0, after_a1}.
std::array<std::size_t, 2> two_round_skeleton(MdpSpec& spec) {
  const auto start = spec.add_state("start");
  const auto after_a0 = spec.add_state("after_a0");
  const auto after_a1 = spec.add_state("after_a1");
  const auto end = spec.add_state("end", true);
  const auto a0 = spec.add_action();
  const auto a1 = spec.add_action();
  spec.add_transition(start, a0, to(after_a0));
  spec.add_transition(start, a1, to(after_a1));
  for (auto s : {after_a0, after_a1}) {
    for (auto a : {a0, a1}) spec.add_transition(s, a, to(end));
  }
  return {after_a0, after_a1};
}

}  // namespace

ValidatedMdp two_round_dmdp() {
  MdpSpec spec;
  const auto after = two_round_skeleton(spec);
  constexpr double payoff[2][2] = {{0.0, 3.0}, {1.0, 2.0}};
  for (std::size_t first = 0; first < 2; ++first) {
    for (std::size_t second = 0; second < 2; ++second) {
      spec.add_transition(after[first], second, pay(payoff[first][second]));
    }
  }
  return validate(spec);
}

ValidatedMdp two_round_ndmdp() {
  MdpSpec spec;
  const auto after = two_round_skeleton(spec);
  const std::vector<double> payoff[2][2] = {{{-1.0, 1.0}, {0.0, 0.0, 9.0}}, {{0.0, 2.0}, {2.0, 3.0}}};
  for (std::size_t first = 0; first < 2; ++first) {
    for (std::size_t second = 0; second < 2; ++second) {
      for (double r : payoff[first][second]) spec.add_transition(after[first], second, pay(r));
    }
  }
  return validate(spec);
}

ValidatedMdp multi_round_nmdp() {
  MdpSpec spec;
  const auto start = spec.add_state("start");
  const auto left = spec.add_state("left");
  const auto right = spec.add_state("right");
  const auto end = spec.add_state("end", true);
  const auto a0 = spec.add_action();
  const auto a1 = spec.add_action();

  spec.add_transition(start, a0, to(start), 3.0);
  spec.add_transition(start, a0, to(left));
  spec.add_transition(start, a0, pay(-1.0));
  spec.add_transition(start, a0, pay(1.0));
  spec.add_transition(start, a1, to(left));
  spec.add_transition(start, a1, to(right));

  spec.add_transition(left, a0, to(end));
  spec.add_transition(left, a0, to(start));
  spec.add_transition(left, a0, pay(2.0));
  spec.add_transition(left, a0, pay(0.0));
  spec.add_transition(left, a1, to(right));
  spec.add_transition(left, a1, pay(0.5));

  for (auto a : {a0, a1}) {
    spec.add_transition(right, a, to(end), 2.0);
    spec.add_transition(right, a, to(right));
  }
  spec.add_transition(right, a0, pay(1.0));
  spec.add_transition(right, a0, pay(-1.0), 3.0);
  spec.add_transition(right, a1, pay(0.0));
  return validate(spec);
}

std::span<const NamedExample> all() {
  static constexpr std::array<NamedExample, 5> kExamples = {{
      {"OneRoundDmdp", "one_round_dmdp.mdp", &one_round_dmdp},
      {"OneRoundNmdp", "one_round_ndmdp.mdp", &one_round_ndmdp},
      {"TwoRoundDmdp", "two_round_dmdp.mdp", &two_round_dmdp},
      {"TwoRoundNmdp", "two_round_ndmdp.mdp", &two_round_ndmdp},
      {"MultiRoundNmdp", "multi_round_nmdp.mdp", &multi_round_nmdp},
  }};
  return kExamples;
}

}  // namespace mdpforge::examples
