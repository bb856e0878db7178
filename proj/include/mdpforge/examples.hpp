#pragma once

#include <span>
#include <string_view>

#include "mdpforge/core.hpp"

// Five small example MDPs. Four mirror the structure of the classic RL
// debugging environments (one or two rounds; deterministic or random
// reward); their reward constants are this project's own. Each has a DSL
// twin under fixtures/<file>.
namespace mdpforge::examples {

/// start --a0--> end (reward 0); start --a1--> end (reward 1).
ValidatedMdp one_round_dmdp();
/// As one_round_dmdp, but a0 pays -1 or +1 and a1 pays 0 or +1.
ValidatedMdp one_round_ndmdp();
/// Two choices in sequence; the payoff table is [[0, 3], [1, 2]].
ValidatedMdp two_round_dmdp();
/// Two choices in sequence with payoff distributions
/// [[{-1, 1}, {0, 0, 9}], [{0, 2}, {2, 3}]].
ValidatedMdp two_round_ndmdp();
/// Three non-terminal states with random rewards, random transitions and
/// self-loops; every policy is proper.
ValidatedMdp multi_round_nmdp();

struct NamedExample {
  std::string_view name;     // e.g. "OneRoundDmdp"
  std::string_view fixture;  // file name under fixtures/
  ValidatedMdp (*build)();
};

std::span<const NamedExample> all();

}  // namespace mdpforge::examples
