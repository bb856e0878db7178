#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdpforge/error.hpp"

namespace mdpforge {

struct StateDef {
  std::string name;
  std::size_t index = 0;
  bool terminal = false;

  bool operator==(const StateDef&) const = default;
};

struct ActionDef {
  std::string name;
  std::size_t index = 0;

  bool operator==(const ActionDef&) const = default;
};

struct NextState {
  std::size_t state = 0;
  bool operator==(const NextState&) const = default;
};

struct Reward {
  double value = 0.0;
  bool operator==(const Reward&) const = default;
};

/// A single consequence of taking an action in a state: a successor or a reward.
using Outcome = std::variant<NextState, Reward>;

struct TransitionEntry {
  std::size_t state = 0;
  std::size_t action = 0;
  Outcome outcome;
  double weight = 1.0;

  bool operator==(const TransitionEntry&) const = default;
};

/// Mutable MDP under construction.
///
/// States and actions get dense indices in declaration order. Transition
/// entries are recorded verbatim; duplicates are legal and their weights
/// accumulate when the spec is validated.
class MdpSpec {
 public:
  explicit MdpSpec(double discount = 1.0);

  /// Appends a state. Unnamed states are called "s<index>".
  std::size_t add_state(std::optional<std::string> name = std::nullopt, bool terminal = false);
  /// Appends an action. Unnamed actions are called "a<index>".
  std::size_t add_action(std::optional<std::string> name = std::nullopt);
  void add_transition(std::size_t state, std::size_t action, Outcome outcome, double weight = 1.0);
  void set_discount(double discount);

  const std::vector<StateDef>& states() const noexcept { return states_; }
  const std::vector<ActionDef>& actions() const noexcept { return actions_; }
  const std::vector<TransitionEntry>& entries() const noexcept { return entries_; }
  double discount() const noexcept { return discount_; }

  std::optional<std::size_t> find_state(std::string_view name) const;
  std::optional<std::size_t> find_action(std::string_view name) const;

 private:
  std::vector<StateDef> states_;
  std::vector<ActionDef> actions_;
  std::vector<TransitionEntry> entries_;
  double discount_;
};

struct RewardOutcome {
  double value = 0.0;
  double probability = 0.0;

  bool operator==(const RewardOutcome&) const = default;
};

struct ValidateOptions {
  /// Inject a self-loop for (state, action) pairs without any successor
  /// instead of rejecting the spec.
  bool allow_missing = false;
};

struct MissingPair {
  std::size_t state = 0;
  std::size_t action = 0;
  std::string state_name;
  std::string action_name;

  bool operator==(const MissingPair&) const = default;
};

/// Raised by validate() when some non-terminal (state, action) pair has no
/// successor. Lists every gap, in state-major index order.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<MissingPair> missing);

  const std::vector<MissingPair>& missing() const noexcept { return missing_; }

 private:
  std::vector<MissingPair> missing_;
};

/// Frozen, normalized model. Immutable once built and safe to share.
class ValidatedMdp {
 public:
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_actions() const noexcept { return actions_.size(); }
  const std::vector<StateDef>& states() const noexcept { return states_; }
  const std::vector<ActionDef>& actions() const noexcept { return actions_; }
  double discount() const noexcept { return discount_; }
  bool is_terminal(std::size_t state) const { return states_.at(state).terminal; }

  /// P(next | state, action).
  double transition(std::size_t state, std::size_t action, std::size_t next) const {
    return transitions_[row_offset(state, action) + next];
  }
  /// The full successor distribution of (state, action), indexed by state.
  std::span<const double> transition_row(std::size_t state, std::size_t action) const {
    return {transitions_.data() + row_offset(state, action), states_.size()};
  }
  /// Flat (state, action, next) tensor, row-major.
  std::span<const double> transition_tensor() const noexcept { return transitions_; }

  /// Categorical reward distribution; support points in first-declared order.
  const std::vector<RewardOutcome>& reward_distribution(std::size_t state, std::size_t action) const {
    return rewards_[state * actions_.size() + action];
  }
  double expected_reward(std::size_t state, std::size_t action) const {
    return expected_rewards_[state * actions_.size() + action];
  }
  std::span<const double> expected_reward_matrix() const noexcept { return expected_rewards_; }

  /// Copy of this model with a different discount factor.
  ValidatedMdp with_discount(double discount) const;

  bool operator==(const ValidatedMdp&) const = default;

 private:
  friend ValidatedMdp validate(const MdpSpec& spec, ValidateOptions options);

  std::size_t row_offset(std::size_t state, std::size_t action) const {
    return (state * actions_.size() + action) * states_.size();
  }

  std::vector<StateDef> states_;
  std::vector<ActionDef> actions_;
  double discount_ = 1.0;
  std::vector<double> transitions_;
  std::vector<std::vector<RewardOutcome>> rewards_;
  std::vector<double> expected_rewards_;
};

/// Normalizes per-(state, action) weights into the successor distribution and
/// an independent reward distribution, and checks successor coverage.
ValidatedMdp validate(const MdpSpec& spec, ValidateOptions options = {});

void check_discount(double discount);

}  // namespace mdpforge
