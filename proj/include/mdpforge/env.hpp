#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mdpforge/core.hpp"
#include "mdpforge/error.hpp"

namespace mdpforge {

/// Seeded generator with a portable output stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Doubles are built from the top 53 bits by hand because the
/// standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF draw: the first index whose cumulative probability exceeds u.
/// Zero-probability entries are never returned.
std::size_t sample_categorical(std::span<const double> probabilities, double u);

class SessionError : public Error {
 public:
  enum class Kind { NotReset, SteppedWhenDone, InvalidAction };

  SessionError(Kind kind, const std::string& what) : Error(ErrorCategory::State, what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct StepInfo {
  std::size_t reward_index = 0;          // index into reward_distribution(s, a)
  double reward_probability = 0.0;
  double transition_probability = 0.0;   // P(s, a, observation)
};

struct StepResult {
  std::size_t observation = 0;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

/// One running episode over a validated model.
///
/// The model is referenced, not copied; it must outlive the session. Each
/// step draws the successor first and the reward second from the session's
/// generator, so equal (model, seed, actions) give bit-identical results.
class EnvSession {
 public:
  EnvSession(const ValidatedMdp& mdp, std::uint64_t seed) : mdp_(&mdp), seed_(seed), rng_(seed) {}

  /// Moves to the initial state (index 0) and clears the episode statistics.
  std::size_t reset();
  StepResult step(std::size_t action);

  /// "state=<name> steps=<n> return=<r> done=<bool>"
  std::string render_text() const;
  /// DOT graph of the model with the current state filled.
  std::string render_dot() const;

  const ValidatedMdp& mdp() const noexcept { return *mdp_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool is_reset() const noexcept { return reset_; }
  std::size_t current() const noexcept { return current_; }
  bool done() const noexcept { return done_; }
  std::size_t steps() const noexcept { return steps_; }
  double episode_reward() const noexcept { return episode_reward_; }
  std::size_t observation_space_size() const noexcept { return mdp_->num_states(); }
  std::size_t action_space_size() const noexcept { return mdp_->num_actions(); }

 private:
  void require_reset() const;

  const ValidatedMdp* mdp_;
  std::uint64_t seed_;
  Rng rng_;
  bool reset_ = false;
  std::size_t current_ = 0;
  bool done_ = false;
  std::size_t steps_ = 0;
  double episode_reward_ = 0.0;
};

inline EnvSession make_env(const ValidatedMdp& mdp, std::uint64_t seed) { return EnvSession(mdp, seed); }

/// Seed of the action-sampling stream paired with an environment seed.
inline std::uint64_t policy_seed(std::uint64_t env_seed) { return env_seed ^ 0x9E3779B97F4A7C15ULL; }

/// Uniform random policy, the analogue of sampling a discrete action space.
class RandomPolicy {
 public:
  RandomPolicy(std::size_t num_actions, std::uint64_t seed) : num_actions_(num_actions), rng_(seed) {}
  std::size_t sample() { return rng_.uniform_index(num_actions_); }

 private:
  std::size_t num_actions_;
  Rng rng_;
};

struct StepRecord {
  std::size_t t = 0;
  std::size_t state = 0;   // state the action was taken in
  std::size_t action = 0;
  double reward = 0.0;
  bool done = false;
  std::size_t next_state = 0;

  bool operator==(const StepRecord&) const = default;
};

struct Episode {
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
  double total_reward = 0.0;
  bool truncated = false;  // hit the step cap before reaching a terminal state

  bool operator==(const Episode&) const = default;
};

/// One random-policy episode: environment seeded with `seed`, policy with
/// policy_seed(seed). Stops at a terminal state or after `max_steps` steps.
Episode run_random_episode(const ValidatedMdp& mdp, std::uint64_t seed, std::size_t max_steps);

}  // namespace mdpforge
