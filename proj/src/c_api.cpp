#include "mdpforge/c_api.h"

#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "mdpforge/dsl.hpp"
#include "mdpforge/env.hpp"

namespace {

using namespace mdpforge;

struct Instance {
  Instance(ValidatedMdp m, std::uint64_t seed)
      : mdp(std::move(m)), env(mdp, seed), policy(mdp.num_actions(), policy_seed(seed)) {}

  ValidatedMdp mdp;  // must precede env, which references it
  EnvSession env;
  RandomPolicy policy;
};

class Registry {
 public:
  mdpforge_handle add(std::unique_ptr<Instance> instance) {
    std::lock_guard lock(mutex_);
    const mdpforge_handle h = next_++;
    instances_.emplace(h, std::move(instance));
    return h;
  }

  Instance* find(mdpforge_handle h) {
    std::lock_guard lock(mutex_);
    auto it = instances_.find(h);
    return it == instances_.end() ? nullptr : it->second.get();
  }

  bool remove(mdpforge_handle h) {
    std::unique_ptr<Instance> doomed;
    std::lock_guard lock(mutex_);
    auto it = instances_.find(h);
    if (it == instances_.end()) return false;
    doomed = std::move(it->second);
    instances_.erase(it);
    return true;
  }

  std::size_t size() {
    std::lock_guard lock(mutex_);
    return instances_.size();
  }

 private:
  std::mutex mutex_;
  mdpforge_handle next_ = 1;
  std::unordered_map<mdpforge_handle, std::unique_ptr<Instance>> instances_;
};

Registry& registry() {
  static Registry r;
  return r;
}

int report(mdpforge_error* err, int code, const char* message, int line = 0, int col = 0) {
  if (err) {
    err->code = code;
    err->line = line;
    err->col = col;
    std::strncpy(err->message, message, sizeof err->message - 1);
    err->message[sizeof err->message - 1] = '\0';
  }
  return code;
}

int code_of(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Syntax:
    case ErrorCategory::Io: return MDPFORGE_ERR_PARSE;
    case ErrorCategory::Semantic: return MDPFORGE_ERR_SEMANTIC;
    case ErrorCategory::State: return MDPFORGE_ERR_STATE;
  }
  return MDPFORGE_ERR_SEMANTIC;
}

// Runs `body` against the handle's instance, translating exceptions.
template <typename Body>
int with_instance(mdpforge_handle h, mdpforge_error* err, Body&& body) {
  Instance* instance = registry().find(h);
  if (!instance) return report(err, MDPFORGE_ERR_STATE, "invalid handle");
  try {
    body(*instance);
  } catch (const SourceError& e) {
    return report(err, code_of(e.category()), e.message().c_str(), e.line(), e.col());
  } catch (const Error& e) {
    return report(err, code_of(e.category()), e.what());
  } catch (const std::exception& e) {
    return report(err, MDPFORGE_ERR_SEMANTIC, e.what());
  }
  return report(err, MDPFORGE_OK, "");
}

}  // namespace

extern "C" {

int mdpforge_create_env(const char* dsl_text, uint64_t seed, mdpforge_handle* out_handle, mdpforge_error* err) {
  if (!dsl_text || !out_handle) return report(err, MDPFORGE_ERR_STATE, "null argument");
  try {
    auto instance = std::make_unique<Instance>(dsl::load_spec(dsl_text), seed);
    *out_handle = registry().add(std::move(instance));
  } catch (const SourceError& e) {
    return report(err, code_of(e.category()), e.message().c_str(), e.line(), e.col());
  } catch (const Error& e) {
    return report(err, code_of(e.category()), e.what());
  } catch (const std::exception& e) {
    return report(err, MDPFORGE_ERR_SEMANTIC, e.what());
  }
  return report(err, MDPFORGE_OK, "");
}

int mdpforge_reset(mdpforge_handle handle, int64_t* out_state, mdpforge_error* err) {
  return with_instance(handle, err, [&](Instance& i) {
    const auto s = i.env.reset();
    if (out_state) *out_state = static_cast<int64_t>(s);
  });
}

int mdpforge_step(mdpforge_handle handle, int64_t action, int64_t* out_state, double* out_reward, int* out_done,
                  mdpforge_error* err) {
  return with_instance(handle, err, [&](Instance& i) {
    if (action < 0) throw SessionError(SessionError::Kind::InvalidAction, "invalid action " + std::to_string(action));
    const StepResult r = i.env.step(static_cast<std::size_t>(action));
    if (out_state) *out_state = static_cast<int64_t>(r.observation);
    if (out_reward) *out_reward = r.reward;
    if (out_done) *out_done = r.done ? 1 : 0;
  });
}

int mdpforge_render(mdpforge_handle handle, char* buffer, size_t capacity, size_t* out_size, mdpforge_error* err) {
  return with_instance(handle, err, [&](Instance& i) {
    const std::string dot = i.env.render_dot();
    if (out_size) *out_size = dot.size() + 1;
    if (buffer && capacity >= dot.size() + 1) std::memcpy(buffer, dot.c_str(), dot.size() + 1);
  });
}

int mdpforge_destroy(mdpforge_handle handle, mdpforge_error* err) {
  if (!registry().remove(handle)) return report(err, MDPFORGE_ERR_STATE, "invalid handle");
  return report(err, MDPFORGE_OK, "");
}

int mdpforge_num_states(mdpforge_handle handle, int64_t* out, mdpforge_error* err) {
  return with_instance(handle, err, [&](Instance& i) {
    if (out) *out = static_cast<int64_t>(i.mdp.num_states());
  });
}

int mdpforge_num_actions(mdpforge_handle handle, int64_t* out, mdpforge_error* err) {
  return with_instance(handle, err, [&](Instance& i) {
    if (out) *out = static_cast<int64_t>(i.mdp.num_actions());
  });
}

int mdpforge_sample_action(mdpforge_handle handle, int64_t* out_action, mdpforge_error* err) {
  return with_instance(handle, err, [&](Instance& i) {
    const auto a = i.policy.sample();
    if (out_action) *out_action = static_cast<int64_t>(a);
  });
}

size_t mdpforge_live_handles(void) { return registry().size(); }

}  // extern "C"
