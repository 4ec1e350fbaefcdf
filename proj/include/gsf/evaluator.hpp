#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "gsf/statics.hpp"
#include "gsf/terms.hpp"
#include "gsf/types.hpp"

namespace gsf {

struct Configuration {
  Store store;
  ETermPtr term;
};

struct EvalOptions {
  std::size_t max_steps = 100000;
  bool dip_enabled = false;
  bool trace = false;
  bool debug_typecheck = false;
};

struct RuntimeError {
  std::size_t at_step = 0;
  std::string detail;
};

struct ValueOutcome {
  Store store;
  ETermPtr value;
  std::size_t steps = 0;
};

struct TimeoutOutcome {
  std::size_t steps;
};

using Outcome = std::variant<ValueOutcome, RuntimeError, TimeoutOutcome>;

inline bool is_value_outcome(const Outcome& o) { return std::holds_alternative<ValueOutcome>(o); }
inline bool is_error_outcome(const Outcome& o) { return std::holds_alternative<RuntimeError>(o); }
inline bool is_timeout_outcome(const Outcome& o) {
  return std::holds_alternative<TimeoutOutcome>(o);
}

struct StepOk {
  Configuration config;
  const char* rule;
};
struct AlreadyValue {};

using StepResult = std::variant<StepOk, RuntimeError, AlreadyValue>;

// One small step of the notion of reduction, under leftmost-innermost frames.
// Throws std::logic_error on stuck states (impossible for well-typed input).
StepResult step(const Configuration& c, const EvalOptions& opts);

// Elaborate a closed well-typed source term and reduce it.
Outcome eval(const TermPtr& t, const EvalOptions& opts = {});
Outcome eval_eps(Configuration c, const EvalOptions& opts = {});

struct TraceEntry {
  std::size_t step;
  const char* rule;
  Configuration config;  // configuration after the step
};

struct TraceResult {
  std::vector<TraceEntry> entries;
  Outcome outcome;
};

TraceResult trace(const TermPtr& t, const EvalOptions& opts = {});

// --- lockstep weak-DGG harness ---------------------------------------------

enum class LockstepKind { Held, LeftErrorFirst, PrecisionBroken, RightStuck };

struct LockstepVerdict {
  LockstepKind kind;
  std::size_t at_step = 0;
  std::string reason;
};

// Precondition: strict_term_precision_gsf holds for (t1, t2).
LockstepVerdict lockstep_check(const TermPtr& t1, const TermPtr& t2, const EvalOptions& opts);

std::string show_outcome(const Outcome& o);

}  // namespace gsf
