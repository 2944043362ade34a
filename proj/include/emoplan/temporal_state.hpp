#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "emoplan/grounding.hpp"

namespace emoplan {

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A fluent was read before any assignment.
class MissingFluent : public EvaluationError {
 public:
  explicit MissingFluent(const std::string& fluent)
      : EvaluationError("fluent " + fluent + " has no value") {}
};

class DivisionByZero : public EvaluationError {
 public:
  DivisionByZero() : EvaluationError("division by zero") {}
};

/// Dense set of ground facts.
class FactSet {
 public:
  FactSet() = default;
  explicit FactSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  bool contains(FactId f) const {
    const auto w = f.value / 64;
    return w < words_.size() && (words_[w] >> (f.value % 64)) & 1u;
  }
  void insert(FactId f);
  void erase(FactId f);
  std::size_t size() const;
  std::vector<FactId> to_vector() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const FactSet&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Value of every ground fluent, with unassigned entries tracked explicitly.
class FluentValuation {
 public:
  FluentValuation() = default;
  explicit FluentValuation(std::size_t universe)
      : values_(universe, 0.0), assigned_(universe, false) {}

  bool has(FluentId f) const { return f.value < assigned_.size() && assigned_[f.value]; }
  // Throws MissingFluent (named by the task, when given) if unassigned.
  double get(FluentId f, const Task* task = nullptr) const;
  void set(FluentId f, double value);
  std::size_t size() const { return values_.size(); }

  bool operator==(const FluentValuation&) const = default;

 private:
  std::vector<double> values_;
  std::vector<bool> assigned_;
};

struct PadState {
  double pleasure = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  bool operator==(const PadState&) const = default;
};

inline constexpr double kPadMin = -1.0;
inline constexpr double kPadMax = 1.0;

double clamp_pad(double value);

// A started action waiting for its end event.
struct PendingEnd {
  double end_time = 0.0;
  std::size_t action = 0;
  double duration = 0.0;
  double start_time = 0.0;
  std::uint64_t sequence = 0;  // insertion order, breaks end_time ties

  bool operator==(const PendingEnd&) const = default;
};

/// Facts, fluents and wall-clock time, plus the agenda of actions that have
/// started but not ended. Transitions never mutate their input.
struct TimedState {
  double time = 0.0;
  std::optional<double> last_event_time;
  FactSet facts;
  FluentValuation fluents;
  std::vector<PendingEnd> agenda;  // sorted by (end_time, sequence)
  std::uint64_t next_sequence = 0;

  bool operator==(const TimedState&) const = default;
};

struct Violation {
  enum class Kind {
    UnsatisfiedAtStart,
    UnsatisfiedAtEnd,
    UnsatisfiedOverAll,
    EpsilonViolation,
    GoalUnsatisfied,
    DurationOutOfBounds,
    UnknownAction,
  };

  Kind kind = Kind::GoalUnsatisfied;
  double time = 0.0;
  std::optional<std::size_t> action;         // index into Task::actions()
  std::optional<GroundCondition> condition;  // the failing condition, if any
  std::string detail;

  // One line: kind, time, action and condition.
  std::string describe(const Task& task) const;
};

const char* to_string(Violation::Kind kind);

TimedState initial_state(const Task& task);

double evaluate(const GroundExpr& expr, const FluentValuation& fluents,
                std::optional<double> duration = std::nullopt, const Task* task = nullptr);

bool holds(const GroundCondition& condition, const TimedState& state,
           const Task* task = nullptr);

bool goal_holds(const Task& task, const TimedState& state);

PadState pad_of(const Task& task, const TimedState& state, const std::string& child);

// Moves the clock to `time` with no event. Requires time >= state.time and
// no pending end strictly before `time`.
TimedState wait_until(const TimedState& state, double time);

using StartResult = std::variant<TimedState, Violation>;

/// Starts `action` at `state.time` for `duration` seconds. Checks the
/// duration bound, at-start and over-all conditions, applies at-start effects
/// (PAD fluents clamped), re-checks the over-all conditions of every running
/// action, and schedules the end.
StartResult apply_start(const Task& task, const TimedState& state, std::size_t action,
                        double duration);

struct EndEvent {
  TimedState state;
  std::size_t ended = 0;
};

using EndResult = std::variant<EndEvent, Violation>;

/// Jumps to the earliest pending end, checks that action's over-all and
/// at-end conditions, applies its at-end effects and re-checks the over-all
/// conditions of the actions still running. Throws std::logic_error on an
/// empty agenda.
EndResult advance_to_next_end(const Task& task, const TimedState& state);

}  // namespace emoplan
