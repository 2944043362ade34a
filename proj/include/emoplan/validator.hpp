#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "emoplan/emotion.hpp"
#include "emoplan/grounding.hpp"
#include "emoplan/plan.hpp"
#include "emoplan/temporal_state.hpp"

namespace emoplan {

inline constexpr double kDefaultEpsilon = 0.001;

// Slack for comparing times parsed from three-decimal plan text.
inline constexpr double kTimeTolerance = 1e-6;

struct ValidationOptions {
  double epsilon = kDefaultEpsilon;
  // Diagnostic mode: keep replaying after a failure, skipping the effects of
  // the failed step, and collect every violation.
  bool all_violations = false;
};

struct ValidationReport {
  enum class Verdict { Valid, Invalid };

  Verdict verdict = Verdict::Invalid;
  std::vector<Violation> violations;
  TimedState final_state;
  double makespan = 0.0;

  bool valid() const { return verdict == Verdict::Valid; }
};

/// Replays `plan` on the task through temporal_state transitions, starts and
/// pending ends interleaved chronologically (ends first on ties). Each start
/// must come at least epsilon after the previous event.
ValidationReport validate(const Task& task, const Plan& plan, const ValidationOptions& opts = {});

struct TrajectorySample {
  double time = 0.0;
  std::string child;
  PadState pad;
  emotion::EmotionLabel emotion = emotion::EmotionLabel::Unclassified;
};

struct Trajectory {
  double sample_period = 1.0;
  std::vector<TrajectorySample> samples;  // sorted by time, then child
};

class InvalidPlan : public std::runtime_error {
 public:
  explicit InvalidPlan(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Samples every child's PAD values at t = 0, dt, 2dt, ... <= makespan (the
/// state just before any event at that instant) and once right after every
/// event that applies effects. Throws InvalidPlan if the plan does not
/// validate.
Trajectory simulate_trajectory(const Task& task, const Plan& plan, double sample_dt,
                               const ValidationOptions& opts = {},
                               const emotion::Thresholds& th = {});

// `time,child,pleasure,arousal,dominance,emotion` with three decimals.
std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace emoplan
