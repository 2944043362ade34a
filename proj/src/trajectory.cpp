#include <algorithm>
#include <cmath>
#include <sstream>

#include "emoplan/validator.hpp"
#include "replay.hpp"

namespace emoplan {

InvalidPlan::InvalidPlan(ValidationReport report)
    : std::runtime_error("plan does not validate"), report_(std::move(report)) {}

Trajectory simulate_trajectory(const Task& task, const Plan& plan, double sample_dt,
                               const ValidationOptions& opts, const emotion::Thresholds& th) {
  if (!(sample_dt > 0.0)) throw std::invalid_argument("sample period must be positive");

  struct Snapshot {
    double time;
    TimedState state;
  };
  std::vector<Snapshot> events;
  ValidationOptions first_failure = opts;
  first_failure.all_violations = false;
  ValidationReport report = detail::replay(
      task, plan, first_failure,
      [&](const TimedState& s) { events.push_back({s.time, s}); });
  if (!report.valid()) throw InvalidPlan(std::move(report));

  const TimedState init = initial_state(task);
  const double makespan = report.makespan;

  Trajectory traj;
  traj.sample_period = sample_dt;
  auto emit = [&](double t, const TimedState& s) {
    for (const auto& child : task.children()) {
      const PadState pad = pad_of(task, s, child);
      traj.samples.push_back({t, child, pad, emotion::classify(pad, th)});
    }
  };

  // Grid samples see the state left by events strictly before them; an event
  // sample at the same instant follows its grid sample.
  std::size_t next_event = 0;
  const TimedState* current = &init;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * sample_dt;
    if (t > makespan + kTimeTolerance) break;
    while (next_event < events.size() && events[next_event].time < t - kTimeTolerance) {
      emit(events[next_event].time, events[next_event].state);
      current = &events[next_event].state;
      ++next_event;
    }
    emit(t, *current);
  }
  for (; next_event < events.size(); ++next_event) {
    emit(events[next_event].time, events[next_event].state);
  }
  std::stable_sort(traj.samples.begin(), traj.samples.end(),
                   [](const TrajectorySample& a, const TrajectorySample& b) {
                     if (a.time != b.time) return a.time < b.time;
                     return a.child < b.child;
                   });
  return traj;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::ostringstream os;
  os << "time,child,pleasure,arousal,dominance,emotion\n";
  for (const auto& s : trajectory.samples) {
    os << format_time(s.time) << ',' << s.child << ',' << format_time(s.pad.pleasure) << ','
       << format_time(s.pad.arousal) << ',' << format_time(s.pad.dominance) << ','
       << emotion::to_string(s.emotion) << '\n';
  }
  return os.str();
}

}  // namespace emoplan
