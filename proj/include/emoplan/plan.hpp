#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emoplan {

// One plan line: `<start>: (<name> <arg>...)  [<duration>]`.
struct TimedAction {
  double start = 0.0;
  std::string name;
  std::vector<std::string> args;
  double duration = 0.0;

  double end() const { return start + duration; }
  std::string signature() const;

  bool operator==(const TimedAction&) const = default;
};

struct Plan {
  std::vector<TimedAction> actions;  // ascending by start

  double makespan() const;
  bool operator==(const Plan&) const = default;
};

class PlanSyntaxError : public std::runtime_error {
 public:
  PlanSyntaxError(int line, const std::string& what)
      : std::runtime_error("plan line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Fixed three-decimal rendering used for plan times and durations.
std::string format_time(double seconds);

std::string print_plan_line(const TimedAction& action);
std::string print_plan(const Plan& plan);

// Blank lines and `;` comments are skipped. Actions are stably sorted by
// start time. Throws PlanSyntaxError.
Plan parse_plan(std::string_view text);

}  // namespace emoplan
