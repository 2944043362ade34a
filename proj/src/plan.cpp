#include "emoplan/plan.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace emoplan {

std::string TimedAction::signature() const {
  std::string out = "(" + name;
  for (const auto& a : args) out += " " + a;
  return out + ")";
}

double Plan::makespan() const {
  double m = 0.0;
  for (const auto& a : actions) m = std::max(m, a.end());
  return m;
}

std::string format_time(double seconds) {
  // Avoid printing "-0.000" for values that round to zero.
  if (std::fabs(seconds) < 0.0005) seconds = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", seconds);
  return buf;
}

std::string print_plan_line(const TimedAction& action) {
  return format_time(action.start) + ": " + action.signature() + "  [" +
         format_time(action.duration) + "]";
}

std::string print_plan(const Plan& plan) {
  std::string out;
  for (const auto& a : plan.actions) out += print_plan_line(a) + "\n";
  return out;
}

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, int number) : line_(line), number_(number) {}

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }
  void expect(char c, const char* what) {
    skip_space();
    if (pos_ >= line_.size() || line_[pos_] != c) fail(std::string("expected ") + what);
    ++pos_;
  }
  double number(const char* what) {
    skip_space();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(line_.data() + pos_, line_.data() + line_.size(), v);
    if (ec != std::errc()) fail(std::string("expected ") + what);
    pos_ = static_cast<std::size_t>(ptr - line_.data());
    return v;
  }
  std::string word() {
    skip_space();
    std::size_t begin = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) &&
           line_[pos_] != '(' && line_[pos_] != ')') {
      ++pos_;
    }
    return std::string(line_.substr(begin, pos_ - begin));
  }
  bool peek(char c) {
    skip_space();
    return pos_ < line_.size() && line_[pos_] == c;
  }
  [[noreturn]] void fail(const std::string& what) const { throw PlanSyntaxError(number_, what); }

 private:
  std::string_view line_;
  int number_;
  std::size_t pos_ = 0;
};

}  // namespace

Plan parse_plan(std::string_view text) {
  Plan plan;
  int number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++number;
    if (auto c = line.find(';'); c != std::string_view::npos) line = line.substr(0, c);

    LineReader in(line, number);
    if (in.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    TimedAction a;
    a.start = in.number("start time");
    in.expect(':', "':' after start time");
    in.expect('(', "'(' opening the action");
    a.name = in.word();
    if (a.name.empty()) in.fail("expected action name");
    while (!in.peek(')')) {
      std::string arg = in.word();
      if (arg.empty()) in.fail("expected ')' closing the action");
      a.args.push_back(std::move(arg));
    }
    in.expect(')', "')' closing the action");
    in.expect('[', "'[duration]' suffix");
    a.duration = in.number("duration");
    in.expect(']', "']' closing the duration");
    if (!in.at_end()) in.fail("unexpected text after duration");
    if (a.start < 0.0) in.fail("negative start time");
    if (!(a.duration > 0.0)) in.fail("duration must be positive");
    plan.actions.push_back(std::move(a));
    if (end == text.size()) break;
  }
  std::stable_sort(plan.actions.begin(), plan.actions.end(),
                   [](const TimedAction& x, const TimedAction& y) { return x.start < y.start; });
  return plan;
}

}  // namespace emoplan
