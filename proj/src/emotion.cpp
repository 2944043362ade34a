#include <array>
#include <cctype>
#include <set>

#include "emoplan/emotion.hpp"

namespace emoplan::emotion {

const char* to_string(EmotionLabel label) {
  switch (label) {
    case EmotionLabel::Distress: return "Distress";
    case EmotionLabel::Sadness: return "Sadness";
    case EmotionLabel::Boredom: return "Boredom";
    case EmotionLabel::Happiness: return "Happiness";
    case EmotionLabel::Unclassified: return "Unclassified";
  }
  return "?";
}

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Accommodate: return "Accommodate";
    case Strategy::Maintain: return "Maintain";
    case Strategy::Improve: return "Improve";
  }
  return "?";
}

std::optional<EmotionLabel> parse_label(const std::string& name) {
  for (auto l : {EmotionLabel::Distress, EmotionLabel::Sadness, EmotionLabel::Boredom,
                 EmotionLabel::Happiness, EmotionLabel::Unclassified}) {
    if (name == to_string(l)) return l;
  }
  return std::nullopt;
}

EmotionLabel classify(const PadState& pad, const Thresholds& th) {
  enum class Level { Low, High, Cut };
  auto level = [&](double v) {
    if (v < th.low_high_cut) return Level::Low;
    if (v > th.low_high_cut) return Level::High;
    return Level::Cut;
  };
  const Level p = level(pad.pleasure);
  const Level a = level(pad.arousal);
  const Level d = level(pad.dominance);
  if (p == Level::Cut || a == Level::Cut || d == Level::Cut) return EmotionLabel::Unclassified;

  if (p == Level::Low && a == Level::High && d == Level::High) return EmotionLabel::Distress;
  if (p == Level::Low && a == Level::Low && d == Level::High) return EmotionLabel::Sadness;
  if (p == Level::Low && a == Level::Low && d == Level::Low) return EmotionLabel::Boredom;
  if (p == Level::High && d == Level::High) return EmotionLabel::Happiness;
  return EmotionLabel::Unclassified;
}

namespace {

// Effect signs per (emotion, strategy), components P, A, D.
// Encoded as multiples of the `+` step: 1 = `+`, 2 = `++`, -1 = `-`, -2 = `--`.
struct SignRow {
  std::array<int, 3> accommodate;
  std::array<int, 3> maintain;
  std::array<int, 3> improve;
};

const SignRow& signs(EmotionLabel e) {
  static const SignRow distress{{1, -1, 0}, {0, 0, 0}, {2, -1, 0}};
  static const SignRow sadness{{1, 0, 0}, {0, 0, 0}, {2, 0, 0}};
  static const SignRow boredom{{0, 0, 0}, {0, 0, 0}, {1, 1, 1}};
  static const SignRow happiness{{0, 0, 0}, {0, -1, 0}, {0, 0, 0}};
  switch (e) {
    case EmotionLabel::Distress: return distress;
    case EmotionLabel::Sadness: return sadness;
    case EmotionLabel::Boredom: return boredom;
    case EmotionLabel::Happiness: return happiness;
    case EmotionLabel::Unclassified: break;
  }
  throw UnclassifiedEmotion();
}

// Positive steps are 0.01/s; negative steps are twice as strong.
double calibrate(int sign) {
  if (sign > 0) return 0.01 * sign;
  if (sign < 0) return 0.02 * sign;
  return 0.0;
}

}  // namespace

RateVector strategy_rates(Strategy strategy, EmotionLabel emotion) {
  const SignRow& row = signs(emotion);
  const auto& s = strategy == Strategy::Accommodate ? row.accommodate
                  : strategy == Strategy::Maintain  ? row.maintain
                                                    : row.improve;
  return RateVector{calibrate(s[0]), calibrate(s[1]), calibrate(s[2])};
}

PadState expected_delta(Strategy strategy, EmotionLabel emotion, double duration) {
  if (!(duration > 0.0)) throw std::invalid_argument("expected_delta: duration must be > 0");
  const RateVector r = strategy_rates(strategy, emotion);
  return PadState{r.dp * duration, r.da * duration, r.dd * duration};
}

std::string StrategyAction::name() const {
  std::string s = strategy == Strategy::Accommodate ? "accommodate"
                  : strategy == Strategy::Maintain  ? "maintain"
                                                    : "improve";
  std::string e = to_string(target);
  for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s + "-" + e;
}

const std::vector<StrategyAction>& strategy_actions() {
  using DC = pddl::DurationConstraint;
  // improve-boredom and maintain-happiness durations are not observed in any
  // reference plan; 10 s matches improve-sadness.
  static const std::vector<StrategyAction> actions{
      {Strategy::Accommodate, EmotionLabel::Distress, DC::at_most(30)},
      {Strategy::Improve, EmotionLabel::Distress, DC::fixed(30)},
      {Strategy::Accommodate, EmotionLabel::Sadness, DC::at_most(30)},
      {Strategy::Improve, EmotionLabel::Sadness, DC::fixed(10)},
      {Strategy::Improve, EmotionLabel::Boredom, DC::fixed(10)},
      {Strategy::Maintain, EmotionLabel::Happiness, DC::fixed(10)},
  };
  return actions;
}

std::vector<std::string> unmodelled_strategy_actions(const pddl::Domain& domain) {
  std::vector<std::string> out;
  for (const auto& a : domain.actions) {
    const auto dash = a.name.find('-');
    if (dash == std::string::npos) continue;
    const std::string prefix = a.name.substr(0, dash);
    if (prefix != "accommodate" && prefix != "maintain" && prefix != "improve") continue;
    std::string target = a.name.substr(dash + 1);
    if (!target.empty()) target[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(target[0])));
    auto label = parse_label(target);
    if (!label || *label == EmotionLabel::Unclassified) out.push_back(a.name);
  }
  return out;
}

}  // namespace emoplan::emotion
