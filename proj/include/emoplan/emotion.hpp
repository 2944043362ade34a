#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emoplan/pddl/ast.hpp"
#include "emoplan/temporal_state.hpp"

namespace emoplan::emotion {

enum class EmotionLabel { Distress, Sadness, Boredom, Happiness, Unclassified };

enum class Strategy { Accommodate, Maintain, Improve };

const char* to_string(EmotionLabel label);
const char* to_string(Strategy strategy);
std::optional<EmotionLabel> parse_label(const std::string& name);

// PAD change per second of strategy execution.
struct RateVector {
  double dp = 0.0;
  double da = 0.0;
  double dd = 0.0;

  bool operator==(const RateVector&) const = default;
};

struct Thresholds {
  double low_high_cut = 0.5;  // Low means < cut, High means > cut
  double hard_floor = 0.0;    // task actions need every PAD value >= floor
};

class UnclassifiedEmotion : public std::invalid_argument {
 public:
  UnclassifiedEmotion()
      : std::invalid_argument("no strategy effects are defined for an unclassified emotion") {}
};

/// Strict-threshold match against the emotion table:
///   Distress  = (Low, High, High)
///   Sadness   = (Low, Low,  High)
///   Boredom   = (Low, Low,  Low)
///   Happiness = (High, any, High)
/// Any other pattern, or a component exactly at the cut, is Unclassified.
EmotionLabel classify(const PadState& pad, const Thresholds& th = {});

// Per-second rates: `+` 0.01, `++` 0.02, `-` -0.02, `--` -0.04.
RateVector strategy_rates(Strategy strategy, EmotionLabel emotion);

// rate x duration per component, before clamping. duration must be > 0.
PadState expected_delta(Strategy strategy, EmotionLabel emotion, double duration);

/// One strategy action schema of the reconstructed domain.
struct StrategyAction {
  Strategy strategy;
  EmotionLabel target;
  pddl::DurationConstraint duration;
  std::string name() const;  // e.g. "accommodate-distress"
};

// The six modelled strategy actions, in domain order.
const std::vector<StrategyAction>& strategy_actions();

// Actions named like a strategy ("improve-introvert") whose target is not a
// modelled emotion.
std::vector<std::string> unmodelled_strategy_actions(const pddl::Domain& domain);

inline constexpr double kKidGiveRate = 0.005;
inline constexpr double kDefaultDegradationRate = 0.001;

struct DomainConfig {
  int children = 3;
  double degradation_rate = kDefaultDegradationRate;  // per second, P and A
  Thresholds thresholds;
};

struct ProblemConfig {
  int children = 3;
  int toys = 3;
  std::vector<PadState> init_pads;  // one per child
};

// The three children of the benchmark scenario.
std::vector<PadState> benchmark_pads();

// benchmark_pads() for the first three children, seeded uniform [0,1] draws
// for any further ones.
std::vector<PadState> default_pads(int children, std::uint64_t seed);

pddl::Domain synthesize_domain(const DomainConfig& cfg = {});
pddl::Problem synthesize_problem(const ProblemConfig& cfg);

std::string child_name(int index);  // 0 -> "c1"

}  // namespace emoplan::emotion
