#include "humaq/coordinator.hpp"

#include <cmath>
#include <string>

#include "humaq/error.hpp"

namespace humaq {

std::string_view to_string(Arbitration mode) {
  return mode == Arbitration::goal_first ? "goal_first" : "bright_order";
}

Arbitration arbitration_from_string(std::string_view name) {
  if (name == "goal_first") return Arbitration::goal_first;
  if (name == "bright_order") return Arbitration::bright_order;
  throw ConfigError("unknown arbitration mode '" + std::string(name) + "'");
}

int speed_of(int ring) {
  static constexpr std::array<int, kRings> kRpm{34, 67, 84, 100, 117};
  if (ring < 0 || ring >= kRings) throw InputError("speed_of: ring out of range");
  return kRpm[ring];
}

RefinedAction coordinate(const Proposals& proposals, const RangeFrame& range, const BrightZones& bright,
                         Arbitration mode) {
  if (proposals.hunger.proposed_action == kShutDown) return RefinedAction::shutdown();

  // Rule I: a zone with an obstacle in the innermost ring is never entered.
  bool any_open = false;
  for (int sector : bright) any_open = any_open || range.rings.at(sector) > 0;
  if (!any_open) return RefinedAction::standstill();

  // Rule II: speed follows the ring of the chosen zone.
  if (mode == Arbitration::goal_first) {
    const int wanted = proposals.goal.proposed_action;
    if (wanted < 0 || wanted >= kSectors) throw InputError("coordinate: goal proposal out of range");
    if (range.rings[wanted] > 0) {
      int rank = 0;
      for (int k = 0; k < 3; ++k)
        if (bright[k] == wanted) rank = k + 1;
      return RefinedAction::move(wanted, range.rings[wanted], rank);
    }
  }
  for (int k = 0; k < 3; ++k)
    if (range.rings[bright[k]] > 0) return RefinedAction::move(bright[k], range.rings[bright[k]], k + 1);
  return RefinedAction::standstill();  // unreachable: any_open
}

void RewardConstants::validate() const {
  for (double v : {bonus, penalty, shutdown_reward, continue_reward})
    if (!(std::isfinite(v) && v >= 0.0)) throw ConfigError("rewards: constants must be finite and >= 0");
  if (!(penalty > bonus)) throw ConfigError("rewards: penalty magnitude must exceed the bonus");
}

RewardConstants RewardConstants::preset(std::string_view name) {
  if (name == "standard") return {10.0, 20.0, 10.0, 10.0};
  if (name == "strong") return {100.0, 200.0, 100.0, 100.0};
  throw ConfigError("unknown reward preset '" + std::string(name) + "'");
}

double reward_goal(double l_max_now, double l_max_prev, int rep, const RewardConstants& k) {
  return (l_max_now - l_max_prev) + (rep == 0 ? k.bonus : -k.penalty);
}

double reward_obstacle(double d_max_now, int rep, const RewardConstants& k) {
  return d_max_now + (rep == 0 ? k.bonus : -k.penalty);
}

double reward_hunger(int hunger_sub_state, int action, const RewardConstants& k) {
  if (hunger_sub_state == 1) return action == kShutDown ? k.shutdown_reward : -k.penalty;
  return action == kKeepRunning ? k.continue_reward : -k.penalty;
}

void RewardWeights::validate() const {
  if (denominator <= 0) throw ConfigError("weights: denominator must be positive");
  int sum = 0;
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    if (numerators[i] <= 0) throw ConfigError("weights: every weight must be positive");
    if (i > 0 && !(numerators[i] < numerators[i - 1])) throw ConfigError("weights: must be strictly decreasing");
    sum += numerators[i];
  }
  if (sum != denominator) throw ConfigError("weights: must sum to 1");
}

std::string_view to_string(RewardCase c) { return c == RewardCase::case_I ? "I" : "II"; }

RewardSplit distribute_and_update(const RawRewards& raw, const RewardWeights& weights, AgentTables& tables,
                                  const CycleTransitions& t, const LearningParams& params) {
  weights.validate();
  RewardSplit split;
  split.raw = raw;
  split.weights = {weights.goal(), weights.obstacle(), weights.hunger()};
  if (t.hunger.s == 1) {
    split.reward_case = RewardCase::case_I;
    split.weighted = {0.0, 0.0, raw.hunger};
    q_update(tables.hunger, t.hunger.s, t.hunger.a, raw.hunger, t.hunger.s_next, params);
    return split;
  }
  split.reward_case = RewardCase::case_II;
  split.weighted = {split.weights.goal * raw.goal, split.weights.obstacle * raw.obstacle,
                    split.weights.hunger * raw.hunger};
  q_update(tables.goal, t.goal.s, t.goal.a, split.weighted.goal, t.goal.s_next, params);
  q_update(tables.obstacle, t.obstacle.s, t.obstacle.a, split.weighted.obstacle, t.obstacle.s_next, params);
  q_update(tables.hunger, t.hunger.s, t.hunger.a, split.weighted.hunger, t.hunger.s_next, params);
  return split;
}

}  // namespace humaq
