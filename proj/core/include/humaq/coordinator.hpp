#pragma once

#include <array>
#include <string_view>

#include "humaq/agents.hpp"
#include "humaq/perception.hpp"
#include "humaq/qtable.hpp"
#include "humaq/types.hpp"

namespace humaq {

// How the modifier picks the direction once shutdown and the all-blocked
// case are ruled out.
enum class Arbitration {
  // The goal agent's proposed rotation is tried first; if it is blocked the
  // bright zones are tried in order.
  goal_first,
  // Bright zones only, in order; the goal agent's proposal is ignored.
  bright_order,
};

std::string_view to_string(Arbitration mode);
Arbitration arbitration_from_string(std::string_view name);

struct Proposals {
  AgentProposal hunger;
  AgentProposal goal;
  AgentProposal obstacle;
};

// Wheel speed in RPM for a ring / speed id.
int speed_of(int ring);

// Shutdown if hunger asks for it; standstill if the three bright zones all
// have an obstacle in ring 0; otherwise a move toward an unblocked zone at
// the speed of that zone's ring.
RefinedAction coordinate(const Proposals& proposals, const RangeFrame& range, const BrightZones& bright,
                         Arbitration mode = Arbitration::goal_first);

struct RewardConstants {
  double bonus = 10.0;    // no repetition
  double penalty = 20.0;  // repetition, subtracted
  double shutdown_reward = 10.0;  // hunger shuts down below threshold
  double continue_reward = 10.0;  // hunger keeps running above threshold

  // Throws ConfigError unless penalty > bonus and all values are >= 0.
  void validate() const;
  static RewardConstants preset(std::string_view name);  // "standard" or "strong"
};

double reward_goal(double l_max_now, double l_max_prev, int rep, const RewardConstants& k);
double reward_obstacle(double d_max_now, int rep, const RewardConstants& k);
// Correct decisions earn the shutdown / continue reward, wrong ones the penalty.
double reward_hunger(int hunger_sub_state, int action, const RewardConstants& k);

// Integer numerators over a shared denominator, in the order goal,
// obstacle, hunger.
struct RewardWeights {
  std::array<int, 3> numerators{6, 3, 1};
  int denominator = 10;

  void validate() const;
  double goal() const { return static_cast<double>(numerators[0]) / denominator; }
  double obstacle() const { return static_cast<double>(numerators[1]) / denominator; }
  double hunger() const { return static_cast<double>(numerators[2]) / denominator; }
};

enum class RewardCase { case_I, case_II };

std::string_view to_string(RewardCase c);

struct RawRewards {
  double goal = 0.0;
  double obstacle = 0.0;
  double hunger = 0.0;
};

struct RewardSplit {
  RewardCase reward_case = RewardCase::case_II;
  RawRewards weights;
  RawRewards raw;
  RawRewards weighted;

  // Sum of the weighted components.
  double total() const { return weighted.goal + weighted.obstacle + weighted.hunger; }
};

struct Transition {
  int s = 0;
  int a = 0;
  int s_next = 0;
};

struct CycleTransitions {
  Transition hunger;
  Transition goal;
  Transition obstacle;
};

struct AgentTables {
  QTable hunger;
  QTable goal;
  QTable obstacle;

  friend bool operator==(const AgentTables&, const AgentTables&) = default;
};

// Case I (hunger below threshold): the unweighted hunger reward updates the
// hunger table only. Case II: each agent's table takes weight * raw reward
// on its own transition.
RewardSplit distribute_and_update(const RawRewards& raw, const RewardWeights& weights, AgentTables& tables,
                                  const CycleTransitions& transitions, const LearningParams& params);

}  // namespace humaq
