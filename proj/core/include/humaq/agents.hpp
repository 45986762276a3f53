#pragma once

#include "humaq/perception.hpp"
#include "humaq/qtable.hpp"
#include "humaq/rng.hpp"
#include "humaq/world.hpp"

namespace humaq {

struct AgentProposal {
  AgentId agent = AgentId::hunger;
  int sub_state = 0;
  int proposed_action = 0;
  int priority_rank = 0;
};

// hunger = 0 (highest), goal = 1, obstacle = 2.
int priority_rank(AgentId agent);

// 0 when the level is at or above the threshold, 1 below it.
int hunger_state(const BatteryState& battery);
int goal_state(const LightFrame& frame, int rep);
int obstacle_state(const RangeFrame& range, const BrightZones& bright, int rep);

// Proposes 0 (keep running) or 1 (shut down).
AgentProposal hunger_step(const BatteryState& battery, const QTable& table,
                          const LearningParams& params, Rng& rng);

// Proposes a clockwise rotation id 0..7.
AgentProposal goal_step(const LightFrame& frame, int rep, const QTable& table,
                        const LearningParams& params, Rng& rng);

// Proposes a speed id 0..4. `bright` comes from the goal agent's frame.
AgentProposal obstacle_step(const RangeFrame& range, const BrightZones& bright, int rep,
                            const QTable& table, const LearningParams& params, Rng& rng);

}  // namespace humaq
