#include "humaq/agents.hpp"

#include <string>

#include "humaq/error.hpp"

namespace humaq {

namespace {

void expect_agent(const QTable& table, AgentId agent) {
  if (table.agent() != agent)
    throw InputError("expected a " + std::string(to_string(agent)) + " table, got " +
                     std::string(to_string(table.agent())));
}

}  // namespace

int priority_rank(AgentId agent) {
  switch (agent) {
    case AgentId::hunger: return 0;
    case AgentId::goal: return 1;
    case AgentId::obstacle: return 2;
    case AgentId::grid: break;
  }
  throw InputError("grid is not a coordinated agent");
}

int hunger_state(const BatteryState& battery) { return battery.level >= battery.threshold ? 0 : 1; }

int goal_state(const LightFrame& frame, int rep) {
  const BrightZones z = top3_sectors(frame);
  return encode_goal_state({z[0], z[1], z[2], rep});
}

int obstacle_state(const RangeFrame& range, const BrightZones& bright, int rep) {
  return encode_obstacle_state(obstacle_percept(range, bright, rep));
}

AgentProposal hunger_step(const BatteryState& battery, const QTable& table,
                          const LearningParams& params, Rng& rng) {
  expect_agent(table, AgentId::hunger);
  const int s = hunger_state(battery);
  return {AgentId::hunger, s, select_action(table, s, params, rng), 0};
}

AgentProposal goal_step(const LightFrame& frame, int rep, const QTable& table,
                        const LearningParams& params, Rng& rng) {
  expect_agent(table, AgentId::goal);
  const int s = goal_state(frame, rep);
  return {AgentId::goal, s, select_action(table, s, params, rng), 1};
}

AgentProposal obstacle_step(const RangeFrame& range, const BrightZones& bright, int rep,
                            const QTable& table, const LearningParams& params, Rng& rng) {
  expect_agent(table, AgentId::obstacle);
  const int s = obstacle_state(range, bright, rep);
  return {AgentId::obstacle, s, select_action(table, s, params, rng), 2};
}

}  // namespace humaq
