#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace humaq {

inline constexpr int kSectors = 8;
inline constexpr int kRings = 5;
inline constexpr double kMaxRange = 255.0;

// `grid` is the unconstrained shape used by the gridworld baselines.
enum class AgentId : std::uint8_t { hunger, goal, obstacle, grid };

std::string_view to_string(AgentId id);
AgentId agent_from_string(std::string_view name);

// Hunger actions.
inline constexpr int kKeepRunning = 0;
inline constexpr int kShutDown = 1;

// Indices of the three bright zones, brightest first.
using BrightZones = std::array<int, 3>;

enum class ActionKind : std::uint8_t { move, standstill, shutdown };

std::string_view to_string(ActionKind kind);

// The coordinator's merged command. rotation_id, speed_id and
// chosen_zone_rank are meaningful only for kind == move.
struct RefinedAction {
  ActionKind kind = ActionKind::standstill;
  int rotation_id = 0;
  int speed_id = 0;
  // 1..3 for a bright zone, 0 when the goal agent's own direction lies
  // outside the three bright zones.
  int chosen_zone_rank = 0;

  static RefinedAction move(int rotation, int speed, int rank) {
    return {ActionKind::move, rotation, speed, rank};
  }
  static RefinedAction standstill() { return {ActionKind::standstill, 0, 0, 0}; }
  static RefinedAction shutdown() { return {ActionKind::shutdown, 0, 0, 0}; }

  friend bool operator==(const RefinedAction&, const RefinedAction&) = default;
};

}  // namespace humaq
