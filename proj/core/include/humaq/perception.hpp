#pragma once

#include <array>
#include <span>

#include "humaq/types.hpp"
#include "humaq/world.hpp"

namespace humaq {

inline constexpr int kGoalStates = 8 * 8 * 8 * 2;
inline constexpr int kObstacleStates = 5 * 5 * 5 * 2;

// Readings are taken on the eight sector boundaries; boundary j points along
// heading + 45*j degrees (clockwise).
struct LightFrame {
  std::array<double, kSectors> readings{};
  double l_max_value = 0.0;
  int l_max_sector = 0;
};

struct RangeFrame {
  std::array<double, kSectors> distances{};
  std::array<int, kSectors> rings{};
};

struct GoalPercept {
  int p1 = 0;
  int p2 = 0;
  int p3 = 0;
  int rep = 0;
};

struct ObstaclePercept {
  int r1 = 0;
  int r2 = 0;
  int r3 = 0;
  int rep = 0;
};

// Builds a frame from raw readings, filling in the maximum and its sector.
LightFrame make_light_frame(const std::array<double, kSectors>& readings);

// Cosine-weighted inverse-square light model, clamped to [0, 255]:
//   sum_k 255 * power_k * max(0, cos(angle_jk)) / (1 + (d_k / 100)^2)
LightFrame sense_light(const WorldConfig& world, const RobotPose& pose);

RangeFrame sense_range(const WorldConfig& world, const RobotPose& pose);

// <=50 -> 0, (50,100] -> 1, (100,150] -> 2, (150,200] -> 3, >200 -> 4.
int ring_of(double distance_cm);

// Three brightest sectors, descending by reading, ties to the lower id.
BrightZones top3_sectors(const LightFrame& frame);

// 1 iff the history holds at least five entries and the last five are equal.
int repetition_flag(std::span<const BrightZones> history);

int encode_goal_state(const GoalPercept& p);
GoalPercept decode_goal_state(int index);
int encode_obstacle_state(const ObstaclePercept& p);
ObstaclePercept decode_obstacle_state(int index);

// Obstacle percept: rings at the three bright sectors.
ObstaclePercept obstacle_percept(const RangeFrame& range, const BrightZones& bright, int rep);

}  // namespace humaq
