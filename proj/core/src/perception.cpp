#include "humaq/perception.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "humaq/error.hpp"

namespace humaq {

LightFrame make_light_frame(const std::array<double, kSectors>& readings) {
  LightFrame frame;
  frame.readings = readings;
  frame.l_max_sector = 0;
  for (int j = 1; j < kSectors; ++j)
    if (readings[j] > readings[frame.l_max_sector]) frame.l_max_sector = j;
  frame.l_max_value = readings[frame.l_max_sector];
  return frame;
}

LightFrame sense_light(const WorldConfig& world, const RobotPose& pose) {
  std::array<double, kSectors> readings{};
  for (int j = 0; j < kSectors; ++j) {
    double bx, by;
    heading_vector(pose.heading_deg + 45 * j, bx, by);
    double sum = 0.0;
    for (const auto& light : world.lights) {
      const double vx = light.x - pose.x;
      const double vy = light.y - pose.y;
      const double d = std::hypot(vx, vy);
      // A source under the sensor lights every boundary fully.
      const double cosine = d > 0.0 ? (vx * bx + vy * by) / d : 1.0;
      const double r = d / 100.0;
      sum += 255.0 * light.power * std::max(0.0, cosine) / (1.0 + r * r);
    }
    readings[j] = std::clamp(sum, 0.0, 255.0);
  }
  return make_light_frame(readings);
}

RangeFrame sense_range(const WorldConfig& world, const RobotPose& pose) {
  RangeFrame frame;
  for (int j = 0; j < kSectors; ++j) {
    double dx, dy;
    heading_vector(pose.heading_deg + 45 * j, dx, dy);
    double nearest = kMaxRange;
    for (const auto& obstacle : world.obstacles) {
      const double t = ray_circle_distance(pose.x, pose.y, dx, dy, obstacle);
      if (t >= 0.0) nearest = std::min(nearest, t);
    }
    frame.distances[j] = nearest;
    frame.rings[j] = ring_of(nearest);
  }
  return frame;
}

int ring_of(double distance_cm) {
  if (!(distance_cm >= 0.0)) throw InputError("ring_of: distance must be a non-negative number");
  if (distance_cm <= 50.0) return 0;
  if (distance_cm <= 100.0) return 1;
  if (distance_cm <= 150.0) return 2;
  if (distance_cm <= 200.0) return 3;
  return 4;
}

BrightZones top3_sectors(const LightFrame& frame) {
  std::array<int, kSectors> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frame.readings[a] > frame.readings[b]; });
  return {order[0], order[1], order[2]};
}

int repetition_flag(std::span<const BrightZones> history) {
  constexpr std::size_t kWindow = 5;
  if (history.size() < kWindow) return 0;
  const auto tail = history.last(kWindow);
  return std::all_of(tail.begin(), tail.end(), [&](const BrightZones& z) { return z == tail.front(); }) ? 1 : 0;
}

namespace {

void check_range(int v, int hi, const char* what) {
  if (v < 0 || v >= hi) throw InputError(std::string(what) + " out of range: " + std::to_string(v));
}

}  // namespace

int encode_goal_state(const GoalPercept& p) {
  check_range(p.p1, 8, "p1");
  check_range(p.p2, 8, "p2");
  check_range(p.p3, 8, "p3");
  check_range(p.rep, 2, "rep");
  return ((p.p1 * 8 + p.p2) * 8 + p.p3) * 2 + p.rep;
}

GoalPercept decode_goal_state(int index) {
  check_range(index, kGoalStates, "goal state");
  return {index / 128, (index / 16) % 8, (index / 2) % 8, index % 2};
}

int encode_obstacle_state(const ObstaclePercept& p) {
  check_range(p.r1, 5, "r1");
  check_range(p.r2, 5, "r2");
  check_range(p.r3, 5, "r3");
  check_range(p.rep, 2, "rep");
  return ((p.r1 * 5 + p.r2) * 5 + p.r3) * 2 + p.rep;
}

ObstaclePercept decode_obstacle_state(int index) {
  check_range(index, kObstacleStates, "obstacle state");
  return {index / 50, (index / 10) % 5, (index / 2) % 5, index % 2};
}

ObstaclePercept obstacle_percept(const RangeFrame& range, const BrightZones& bright, int rep) {
  for (int s : bright) check_range(s, kSectors, "bright sector");
  return {range.rings[bright[0]], range.rings[bright[1]], range.rings[bright[2]], rep};
}

}  // namespace humaq
