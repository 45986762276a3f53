#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "humaq/types.hpp"

namespace humaq {

struct LightSource {
  double x = 0.0;
  double y = 0.0;
  double power = 1.0;
};

struct CircleObstacle {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 1.0;
};

// Headings are compass-style: 0 deg points along +y and angles grow
// clockwise, so a heading h has unit direction (sin h, cos h).
struct RobotPose {
  double x = 0.0;
  double y = 0.0;
  int heading_deg = 0;

  friend bool operator==(const RobotPose&, const RobotPose&) = default;
};

struct WorldConfig {
  double arena_width = 500.0;
  double arena_height = 500.0;
  std::vector<LightSource> lights;
  std::vector<CircleObstacle> obstacles;
  RobotPose robot_start;
  double goal_radius = 30.0;
  double step_length = 20.0;
  double wheel_circumference = 10.5;
  double battery_capacity = 100.0;
  double battery_drain_per_update = 0.1;
  double battery_threshold = 10.0;
  int max_updates_per_set = 500;
  std::uint64_t rng_seed = 1;
  // Seconds per 45 deg of rotation, and for a cycle without motion.
  double rotation_time = 0.5;
  double idle_time = 1.0;
};

struct BatteryState {
  double level = 0.0;
  double threshold = 0.0;
};

struct StepOutcome {
  RobotPose new_pose;
  double sim_time_elapsed = 0.0;
  bool collided = false;
  bool goal_reached = false;
};

// Throws ConfigError when an invariant of the config does not hold.
void validate(const WorldConfig& config);

WorldConfig load_world_config(const std::filesystem::path& path);
WorldConfig parse_world_config(const std::string& json_text);
std::string dump_world_config(const WorldConfig& config);

// Linear speed in cm/s for a Table-style speed id.
double linear_speed(int speed_id, const WorldConfig& config);

// Distance along the ray (origin, unit direction (dx, dy)) to the first
// point on the circle, or a negative value when the ray misses.
double ray_circle_distance(double ox, double oy, double dx, double dy,
                           const CircleObstacle& circle);

// Unit direction of a compass heading in degrees.
void heading_vector(double heading_deg, double& dx, double& dy);

StepOutcome apply_action(const RobotPose& pose, const RefinedAction& action,
                         const WorldConfig& config);

const LightSource& brightest_light(const WorldConfig& config);
bool goal_test(const RobotPose& pose, const WorldConfig& config);

BatteryState initial_battery(const WorldConfig& config);
BatteryState drain_battery(const BatteryState& state, const WorldConfig& config);

}  // namespace humaq
