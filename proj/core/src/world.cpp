#include "humaq/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "humaq/coordinator.hpp"
#include "humaq/error.hpp"

namespace humaq {

namespace {

constexpr double kClearance = 1.0;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

double distance(double ax, double ay, double bx, double by) {
  return std::hypot(ax - bx, ay - by);
}

// Distance along the ray to the arena boundary, or infinity when the origin
// is outside (the arena then does not constrain motion).
double ray_box_distance(double ox, double oy, double dx, double dy, double w, double h) {
  if (ox < 0.0 || oy < 0.0 || ox > w || oy > h) return INFINITY;
  double t = INFINITY;
  if (dx > 0.0) t = std::min(t, (w - ox) / dx);
  if (dx < 0.0) t = std::min(t, -ox / dx);
  if (dy > 0.0) t = std::min(t, (h - oy) / dy);
  if (dy < 0.0) t = std::min(t, -oy / dy);
  return t;
}

}  // namespace

void heading_vector(double heading_deg, double& dx, double& dy) {
  // Exact values on the eight compass directions keep poses reproducible.
  const double wrapped = std::fmod(std::fmod(heading_deg, 360.0) + 360.0, 360.0);
  const double h = std::sqrt(0.5);
  if (wrapped == 0.0) { dx = 0.0; dy = 1.0; return; }
  if (wrapped == 45.0) { dx = h; dy = h; return; }
  if (wrapped == 90.0) { dx = 1.0; dy = 0.0; return; }
  if (wrapped == 135.0) { dx = h; dy = -h; return; }
  if (wrapped == 180.0) { dx = 0.0; dy = -1.0; return; }
  if (wrapped == 225.0) { dx = -h; dy = -h; return; }
  if (wrapped == 270.0) { dx = -1.0; dy = 0.0; return; }
  if (wrapped == 315.0) { dx = -h; dy = h; return; }
  const double rad = wrapped * std::numbers::pi / 180.0;
  dx = std::sin(rad);
  dy = std::cos(rad);
}

double ray_circle_distance(double ox, double oy, double dx, double dy,
                           const CircleObstacle& circle) {
  const double cx = circle.cx - ox;
  const double cy = circle.cy - oy;
  const double b = cx * dx + cy * dy;
  const double c = cx * cx + cy * cy - circle.radius * circle.radius;
  if (c <= 0.0) return 0.0;  // origin on or inside the circle
  const double disc = b * b - c;
  if (disc < 0.0 || b <= 0.0) return -1.0;
  return b - std::sqrt(disc);
}

void validate(const WorldConfig& config) {
  auto fail = [](const std::string& what) { throw ConfigError("world config: " + what); };
  if (!positive(config.arena_width) || !positive(config.arena_height)) fail("arena dimensions must be > 0");
  if (!positive(config.goal_radius)) fail("goal_radius must be > 0");
  if (!positive(config.step_length)) fail("step_length must be > 0");
  if (!positive(config.wheel_circumference)) fail("wheel_circumference must be > 0");
  if (!positive(config.battery_capacity)) fail("battery_capacity must be > 0");
  if (!positive(config.battery_drain_per_update)) fail("battery_drain_per_update must be > 0");
  if (!positive(config.battery_threshold)) fail("battery_threshold must be > 0");
  if (!(config.battery_threshold < config.battery_capacity)) fail("battery_threshold must be below battery_capacity");
  if (config.max_updates_per_set < 1) fail("max_updates_per_set must be >= 1");
  if (!(config.rotation_time >= 0.0) || !(config.idle_time >= 0.0)) fail("rotation_time and idle_time must be >= 0");
  if (config.lights.empty()) fail("at least one light source is required");
  for (const auto& light : config.lights) {
    if (!std::isfinite(light.x) || !std::isfinite(light.y)) fail("light position must be finite");
    if (!positive(light.power)) fail("light power must be > 0");
  }
  for (const auto& obstacle : config.obstacles) {
    if (!std::isfinite(obstacle.cx) || !std::isfinite(obstacle.cy)) fail("obstacle centre must be finite");
    if (!positive(obstacle.radius)) fail("obstacle radius must be > 0");
  }
  const RobotPose& start = config.robot_start;
  if (start.heading_deg % 45 != 0 || start.heading_deg < 0 || start.heading_deg >= 360)
    fail("robot_start.heading must be a multiple of 45 in [0, 360)");
  if (start.x < 0.0 || start.y < 0.0 || start.x > config.arena_width || start.y > config.arena_height)
    fail("robot_start must lie inside the arena");
  const LightSource& goal = brightest_light(config);
  for (const auto& obstacle : config.obstacles) {
    if (distance(start.x, start.y, obstacle.cx, obstacle.cy) <= obstacle.radius)
      fail("robot_start lies inside an obstacle");
    if (distance(goal.x, goal.y, obstacle.cx, obstacle.cy) <= obstacle.radius + config.goal_radius)
      fail("goal disc intersects an obstacle");
  }
}

double linear_speed(int speed_id, const WorldConfig& config) {
  return speed_of(speed_id) * config.wheel_circumference / 60.0;
}

StepOutcome apply_action(const RobotPose& pose, const RefinedAction& action,
                         const WorldConfig& config) {
  if (action.kind == ActionKind::shutdown) throw InputError("apply_action: shutdown is not executable");
  StepOutcome out;
  out.new_pose = pose;
  if (action.kind == ActionKind::standstill) {
    out.sim_time_elapsed = config.idle_time;
    out.goal_reached = goal_test(pose, config);
    return out;
  }
  if (action.rotation_id < 0 || action.rotation_id >= kSectors) throw InputError("apply_action: rotation_id out of range");
  if (action.speed_id < 0 || action.speed_id >= kRings) throw InputError("apply_action: speed_id out of range");

  const int heading = (pose.heading_deg + 45 * action.rotation_id) % 360;
  double dx, dy;
  heading_vector(heading, dx, dy);

  double contact = ray_box_distance(pose.x, pose.y, dx, dy, config.arena_width, config.arena_height);
  for (const auto& obstacle : config.obstacles) {
    const double t = ray_circle_distance(pose.x, pose.y, dx, dy, obstacle);
    if (t >= 0.0) contact = std::min(contact, t);
  }

  double travel = config.step_length;
  if (contact <= config.step_length) {
    travel = std::max(0.0, contact - kClearance);
    out.collided = true;
  }
  out.new_pose = {pose.x + travel * dx, pose.y + travel * dy, heading};
  out.sim_time_elapsed =
      action.rotation_id * config.rotation_time + travel / linear_speed(action.speed_id, config);
  out.goal_reached = goal_test(out.new_pose, config);
  return out;
}

const LightSource& brightest_light(const WorldConfig& config) {
  if (config.lights.empty()) throw ConfigError("world config: no light sources");
  const LightSource* best = &config.lights.front();
  for (const auto& light : config.lights)
    if (light.power > best->power) best = &light;
  return *best;
}

bool goal_test(const RobotPose& pose, const WorldConfig& config) {
  const LightSource& goal = brightest_light(config);
  return distance(pose.x, pose.y, goal.x, goal.y) <= config.goal_radius;
}

BatteryState initial_battery(const WorldConfig& config) {
  return {config.battery_capacity, config.battery_threshold};
}

BatteryState drain_battery(const BatteryState& state, const WorldConfig& config) {
  return {std::max(0.0, state.level - config.battery_drain_per_update), state.threshold};
}

// ---------------------------------------------------------------------------
// Config file

namespace {

using nlohmann::json;

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

}  // namespace

WorldConfig parse_world_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("world config: ") + e.what());
  }
  // Trial configs embed the world under "world".
  if (j.contains("world") && j["world"].is_object()) j = j["world"];
  if (j.value("format_version", 0) != 1) throw ConfigError("world config: format_version must be 1");

  WorldConfig c;
  try {
    read_opt(j, "arena_width", c.arena_width);
    read_opt(j, "arena_height", c.arena_height);
    for (const auto& l : j.at("lights"))
      c.lights.push_back({l.at("x").get<double>(), l.at("y").get<double>(), l.value("power", 1.0)});
    if (j.contains("obstacles"))
      for (const auto& o : j["obstacles"])
        c.obstacles.push_back({o.at("cx").get<double>(), o.at("cy").get<double>(), o.at("radius").get<double>()});
    const auto& start = j.at("robot_start");
    c.robot_start = {start.at("x").get<double>(), start.at("y").get<double>(), start.value("heading", 0)};
    read_opt(j, "goal_radius", c.goal_radius);
    read_opt(j, "step_length", c.step_length);
    read_opt(j, "wheel_circumference", c.wheel_circumference);
    read_opt(j, "battery_capacity", c.battery_capacity);
    read_opt(j, "battery_drain_per_update", c.battery_drain_per_update);
    read_opt(j, "battery_threshold", c.battery_threshold);
    read_opt(j, "max_updates_per_set", c.max_updates_per_set);
    read_opt(j, "rng_seed", c.rng_seed);
    read_opt(j, "rotation_time", c.rotation_time);
    read_opt(j, "idle_time", c.idle_time);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("world config: ") + e.what());
  }
  validate(c);
  return c;
}

WorldConfig load_world_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_world_config(buf.str());
}

std::string dump_world_config(const WorldConfig& c) {
  json j;
  j["format_version"] = 1;
  j["arena_width"] = c.arena_width;
  j["arena_height"] = c.arena_height;
  j["lights"] = json::array();
  for (const auto& l : c.lights) j["lights"].push_back({{"x", l.x}, {"y", l.y}, {"power", l.power}});
  j["obstacles"] = json::array();
  for (const auto& o : c.obstacles) j["obstacles"].push_back({{"cx", o.cx}, {"cy", o.cy}, {"radius", o.radius}});
  j["robot_start"] = {{"x", c.robot_start.x}, {"y", c.robot_start.y}, {"heading", c.robot_start.heading_deg}};
  j["goal_radius"] = c.goal_radius;
  j["step_length"] = c.step_length;
  j["wheel_circumference"] = c.wheel_circumference;
  j["battery_capacity"] = c.battery_capacity;
  j["battery_drain_per_update"] = c.battery_drain_per_update;
  j["battery_threshold"] = c.battery_threshold;
  j["max_updates_per_set"] = c.max_updates_per_set;
  j["rng_seed"] = c.rng_seed;
  j["rotation_time"] = c.rotation_time;
  j["idle_time"] = c.idle_time;
  return j.dump(2);
}

}  // namespace humaq
