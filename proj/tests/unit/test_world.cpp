#include <gtest/gtest.h>

#include <cmath>

#include "humaq/error.hpp"
#include "humaq/rng.hpp"
#include "humaq/world.hpp"

using namespace humaq;

namespace {

WorldConfig open_world() {
  WorldConfig w;
  w.arena_width = 1000;
  w.arena_height = 1000;
  w.lights = {{500, 900, 1.0}};
  w.robot_start = {500, 100, 0};
  return w;
}

// Smallest t >= 0 with |o + t*d - c| = r, by bisection on the sampled path.
double contact_by_bisection(double ox, double oy, double dx, double dy, const CircleObstacle& c, double t_max) {
  auto inside = [&](double t) { return std::hypot(ox + t * dx - c.cx, oy + t * dy - c.cy) <= c.radius; };
  double hit = -1;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const double t = t_max * i / n;
    if (inside(t)) {
      hit = t;
      break;
    }
  }
  if (hit < 0) return -1;
  double lo = std::max(0.0, hit - t_max / n), hi = hit;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST(ApplyAction, StraightAtTopSpeed) {
  WorldConfig w = open_world();
  const auto out = apply_action(w.robot_start, RefinedAction::move(0, 4, 1), w);
  EXPECT_DOUBLE_EQ(out.new_pose.x, 500);
  EXPECT_DOUBLE_EQ(out.new_pose.y, 120);
  EXPECT_EQ(out.new_pose.heading_deg, 0);
  EXPECT_FALSE(out.collided);
  EXPECT_DOUBLE_EQ(out.sim_time_elapsed, 20.0 / (117 * 10.5 / 60.0));
}

TEST(ApplyAction, RotationFourTurnsAround) {
  WorldConfig w = open_world();
  const auto out = apply_action(w.robot_start, RefinedAction::move(4, 4, 1), w);
  EXPECT_EQ(out.new_pose.heading_deg, 180);
  EXPECT_DOUBLE_EQ(out.new_pose.y, 80);
  EXPECT_DOUBLE_EQ(out.sim_time_elapsed, 4 * 0.5 + 20.0 / (117 * 10.5 / 60.0));
}

TEST(ApplyAction, RotationSemanticsForAllIds) {
  WorldConfig w = open_world();
  for (int start = 0; start < 360; start += 45) {
    for (int id = 0; id < 8; ++id) {
      RobotPose p = w.robot_start;
      p.heading_deg = start;
      const auto out = apply_action(p, RefinedAction::move(id, 2, 1), w);
      EXPECT_EQ(out.new_pose.heading_deg, (start + 45 * id) % 360);
    }
  }
}

TEST(ApplyAction, StopsShortOfObstacle) {
  WorldConfig w = open_world();
  w.obstacles = {{500, 110, 5}};
  const auto out = apply_action(w.robot_start, RefinedAction::move(0, 4, 1), w);
  EXPECT_TRUE(out.collided);
  EXPECT_DOUBLE_EQ(out.new_pose.y - 100, 4.0);
  EXPECT_LT(out.new_pose.y - 100, w.step_length);
}

TEST(ApplyAction, StandstillKeepsPose) {
  WorldConfig w = open_world();
  const auto out = apply_action(w.robot_start, RefinedAction::standstill(), w);
  EXPECT_EQ(out.new_pose, w.robot_start);
  EXPECT_DOUBLE_EQ(out.sim_time_elapsed, 1.0);
}

TEST(ApplyAction, ShutdownIsRejected) {
  WorldConfig w = open_world();
  EXPECT_THROW(apply_action(w.robot_start, RefinedAction::shutdown(), w), InputError);
}

TEST(ApplyAction, WallStopsMotion) {
  WorldConfig w = open_world();
  w.robot_start = {500, 990, 0};
  const auto out = apply_action(w.robot_start, RefinedAction::move(0, 4, 1), w);
  EXPECT_TRUE(out.collided);
  EXPECT_DOUBLE_EQ(out.new_pose.y, 999);
}

TEST(RayCircle, MatchesBisectionOracle) {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const CircleObstacle c{rng.uniform01() * 200 - 100, rng.uniform01() * 200 - 100, 5 + rng.uniform01() * 30};
    const double ox = rng.uniform01() * 200 - 100, oy = rng.uniform01() * 200 - 100;
    if (std::hypot(ox - c.cx, oy - c.cy) <= c.radius) continue;
    double dx, dy;
    heading_vector(45.0 * static_cast<int>(rng.below(8)), dx, dy);
    const double got = ray_circle_distance(ox, oy, dx, dy, c);
    const double want = contact_by_bisection(ox, oy, dx, dy, c, 400);
    if (want < 0) {
      EXPECT_LT(got, 0);
    } else {
      ASSERT_GE(got, 0);
      EXPECT_NEAR(got, want, 1e-6);
    }
  }
}

TEST(HeadingVector, CompassConvention) {
  double dx, dy;
  heading_vector(0, dx, dy);
  EXPECT_EQ(dx, 0.0);
  EXPECT_EQ(dy, 1.0);
  heading_vector(90, dx, dy);
  EXPECT_EQ(dx, 1.0);
  EXPECT_EQ(dy, 0.0);
  heading_vector(405, dx, dy);
  EXPECT_DOUBLE_EQ(dx, std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(dy, std::sqrt(0.5));
}

TEST(GoalTest, ClosedDisc) {
  WorldConfig w = open_world();
  const auto& g = w.lights[0];
  EXPECT_TRUE(goal_test({g.x, g.y, 0}, w));
  EXPECT_TRUE(goal_test({g.x, g.y - w.goal_radius, 0}, w));
  EXPECT_FALSE(goal_test({g.x, g.y - w.goal_radius - 0.1, 0}, w));
}

TEST(GoalTest, UsesBrightestSource) {
  WorldConfig w = open_world();
  w.lights = {{100, 100, 0.5}, {800, 800, 2.0}};
  EXPECT_TRUE(goal_test({800, 800, 0}, w));
  EXPECT_FALSE(goal_test({100, 100, 0}, w));
}

TEST(GoalTest, NoLightsIsConfigError) {
  WorldConfig w = open_world();
  w.lights.clear();
  EXPECT_THROW(goal_test(w.robot_start, w), ConfigError);
}

TEST(Battery, Drain) {
  WorldConfig w = open_world();
  w.battery_drain_per_update = 1;
  EXPECT_DOUBLE_EQ(drain_battery({100, 10}, w).level, 99);
  EXPECT_DOUBLE_EQ(drain_battery({0.5, 10}, w).level, 0);
  BatteryState b{100, 10};
  for (int i = 0; i < 40; ++i) b = drain_battery(b, w);
  EXPECT_DOUBLE_EQ(b.level, 60);
}

TEST(WorldConfigFile, RoundTrip) {
  WorldConfig w = open_world();
  w.obstacles = {{300, 300, 12.5}};
  w.battery_threshold = 7;
  const WorldConfig back = parse_world_config(dump_world_config(w));
  EXPECT_EQ(back.lights.size(), 1u);
  EXPECT_EQ(back.obstacles.size(), 1u);
  EXPECT_DOUBLE_EQ(back.obstacles[0].radius, 12.5);
  EXPECT_DOUBLE_EQ(back.battery_threshold, 7);
  EXPECT_EQ(back.robot_start, w.robot_start);
}

TEST(WorldConfigFile, Rejections) {
  EXPECT_THROW(parse_world_config("{"), ConfigError);
  EXPECT_THROW(parse_world_config(R"({"format_version":2})"), ConfigError);

  WorldConfig w = open_world();
  w.robot_start.heading_deg = 30;
  EXPECT_THROW(validate(w), ConfigError);

  w = open_world();
  w.obstacles = {{500, 100, 10}};
  EXPECT_THROW(validate(w), ConfigError);

  w = open_world();
  w.obstacles = {{500, 850, 25}};
  EXPECT_THROW(validate(w), ConfigError);

  w = open_world();
  w.battery_threshold = w.battery_capacity;
  EXPECT_THROW(validate(w), ConfigError);

  w = open_world();
  w.step_length = 0;
  EXPECT_THROW(validate(w), ConfigError);
}

TEST(WorldProperties, NeverEndsInsideObstacleAndHeadingStaysOnCompass) {
  WorldConfig w = open_world();
  w.obstacles = {{500, 300, 40}, {300, 500, 30}, {700, 600, 50}, {450, 160, 10}};
  Rng rng(11);
  RobotPose pose = w.robot_start;
  for (int step = 0; step < 20000; ++step) {
    const auto a = RefinedAction::move(static_cast<int>(rng.below(8)), static_cast<int>(rng.below(5)), 1);
    const auto out = apply_action(pose, a, w);
    if (out.collided) {
      EXPECT_LT(std::hypot(out.new_pose.x - pose.x, out.new_pose.y - pose.y), w.step_length);
    }
    pose = out.new_pose;
    ASSERT_EQ(pose.heading_deg % 45, 0);
    ASSERT_GE(pose.heading_deg, 0);
    ASSERT_LT(pose.heading_deg, 360);
    for (const auto& o : w.obstacles) ASSERT_GT(std::hypot(pose.x - o.cx, pose.y - o.cy), o.radius);
  }
}

TEST(WorldProperties, DeterministicReplay) {
  WorldConfig w = open_world();
  w.obstacles = {{500, 300, 40}};
  auto run = [&] {
    Rng rng(5);
    RobotPose pose = w.robot_start;
    std::vector<StepOutcome> outs;
    for (int i = 0; i < 500; ++i) {
      const auto out =
          apply_action(pose, RefinedAction::move(static_cast<int>(rng.below(8)), static_cast<int>(rng.below(5)), 1), w);
      outs.push_back(out);
      pose = out.new_pose;
    }
    return outs;
  };
  const auto a = run(), b = run();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].new_pose, b[i].new_pose);
    EXPECT_EQ(a[i].sim_time_elapsed, b[i].sim_time_elapsed);
    EXPECT_EQ(a[i].collided, b[i].collided);
  }
}
