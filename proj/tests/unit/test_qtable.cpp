#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "humaq/error.hpp"
#include "humaq/qtable.hpp"
#include "temp_dir.hpp"

using namespace humaq;

TEST(QTableShape, PerAgent) {
  EXPECT_EQ(QTable(AgentId::hunger).n_states(), 2);
  EXPECT_EQ(QTable(AgentId::hunger).n_actions(), 2);
  EXPECT_EQ(QTable(AgentId::goal).values().size(), 1024u * 8u);
  EXPECT_EQ(QTable(AgentId::obstacle).n_states(), 250);
  EXPECT_EQ(QTable(AgentId::obstacle).n_actions(), 5);
  EXPECT_THROW(QTable(AgentId::goal, 1023, 8), InputError);
  EXPECT_NO_THROW(QTable(AgentId::grid, 16, 8));
}

TEST(InitRandom, DeterministicAndInRange) {
  LearningParams p;
  const QTable a = init_random(AgentId::goal, p, 42);
  const QTable b = init_random(AgentId::goal, p, 42);
  const QTable c = init_random(AgentId::goal, p, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (double v : a.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  p.init_low = 5;
  p.init_high = 5;
  EXPECT_THROW(init_random(AgentId::hunger, p, 1), InputError);
}

TEST(SelectAction, Greedy) {
  QTable t(AgentId::grid, 1, 4);
  t.at(0, 0) = 0.1;
  t.at(0, 1) = 0.9;
  t.at(0, 2) = 0.2;
  LearningParams p;
  p.epsilon = 0;
  Rng rng(1);
  EXPECT_EQ(select_action(t, 0, p, rng), 1);
  QTable flat(AgentId::grid, 1, 4);
  EXPECT_EQ(select_action(flat, 0, p, rng), 0);
  EXPECT_THROW(select_action(t, 1, p, rng), InputError);
}

TEST(SelectAction, UniformWhenFullyExploring) {
  QTable t(AgentId::goal);
  t.at(0, 3) = 100;
  LearningParams p;
  p.epsilon = 1;
  Rng rng(9);
  const int n = 100000;
  std::array<int, 8> counts{};
  for (int i = 0; i < n; ++i) ++counts[select_action(t, 0, p, rng)];
  const double mean = n / 8.0;
  const double sigma = std::sqrt(n * (1.0 / 8) * (7.0 / 8));
  for (int c : counts) EXPECT_LT(std::abs(c - mean), 3 * sigma);
}

TEST(SelectAction, GreedyIsPureFunctionOfRow) {
  LearningParams p;
  p.epsilon = 0;
  const QTable t = init_random(AgentId::goal, p, 4);
  Rng r1(1), r2(999);
  for (int s = 0; s < t.n_states(); ++s) ASSERT_EQ(select_action(t, s, p, r1), select_action(t, s, p, r2));
}

TEST(QUpdate, HandEvaluated) {
  QTable t(AgentId::grid, 2, 2);
  t.at(1, 0) = 1.0;
  t.at(1, 1) = 0.5;
  LearningParams p;
  p.beta = 0.2;
  p.gamma = 0.9;
  q_update(t, 0, 0, 6.0, 1, p);
  // 0 + 0.2 * (6 + 0.9 * 1.0 - 0) = 1.38
  EXPECT_NEAR(t.at(0, 0), 1.38, 1e-12);
}

TEST(QUpdate, ZeroStepAndContraction) {
  LearningParams p;
  QTable t = init_random(AgentId::obstacle, p, 3);
  const QTable before = t;
  p.beta = 0;
  q_update(t, 5, 2, 100.0, 7, p);
  EXPECT_EQ(t, before);

  QTable u(AgentId::grid, 2, 2);
  u.at(0, 1) = 2;
  p.beta = 0.5;
  p.gamma = 0;
  q_update(u, 0, 1, 0.0, 1, p);
  EXPECT_EQ(u.at(0, 1), 1.0);
}

TEST(QUpdate, RejectsNonFiniteReward) {
  QTable t(AgentId::hunger);
  LearningParams p;
  EXPECT_THROW(q_update(t, 0, 0, NAN, 1, p), InputError);
  EXPECT_THROW(q_update(t, 0, 0, INFINITY, 1, p), InputError);
  EXPECT_THROW(q_update(t, 2, 0, 1.0, 1, p), InputError);
}

TEST(QUpdate, TerminalHasNoBootstrap) {
  QTable t(AgentId::grid, 2, 2);
  t.at(1, 0) = 50;
  LearningParams p;
  p.beta = 1;
  q_update_terminal(t, 0, 0, 3.0, p);
  EXPECT_EQ(t.at(0, 0), 3.0);
}

TEST(QUpdateProperty, TouchesExactlyOneCell) {
  LearningParams p;
  Rng rng(77);
  QTable t = init_random(AgentId::goal, p, 1);
  for (int i = 0; i < 2000; ++i) {
    const QTable before = t;
    const int s = static_cast<int>(rng.below(1024)), a = static_cast<int>(rng.below(8)),
              sn = static_cast<int>(rng.below(1024));
    q_update(t, s, a, rng.uniform01() * 100 - 50, sn, p);
    for (int x = 0; x < t.n_states(); ++x)
      for (int y = 0; y < t.n_actions(); ++y)
        if (x != s || y != a) {
          ASSERT_EQ(std::bit_cast<std::uint64_t>(t.at(x, y)), std::bit_cast<std::uint64_t>(before.at(x, y)));
        }
  }
}

TEST(QUpdateProperty, BoundedUnderBoundedRewards) {
  LearningParams p;
  p.beta = 0.7;
  p.gamma = 0.95;
  Rng rng(5);
  QTable t = init_random(AgentId::obstacle, p, 2);
  const double r_max = 300;
  double q0 = 0;
  for (double v : t.values()) q0 = std::max(q0, std::abs(v));
  const double bound = std::max(q0, r_max / (1 - p.gamma));
  for (int i = 0; i < 100000; ++i) {
    q_update(t, static_cast<int>(rng.below(250)), static_cast<int>(rng.below(5)), (rng.uniform01() * 2 - 1) * r_max,
             static_cast<int>(rng.below(250)), p);
  }
  for (double v : t.values()) ASSERT_LE(std::abs(v), bound * (1 + 1e-12));
}

TEST(LearningParams, ValidationAndSchedules) {
  LearningParams p;
  EXPECT_NO_THROW(p.validate());
  p.beta = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.gamma = 1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.epsilon = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);

  p = {};
  p.beta = 0.4;
  p.beta_decay = true;
  p.epsilon = 0.2;
  p.epsilon_decay = 0.5;
  const LearningParams third = p.for_set(3);
  EXPECT_DOUBLE_EQ(third.beta, 0.4 / 3);
  EXPECT_DOUBLE_EQ(third.epsilon, 0.05);
  EXPECT_DOUBLE_EQ(p.for_set(1).epsilon, 0.2);
}

class QTableFiles : public TempDirTest {};

TEST_F(QTableFiles, RoundTripBitExactForAllShapes) {
  LearningParams p;
  p.init_low = -1e6;
  p.init_high = 1e6;
  for (AgentId id : {AgentId::hunger, AgentId::goal, AgentId::obstacle}) {
    QTable t = init_random(id, p, 12345);
    t.at(0, 0) = -0.0;
    t.at(1, 1) = 5e-324;
    t.at(0, 1) = 0.1;
    const auto path = dir() / (std::string(to_string(id)) + ".qt");
    save_qtable(t, path);
    const QTable back = load_qtable(path);
    ASSERT_EQ(back.agent(), id);
    ASSERT_EQ(back.seed(), 12345u);
    ASSERT_EQ(back.values().size(), t.values().size());
    for (std::size_t i = 0; i < t.values().size(); ++i)
      ASSERT_EQ(std::bit_cast<std::uint64_t>(back.values()[i]), std::bit_cast<std::uint64_t>(t.values()[i]));
  }
}

TEST_F(QTableFiles, HeaderLayout) {
  QTable t(AgentId::hunger, 7);
  t.at(0, 0) = 1.0;
  t.at(1, 1) = -0.5;
  std::ostringstream out;
  write_qtable(out, t);
  EXPECT_EQ(out.str(), "HUMAQ-QT v1\nagent=hunger states=2 actions=2 seed=7\n0x1p+0 0x0p+0\n0x0p+0 -0x1p-1\n");
}

TEST_F(QTableFiles, FormatErrors) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_qtable(in);
  };
  std::ostringstream good;
  write_qtable(good, QTable(AgentId::hunger));
  EXPECT_NO_THROW(read(good.str()));

  EXPECT_THROW(read(""), FormatError);
  EXPECT_THROW(read("HUMAQ-QT v2\nagent=hunger states=2 actions=2 seed=0\n0x0p+0 0x0p+0\n0x0p+0 0x0p+0\n"),
               FormatError);
  EXPECT_THROW(read("HUMAQ-QT v1\nagent=hunger states=3 actions=2 seed=0\n"), FormatError);
  EXPECT_THROW(read("HUMAQ-QT v1\nagent=hunger states=2 actions=2 seed=0\n0x0p+0 0x0p+0\n"), FormatError);
  EXPECT_THROW(read("HUMAQ-QT v1\nagent=hunger states=2 actions=2 seed=0\n0x0p+0 0x0p+0\n0x0p+0 zz\n"),
               FormatError);
  EXPECT_THROW(read("HUMAQ-QT v1\nagent=hunger states=2 actions=2 seed=0\n0x0p+0\n0x0p+0 0x0p+0\n"), FormatError);
  EXPECT_THROW(read("HUMAQ-QT v1\nagent=pilot states=2 actions=2 seed=0\n"), FormatError);
  EXPECT_THROW(read(good.str() + "0x0p+0\n"), FormatError);

  // The goal agent with one state short.
  std::ostringstream text;
  text << "HUMAQ-QT v1\nagent=goal states=1023 actions=8 seed=0\n";
  for (int s = 0; s < 1023; ++s) text << "0x0p+0 0x0p+0 0x0p+0 0x0p+0 0x0p+0 0x0p+0 0x0p+0 0x0p+0\n";
  EXPECT_THROW(read(text.str()), FormatError);
}

TEST_F(QTableFiles, IoErrors) {
  EXPECT_THROW(load_qtable(dir() / "missing.qt"), IoError);
  EXPECT_THROW(save_qtable(QTable(AgentId::hunger), dir() / "no" / "such" / "dir.qt"), IoError);
}
