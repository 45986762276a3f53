#include <gtest/gtest.h>

#include <cstdlib>
#include <vector>

#include "humaq/error.hpp"
#include "humaq/metrics.hpp"
#include "humaq/rng.hpp"

using namespace humaq;

TEST(QChange, IdentityAndOneCell) {
  LearningParams p;
  const QTable a = init_random(AgentId::obstacle, p, 1);
  QTable b = a;
  const auto same = q_change(a, b);
  EXPECT_EQ(same.increased, 0);
  EXPECT_EQ(same.decreased, 0);
  EXPECT_EQ(same.total_changed, 0);
  b.at(3, 2) += 1;
  const auto one = q_change(a, b);
  EXPECT_EQ(one.agent, AgentId::obstacle);
  EXPECT_EQ(one.increased, 1);
  EXPECT_EQ(one.decreased, 0);
  EXPECT_EQ(one.total_changed, 1);
}

TEST(QChange, MismatchIsInputError) {
  EXPECT_THROW(q_change(QTable(AgentId::goal), QTable(AgentId::obstacle)), InputError);
  EXPECT_THROW(q_change(QTable(AgentId::grid, 4, 8), QTable(AgentId::grid, 5, 8)), InputError);
}

TEST(QChangeProperty, RecountAndSwap) {
  LearningParams p;
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const QTable ref = init_random(AgentId::goal, p, trial);
    QTable cur = ref;
    const int k = static_cast<int>(rng.below(500));
    for (int i = 0; i < k; ++i) {
      const int s = static_cast<int>(rng.below(1024)), a = static_cast<int>(rng.below(8));
      cur.at(s, a) += rng.uniform01() < 0.5 ? -1.0 : 1.0;
    }
    int up = 0, down = 0;
    for (std::size_t i = 0; i < ref.values().size(); ++i) {
      if (cur.values()[i] > ref.values()[i]) ++up;
      if (cur.values()[i] < ref.values()[i]) ++down;
    }
    const auto r = q_change(ref, cur);
    ASSERT_EQ(r.increased, up);
    ASSERT_EQ(r.decreased, down);
    ASSERT_EQ(r.total_changed, up + down);
    ASSERT_LE(r.total_changed, 1024 * 8);
    const auto back = q_change(cur, ref);
    ASSERT_EQ(back.increased, r.decreased);
    ASSERT_EQ(back.decreased, r.increased);
  }
}

TEST(Convergence, PlainGrassLandRow) {
  const std::vector<std::int64_t> seq{69, 60, 39, 45, 39};
  const auto r = convergence_rate(seq);
  EXPECT_EQ(r.target, 39);
  ASSERT_EQ(r.mu.size(), 4u);
  EXPECT_EQ(r.mu[0], (Ratio{21, 30}));
  EXPECT_EQ(r.mu[1], (Ratio{0, 21}));
  EXPECT_FALSE(r.mu[2].has_value());
  EXPECT_EQ(r.mu[3], (Ratio{0, 6}));
  EXPECT_EQ(format_mu(r.mu[0]), "0.7");
  EXPECT_EQ(format_mu(r.mu[1]), "0.0");
  EXPECT_EQ(format_mu(r.mu[2]), "-");
  EXPECT_EQ(format_mu(r.mu[3]), "0.0");
}

TEST(Convergence, UpdatesSequence) {
  const std::vector<std::int64_t> seq{57, 56, 48, 38, 34};
  const auto r = convergence_rate(seq);
  EXPECT_NEAR(r.mu[0]->value(), 22.0 / 23.0, 1e-15);
  EXPECT_NEAR(r.mu[1]->value(), 14.0 / 22.0, 1e-15);
  EXPECT_NEAR(r.mu[2]->value(), 4.0 / 14.0, 1e-15);
  EXPECT_EQ(r.mu[3]->value(), 0.0);
  EXPECT_NEAR(r.mu[0]->value(), 0.9565, 5e-5);
  EXPECT_NEAR(r.mu[1]->value(), 0.6364, 5e-5);
  EXPECT_NEAR(r.mu[2]->value(), 0.2857, 5e-5);
}

TEST(Convergence, ConstantSequence) {
  const std::vector<std::int64_t> seq{5, 5, 5};
  const auto r = convergence_rate(seq);
  ASSERT_EQ(r.mu.size(), 2u);
  EXPECT_FALSE(r.mu[0]);
  EXPECT_FALSE(r.mu[1]);
}

TEST(Convergence, TooShort) {
  EXPECT_THROW(convergence_rate(std::vector<std::int64_t>{}), InputError);
  EXPECT_THROW(convergence_rate(std::vector<std::int64_t>{4}), InputError);
}

TEST(ConvergenceProperty, ShiftInvariant) {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::int64_t> seq(2 + rng.below(8));
    for (auto& v : seq) v = 1 + static_cast<std::int64_t>(rng.below(200));
    const std::int64_t shift = static_cast<std::int64_t>(rng.below(1000)) - 500;
    std::vector<std::int64_t> moved = seq;
    for (auto& v : moved) v += shift;
    const auto a = convergence_rate(seq), b = convergence_rate(moved);
    ASSERT_EQ(b.target, a.target + shift);
    ASSERT_EQ(a.mu, b.mu);
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      const auto dk = std::llabs(seq[k] - a.target), dn = std::llabs(seq[k + 1] - a.target);
      if (dk == 0) {
        ASSERT_FALSE(a.mu[k]);
      } else {
        ASSERT_EQ(a.mu[k], (Ratio{dn, dk}));
      }
    }
  }
}

TEST(ConvergenceCsv, Layout) {
  const std::vector<std::int64_t> seq{69, 60, 39, 45, 39};
  const std::string csv = convergence_csv(convergence_rate(seq));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,a_k,a_next,target,mu_num,mu_den,mu,mu_display");
  EXPECT_NE(csv.find("\n1,69,60,39,21,30,"), std::string::npos);
  EXPECT_NE(csv.find("\n3,39,45,39,,,,-\n"), std::string::npos);
}
