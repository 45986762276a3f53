#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "humaq/rng.hpp"
#include "humaq/types.hpp"

namespace humaq {

struct TableShape {
  int n_states = 0;
  int n_actions = 0;
};

// Fixed shape of each agent's table. Not defined for AgentId::grid.
TableShape shape_of(AgentId agent);

struct LearningParams {
  double beta = 0.2;     // learning rate, (0, 1]
  double gamma = 0.9;    // discount, [0, 1)
  double epsilon = 0.1;  // exploration probability, [0, 1]
  double init_low = 0.0;
  double init_high = 1.0;
  // Per-set schedules: beta / k and epsilon * epsilon_decay^(k-1) for set k.
  bool beta_decay = false;
  double epsilon_decay = 1.0;

  // Throws ConfigError on out-of-range fields.
  void validate() const;
  // Parameters in effect for the 1-based set index k.
  LearningParams for_set(int k) const;
};

class QTable {
 public:
  QTable() = default;
  // Zero-filled table with the agent's fixed shape.
  explicit QTable(AgentId agent, std::uint64_t seed = 0);
  // Free shape, for AgentId::grid.
  QTable(AgentId agent, int n_states, int n_actions, std::uint64_t seed = 0);

  AgentId agent() const { return agent_; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  std::uint64_t seed() const { return seed_; }

  double& at(int s, int a) { return values_[index(s, a)]; }
  double at(int s, int a) const { return values_[index(s, a)]; }
  std::span<const double> row(int s) const;
  std::span<const double> values() const { return values_; }

  double max_value(int s) const;
  // Greedy action; ties go to the lowest action id.
  int argmax(int s) const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t index(int s, int a) const;

  AgentId agent_ = AgentId::grid;
  int n_states_ = 0;
  int n_actions_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> values_;
};

QTable init_random(AgentId agent, const LearningParams& params, std::uint64_t seed);
QTable init_random(AgentId agent, int n_states, int n_actions, const LearningParams& params,
                   std::uint64_t seed);

// Epsilon-greedy. Draws exactly one uniform per call, plus one index draw
// when exploring.
int select_action(const QTable& table, int state, const LearningParams& params, Rng& rng);

// Q(s,a) += beta * (r + gamma * max_a' Q(s',a') - Q(s,a)). Only Q(s,a) changes.
void q_update(QTable& table, int s, int a, double reward, int s_next, const LearningParams& params);

// Same update with s_next treated as terminal (no bootstrap).
void q_update_terminal(QTable& table, int s, int a, double reward, const LearningParams& params);

// Text format: "HUMAQ-QT v1", then "agent=<id> states=<n> actions=<m> seed=<s>",
// then one line per state of hexadecimal floats separated by single spaces.
void write_qtable(std::ostream& out, const QTable& table);
QTable read_qtable(std::istream& in);
void save_qtable(const QTable& table, const std::filesystem::path& path);
QTable load_qtable(const std::filesystem::path& path);

}  // namespace humaq
