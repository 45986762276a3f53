#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "humaq/qtable.hpp"

namespace humaq {

inline constexpr int kCompassActions = 8;

// Deterministic gridworld of the light-seeking task. Cells are indexed
// y * width + x with +y pointing north; action k moves along compass heading
// 45*k degrees (0 = N, 2 = E, ...). Moves off the grid or into a blocked
// cell leave the state unchanged. The goal is absorbing with zero reward.
struct GridMDP {
  int width = 0;
  int height = 0;
  std::vector<double> light;
  std::vector<std::uint8_t> blocked;
  int goal_cell = 0;
  double goal_bonus = 100.0;

  int n_states() const { return width * height; }
  int cell(int x, int y) const { return y * width + x; }
  bool terminal(int s) const { return s == goal_cell; }
  // Non-terminal, non-blocked states; the ones a policy is defined on.
  bool decision_state(int s) const { return !terminal(s) && !blocked[s]; }
  int next(int s, int a) const;
  // Light gain plus goal_bonus on entering the goal.
  double reward(int s, int a) const;

  void validate() const;
};

GridMDP parse_grid_mdp(const std::string& json_text);
GridMDP load_grid_mdp(const std::filesystem::path& path);

// Random grid for the test battery and benchmarks: integer light levels
// 0..255, the goal on the brightest cell (first on ties), every other cell
// blocked with probability `block_prob`.
GridMDP random_grid(int width, int height, double block_prob, std::uint64_t seed);

struct ValueIterationResult {
  std::vector<double> values;
  std::vector<int> policy;        // -1 on terminal and blocked cells
  std::vector<double> residuals;  // sup-norm change per sweep
};

// Synchronous sweeps V <- max_a [r(x,a) + gamma * V(next)] until the
// sup-norm change drops below tol.
ValueIterationResult value_iteration(const GridMDP& mdp, double gamma, double tol);

// One-step lookahead Q(s,a) = r(s,a) + gamma * V(next).
std::vector<double> lookahead(const GridMDP& mdp, const std::vector<double>& values, double gamma);

// Greedy policy over a grid Q table (ties to the lowest id), -1 off the
// decision states.
std::vector<int> greedy_policy(const GridMDP& mdp, const QTable& q);

// Control runs in epochs of doubling length, the first `first_epoch` episodes
// long. Each epoch restarts the return averages and multiplies epsilon by `decay`.
struct EpsilonSchedule {
  double start = 1.0;
  double decay = 0.5;
  double floor = 0.0;
  int first_epoch = 100;

  double at_epoch(int epoch) const;
};

struct EpisodeStep {
  int state = 0;
  int action = 0;
  double reward = 0.0;
};

struct MonteCarloResult {
  QTable q;
  std::vector<int> policy;
  std::vector<int> episode_lengths;
  std::vector<EpisodeStep> last_episode;
};

// On-policy first-visit Monte Carlo control with an epsilon-soft policy.
// Episodes start from a uniformly drawn decision state with a uniformly drawn
// first action and end at the goal or after max_steps.
MonteCarloResult mc_control(const GridMDP& mdp, double gamma, int episodes, const EpsilonSchedule& epsilon,
                            std::uint64_t seed, int max_steps = 200);

struct SingleQResult {
  QTable q;
  std::vector<int> policy;
  std::vector<int> episode_lengths;
};

// Tabular Q-learning over the grid. With `initial` the run continues from a
// previous run's final table instead of a random one.
SingleQResult single_q(const GridMDP& mdp, const LearningParams& params, int episodes, std::uint64_t seed,
                       const std::optional<QTable>& initial = std::nullopt, int max_steps = 200);

}  // namespace humaq
