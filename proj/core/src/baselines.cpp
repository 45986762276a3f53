#include "humaq/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "humaq/error.hpp"
#include "humaq/rng.hpp"

namespace humaq {

namespace {

constexpr int kDx[kCompassActions] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDy[kCompassActions] = {1, 1, 0, -1, -1, -1, 0, 1};

std::vector<int> decision_states(const GridMDP& mdp) {
  std::vector<int> out;
  for (int s = 0; s < mdp.n_states(); ++s)
    if (mdp.decision_state(s)) out.push_back(s);
  return out;
}

}  // namespace

int GridMDP::next(int s, int a) const {
  if (terminal(s)) return s;
  const int x = s % width + kDx[a];
  const int y = s / width + kDy[a];
  if (x < 0 || y < 0 || x >= width || y >= height) return s;
  const int t = cell(x, y);
  return blocked[t] ? s : t;
}

double GridMDP::reward(int s, int a) const {
  if (terminal(s)) return 0.0;
  const int t = next(s, a);
  return light[t] - light[s] + (terminal(t) ? goal_bonus : 0.0);
}

void GridMDP::validate() const {
  if (width < 1 || height < 1) throw ConfigError("grid: dimensions must be positive");
  const auto n = static_cast<std::size_t>(n_states());
  if (light.size() != n || blocked.size() != n) throw ConfigError("grid: light/blocked size mismatch");
  if (goal_cell < 0 || goal_cell >= n_states()) throw ConfigError("grid: goal outside the grid");
  if (blocked[goal_cell]) throw ConfigError("grid: goal cell is blocked");
  for (double v : light)
    if (!std::isfinite(v)) throw ConfigError("grid: light values must be finite");
  if (!std::isfinite(goal_bonus)) throw ConfigError("grid: goal_bonus must be finite");
}

GridMDP parse_grid_mdp(const std::string& json_text) {
  using nlohmann::json;
  GridMDP mdp;
  try {
    json j = json::parse(json_text);
    if (j.contains("grid") && j["grid"].is_object()) j = j["grid"];
    if (j.value("format_version", 0) != 1) throw ConfigError("grid: format_version must be 1");
    mdp.width = j.at("width").get<int>();
    mdp.height = j.at("height").get<int>();
    if (mdp.width < 1 || mdp.height < 1) throw ConfigError("grid: dimensions must be positive");
    mdp.light.assign(static_cast<std::size_t>(mdp.width) * mdp.height, 0.0);
    mdp.blocked.assign(mdp.light.size(), 0);
    if (j.contains("light")) {
      const auto& rows = j["light"];
      if (rows.size() != static_cast<std::size_t>(mdp.height)) throw ConfigError("grid: light needs one row per y");
      for (int y = 0; y < mdp.height; ++y) {
        if (rows[y].size() != static_cast<std::size_t>(mdp.width)) throw ConfigError("grid: light row width mismatch");
        for (int x = 0; x < mdp.width; ++x) mdp.light[mdp.cell(x, y)] = rows[y][x].get<double>();
      }
    }
    if (j.contains("blocked"))
      for (const auto& xy : j["blocked"]) {
        const int x = xy.at(0).get<int>();
        const int y = xy.at(1).get<int>();
        if (x < 0 || y < 0 || x >= mdp.width || y >= mdp.height) throw ConfigError("grid: blocked cell outside the grid");
        mdp.blocked[mdp.cell(x, y)] = 1;
      }
    const auto& goal = j.at("goal");
    const int gx = goal.at(0).get<int>();
    const int gy = goal.at(1).get<int>();
    if (gx < 0 || gy < 0 || gx >= mdp.width || gy >= mdp.height) throw ConfigError("grid: goal outside the grid");
    mdp.goal_cell = mdp.cell(gx, gy);
    mdp.goal_bonus = j.value("goal_bonus", mdp.goal_bonus);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  mdp.validate();
  return mdp;
}

GridMDP load_grid_mdp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_grid_mdp(buf.str());
}

GridMDP random_grid(int width, int height, double block_prob, std::uint64_t seed) {
  Rng rng(seed);
  GridMDP mdp;
  mdp.width = width;
  mdp.height = height;
  mdp.light.resize(static_cast<std::size_t>(width) * height);
  mdp.blocked.assign(mdp.light.size(), 0);
  for (auto& level : mdp.light) level = static_cast<double>(rng.below(256));
  mdp.goal_cell = static_cast<int>(std::max_element(mdp.light.begin(), mdp.light.end()) - mdp.light.begin());
  for (std::size_t s = 0; s < mdp.light.size(); ++s)
    if (static_cast<int>(s) != mdp.goal_cell && rng.bernoulli(block_prob)) mdp.blocked[s] = 1;
  mdp.validate();
  return mdp;
}

ValueIterationResult value_iteration(const GridMDP& mdp, double gamma, double tol) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("value_iteration: gamma must be in [0, 1)");
  if (!(tol > 0.0)) throw InputError("value_iteration: tol must be > 0");
  const int n = mdp.n_states();
  ValueIterationResult result;
  result.values.assign(n, 0.0);
  std::vector<double> next(n, 0.0);
  for (;;) {
    double change = 0.0;
    for (int s = 0; s < n; ++s) {
      if (!mdp.decision_state(s)) continue;
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < kCompassActions; ++a)
        best = std::max(best, mdp.reward(s, a) + gamma * result.values[mdp.next(s, a)]);
      next[s] = best;
      change = std::max(change, std::abs(best - result.values[s]));
    }
    result.values.swap(next);
    result.residuals.push_back(change);
    if (change < tol) break;
  }

  const auto q = lookahead(mdp, result.values, gamma);
  result.policy.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (!mdp.decision_state(s)) continue;
    int best = 0;
    for (int a = 1; a < kCompassActions; ++a)
      if (q[s * kCompassActions + a] > q[s * kCompassActions + best]) best = a;
    result.policy[s] = best;
  }
  return result;
}

std::vector<double> lookahead(const GridMDP& mdp, const std::vector<double>& values, double gamma) {
  std::vector<double> q(static_cast<std::size_t>(mdp.n_states()) * kCompassActions, 0.0);
  for (int s = 0; s < mdp.n_states(); ++s)
    for (int a = 0; a < kCompassActions; ++a)
      q[s * kCompassActions + a] = mdp.reward(s, a) + gamma * values[mdp.next(s, a)];
  return q;
}

std::vector<int> greedy_policy(const GridMDP& mdp, const QTable& q) {
  std::vector<int> policy(mdp.n_states(), -1);
  for (int s = 0; s < mdp.n_states(); ++s)
    if (mdp.decision_state(s)) policy[s] = q.argmax(s);
  return policy;
}

double EpsilonSchedule::at_epoch(int epoch) const {
  return std::max(floor, start * std::pow(decay, epoch));
}

MonteCarloResult mc_control(const GridMDP& mdp, double gamma, int episodes, const EpsilonSchedule& epsilon,
                            std::uint64_t seed, int max_steps) {
  if (episodes < 1) throw InputError("mc_control: episodes must be >= 1");
  if (epsilon.first_epoch < 1) throw InputError("mc_control: first_epoch must be >= 1");
  const auto starts = decision_states(mdp);
  if (starts.empty()) throw InputError("mc_control: grid has no decision states");
  const int n = mdp.n_states();
  Rng rng(seed);

  MonteCarloResult result{QTable(AgentId::grid, n, kCompassActions, seed), {}, {}, {}};
  std::vector<double> sums(static_cast<std::size_t>(n) * kCompassActions, 0.0);
  std::vector<std::int64_t> counts(sums.size(), 0);
  std::vector<int> first_visit(sums.size(), -1);

  std::vector<EpisodeStep> episode;
  LearningParams soft;
  soft.epsilon = epsilon.at_epoch(0);
  int epoch = 0;
  std::int64_t epoch_len = epsilon.first_epoch, epoch_end = epoch_len;
  for (int e = 0; e < episodes; ++e) {
    if (e == epoch_end) {
      std::fill(sums.begin(), sums.end(), 0.0);
      std::fill(counts.begin(), counts.end(), 0);
      epoch_len *= 2;
      epoch_end += epoch_len;
      soft.epsilon = epsilon.at_epoch(++epoch);
    }
    episode.clear();
    int s = starts[rng.below(starts.size())];
    for (int t = 0; t < max_steps && !mdp.terminal(s); ++t) {
      const int a = t == 0 ? static_cast<int>(rng.below(kCompassActions)) : select_action(result.q, s, soft, rng);
      episode.push_back({s, a, mdp.reward(s, a)});
      s = mdp.next(s, a);
    }
    result.episode_lengths.push_back(static_cast<int>(episode.size()));

    for (std::size_t t = 0; t < episode.size(); ++t) {
      const std::size_t key = static_cast<std::size_t>(episode[t].state) * kCompassActions + episode[t].action;
      if (first_visit[key] < 0) first_visit[key] = static_cast<int>(t);
    }
    double ret = 0.0;
    for (std::size_t t = episode.size(); t-- > 0;) {
      ret = episode[t].reward + gamma * ret;
      const std::size_t key = static_cast<std::size_t>(episode[t].state) * kCompassActions + episode[t].action;
      if (first_visit[key] == static_cast<int>(t)) {
        sums[key] += ret;
        counts[key] += 1;
        result.q.at(episode[t].state, episode[t].action) = sums[key] / static_cast<double>(counts[key]);
        first_visit[key] = -1;
      }
    }
  }
  result.last_episode = episode;
  result.policy = greedy_policy(mdp, result.q);
  return result;
}

SingleQResult single_q(const GridMDP& mdp, const LearningParams& params, int episodes, std::uint64_t seed,
                       const std::optional<QTable>& initial, int max_steps) {
  if (episodes < 1) throw InputError("single_q: episodes must be >= 1");
  const auto starts = decision_states(mdp);
  if (starts.empty()) throw InputError("single_q: grid has no decision states");
  const int n = mdp.n_states();

  SingleQResult result;
  if (initial) {
    if (initial->n_states() != n || initial->n_actions() != kCompassActions)
      throw InputError("single_q: initial table does not match the grid");
    result.q = *initial;
  } else {
    result.q = init_random(AgentId::grid, n, kCompassActions, params, seed);
  }

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int e = 0; e < episodes; ++e) {
    int s = starts[rng.below(starts.size())];
    int steps = 0;
    for (; steps < max_steps && !mdp.terminal(s); ++steps) {
      const int a = select_action(result.q, s, params, rng);
      const int s_next = mdp.next(s, a);
      const double r = mdp.reward(s, a);
      if (mdp.terminal(s_next)) {
        q_update_terminal(result.q, s, a, r, params);
      } else {
        q_update(result.q, s, a, r, s_next, params);
      }
      s = s_next;
    }
    result.episode_lengths.push_back(steps);
  }
  result.policy = greedy_policy(mdp, result.q);
  return result;
}

}  // namespace humaq
