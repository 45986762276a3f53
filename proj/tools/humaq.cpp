#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "humaq/baselines.hpp"
#include "humaq/error.hpp"
#include "humaq/harness.hpp"
#include "humaq/metrics.hpp"
#include "humaq/qtable.hpp"

namespace fs = std::filesystem;
using namespace humaq;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_run(const fs::path& config_path, const fs::path& out_dir, bool no_gradual) {
  TrialConfig config = load_trial_config(config_path);
  config.output_dir = out_dir;
  if (no_gradual) config.gradual = false;
  TrialReport report = run_trial(config);
  std::cout << "set updates reached sim_time_s\n";
  for (const auto& s : report.sets) {
    std::printf("%3d %7d %7s %10.2f\n", s.set_id, s.updates_to_goal, s.reached_goal ? "yes" : "no", s.sim_time);
  }
  std::cout << "mu:";
  for (const auto& m : report.convergence.mu) std::cout << ' ' << format_mu(m);
  std::cout << "\nwrote " << out_dir.string() << '\n';
  return 0;
}

void write_policy(const fs::path& dir, const GridMDP& mdp, const std::vector<int>& policy,
                  const std::vector<double>& values) {
  auto p = open_out(dir / "policy.csv");
  p << "state,x,y,action\n";
  for (int s = 0; s < mdp.n_states(); ++s)
    p << s << ',' << s % mdp.width << ',' << s / mdp.width << ',' << policy[s] << '\n';
  auto v = open_out(dir / "values.csv");
  v << "state,x,y,value\n";
  for (int s = 0; s < mdp.n_states(); ++s)
    v << s << ',' << s % mdp.width << ',' << s / mdp.width << ',' << fmt(values[s]) << '\n';
}

void write_episodes(const fs::path& dir, const std::vector<int>& lengths) {
  auto e = open_out(dir / "episodes.csv");
  e << "episode,length\n";
  for (std::size_t i = 0; i < lengths.size(); ++i) e << i + 1 << ',' << lengths[i] << '\n';
}

std::vector<double> state_values(const GridMDP& mdp, const QTable& q) {
  std::vector<double> v(mdp.n_states(), 0.0);
  for (int s = 0; s < mdp.n_states(); ++s)
    if (mdp.decision_state(s)) v[s] = q.max_value(s);
  return v;
}

int cmd_baseline(const std::string& method, const fs::path& grid_path, const fs::path& out_dir, double gamma,
                 int episodes, std::uint64_t seed) {
  GridMDP mdp = load_grid_mdp(grid_path);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  if (method == "dp") {
    auto vi = value_iteration(mdp, gamma, 1e-10);
    write_policy(out_dir, mdp, vi.policy, vi.values);
    auto r = open_out(out_dir / "residuals.csv");
    r << "sweep,residual\n";
    for (std::size_t i = 0; i < vi.residuals.size(); ++i) r << i + 1 << ',' << fmt(vi.residuals[i]) << '\n';
    std::cout << "value iteration: " << vi.residuals.size() << " sweeps\n";
  } else if (method == "mc") {
    auto mc = mc_control(mdp, gamma, episodes, EpsilonSchedule{}, seed);
    write_policy(out_dir, mdp, mc.policy, state_values(mdp, mc.q));
    write_episodes(out_dir, mc.episode_lengths);
    std::cout << "monte carlo: " << episodes << " episodes\n";
  } else {
    LearningParams params;
    params.gamma = gamma;
    auto sq = single_q(mdp, params, episodes, seed);
    write_policy(out_dir, mdp, sq.policy, state_values(mdp, sq.q));
    write_episodes(out_dir, sq.episode_lengths);
    save_qtable(sq.q, out_dir / "q.qt");
    std::cout << "q-learning: " << episodes << " episodes\n";
  }
  return 0;
}

int cmd_convergence(const fs::path& summary) {
  auto updates = read_updates_column(summary);
  std::cout << convergence_csv(convergence_rate(updates));
  return 0;
}

int cmd_diff(const fs::path& a, const fs::path& b) {
  QChangeReport r = q_change(load_qtable(a), load_qtable(b));
  std::cout << "agent=" << to_string(r.agent) << " increased=" << r.increased << " decreased=" << r.decreased
            << " total=" << r.total_changed << '\n';
  return 0;
}

int cmd_show(const fs::path& file) {
  QTable q = load_qtable(file);
  std::cout << "agent=" << to_string(q.agent()) << " states=" << q.n_states() << " actions=" << q.n_actions()
            << " seed=" << q.seed() << '\n';
  for (int s = 0; s < q.n_states(); ++s) {
    std::cout << s << ':';
    for (double v : q.row(s)) std::cout << ' ' << fmt(v);
    std::cout << "  -> " << q.argmax(s) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent gradual Q-learning exploration simulator"};
  app.require_subcommand(1);

  fs::path config_path, out_dir;
  bool no_gradual = false;
  auto* run = app.add_subcommand("run", "Run a trial of sets with Q-table carryover");
  run->add_option("--config", config_path, "Trial config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--no-gradual", no_gradual, "Fresh random tables for every set");

  std::string method;
  fs::path grid_path, baseline_out;
  double gamma = 0.9;
  int episodes = 5000;
  std::uint64_t seed = 1;
  auto* baseline = app.add_subcommand("baseline", "Solve a grid task with a single-agent baseline");
  baseline->add_option("--method", method, "dp, mc or sq")->required()->check(CLI::IsMember({"dp", "mc", "sq"}));
  baseline->add_option("--grid", grid_path, "Grid config (JSON)")->required();
  baseline->add_option("--out", baseline_out, "Output directory")->required();
  baseline->add_option("--gamma", gamma, "Discount")->capture_default_str();
  baseline->add_option("--episodes", episodes, "Episodes for mc/sq")->capture_default_str();
  baseline->add_option("--seed", seed, "RNG seed for mc/sq")->capture_default_str();

  fs::path summary;
  auto* metrics = app.add_subcommand("metrics", "Metric reports");
  metrics->require_subcommand(1);
  auto* conv = metrics->add_subcommand("convergence", "Convergence ratios over a summary CSV");
  conv->add_option("--summary", summary, "summary.csv from a run")->required();

  fs::path qa, qb, qfile;
  auto* qtable = app.add_subcommand("qtable", "Inspect saved Q-tables");
  qtable->require_subcommand(1);
  auto* diff = qtable->add_subcommand("diff", "Count changed cells of B against A");
  diff->add_option("A", qa)->required();
  diff->add_option("B", qb)->required();
  auto* show = qtable->add_subcommand("show", "Print a table");
  show->add_option("file", qfile)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, no_gradual);
    if (*baseline) return cmd_baseline(method, grid_path, baseline_out, gamma, episodes, seed);
    if (*conv) return cmd_convergence(summary);
    if (*diff) return cmd_diff(qa, qb);
    if (*show) return cmd_show(qfile);
  } catch (const IoError& e) {
    std::cerr << "humaq: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "humaq: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
