#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "humaq/coordinator.hpp"
#include "humaq/metrics.hpp"
#include "humaq/qtable.hpp"
#include "humaq/world.hpp"

namespace humaq {

struct TrialConfig {
  WorldConfig world;
  int n_sets = 5;
  LearningParams learning;
  RewardConstants rewards;
  RewardWeights weights;
  Arbitration arbitration = Arbitration::goal_first;
  std::vector<std::uint64_t> seeds;  // one per set
  std::filesystem::path output_dir;  // empty: keep everything in memory
  bool gradual = true;

  void validate() const;
};

// Relative "world_file" entries are resolved against base_dir. Missing
// "seeds" default to world.rng_seed + k for k = 0..n_sets-1.
TrialConfig parse_trial_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
TrialConfig load_trial_config(const std::filesystem::path& path);

struct SetSummary {
  int set_id = 0;  // 1-based
  int updates_to_goal = 0;
  double sim_time = 0.0;
  bool reached_goal = false;
  double final_battery = 0.0;
};

struct CycleRecord {
  int set_id = 0;
  int cycle = 0;
  int goal_state = 0;
  int goal_action = 0;
  int obstacle_state = 0;
  int obstacle_action = 0;
  int hunger_state = 0;
  RefinedAction refined;
  RawRewards raw;
  RewardCase reward_case = RewardCase::case_II;
  RobotPose pose;  // after the cycle's motion
  double battery = 0.0;
  double sim_time = 0.0;  // cumulative within the set
};

struct SetResult {
  SetSummary summary;
  AgentTables final_tables;
  std::vector<CycleRecord> log;
};

// Seed used for an agent's random table, derived from a set seed.
std::uint64_t table_seed(std::uint64_t set_seed, AgentId agent);
AgentTables random_tables(const LearningParams& params, std::uint64_t set_seed);

// Runs sense / decide / select / coordinate / act / sense / reward / update
// cycles until the goal is reached, the robot powers off below threshold,
// the battery is empty or max_updates_per_set cycles have run.
SetResult run_set(const TrialConfig& config, int set_id, AgentTables tables);

struct SetQChange {
  QChangeReport goal;
  QChangeReport obstacle;
  QChangeReport hunger;
};

struct TrialReport {
  std::vector<SetSummary> sets;
  // Cumulative change of each set's final tables against set 1's initial tables.
  std::vector<SetQChange> q_changes;
  ConvergenceReport convergence;
  std::vector<AgentTables> initial_tables;
  std::vector<AgentTables> final_tables;
  std::vector<CycleRecord> log;
};

// With an output_dir, writes cycles.csv, summary.csv, convergence.csv and
// qtables/set<k>_<agent>_{initial,final}.qt; gradual sets then start from
// the previous set's saved files.
TrialReport run_trial(const TrialConfig& config);

std::string cycle_log_header();
std::string cycle_log_row(const CycleRecord& record);
std::string summary_header();
std::string summary_row(const SetSummary& summary, const SetQChange& change);

// Reads the updates_to_goal column of a summary CSV.
std::vector<std::int64_t> read_updates_column(const std::filesystem::path& summary_csv);

}  // namespace humaq
