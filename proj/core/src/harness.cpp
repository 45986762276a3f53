#include "humaq/harness.hpp"

#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "humaq/agents.hpp"
#include "humaq/error.hpp"
#include "humaq/perception.hpp"

namespace humaq {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::filesystem::path table_path(const std::filesystem::path& dir, int set_id, AgentId agent, const char* which) {
  return dir / "qtables" / ("set" + std::to_string(set_id) + "_" + std::string(to_string(agent)) + "_" + which + ".qt");
}

void save_tables(const std::filesystem::path& dir, int set_id, const AgentTables& t, const char* which) {
  save_qtable(t.hunger, table_path(dir, set_id, AgentId::hunger, which));
  save_qtable(t.goal, table_path(dir, set_id, AgentId::goal, which));
  save_qtable(t.obstacle, table_path(dir, set_id, AgentId::obstacle, which));
}

AgentTables load_tables(const std::filesystem::path& dir, int set_id, const char* which) {
  return {load_qtable(table_path(dir, set_id, AgentId::hunger, which)),
          load_qtable(table_path(dir, set_id, AgentId::goal, which)),
          load_qtable(table_path(dir, set_id, AgentId::obstacle, which))};
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

void TrialConfig::validate() const {
  humaq::validate(world);
  learning.validate();
  rewards.validate();
  weights.validate();
  if (n_sets < 1) throw ConfigError("trial: n_sets must be >= 1");
  if (seeds.size() != static_cast<std::size_t>(n_sets)) throw ConfigError("trial: need exactly one seed per set");
}

TrialConfig parse_trial_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  using nlohmann::json;
  TrialConfig c;
  try {
    const json j = json::parse(json_text);
    if (j.value("format_version", 0) != 1) throw ConfigError("trial config: format_version must be 1");
    if (j.contains("world")) {
      c.world = parse_world_config(j["world"].dump());
    } else if (j.contains("world_file")) {
      std::filesystem::path p = j["world_file"].get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      c.world = load_world_config(p);
    } else {
      throw ConfigError("trial config: needs \"world\" or \"world_file\"");
    }
    c.n_sets = j.value("n_sets", c.n_sets);
    c.gradual = j.value("gradual", c.gradual);
    if (j.contains("arbitration")) c.arbitration = arbitration_from_string(j["arbitration"].get<std::string>());
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("learning")) {
      const auto& l = j["learning"];
      c.learning.beta = l.value("beta", c.learning.beta);
      c.learning.gamma = l.value("gamma", c.learning.gamma);
      c.learning.epsilon = l.value("epsilon", c.learning.epsilon);
      c.learning.init_low = l.value("init_low", c.learning.init_low);
      c.learning.init_high = l.value("init_high", c.learning.init_high);
      c.learning.beta_decay = l.value("beta_decay", c.learning.beta_decay);
      c.learning.epsilon_decay = l.value("epsilon_decay", c.learning.epsilon_decay);
    }
    if (j.contains("rewards")) {
      const auto& r = j["rewards"];
      if (r.contains("preset")) c.rewards = RewardConstants::preset(r["preset"].get<std::string>());
      c.rewards.bonus = r.value("bonus", c.rewards.bonus);
      c.rewards.penalty = r.value("penalty", c.rewards.penalty);
      c.rewards.shutdown_reward = r.value("shutdown_reward", c.rewards.shutdown_reward);
      c.rewards.continue_reward = r.value("continue_reward", c.rewards.continue_reward);
    }
    if (j.contains("weights")) {
      const auto& w = j["weights"];
      c.weights.numerators = w.at("numerators").get<std::array<int, 3>>();
      c.weights.denominator = w.at("denominator").get<int>();
    }
    if (j.contains("seeds")) {
      c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    } else {
      for (int k = 0; k < c.n_sets; ++k) c.seeds.push_back(c.world.rng_seed + k);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trial config: ") + e.what());
  }
  c.validate();
  return c;
}

TrialConfig load_trial_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trial_config(buf.str(), path.parent_path());
}

// ---------------------------------------------------------------------------
// Simulation

std::uint64_t table_seed(std::uint64_t set_seed, AgentId agent) {
  return mix64(set_seed * 4 + static_cast<std::uint64_t>(agent));
}

AgentTables random_tables(const LearningParams& params, std::uint64_t set_seed) {
  return {init_random(AgentId::hunger, params, table_seed(set_seed, AgentId::hunger)),
          init_random(AgentId::goal, params, table_seed(set_seed, AgentId::goal)),
          init_random(AgentId::obstacle, params, table_seed(set_seed, AgentId::obstacle))};
}

SetResult run_set(const TrialConfig& config, int set_id, AgentTables tables) {
  if (set_id < 1 || set_id > config.n_sets) throw InputError("run_set: set_id out of range");
  for (const auto* t : {&tables.hunger, &tables.goal, &tables.obstacle}) {
    const TableShape shape = shape_of(t->agent());
    if (t->n_states() != shape.n_states || t->n_actions() != shape.n_actions)
      throw InputError("run_set: table dimensions do not match their agent");
  }
  if (tables.hunger.agent() != AgentId::hunger || tables.goal.agent() != AgentId::goal ||
      tables.obstacle.agent() != AgentId::obstacle)
    throw InputError("run_set: tables are in the wrong slots");

  const WorldConfig& world = config.world;
  const LearningParams params = config.learning.for_set(set_id);
  Rng rng(mix64(config.seeds[set_id - 1] ^ 0x5151'5151'5151'5151ULL));

  SetResult result;
  result.summary.set_id = set_id;

  RobotPose pose = world.robot_start;
  BatteryState battery = initial_battery(world);
  double sim_time = 0.0;
  std::deque<BrightZones> history;

  LightFrame light = sense_light(world, pose);
  RangeFrame range = sense_range(world, pose);
  BrightZones bright = top3_sectors(light);
  history.push_back(bright);
  int rep = 0;

  bool reached = goal_test(pose, world);
  int cycle = 0;
  while (!reached && cycle < world.max_updates_per_set) {
    ++cycle;
    const Proposals proposals{hunger_step(battery, tables.hunger, params, rng),
                              goal_step(light, rep, tables.goal, params, rng),
                              obstacle_step(range, bright, rep, tables.obstacle, params, rng)};
    const RefinedAction action = coordinate(proposals, range, bright, config.arbitration);

    StepOutcome outcome;
    if (action.kind == ActionKind::shutdown) {
      outcome.new_pose = pose;
      outcome.sim_time_elapsed = world.idle_time;
      outcome.goal_reached = goal_test(pose, world);
    } else {
      outcome = apply_action(pose, action, world);
    }
    const BatteryState battery_next = drain_battery(battery, world);

    const LightFrame light_next = sense_light(world, outcome.new_pose);
    const RangeFrame range_next = sense_range(world, outcome.new_pose);
    const BrightZones bright_next = top3_sectors(light_next);
    history.push_back(bright_next);
    if (history.size() > 5) history.pop_front();
    const int rep_next = repetition_flag(std::vector<BrightZones>(history.begin(), history.end()));

    // The direction of motion is the new heading, i.e. boundary 0 after the
    // step; before the step it was boundary rotation_id.
    const int moved_sector = action.kind == ActionKind::move ? action.rotation_id : 0;
    RawRewards raw;
    raw.goal = reward_goal(light_next.readings[0], light.readings[moved_sector], rep_next, config.rewards);
    raw.obstacle = reward_obstacle(range_next.distances[0], rep_next, config.rewards);
    raw.hunger = reward_hunger(proposals.hunger.sub_state, proposals.hunger.proposed_action, config.rewards);

    const CycleTransitions transitions{
        {proposals.hunger.sub_state, proposals.hunger.proposed_action, hunger_state(battery_next)},
        {proposals.goal.sub_state, proposals.goal.proposed_action, goal_state(light_next, rep_next)},
        {proposals.obstacle.sub_state, proposals.obstacle.proposed_action,
         obstacle_state(range_next, bright_next, rep_next)}};
    const RewardSplit split = distribute_and_update(raw, config.weights, tables, transitions, params);

    sim_time += outcome.sim_time_elapsed;
    result.log.push_back({set_id, cycle, proposals.goal.sub_state, proposals.goal.proposed_action,
                          proposals.obstacle.sub_state, proposals.obstacle.proposed_action,
                          proposals.hunger.sub_state, action, raw, split.reward_case, outcome.new_pose,
                          battery_next.level, sim_time});

    pose = outcome.new_pose;
    battery = battery_next;
    light = light_next;
    range = range_next;
    bright = bright_next;
    rep = rep_next;
    reached = outcome.goal_reached;

    const bool powered_off = action.kind == ActionKind::shutdown && proposals.hunger.sub_state == 1;
    if (powered_off || battery.level <= 0.0) break;
  }

  result.summary.updates_to_goal = cycle;
  result.summary.sim_time = sim_time;
  result.summary.reached_goal = reached;
  result.summary.final_battery = battery.level;
  result.final_tables = std::move(tables);
  return result;
}

TrialReport run_trial(const TrialConfig& config) {
  config.validate();
  const auto& dir = config.output_dir;
  const bool persist = !dir.empty();
  if (persist) {
    std::error_code ec;
    std::filesystem::create_directories(dir / "qtables", ec);
    if (ec) throw IoError("cannot create " + (dir / "qtables").string() + ": " + ec.message());
  }

  TrialReport report;
  for (int k = 1; k <= config.n_sets; ++k) {
    AgentTables initial;
    if (k == 1 || !config.gradual) {
      initial = random_tables(config.learning, config.seeds[k - 1]);
    } else if (persist) {
      initial = load_tables(dir, k - 1, "final");
    } else {
      initial = report.final_tables.back();
    }
    if (persist) save_tables(dir, k, initial, "initial");

    SetResult set = run_set(config, k, initial);
    if (persist) save_tables(dir, k, set.final_tables, "final");

    const AgentTables& reference = k == 1 ? initial : report.initial_tables.front();
    report.q_changes.push_back({q_change(reference.goal, set.final_tables.goal),
                                q_change(reference.obstacle, set.final_tables.obstacle),
                                q_change(reference.hunger, set.final_tables.hunger)});
    report.sets.push_back(set.summary);
    report.initial_tables.push_back(std::move(initial));
    report.final_tables.push_back(std::move(set.final_tables));
    report.log.insert(report.log.end(), set.log.begin(), set.log.end());
  }

  std::vector<std::int64_t> updates;
  for (const auto& s : report.sets) updates.push_back(s.updates_to_goal);
  if (updates.size() >= 2) report.convergence = convergence_rate(updates);

  if (persist) {
    std::string cycles = cycle_log_header();
    for (const auto& r : report.log) cycles += cycle_log_row(r);
    write_text(dir / "cycles.csv", cycles);

    std::string summary = summary_header();
    for (std::size_t i = 0; i < report.sets.size(); ++i) summary += summary_row(report.sets[i], report.q_changes[i]);
    write_text(dir / "summary.csv", summary);

    if (updates.size() >= 2) write_text(dir / "convergence.csv", convergence_csv(report.convergence));
  }
  return report;
}

// ---------------------------------------------------------------------------
// CSV

std::string cycle_log_header() {
  return "set_id,cycle,goal_state,goal_action,obstacle_state,obstacle_action,hunger_state,refined_kind,"
         "rotation_id,speed_id,chosen_zone_rank,r_goal_raw,r_obstacle_raw,r_hunger_raw,case,x_cm,y_cm,"
         "heading_deg,battery,sim_time_s\n";
}

std::string cycle_log_row(const CycleRecord& r) {
  std::string out;
  out += std::to_string(r.set_id) + ',' + std::to_string(r.cycle) + ',' + std::to_string(r.goal_state) + ',' +
         std::to_string(r.goal_action) + ',' + std::to_string(r.obstacle_state) + ',' +
         std::to_string(r.obstacle_action) + ',' + std::to_string(r.hunger_state) + ',';
  out += to_string(r.refined.kind);
  out += ',';
  if (r.refined.kind == ActionKind::move) {
    out += std::to_string(r.refined.rotation_id) + ',' + std::to_string(r.refined.speed_id) + ',' +
           std::to_string(r.refined.chosen_zone_rank) + ',';
  } else {
    out += ",,,";
  }
  out += fmt_double(r.raw.goal) + ',' + fmt_double(r.raw.obstacle) + ',' + fmt_double(r.raw.hunger) + ',';
  out += to_string(r.reward_case);
  out += ',' + fmt_double(r.pose.x) + ',' + fmt_double(r.pose.y) + ',' + std::to_string(r.pose.heading_deg) + ',' +
         fmt_double(r.battery) + ',' + fmt_double(r.sim_time) + '\n';
  return out;
}

std::string summary_header() {
  return "set_id,updates_to_goal,sim_time_s,reached_goal,q_increased_goal,q_decreased_goal,q_total_goal,"
         "q_increased_obstacle,q_decreased_obstacle,q_total_obstacle\n";
}

std::string summary_row(const SetSummary& s, const SetQChange& c) {
  return std::to_string(s.set_id) + ',' + std::to_string(s.updates_to_goal) + ',' + fmt_double(s.sim_time) + ',' +
         (s.reached_goal ? "1" : "0") + ',' + std::to_string(c.goal.increased) + ',' +
         std::to_string(c.goal.decreased) + ',' + std::to_string(c.goal.total_changed) + ',' +
         std::to_string(c.obstacle.increased) + ',' + std::to_string(c.obstacle.decreased) + ',' +
         std::to_string(c.obstacle.total_changed) + '\n';
}

std::vector<std::int64_t> read_updates_column(const std::filesystem::path& summary_csv) {
  std::ifstream in(summary_csv);
  if (!in) throw IoError("cannot read " + summary_csv.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("summary: empty file");
  int column = -1;
  {
    std::istringstream header(line);
    std::string name;
    for (int i = 0; std::getline(header, name, ','); ++i)
      if (name == "updates_to_goal") column = i;
  }
  if (column < 0) throw FormatError("summary: no updates_to_goal column");
  std::vector<std::int64_t> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    for (int i = 0; i <= column; ++i)
      if (!std::getline(row, cell, ',')) throw FormatError("summary: short row");
    std::int64_t v = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
      throw FormatError("summary: bad updates_to_goal '" + cell + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace humaq
