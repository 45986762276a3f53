#include "humaq/qtable.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "humaq/error.hpp"
#include "humaq/perception.hpp"

namespace humaq {

TableShape shape_of(AgentId agent) {
  switch (agent) {
    case AgentId::hunger: return {2, 2};
    case AgentId::goal: return {kGoalStates, kSectors};
    case AgentId::obstacle: return {kObstacleStates, kRings};
    case AgentId::grid: break;
  }
  throw InputError("grid tables have no fixed shape");
}

void LearningParams::validate() const {
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("learning: beta must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("learning: gamma must be in [0, 1)");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("learning: epsilon must be in [0, 1]");
  if (!(std::isfinite(init_low) && std::isfinite(init_high) && init_low < init_high))
    throw ConfigError("learning: init_low must be below init_high");
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) throw ConfigError("learning: epsilon_decay must be in (0, 1]");
}

LearningParams LearningParams::for_set(int k) const {
  LearningParams p = *this;
  if (k < 1) k = 1;
  if (beta_decay) p.beta = beta / k;
  p.epsilon = epsilon * std::pow(epsilon_decay, k - 1);
  return p;
}

QTable::QTable(AgentId agent, std::uint64_t seed) : agent_(agent), seed_(seed) {
  const TableShape shape = shape_of(agent);
  n_states_ = shape.n_states;
  n_actions_ = shape.n_actions;
  values_.assign(static_cast<std::size_t>(n_states_) * n_actions_, 0.0);
}

QTable::QTable(AgentId agent, int n_states, int n_actions, std::uint64_t seed)
    : agent_(agent), n_states_(n_states), n_actions_(n_actions), seed_(seed) {
  if (n_states < 1 || n_actions < 1) throw InputError("QTable: dimensions must be positive");
  if (agent != AgentId::grid) {
    const TableShape shape = shape_of(agent);
    if (shape.n_states != n_states || shape.n_actions != n_actions)
      throw InputError("QTable: dimensions do not match agent " + std::string(to_string(agent)));
  }
  values_.assign(static_cast<std::size_t>(n_states_) * n_actions_, 0.0);
}

std::size_t QTable::index(int s, int a) const {
  if (s < 0 || s >= n_states_) throw InputError("state " + std::to_string(s) + " out of range");
  if (a < 0 || a >= n_actions_) throw InputError("action " + std::to_string(a) + " out of range");
  return static_cast<std::size_t>(s) * n_actions_ + a;
}

std::span<const double> QTable::row(int s) const {
  return std::span<const double>(values_).subspan(index(s, 0), n_actions_);
}

double QTable::max_value(int s) const {
  const auto r = row(s);
  double best = r[0];
  for (double v : r) best = std::max(best, v);
  return best;
}

int QTable::argmax(int s) const {
  const auto r = row(s);
  int best = 0;
  for (int a = 1; a < n_actions_; ++a)
    if (r[a] > r[best]) best = a;
  return best;
}

QTable init_random(AgentId agent, int n_states, int n_actions, const LearningParams& params,
                   std::uint64_t seed) {
  if (!(params.init_low < params.init_high)) throw InputError("init_random: init_low must be below init_high");
  QTable table(agent, n_states, n_actions, seed);
  Rng rng(seed);
  const double span = params.init_high - params.init_low;
  for (int s = 0; s < n_states; ++s)
    for (int a = 0; a < n_actions; ++a) {
      double v = params.init_low + span * rng.uniform01();
      if (v >= params.init_high) v = std::nextafter(params.init_high, params.init_low);
      table.at(s, a) = v;
    }
  return table;
}

QTable init_random(AgentId agent, const LearningParams& params, std::uint64_t seed) {
  const TableShape shape = shape_of(agent);
  return init_random(agent, shape.n_states, shape.n_actions, params, seed);
}

int select_action(const QTable& table, int state, const LearningParams& params, Rng& rng) {
  if (state < 0 || state >= table.n_states()) throw InputError("select_action: state out of range");
  if (rng.uniform01() < params.epsilon) return static_cast<int>(rng.below(table.n_actions()));
  return table.argmax(state);
}

void q_update(QTable& table, int s, int a, double reward, int s_next, const LearningParams& params) {
  if (!std::isfinite(reward)) throw InputError("q_update: reward must be finite");
  const double target = reward + params.gamma * table.max_value(s_next);
  double& q = table.at(s, a);
  q = q + params.beta * (target - q);
}

void q_update_terminal(QTable& table, int s, int a, double reward, const LearningParams& params) {
  if (!std::isfinite(reward)) throw InputError("q_update: reward must be finite");
  double& q = table.at(s, a);
  q = q + params.beta * (reward - q);
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr const char* kMagic = "HUMAQ-QT v1";

void append_hex(std::string& out, double v) {
  char buf[64];
  if (std::signbit(v)) {
    out += '-';
    v = -v;
  }
  out += "0x";
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  out.append(buf, res.ptr);
}

double parse_hex(std::string_view token) {
  bool negative = false;
  if (!token.empty() && token.front() == '-') {
    negative = true;
    token.remove_prefix(1);
  }
  if (token.size() < 3 || token.substr(0, 2) != "0x") throw FormatError("qtable: bad cell '" + std::string(token) + "'");
  token.remove_prefix(2);
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v, std::chars_format::hex);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(v))
    throw FormatError("qtable: bad cell '" + std::string(token) + "'");
  return negative ? -v : v;
}

template <typename T>
T header_field(const std::string& line, const std::string& key) {
  const std::string needle = key + "=";
  std::istringstream words(line);
  std::string word;
  while (words >> word) {
    if (word.rfind(needle, 0) == 0) {
      const std::string value = word.substr(needle.size());
      if constexpr (std::is_same_v<T, std::string>) {
        return value;
      } else {
        T out{};
        const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
        if (res.ec != std::errc() || res.ptr != value.data() + value.size())
          throw FormatError("qtable: bad header field " + key);
        return out;
      }
    }
  }
  throw FormatError("qtable: header is missing " + key);
}

}  // namespace

void write_qtable(std::ostream& out, const QTable& table) {
  std::string text = kMagic;
  text += "\nagent=";
  text += to_string(table.agent());
  text += " states=" + std::to_string(table.n_states());
  text += " actions=" + std::to_string(table.n_actions());
  text += " seed=" + std::to_string(table.seed());
  text += '\n';
  for (int s = 0; s < table.n_states(); ++s) {
    for (int a = 0; a < table.n_actions(); ++a) {
      if (a) text += ' ';
      append_hex(text, table.at(s, a));
    }
    text += '\n';
  }
  out << text;
}

QTable read_qtable(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("qtable: empty file");
  if (line != kMagic) throw FormatError("qtable: unknown format/version '" + line + "'");
  if (!std::getline(in, line)) throw FormatError("qtable: missing header");

  AgentId agent;
  try {
    agent = agent_from_string(header_field<std::string>(line, "agent"));
  } catch (const InputError& e) {
    throw FormatError(std::string("qtable: ") + e.what());
  }
  const int n_states = header_field<int>(line, "states");
  const int n_actions = header_field<int>(line, "actions");
  const auto seed = header_field<std::uint64_t>(line, "seed");
  if (n_states < 1 || n_actions < 1) throw FormatError("qtable: dimensions must be positive");
  if (agent != AgentId::grid) {
    const TableShape shape = shape_of(agent);
    if (shape.n_states != n_states || shape.n_actions != n_actions)
      throw FormatError("qtable: dimensions " + std::to_string(n_states) + "x" + std::to_string(n_actions) +
                        " do not match agent " + std::string(to_string(agent)));
  }

  QTable table(agent, n_states, n_actions, seed);
  for (int s = 0; s < n_states; ++s) {
    if (!std::getline(in, line)) throw FormatError("qtable: truncated at row " + std::to_string(s));
    std::string_view rest(line);
    for (int a = 0; a < n_actions; ++a) {
      const auto space = rest.find(' ');
      const std::string_view token = rest.substr(0, space);
      if ((a + 1 < n_actions) != (space != std::string_view::npos))
        throw FormatError("qtable: row " + std::to_string(s) + " has the wrong number of cells");
      table.at(s, a) = parse_hex(token);
      if (space != std::string_view::npos) rest.remove_prefix(space + 1);
    }
  }
  while (std::getline(in, line))
    if (!line.empty()) throw FormatError("qtable: trailing data after last row");
  return table;
}

void save_qtable(const QTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_qtable(out, table);
  if (!out) throw IoError("write failed for " + path.string());
}

QTable load_qtable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read_qtable(in);
}

}  // namespace humaq
