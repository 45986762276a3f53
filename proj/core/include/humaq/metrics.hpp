#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "humaq/qtable.hpp"

namespace humaq {

struct QChangeReport {
  AgentId agent = AgentId::grid;
  int increased = 0;
  int decreased = 0;
  int total_changed = 0;
};

// Exact cell-wise comparison of `current` against `reference`.
QChangeReport q_change(const QTable& reference, const QTable& current);

// Non-negative rational |a_{k+1} - L| / |a_k - L|, kept unreduced.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Rate-of-convergence ratios over a sequence of per-set update counts, with
// the target L taken as the sequence minimum. An entry is empty where
// a_k == L. The ratios are reported as-is, without a linear/sub-linear label.
struct ConvergenceReport {
  std::vector<std::int64_t> sequence;
  std::int64_t target = 0;
  std::vector<std::optional<Ratio>> mu;
};

ConvergenceReport convergence_rate(std::span<const std::int64_t> sequence);

// One decimal place, "-" for undefined.
std::string format_mu(const std::optional<Ratio>& mu);

// CSV: k,a_k,a_next,target,mu_num,mu_den,mu,mu_display
std::string convergence_csv(const ConvergenceReport& report);

}  // namespace humaq
