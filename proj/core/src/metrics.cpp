#include "humaq/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "humaq/error.hpp"

namespace humaq {

QChangeReport q_change(const QTable& reference, const QTable& current) {
  if (reference.agent() != current.agent() || reference.n_states() != current.n_states() ||
      reference.n_actions() != current.n_actions())
    throw InputError("q_change: tables differ in agent or dimensions");
  QChangeReport report;
  report.agent = reference.agent();
  const auto ref = reference.values();
  const auto cur = current.values();
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (cur[i] > ref[i]) ++report.increased;
    if (cur[i] < ref[i]) ++report.decreased;
  }
  report.total_changed = report.increased + report.decreased;
  return report;
}

ConvergenceReport convergence_rate(std::span<const std::int64_t> sequence) {
  if (sequence.size() < 2) throw InputError("convergence_rate: need at least two values");
  ConvergenceReport report;
  report.sequence.assign(sequence.begin(), sequence.end());
  report.target = *std::min_element(sequence.begin(), sequence.end());
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
    const std::int64_t den = sequence[k] - report.target;
    if (den == 0) {
      report.mu.emplace_back(std::nullopt);
    } else {
      report.mu.emplace_back(Ratio{sequence[k + 1] - report.target, den});
    }
  }
  return report;
}

std::string format_mu(const std::optional<Ratio>& mu) {
  if (!mu) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", mu->value());
  return buf;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "k,a_k,a_next,target,mu_num,mu_den,mu,mu_display\n";
  for (std::size_t k = 0; k < report.mu.size(); ++k) {
    const auto& mu = report.mu[k];
    out += std::to_string(k + 1) + ',' + std::to_string(report.sequence[k]) + ',' +
           std::to_string(report.sequence[k + 1]) + ',' + std::to_string(report.target) + ',';
    if (mu) {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, mu->value());
      out += std::to_string(mu->num) + ',' + std::to_string(mu->den) + ',' + std::string(buf, res.ptr);
    } else {
      out += ",,";
    }
    out += ',' + format_mu(mu) + '\n';
  }
  return out;
}

}  // namespace humaq
