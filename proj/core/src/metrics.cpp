#include "pegtwin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "pegtwin/error.hpp"

namespace pegtwin {

FrameStats make_frame_stats(const std::vector<double>& step_ms, double budget_ms) {
  FrameStats s;
  s.budget_ms = budget_ms;
  s.frame_count = step_ms.size();
  if (step_ms.empty()) return s;
  s.mean_ms = std::accumulate(step_ms.begin(), step_ms.end(), 0.0) /
              static_cast<double>(step_ms.size());
  std::vector<double> sorted = step_ms;
  std::sort(sorted.begin(), sorted.end());
  // nearest-rank percentile
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size())));
  s.p95_ms = sorted[std::max<std::size_t>(rank, 1) - 1];
  s.max_ms = sorted.back();
  return s;
}

FrameStats FrameCollector::stats() const { return make_frame_stats(samples_, budget_ms_); }

BudgetVerdict budget_check(const FrameStats& stats) {
  if (stats.frame_count == 0) throw Error("frame budget check: nothing recorded");
  BudgetVerdict v;
  v.pass = stats.mean_ms <= stats.budget_ms;
  v.report = fmt::format(
      "frames={} mean_ms={:.4f} p95_ms={:.4f} max_ms={:.4f} budget_ms={:.2f} verdict={}\n",
      stats.frame_count, stats.mean_ms, stats.p95_ms, stats.max_ms, stats.budget_ms,
      v.pass ? "pass" : "fail");
  return v;
}

std::string solver_report(const SolverStats& stats) {
  std::string out = "Level |      Nodes | Cap\n";
  out += "------+------------+----\n";
  std::uint64_t sum = 0;
  for (std::size_t level = 1; level < stats.level_counts.size(); ++level) {
    const std::uint64_t n = stats.level_counts[level];
    if (n == 0) continue;
    sum += n;
    const bool capped = std::find(stats.capped_levels.begin(), stats.capped_levels.end(),
                                  static_cast<int>(level)) != stats.capped_levels.end();
    out += fmt::format("{:>5} | {:>10} |{}\n", level, n, capped ? " hit" : "");
  }
  out += fmt::format("TOTAL | {:>10} |\n", sum);
  out += fmt::format("nodes_generated={}\n", stats.nodes_generated);
  out += fmt::format("elapsed_s={:.3f}\n", stats.elapsed_seconds);
  out += fmt::format("nodes_per_s={:.0f}\n", stats.nodes_per_second());
  out += fmt::format("peak_level_size={}\n", stats.peak_level_size);
  std::string capped;
  for (int level : stats.capped_levels) capped += (capped.empty() ? "" : ",") + std::to_string(level);
  out += fmt::format("capped_levels={}\n", capped);
  out += fmt::format("complete={}\n", stats.complete ? 1 : 0);
  return out;
}

}  // namespace pegtwin
