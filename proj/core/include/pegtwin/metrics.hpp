#pragma once

// Wall-clock profiling for the simulator frame loop and the solver.
// Only step times and store sizes are measured; there is no headless
// equivalent of renderer statistics (draw calls, GPU memory, GC).

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace pegtwin {

inline constexpr double kDefaultTargetFps = 60.0;

struct FrameStats {
  std::uint64_t frame_count = 0;
  double mean_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
  double budget_ms = 1000.0 / kDefaultTargetFps;
};

// Collects per-frame step times of one simulation instance.
class FrameCollector {
 public:
  explicit FrameCollector(double budget_ms = 1000.0 / kDefaultTargetFps)
      : budget_ms_(budget_ms) {}

  void record(double step_ms) { samples_.push_back(step_ms); }
  const std::vector<double>& samples() const { return samples_; }
  double budget_ms() const { return budget_ms_; }

  FrameStats stats() const;

 private:
  double budget_ms_;
  std::vector<double> samples_;
};

FrameStats make_frame_stats(const std::vector<double>& step_ms, double budget_ms);

struct BudgetVerdict {
  bool pass = false;
  std::string report;
};

// Passes iff the mean step time fits the budget. Throws pegtwin::Error when
// no frame was recorded.
BudgetVerdict budget_check(const FrameStats& stats);

struct SolverStats {
  std::uint64_t nodes_generated = 0;
  double elapsed_seconds = 0.0;
  // Index = level; index 0 unused.
  std::vector<std::uint64_t> level_counts;
  // Levels where at least one batch of children was dropped by the cap.
  std::vector<int> capped_levels;
  std::uint64_t peak_level_size = 0;
  bool complete = false;

  double nodes_per_second() const {
    return elapsed_seconds > 0 ? static_cast<double>(nodes_generated) / elapsed_seconds : 0.0;
  }
};

// Per-level table plus throughput, followed by key=value lines.
std::string solver_report(const SolverStats& stats);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pegtwin
