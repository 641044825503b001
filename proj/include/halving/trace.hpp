#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "halving/reward.hpp"
#include "halving/schedule.hpp"
#include "halving/stats.hpp"

namespace halving {

struct PullRecord {
  std::size_t step = 0;   // position in the target-pull sequence (global pull counter)
  std::size_t batch = 0;  // batch index; equals step for sequential runs
  std::size_t arm = 0;    // zero-based
  double reward = 0.0;

  friend bool operator==(const PullRecord&, const PullRecord&) = default;
};

// Full record of one run. `pulls` is empty when the run was executed with
// RunOptions::record_pulls = false; every other field is always filled.
struct RunTrace {
  std::vector<PullRecord> pulls;
  std::vector<ArmStats> final_stats;
  std::size_t selected = 0;  // zero-based
  std::size_t consumed = 0;
  std::size_t batches = 0;
  // Largest number of halving rounds touched by a single batch (1 for
  // sequential runs and for batches that stay inside one round).
  std::size_t max_rounds_spanned = 0;
};

std::vector<std::uint64_t> pull_counts(const RunTrace& trace);

// counts[r][arm]: pulls of `arm` issued at steps belonging to round r.
std::vector<std::vector<std::uint64_t>> round_pull_counts(const RunTrace& trace,
                                                          const HalvingSchedule& schedule);

// True when re-querying `source` at each pull's per-arm index reproduces the
// recorded rewards exactly.
bool replay_matches(const RunTrace& trace, const RewardSource& source);

// step,batch,arm,reward with one-based arm numbers.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

}  // namespace halving
