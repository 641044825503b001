#include "halving/trace.hpp"

#include "halving/format.hpp"

namespace halving {

std::vector<std::uint64_t> pull_counts(const RunTrace& trace) {
  std::vector<std::uint64_t> counts;
  counts.reserve(trace.final_stats.size());
  for (const ArmStats& s : trace.final_stats) counts.push_back(s.pulls);
  return counts;
}

std::vector<std::vector<std::uint64_t>> round_pull_counts(const RunTrace& trace,
                                                          const HalvingSchedule& schedule) {
  std::vector<std::vector<std::uint64_t>> counts(
      schedule.rounds.size(), std::vector<std::uint64_t>(trace.final_stats.size(), 0));
  for (const PullRecord& p : trace.pulls) ++counts[schedule.round_of_step(p.step)][p.arm];
  return counts;
}

bool replay_matches(const RunTrace& trace, const RewardSource& source) {
  std::vector<std::size_t> seen(source.arms(), 0);
  for (const PullRecord& p : trace.pulls) {
    if (p.arm >= seen.size()) return false;
    if (source.reward(p.arm, seen[p.arm]++) != p.reward) return false;
  }
  return true;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "step,batch,arm,reward\n";
  for (const PullRecord& p : trace.pulls) {
    out << p.step << ',' << p.batch << ',' << (p.arm + 1) << ',' << format_double(p.reward)
        << '\n';
  }
}

}  // namespace halving
