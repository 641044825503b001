#include "oracle.hpp"

#include <algorithm>
#include <numeric>

namespace halving::oracle {

std::vector<std::uint32_t> closed_form_targets(const HalvingSchedule& schedule, TargetMode mode) {
  std::vector<std::uint32_t> out;
  for (std::size_t t = 0; t < schedule.scheduled_pulls(); ++t) {
    const std::size_t r = schedule.round_of_step(t);
    const std::size_t before = schedule.pulls_before_round(r);
    const std::size_t offset = t - schedule.first_step_of_round(r);
    const RoundSpec& round = schedule.rounds[r];
    const std::size_t in_round = mode == TargetMode::BreadthFirst ? offset / round.active_size
                                                                  : offset % round.pulls_per_arm;
    out.push_back(static_cast<std::uint32_t>(before + in_round));
  }
  return out;
}

RunTrace literal_target_run(const HalvingSchedule& schedule,
                            const std::vector<std::uint32_t>& targets, std::size_t batch_size,
                            std::size_t batch_budget, SelectionKey key,
                            const RewardSource& source) {
  const std::size_t n = schedule.arms;
  std::vector<ArmStats> stats(n);
  RunTrace trace;
  std::size_t t = 0;
  for (std::size_t batch = 0; batch < batch_budget && t < targets.size(); ++batch) {
    std::vector<std::uint64_t> virt(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    for (std::size_t k = 0; k < batch_size && t < targets.size(); ++k, ++t) {
      std::vector<std::size_t> candidates;
      for (std::size_t a = 0; a < n; ++a) {
        if (stats[a].pulls + virt[a] == targets[t]) candidates.push_back(a);
      }
      const std::size_t arm = select_candidate(candidates, stats, key);
      ++virt[arm];
      chosen.emplace_back(t, arm);
    }
    for (const auto& [step, arm] : chosen) {
      const double r = source.reward(arm, stats[arm].pulls);
      stats[arm].add(r);
      trace.pulls.push_back({step, batch, arm, r});
    }
    ++trace.batches;
  }
  trace.selected = select_final(stats);
  trace.final_stats = std::move(stats);
  trace.consumed = t;
  return trace;
}

RunTrace reference_sh(std::size_t n, std::size_t budget, const RewardSource& source) {
  const HalvingSchedule schedule = build_schedule(n, budget);
  std::vector<ArmStats> stats(n);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  RunTrace trace;
  for (const RoundSpec& round : schedule.rounds) {
    for (std::size_t arm : active) {
      for (std::size_t j = 0; j < round.pulls_per_arm; ++j) {
        const double r = source.reward(arm, stats[arm].pulls);
        stats[arm].add(r);
        trace.pulls.push_back({trace.consumed, trace.consumed, arm, r});
        ++trace.consumed;
      }
    }
    std::stable_sort(active.begin(), active.end(), [&](std::size_t a, std::size_t b) {
      return stats[a].mean() > stats[b].mean();
    });
    active.resize((active.size() + 1) / 2);
    std::sort(active.begin(), active.end());
  }
  trace.selected = active.front();
  trace.final_stats = std::move(stats);
  return trace;
}

}  // namespace halving::oracle
