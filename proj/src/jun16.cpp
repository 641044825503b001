#include <algorithm>
#include <string>
#include <vector>

#include "halving/algorithms.hpp"
#include "halving/error.hpp"

namespace halving {

RunTrace run_jun16(std::size_t n, const BatchConfig& cfg, const RewardSource& source,
                   const RunOptions& options) {
  if (n < 2) throw Error(ErrorKind::InvalidArmCount, "need at least 2 arms");
  if (source.arms() != n) throw Error(ErrorKind::InvalidConfig, "reward source arm count mismatch");
  const std::size_t round_count = ceil_log2(n);
  const std::size_t b = cfg.batch_size();
  const std::size_t batches = cfg.batch_budget();
  if (batches < round_count) {
    throw Error(ErrorKind::InsufficientBatches, "B = " + std::to_string(batches) +
                                                    " < ceil(log2 n) = " +
                                                    std::to_string(round_count));
  }
  if (cfg.total_budget() / round_count < n) {
    throw Error(ErrorKind::BudgetTooSmall, "b*B < n*ceil(log2 n)");
  }

  const std::size_t per_round = batches / round_count;
  const std::size_t extra = batches % round_count;

  std::vector<ArmStats> stats(n);
  std::vector<std::size_t> active(n);
  for (std::size_t a = 0; a < n; ++a) active[a] = a;

  RunTrace trace;
  if (options.record_pulls) trace.pulls.reserve(cfg.total_budget());
  trace.max_rounds_spanned = 1;
  std::vector<std::size_t> in_batch;
  in_batch.reserve(b);

  std::size_t step = 0;
  std::size_t batch = 0;
  for (std::size_t r = 0; r < round_count; ++r) {
    const std::size_t round_batches = per_round + (r + 1 == round_count ? extra : 0);
    // Every active arm starts the round with zero round pulls, so "fewest
    // round pulls, lowest index first" is a cyclic walk over the sorted set.
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < round_batches; ++k, ++batch) {
      in_batch.clear();
      for (std::size_t i = 0; i < b; ++i) {
        in_batch.push_back(active[cursor]);
        cursor = (cursor + 1) % active.size();
      }
      for (std::size_t arm : in_batch) {
        const double reward = source.reward(arm, stats[arm].pulls);
        stats[arm].add(reward);
        if (options.record_pulls) trace.pulls.push_back({step, batch, arm, reward});
        ++step;
      }
    }
    const std::size_t keep = (active.size() + 1) / 2;
    std::sort(active.begin(), active.end(), [&](std::size_t a, std::size_t c) {
      return outranks(candidate_key(a, stats[a]), candidate_key(c, stats[c]),
                      SelectionKey::MeanOnly);
    });
    active.resize(keep);
    std::sort(active.begin(), active.end());
  }

  trace.selected = active.front();
  trace.final_stats = std::move(stats);
  trace.consumed = step;
  trace.batches = batch;
  return trace;
}

}  // namespace halving
