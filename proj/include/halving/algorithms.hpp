#pragma once

// Sequential Halving and its fixed-size-batch variants. All runs are
// deterministic functions of (n, budget, reward source) and single-threaded.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "halving/reward.hpp"
#include "halving/schedule.hpp"
#include "halving/trace.hpp"

namespace halving {

// b arms per batch, B batches; the total budget is b * B.
class BatchConfig {
 public:
  // Throws Error(InvalidConfig) when either value is zero or b * B overflows.
  BatchConfig(std::size_t batch_size, std::size_t batch_budget);

  std::size_t batch_size() const noexcept { return batch_size_; }
  std::size_t batch_budget() const noexcept { return batch_budget_; }
  std::size_t total_budget() const noexcept { return batch_size_ * batch_budget_; }

 private:
  std::size_t batch_size_;
  std::size_t batch_budget_;
};

struct RunOptions {
  bool record_pulls = true;
};

enum class Algorithm { SH, ASH, BSH, Jun16 };

std::string_view to_string(Algorithm algo) noexcept;
Algorithm parse_algorithm(std::string_view text);

// Sequential Halving driven by target pulls: at step t the candidates are the
// arms whose pull count equals L_t and the best empirical mean is pulled. The
// final answer is the lexicographic argmax of (pulls, mean).
RunTrace run_sh(std::size_t n, std::size_t budget, const RewardSource& source,
                TargetMode mode = TargetMode::AdvanceFirst, const RunOptions& options = {});

// Advance-first batched SH. Within a batch, arms are chosen one by one among
// those whose actual plus virtual pulls equal the advance-first target,
// preferring more actual pulls, then higher mean. Rewards are observed only
// when the batch commits.
RunTrace run_ash(std::size_t n, const BatchConfig& cfg, const RewardSource& source,
                 const RunOptions& options = {});

// Breadth-first batched SH: as run_ash with breadth-first targets and a
// mean-only in-batch choice.
RunTrace run_bsh(std::size_t n, const BatchConfig& cfg, const RewardSource& source,
                 const RunOptions& options = {});

// Round-synchronous batched SH: floor(B / ceil(log2 n)) batches per round,
// remainder batches go to the final round; each batch spreads its b pulls
// round-robin over the active set. Throws Error(InsufficientBatches) when
// B < ceil(log2 n).
RunTrace run_jun16(std::size_t n, const BatchConfig& cfg, const RewardSource& source,
                   const RunOptions& options = {});

// Dispatches on `algo`; SH runs sequentially with budget b * B.
RunTrace run_algorithm(Algorithm algo, std::size_t n, const BatchConfig& cfg,
                       const RewardSource& source, const RunOptions& options = {});

// max(means) - means[trace.selected]
double simple_regret(const RunTrace& trace, std::span<const double> means);

}  // namespace halving
