#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "halving/algorithms.hpp"
#include "halving/stats.hpp"

namespace halving::detail {

struct EngineSpec {
  const HalvingSchedule& schedule;
  std::span<const std::uint32_t> targets;
  std::size_t batch_size;
  std::size_t batch_budget;
  SelectionKey key;
};

// Shared loop of target-pull driven SH: up to batch_budget batches of up to
// batch_size steps. Step t pulls the best arm (per `key`) among those whose
// actual plus in-batch virtual pulls equal targets[t]; rewards and stats are
// updated only when the batch commits. Sequential SH is batch_size = 1.
RunTrace run_target_engine(const EngineSpec& spec, const RewardSource& source,
                           const RunOptions& options);

}  // namespace halving::detail
