#pragma once

// Round structure of Sequential Halving for a fixed budget, and the
// target-pull sequences that drive both the sequential and batched variants.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace halving {

// ceil(log2(n)) from the bit length of n - 1; 0 for n <= 1.
std::size_t ceil_log2(std::size_t n) noexcept;

struct RoundSpec {
  std::size_t active_size = 0;    // |S_r|
  std::size_t pulls_per_arm = 0;  // J_r, final round includes the leftover extension
  std::size_t round_budget = 0;   // active_size * pulls_per_arm
};

struct HalvingSchedule {
  std::size_t arms = 0;
  std::size_t budget = 0;
  std::vector<RoundSpec> rounds;
  // Budget left after the floor-divided rounds, before the final round is
  // extended by leftover / 2 pulls per finalist.
  std::size_t leftover = 0;
  // leftover % 2: the single pull that cannot be split between two finalists.
  std::size_t leftover_discard = 0;

  // Number of pulls actually scheduled: budget - leftover_discard.
  std::size_t scheduled_pulls() const noexcept;
  // Pulls each surviving arm has received before round r starts.
  std::size_t pulls_before_round(std::size_t r) const noexcept;
  // Index of the first step of round r in the target-pull sequence.
  std::size_t first_step_of_round(std::size_t r) const noexcept;
  // Round that step t belongs to. t must be < scheduled_pulls().
  std::size_t round_of_step(std::size_t t) const noexcept;
};

// Throws Error(InvalidArmCount) for n < 2 and Error(BudgetTooSmall) when
// budget < n * ceil(log2 n).
HalvingSchedule build_schedule(std::size_t n, std::size_t budget);

enum class TargetMode { BreadthFirst, AdvanceFirst };

std::string_view to_string(TargetMode mode) noexcept;
TargetMode parse_target_mode(std::string_view text);

struct TargetPulls {
  std::vector<std::uint32_t> values;
  TargetMode mode = TargetMode::BreadthFirst;
};

TargetPulls breadth_first_targets(const HalvingSchedule& schedule);
TargetPulls advance_first_targets(const HalvingSchedule& schedule);
TargetPulls make_targets(const HalvingSchedule& schedule, TargetMode mode);

TargetPulls breadth_first_targets(std::size_t n, std::size_t budget);
TargetPulls advance_first_targets(std::size_t n, std::size_t budget);

}  // namespace halving
