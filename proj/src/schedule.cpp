#include "halving/schedule.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "halving/error.hpp"

namespace halving {

std::size_t ceil_log2(std::size_t n) noexcept {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

std::size_t HalvingSchedule::scheduled_pulls() const noexcept { return budget - leftover_discard; }

std::size_t HalvingSchedule::pulls_before_round(std::size_t r) const noexcept {
  std::size_t pulls = 0;
  for (std::size_t i = 0; i < r && i < rounds.size(); ++i) pulls += rounds[i].pulls_per_arm;
  return pulls;
}

std::size_t HalvingSchedule::first_step_of_round(std::size_t r) const noexcept {
  std::size_t step = 0;
  for (std::size_t i = 0; i < r && i < rounds.size(); ++i) step += rounds[i].round_budget;
  return step;
}

std::size_t HalvingSchedule::round_of_step(std::size_t t) const noexcept {
  std::size_t end = 0;
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    end += rounds[r].round_budget;
    if (t < end) return r;
  }
  return rounds.empty() ? 0 : rounds.size() - 1;
}

HalvingSchedule build_schedule(std::size_t n, std::size_t budget) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidArmCount, "need at least 2 arms, got " + std::to_string(n));
  }
  const std::size_t round_count = ceil_log2(n);
  // budget < n * rounds, without forming the product.
  if (budget / round_count < n) {
    throw Error(ErrorKind::BudgetTooSmall,
                "budget " + std::to_string(budget) + " < n*ceil(log2 n) = " +
                    std::to_string(n) + "*" + std::to_string(round_count));
  }
  if (budget > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::InvalidConfig, "budget exceeds 2^32 - 1");
  }

  HalvingSchedule schedule;
  schedule.arms = n;
  schedule.budget = budget;
  schedule.rounds.reserve(round_count);

  std::size_t active = n;
  std::size_t consumed = 0;
  for (std::size_t r = 0; r < round_count; ++r) {
    const std::size_t pulls = budget / (active * round_count);
    schedule.rounds.push_back({active, pulls, active * pulls});
    consumed += active * pulls;
    active = (active + 1) / 2;
  }

  schedule.leftover = budget - consumed;
  schedule.leftover_discard = schedule.leftover % 2;
  RoundSpec& last = schedule.rounds.back();
  last.pulls_per_arm += schedule.leftover / 2;
  last.round_budget = last.active_size * last.pulls_per_arm;
  return schedule;
}

std::string_view to_string(TargetMode mode) noexcept {
  return mode == TargetMode::BreadthFirst ? "breadth" : "advance";
}

TargetMode parse_target_mode(std::string_view text) {
  if (text == "breadth" || text == "breadth-first") return TargetMode::BreadthFirst;
  if (text == "advance" || text == "advance-first") return TargetMode::AdvanceFirst;
  throw Error(ErrorKind::ParseError, "unknown target mode '" + std::string(text) + "'");
}

TargetPulls breadth_first_targets(const HalvingSchedule& schedule) {
  TargetPulls out{{}, TargetMode::BreadthFirst};
  out.values.reserve(schedule.scheduled_pulls());
  std::uint32_t base = 0;
  for (const RoundSpec& round : schedule.rounds) {
    for (std::size_t j = 0; j < round.pulls_per_arm; ++j) {
      out.values.insert(out.values.end(), round.active_size, base + static_cast<std::uint32_t>(j));
    }
    base += static_cast<std::uint32_t>(round.pulls_per_arm);
  }
  return out;
}

TargetPulls advance_first_targets(const HalvingSchedule& schedule) {
  TargetPulls out{{}, TargetMode::AdvanceFirst};
  out.values.reserve(schedule.scheduled_pulls());
  std::uint32_t base = 0;
  for (const RoundSpec& round : schedule.rounds) {
    for (std::size_t k = 0; k < round.active_size; ++k) {
      for (std::size_t j = 0; j < round.pulls_per_arm; ++j) {
        out.values.push_back(base + static_cast<std::uint32_t>(j));
      }
    }
    base += static_cast<std::uint32_t>(round.pulls_per_arm);
  }
  return out;
}

TargetPulls make_targets(const HalvingSchedule& schedule, TargetMode mode) {
  return mode == TargetMode::BreadthFirst ? breadth_first_targets(schedule)
                                          : advance_first_targets(schedule);
}

TargetPulls breadth_first_targets(std::size_t n, std::size_t budget) {
  return breadth_first_targets(build_schedule(n, budget));
}

TargetPulls advance_first_targets(std::size_t n, std::size_t budget) {
  return advance_first_targets(build_schedule(n, budget));
}

}  // namespace halving
