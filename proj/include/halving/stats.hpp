#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace halving {

// Running statistics of one arm. The reward sum is Neumaier-compensated.
struct ArmStats {
  std::uint64_t pulls = 0;
  double reward_sum = 0.0;
  double compensation = 0.0;

  void add(double reward) noexcept;
  double sum() const noexcept { return reward_sum + compensation; }
  // 0 for an unpulled arm.
  double mean() const noexcept;
};

enum class SelectionKey {
  MeanOnly,       // argmax of the empirical mean
  PullsThenMean,  // lexicographic argmax of (pulls, empirical mean)
};

std::string_view to_string(SelectionKey key) noexcept;

struct CandidateKey {
  std::uint64_t pulls = 0;
  double mean = 0.0;
  std::size_t arm = 0;
};

CandidateKey candidate_key(std::size_t arm, const ArmStats& stats) noexcept;

// Strict ordering used by every argmax in the library: true when `a` is
// preferred over `b`. Residual ties go to the lower arm index.
inline bool outranks(const CandidateKey& a, const CandidateKey& b, SelectionKey key) noexcept {
  if (key == SelectionKey::PullsThenMean && a.pulls != b.pulls) return a.pulls > b.pulls;
  if (a.mean != b.mean) return a.mean > b.mean;
  return a.arm < b.arm;
}

// Throws Error(EmptyCandidateSet) for an empty candidate list and
// Error(IndexOutOfRange) for a candidate without stats.
std::size_t select_candidate(std::span<const std::size_t> candidates,
                             std::span<const ArmStats> stats, SelectionKey key);

// Lexicographic argmax of (pulls, mean) over all arms.
std::size_t select_final(std::span<const ArmStats> stats);

}  // namespace halving
