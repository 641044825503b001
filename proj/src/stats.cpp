#include "halving/stats.hpp"

#include <cmath>
#include <string>

#include "halving/error.hpp"

namespace halving {

void ArmStats::add(double reward) noexcept {
  const double t = reward_sum + reward;
  if (std::abs(reward_sum) >= std::abs(reward)) {
    compensation += (reward_sum - t) + reward;
  } else {
    compensation += (reward - t) + reward_sum;
  }
  reward_sum = t;
  ++pulls;
}

double ArmStats::mean() const noexcept {
  return pulls == 0 ? 0.0 : sum() / static_cast<double>(pulls);
}

std::string_view to_string(SelectionKey key) noexcept {
  return key == SelectionKey::MeanOnly ? "mean-only" : "pulls-then-mean";
}

CandidateKey candidate_key(std::size_t arm, const ArmStats& stats) noexcept {
  return {stats.pulls, stats.mean(), arm};
}

std::size_t select_candidate(std::span<const std::size_t> candidates,
                             std::span<const ArmStats> stats, SelectionKey key) {
  if (candidates.empty()) throw Error(ErrorKind::EmptyCandidateSet, "no candidates to select from");
  CandidateKey best{};
  bool have = false;
  for (std::size_t arm : candidates) {
    if (arm >= stats.size()) {
      throw Error(ErrorKind::IndexOutOfRange, "candidate arm " + std::to_string(arm));
    }
    const CandidateKey k = candidate_key(arm, stats[arm]);
    if (!have || outranks(k, best, key)) {
      best = k;
      have = true;
    }
  }
  return best.arm;
}

std::size_t select_final(std::span<const ArmStats> stats) {
  if (stats.empty()) throw Error(ErrorKind::EmptyCandidateSet, "no arms");
  CandidateKey best = candidate_key(0, stats[0]);
  for (std::size_t arm = 1; arm < stats.size(); ++arm) {
    const CandidateKey k = candidate_key(arm, stats[arm]);
    if (outranks(k, best, SelectionKey::PullsThenMean)) best = k;
  }
  return best.arm;
}

}  // namespace halving
