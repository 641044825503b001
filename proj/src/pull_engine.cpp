#include "pull_engine.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "halving/error.hpp"

namespace halving::detail {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Entry {
  CandidateKey key;
  std::uint32_t version = 0;
};

// One max-heap per pull-count level. Entries go stale when their arm commits
// a batch (version bump); stale entries are dropped lazily on pop.
class LevelHeaps {
  struct Less {
    SelectionKey key;
    bool operator()(const Entry& a, const Entry& b) const { return outranks(b.key, a.key, key); }
  };

 public:
  LevelHeaps(std::size_t levels, SelectionKey key) : heaps_(levels), key_(key) {}

  void assign(std::size_t level, std::vector<Entry> entries) {
    heaps_[level] = std::move(entries);
    std::make_heap(heaps_[level].begin(), heaps_[level].end(), less());
  }

  void push(std::size_t level, const Entry& entry) {
    auto& heap = heaps_[level];
    heap.push_back(entry);
    std::push_heap(heap.begin(), heap.end(), less());
  }

  std::size_t pop_best(std::size_t level, std::span<const std::uint32_t> versions) {
    auto& heap = heaps_[level];
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), less());
      const Entry top = heap.back();
      heap.pop_back();
      if (top.version == versions[top.key.arm]) return top.key.arm;
    }
    return kNone;
  }

 private:
  Less less() const { return {key_}; }

  std::vector<std::vector<Entry>> heaps_;
  SelectionKey key_;
};

}  // namespace

RunTrace run_target_engine(const EngineSpec& spec, const RewardSource& source,
                           const RunOptions& options) {
  const HalvingSchedule& schedule = spec.schedule;
  const std::size_t n = schedule.arms;
  if (source.arms() != n) {
    throw Error(ErrorKind::InvalidConfig, "reward source has " + std::to_string(source.arms()) +
                                              " arms, schedule has " + std::to_string(n));
  }
  const auto targets = spec.targets;
  if (spec.batch_size == 0 || spec.batch_size * spec.batch_budget < targets.size()) {
    throw Error(ErrorKind::ScheduleExhausted, "batches cannot cover the target-pull sequence");
  }

  const std::size_t max_level =
      targets.empty() ? 0 : *std::max_element(targets.begin(), targets.end());
  std::vector<ArmStats> stats(n);
  std::vector<std::uint64_t> virtual_pulls(n, 0);
  std::vector<std::uint32_t> versions(n, 0);
  std::vector<std::size_t> level_count(max_level + 2, 0);
  std::vector<std::size_t> last_batch(n, kNone);
  level_count[0] = n;

  LevelHeaps heaps(max_level + 2, spec.key);
  {
    std::vector<Entry> initial;
    initial.reserve(n);
    for (std::size_t a = 0; a < n; ++a) initial.push_back({candidate_key(a, stats[a]), 0});
    heaps.assign(0, std::move(initial));
  }
  const auto level_of = [&](std::size_t arm) { return stats[arm].pulls + virtual_pulls[arm]; };

  std::vector<std::size_t> round_end;
  round_end.reserve(schedule.rounds.size());
  for (std::size_t r = 0, end = 0; r < schedule.rounds.size(); ++r) {
    end += schedule.rounds[r].round_budget;
    round_end.push_back(end);
  }

  RunTrace trace;
  if (options.record_pulls) trace.pulls.reserve(targets.size());
  std::vector<std::pair<std::size_t, std::size_t>> in_batch;  // (step, arm)
  in_batch.reserve(std::min(spec.batch_size, targets.size()));

  // The arm pulled last is kept out of the heaps until some other step needs
  // its level; in advance-first order it is usually the only candidate.
  std::size_t hot = kNone;
  std::size_t t = 0;
  std::size_t batch = 0;
  std::size_t round = 0;
  while (batch < spec.batch_budget && t < targets.size()) {
    in_batch.clear();
    std::size_t first_round = 0;
    for (std::size_t k = 0; k < spec.batch_size && t < targets.size(); ++k, ++t) {
      while (round + 1 < round_end.size() && t >= round_end[round]) ++round;
      if (k == 0) first_round = round;
      const std::size_t level = targets[t];
      std::size_t arm = kNone;
      if (hot != kNone && level_of(hot) == level && level_count[level] == 1) {
        arm = hot;
      } else {
        if (hot != kNone) {
          heaps.push(level_of(hot), {candidate_key(hot, stats[hot]), versions[hot]});
        }
        arm = heaps.pop_best(level, versions);
        if (arm == kNone) {
          throw Error(ErrorKind::EmptyCandidateSet, "no arm with " + std::to_string(level) +
                                                        " pulls at step " + std::to_string(t));
        }
      }
      --level_count[level];
      ++level_count[level + 1];
      ++virtual_pulls[arm];
      hot = arm;
      in_batch.emplace_back(t, arm);
    }
    trace.max_rounds_spanned = std::max(trace.max_rounds_spanned, round - first_round + 1);

    for (const auto& [step, arm] : in_batch) {
      const double reward = source.reward(arm, stats[arm].pulls);
      stats[arm].add(reward);
      --virtual_pulls[arm];
      if (options.record_pulls) trace.pulls.push_back({step, batch, arm, reward});
    }
    hot = kNone;
    for (const auto& [step, arm] : in_batch) {
      if (last_batch[arm] == batch) continue;
      last_batch[arm] = batch;
      ++versions[arm];
      heaps.push(stats[arm].pulls, {candidate_key(arm, stats[arm]), versions[arm]});
    }
    ++batch;
  }

  trace.selected = select_final(stats);
  trace.final_stats = std::move(stats);
  trace.consumed = t;
  trace.batches = batch;
  return trace;
}

}  // namespace halving::detail
