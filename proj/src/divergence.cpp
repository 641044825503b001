#include <algorithm>
#include <random>

#include "halving/experiments.hpp"
#include "halving/trace.hpp"

namespace halving {

std::optional<Divergence> search_divergence(std::size_t n, std::size_t b, std::size_t B,
                                            std::size_t attempts, std::uint64_t rng_seed) {
  const BatchConfig cfg(b, B);
  const RunOptions quiet{false};
  std::mt19937_64 rng(hash_words({rng_seed, 0x44495645ULL, n, b, B}));
  std::uniform_real_distribution<double> mean_dist(0.2, 0.8);

  for (std::size_t attempt = 1; attempt <= attempts; ++attempt) {
    std::vector<double> means(n);
    for (auto& m : means) m = mean_dist(rng);
    const auto source = RewardSource::bernoulli(means, rng());
    const RunTrace sh = run_sh(n, cfg.total_budget(), source, TargetMode::AdvanceFirst, quiet);
    const RunTrace ash = run_ash(n, cfg, source, quiet);
    if (sh.selected == ash.selected) continue;

    std::vector<std::vector<double>> rows(n);
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint64_t len =
          std::max(sh.final_stats[a].pulls, ash.final_stats[a].pulls);
      for (std::uint64_t j = 0; j < len; ++j) rows[a].push_back(source.reward(a, j));
    }
    const auto matrix = RewardSource::explicit_matrix(rows);
    const RunTrace sh2 = run_sh(n, cfg.total_budget(), matrix, TargetMode::AdvanceFirst, quiet);
    const RunTrace ash2 = run_ash(n, cfg, matrix, quiet);
    if (sh2.selected == ash2.selected) continue;
    return Divergence{n, b, B, std::move(rows), sh2.selected + 1, ash2.selected + 1, attempt};
  }
  return std::nullopt;
}

}  // namespace halving
