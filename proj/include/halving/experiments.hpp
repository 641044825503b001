#pragma once

// Polynomial-gap problem instances, paired regret sweeps over sampled
// (instance, b, B) configurations, and the through-origin slope fit.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halving/algorithms.hpp"

namespace halving {

struct ProblemInstance {
  std::size_t n = 0;
  double alpha = 1.0;
  double mu_min = 0.0;
  double mu_max = 1.0;
  std::vector<double> means;  // non-increasing, means[0] = mu_max, means[n-1] = mu_min
};

// mu_a = mu_max - (mu_max - mu_min) * ((a-1)/(n-1))^alpha for a = 1..n.
// Throws Error(InvalidRange) unless n >= 2, alpha > 0, 0 < mu_min < mu_max < 1.
ProblemInstance make_instance(std::size_t n, double alpha, double mu_min, double mu_max);
// "n,alpha,mu_min,mu_max"
ProblemInstance parse_instance(std::string_view text);

enum class Regime {
  Large,  // B >= 4 ceil(log2 n): both equivalence conditions hold
  Small,  // ceil(log2 n) <= B < 4 ceil(log2 n)
};

std::string_view to_string(Regime regime) noexcept;
Regime parse_regime(std::string_view text);

struct SweepConfig {
  Regime regime = Regime::Large;
  std::size_t trials = 1000;
  std::size_t seeds_per_trial = 20;
  std::uint64_t rng_seed = 0;
  std::size_t max_arms = 256;
  std::optional<std::size_t> fixed_arms;
  std::vector<Algorithm> algos{Algorithm::SH, Algorithm::ASH, Algorithm::BSH, Algorithm::Jun16};
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Trial {
  std::size_t instance_id = 0;
  ProblemInstance instance;
  std::size_t batch_size = 0;
  std::size_t batch_budget = 0;
};

// Deterministic in (cfg.rng_seed, instance_id) alone.
Trial sample_trial(const SweepConfig& cfg, std::size_t instance_id);

// Seed of the reward source shared by every algorithm on (instance, seed).
std::uint64_t reward_seed(std::uint64_t rng_seed, std::size_t instance_id, std::size_t seed);

struct SweepRecord {
  std::size_t instance_id = 0;
  std::size_t n = 0;
  double alpha = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  std::size_t b = 0;
  std::size_t B = 0;
  Algorithm algo = Algorithm::SH;
  std::size_t seed = 0;
  std::size_t selected_arm = 0;  // one-based
  double regret = 0.0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

// One record per (instance, algorithm, seed), sorted by (instance_id,
// algorithm name, seed). Output does not depend on cfg.threads.
std::vector<SweepRecord> regret_sweep(const SweepConfig& cfg);

struct Mismatch {
  std::size_t instance_id = 0;
  std::size_t seed = 0;
  std::size_t n = 0;
  std::size_t b = 0;
  std::size_t B = 0;
  std::size_t baseline_arm = 0;  // one-based
  std::size_t variant_arm = 0;
};

struct EquivalenceReport {
  std::size_t runs = 0;
  std::size_t matches = 0;
  std::vector<Mismatch> mismatches;

  double match_rate() const noexcept {
    return runs == 0 ? 1.0 : static_cast<double>(matches) / static_cast<double>(runs);
  }
};

// Runs only SH and ASH (cfg.algos is ignored) and compares selections.
EquivalenceReport equivalence_sweep(const SweepConfig& cfg);

// Compares selections of two algorithms present in the same sweep output.
EquivalenceReport compare_selections(std::span<const SweepRecord> records, Algorithm baseline,
                                     Algorithm variant);

// An explicit reward matrix on which ASH and SH select different arms.
struct Divergence {
  std::size_t n = 0;
  std::size_t b = 0;
  std::size_t B = 0;
  std::vector<std::vector<double>> rewards;  // one row per arm, as long as either run needs
  std::size_t sh_arm = 0;                    // one-based
  std::size_t ash_arm = 0;
  std::size_t attempts = 0;  // Bernoulli streams tried before the hit
};

// Tries up to `attempts` Bernoulli streams on random mean vectors and freezes
// the first disagreement into an explicit matrix, re-running both algorithms
// on it before returning. A search, so an empty result proves nothing.
std::optional<Divergence> search_divergence(std::size_t n, std::size_t b, std::size_t B,
                                            std::size_t attempts, std::uint64_t rng_seed);

struct SlopeFit {
  double beta = 0.0;
  std::size_t point_count = 0;
};

// beta = sum(x*y) / sum(x^2). Throws Error(DegenerateFit) when sum(x^2) == 0.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

// (baseline mean regret, variant mean regret) per instance, ordered by instance id.
std::vector<std::pair<double, double>> paired_mean_regrets(std::span<const SweepRecord> records,
                                                           Algorithm baseline, Algorithm variant);

// Slope of every non-baseline algorithm found in `records`.
std::map<Algorithm, SlopeFit> fit_slopes(std::span<const SweepRecord> records, Algorithm baseline);

// Header row plus one row per record; `comments` are emitted first as "# ..." lines.
void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records,
                     std::span<const std::string> comments = {});
// Skips '#' lines; throws Error(ParseError) on a missing/mismatched header or bad row.
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

// Comment lines describing the sampler and other protocol choices.
std::vector<std::string> sweep_metadata(const SweepConfig& cfg);

}  // namespace halving
