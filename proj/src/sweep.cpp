#include <algorithm>
#include <atomic>
#include <random>
#include <string>
#include <thread>

#include "halving/error.hpp"
#include "halving/experiments.hpp"
#include "halving/theory.hpp"

namespace halving {

namespace {

// Unbiased integer in [lo, hi]; std::uniform_int_distribution is not
// specified bit-exactly across standard libraries.
std::size_t uniform_in(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return lo + rng();
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % range;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return lo + static_cast<std::size_t>(draw % range);
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

constexpr double kAlphas[] = {0.5, 1.0, 2.0};

}  // namespace

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::Large ? "large" : "small";
}

Regime parse_regime(std::string_view text) {
  if (text == "large") return Regime::Large;
  if (text == "small") return Regime::Small;
  throw Error(ErrorKind::ParseError, "unknown regime '" + std::string(text) + "'");
}

std::uint64_t reward_seed(std::uint64_t rng_seed, std::size_t instance_id, std::size_t seed) {
  return hash_words({rng_seed, 0x52455744ULL, instance_id, seed});
}

Trial sample_trial(const SweepConfig& cfg, std::size_t instance_id) {
  if (cfg.max_arms < 2) throw Error(ErrorKind::InvalidConfig, "max_arms must be >= 2");
  std::mt19937_64 rng(hash_words({cfg.rng_seed, 0x494E5354ULL, instance_id}));

  const std::size_t n = cfg.fixed_arms ? *cfg.fixed_arms : uniform_in(rng, 2, cfg.max_arms);
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "fixed arm count must be >= 2");
  const double alpha = kAlphas[uniform_in(rng, 0, 2)];
  std::size_t lo = uniform_in(rng, 1, 9);
  std::size_t hi = uniform_in(rng, 1, 9);
  while (hi == lo) hi = uniform_in(rng, 1, 9);
  if (lo > hi) std::swap(lo, hi);

  const std::size_t rounds = ceil_log2(n);
  std::size_t batch_budget = 0;
  if (cfg.regime == Regime::Large) {
    batch_budget = uniform_in(rng, 4 * rounds, 10 * rounds);
  } else {
    batch_budget = uniform_in(rng, rounds, 4 * rounds - 1);
  }
  // (C1): b >= n * rounds / B; b <= 5n always leaves room since B >= rounds.
  const std::size_t b_min = std::max<std::size_t>(2, ceil_div(n * rounds, batch_budget));
  const std::size_t batch_size = uniform_in(rng, b_min, 5 * n);

  Trial trial;
  trial.instance_id = instance_id;
  trial.instance = make_instance(n, alpha, static_cast<double>(lo) / 10.0,
                                 static_cast<double>(hi) / 10.0);
  trial.batch_size = batch_size;
  trial.batch_budget = batch_budget;
  return trial;
}

std::vector<SweepRecord> regret_sweep(const SweepConfig& cfg) {
  std::vector<Algorithm> algos = cfg.algos;
  std::sort(algos.begin(), algos.end(),
            [](Algorithm a, Algorithm b) { return to_string(a) < to_string(b); });
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());

  std::vector<std::vector<SweepRecord>> per_trial(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t id) {
    const Trial trial = sample_trial(cfg, id);
    const ProblemInstance& inst = trial.instance;
    const BatchConfig batch(trial.batch_size, trial.batch_budget);
    auto& out = per_trial[id];
    out.reserve(algos.size() * cfg.seeds_per_trial);
    for (Algorithm algo : algos) {
      for (std::size_t seed = 0; seed < cfg.seeds_per_trial; ++seed) {
        const RewardSource source =
            RewardSource::bernoulli(inst.means, reward_seed(cfg.rng_seed, id, seed));
        const RunTrace trace = run_algorithm(algo, inst.n, batch, source, {false});
        out.push_back({id, inst.n, inst.alpha, inst.mu_min, inst.mu_max, trial.batch_size,
                       trial.batch_budget, algo, seed, trace.selected + 1,
                       simple_regret(trace, inst.means)});
      }
    }
  });

  std::vector<SweepRecord> records;
  records.reserve(cfg.trials * algos.size() * cfg.seeds_per_trial);
  for (auto& chunk : per_trial) records.insert(records.end(), chunk.begin(), chunk.end());
  return records;
}

EquivalenceReport equivalence_sweep(const SweepConfig& cfg) {
  SweepConfig pair = cfg;
  pair.algos = {Algorithm::SH, Algorithm::ASH};
  const std::vector<SweepRecord> records = regret_sweep(pair);
  return compare_selections(records, Algorithm::SH, Algorithm::ASH);
}

EquivalenceReport compare_selections(std::span<const SweepRecord> records, Algorithm baseline,
                                     Algorithm variant) {
  std::map<std::pair<std::size_t, std::size_t>, const SweepRecord*> base;
  for (const SweepRecord& r : records) {
    if (r.algo == baseline) base[{r.instance_id, r.seed}] = &r;
  }
  EquivalenceReport report;
  for (const SweepRecord& r : records) {
    if (r.algo != variant) continue;
    const auto it = base.find({r.instance_id, r.seed});
    if (it == base.end()) continue;
    ++report.runs;
    if (it->second->selected_arm == r.selected_arm) {
      ++report.matches;
    } else {
      report.mismatches.push_back(
          {r.instance_id, r.seed, r.n, r.b, r.B, it->second->selected_arm, r.selected_arm});
    }
  }
  return report;
}

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : points) {
    sxy += x * y;
    sxx += x * x;
  }
  if (sxx == 0.0) throw Error(ErrorKind::DegenerateFit, "sum of squared baseline regrets is 0");
  return {sxy / sxx, points.size()};
}

std::vector<std::pair<double, double>> paired_mean_regrets(std::span<const SweepRecord> records,
                                                           Algorithm baseline, Algorithm variant) {
  struct Acc {
    double base_sum = 0.0, var_sum = 0.0;
    std::size_t base_count = 0, var_count = 0;
  };
  std::map<std::size_t, Acc> by_instance;
  for (const SweepRecord& r : records) {
    if (r.algo == baseline) {
      by_instance[r.instance_id].base_sum += r.regret;
      ++by_instance[r.instance_id].base_count;
    }
    if (r.algo == variant) {
      by_instance[r.instance_id].var_sum += r.regret;
      ++by_instance[r.instance_id].var_count;
    }
  }
  std::vector<std::pair<double, double>> points;
  for (const auto& [id, acc] : by_instance) {
    if (acc.base_count == 0 || acc.var_count == 0) continue;
    points.emplace_back(acc.base_sum / static_cast<double>(acc.base_count),
                        acc.var_sum / static_cast<double>(acc.var_count));
  }
  return points;
}

std::map<Algorithm, SlopeFit> fit_slopes(std::span<const SweepRecord> records, Algorithm baseline) {
  std::vector<Algorithm> variants;
  for (const SweepRecord& r : records) {
    if (r.algo != baseline &&
        std::find(variants.begin(), variants.end(), r.algo) == variants.end()) {
      variants.push_back(r.algo);
    }
  }
  std::map<Algorithm, SlopeFit> fits;
  for (Algorithm v : variants) {
    const auto points = paired_mean_regrets(records, baseline, v);
    fits[v] = fit_slope(points);
  }
  return fits;
}

std::vector<std::string> sweep_metadata(const SweepConfig& cfg) {
  std::vector<std::string> lines;
  lines.push_back("rewards: Bernoulli(mu_a), counter-based stream keyed by (rng_seed, instance_id, seed)");
  lines.push_back(std::string("sampler: n uniform in [2,") + std::to_string(cfg.max_arms) +
                  "], alpha in {0.5,1,2}, mu_min<mu_max from {0.1..0.9}");
  if (cfg.regime == Regime::Large) {
    lines.push_back("sampler: B uniform in [4R,10R], b uniform in [max(2,ceil(nR/B)),5n], R=ceil(log2 n)");
  } else {
    lines.push_back("sampler: B uniform in [R,4R-1], b uniform in [max(2,ceil(nR/B)),5n], R=ceil(log2 n)");
  }
  lines.push_back("jun16: B mod R remainder batches assigned to the final round");
  lines.push_back("arms: one-based in selected_arm");
  return lines;
}

}  // namespace halving
