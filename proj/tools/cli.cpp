#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "halving/algorithms.hpp"
#include "halving/error.hpp"
#include "halving/experiments.hpp"
#include "halving/format.hpp"
#include "halving/schedule.hpp"
#include "halving/theory.hpp"
#include "halving/trace.hpp"

#ifndef HALVING_VERSION
#define HALVING_VERSION "0.0.0"
#endif
#ifndef HALVING_BUILD_TYPE
#define HALVING_BUILD_TYPE "unknown"
#endif

namespace halving::cli {

namespace {

using Json = nlohmann::ordered_json;

// Target values shown by `schedule` without --full.
constexpr std::size_t kTargetPreview = 64;

std::string version_string() {
  std::ostringstream s;
  s << "halving " << HALVING_VERSION << " (build " << HALVING_BUILD_TYPE << ", ";
#if defined(__clang__)
  s << "clang " << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
  s << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__;
#else
  s << "unknown compiler";
#endif
  s << ", C++" << __cplusplus << ")";
  return s.str();
}

struct Options {
  std::uint64_t rng_seed = 0;
  std::string out_path;
  std::string format = "csv";

  // schedule / run
  std::size_t n = 0;
  std::size_t budget = 0;
  std::string mode = "advance";
  bool json_flag = false;
  bool full = false;
  std::string algo;
  std::size_t batch_size = 1;
  std::size_t batch_budget = 0;
  std::size_t seed = 0;
  std::string instance;
  std::string matrix_path;
  std::string trace_path;

  // checks
  std::size_t max_b = 4096;
  std::size_t b = 0;
  std::size_t B = 0;
  std::string alpha;
  std::size_t tight_max_b = 1000;
  std::size_t attempts = 2000;

  // grids
  std::string grid;
  std::vector<std::size_t> b_values;

  // sweeps
  std::string regime = "large";
  std::size_t trials = 1000;
  std::size_t seeds = 20;
  std::vector<std::string> algos;
  std::size_t n_max = 256;
  unsigned threads = 0;

  // fit
  std::string in_path;
  std::string baseline = "sh";
};

// The resolved flags that determine the output. --out and --threads are
// left out: neither changes a single byte of what gets written.
class Echo {
 public:
  explicit Echo(std::string command) : command_(std::move(command)) {}

  Echo& add(const std::string& key, Json value) {
    fields_.emplace_back(key, std::move(value));
    return *this;
  }

  std::string line() const {
    std::string s = "# halving " + command_;
    for (const auto& [key, value] : fields_) {
      s += " --" + key + "=";
      s += value.is_string() ? value.get<std::string>() : value.dump();
    }
    return s;
  }

  Json json() const {
    Json j;
    j["command"] = command_;
    for (const auto& [key, value] : fields_) j[key] = value;
    return j;
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, Json>> fields_;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::size_t parse_size(const std::string& text, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError(std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

std::string join_sizes(const std::vector<std::size_t>& values, std::size_t limit) {
  std::string s;
  for (std::size_t i = 0; i < std::min(limit, values.size()); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  bool json() const { return opt_.format == "json" || opt_.json_flag; }

  int schedule() {
    const TargetMode mode = parse_target_mode(opt_.mode);
    const HalvingSchedule s = build_schedule(opt_.n, opt_.budget);
    const TargetPulls targets = make_targets(s, mode);
    std::vector<std::size_t> values(targets.values.begin(), targets.values.end());
    const std::size_t shown = opt_.full ? values.size() : std::min(values.size(), kTargetPreview);

    Echo echo("schedule");
    echo.add("n", opt_.n).add("budget", opt_.budget).add("mode", std::string(to_string(mode)));
    echo.add("full", opt_.full);

    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["arms"] = s.arms;
      j["budget"] = s.budget;
      j["leftover"] = s.leftover;
      j["leftover_discard"] = s.leftover_discard;
      Json rounds = Json::array();
      for (std::size_t r = 0; r < s.rounds.size(); ++r) {
        rounds.push_back({{"round", r},
                          {"active_size", s.rounds[r].active_size},
                          {"pulls_per_arm", s.rounds[r].pulls_per_arm},
                          {"round_budget", s.rounds[r].round_budget}});
      }
      j["rounds"] = rounds;
      j["target_count"] = values.size();
      j["targets"] = std::vector<std::size_t>(values.begin(), values.begin() + shown);
      j["truncated"] = shown < values.size();
      out_ << j.dump(2) << '\n';
      return kOk;
    }
    out_ << echo.line() << '\n';
    out_ << "round,active_size,pulls_per_arm,round_budget\n";
    for (std::size_t r = 0; r < s.rounds.size(); ++r) {
      out_ << r << ',' << s.rounds[r].active_size << ',' << s.rounds[r].pulls_per_arm << ','
           << s.rounds[r].round_budget << '\n';
    }
    out_ << "# leftover=" << s.leftover << " leftover_discard=" << s.leftover_discard << '\n';
    out_ << "# targets " << shown << " of " << values.size() << '\n';
    out_ << "targets=" << join_sizes(values, shown) << (shown < values.size() ? ",..." : "")
         << '\n';
    return kOk;
  }

  int run() {
    const Algorithm algo = parse_algorithm(opt_.algo);
    if (opt_.instance.empty() == opt_.matrix_path.empty()) {
      throw UsageError("give exactly one of --instance and --matrix");
    }
    // A matrix replays fixed rewards; its row averages stand in for the means.
    const RewardSource source =
        opt_.matrix_path.empty()
            ? RewardSource::bernoulli(parse_instance(opt_.instance).means,
                                      reward_seed(opt_.rng_seed, 0, opt_.seed))
            : RewardSource::matrix_from_csv(std::filesystem::path(opt_.matrix_path));
    const std::span<const double> means = source.means();
    const std::size_t arms = source.arms();
    if (opt_.n != 0 && opt_.n != arms) {
      throw UsageError("--n " + std::to_string(opt_.n) + " disagrees with the " +
                       std::to_string(arms) + " arms given");
    }
    const BatchConfig cfg(opt_.batch_size, opt_.batch_budget);
    const RunOptions run_options{!opt_.trace_path.empty()};
    const TargetMode mode = parse_target_mode(opt_.mode);
    if (algo != Algorithm::SH && mode != TargetMode::AdvanceFirst) {
      throw UsageError("--mode applies to sh only");
    }
    const RunTrace trace =
        algo == Algorithm::SH ? run_sh(arms, cfg.total_budget(), source, mode, run_options)
                              : run_algorithm(algo, arms, cfg, source, run_options);
    if (!opt_.trace_path.empty()) {
      std::ofstream file(opt_.trace_path, std::ios::binary);
      if (!file) throw UsageError("cannot write trace file '" + opt_.trace_path + "'");
      write_trace_csv(file, trace);
    }

    Echo echo("run");
    echo.add("algo", std::string(to_string(algo)));
    if (opt_.matrix_path.empty()) {
      echo.add("instance", opt_.instance);
    } else {
      echo.add("matrix", opt_.matrix_path);
    }
    echo.add("batch-size", opt_.batch_size).add("batch-budget", opt_.batch_budget);
    if (opt_.matrix_path.empty()) echo.add("seed", opt_.seed).add("rng-seed", opt_.rng_seed);
    if (algo == Algorithm::SH) echo.add("mode", std::string(to_string(mode)));

    std::vector<std::size_t> counts;
    for (auto c : pull_counts(trace)) counts.push_back(static_cast<std::size_t>(c));
    const double regret = simple_regret(trace, means);
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["selected_arm"] = trace.selected + 1;
      j["regret"] = regret;
      j["consumed"] = trace.consumed;
      j["batches"] = trace.batches;
      j["max_rounds_spanned"] = trace.max_rounds_spanned;
      j["pull_counts"] = counts;
      out_ << j.dump(2) << '\n';
      return kOk;
    }
    out_ << echo.line() << '\n';
    out_ << "algo,n,b,B,seed,selected_arm,regret,consumed,batches,max_rounds_spanned\n";
    out_ << to_string(algo) << ',' << arms << ',' << opt_.batch_size << ','
         << opt_.batch_budget << ',' << opt_.seed << ',' << trace.selected + 1 << ','
         << format_double(regret) << ',' << trace.consumed << ',' << trace.batches << ','
         << trace.max_rounds_spanned << '\n';
    out_ << "# pull_counts=" << join_sizes(counts, counts.size()) << '\n';
    return kOk;
  }

  int check_lemma() {
    if (opt_.max_b < 2) throw UsageError("--max-b must be at least 2");
    Echo echo("check lemma");
    echo.add("max-b", opt_.max_b);
    std::optional<std::pair<std::size_t, std::size_t>> violation;
    for (std::size_t b = 2; b <= opt_.max_b && !violation; ++b) {
      const LemmaCheck c = check_lemma1(b);
      if (!c.holds) violation.emplace(b, c.witness_x.value_or(0));
    }
    std::string message =
        violation ? "lemma1 violated at b=" + std::to_string(violation->first) +
                        " x=" + std::to_string(violation->second)
                  : "lemma1 holds for b in [2," + std::to_string(opt_.max_b) + "]";
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["holds"] = !violation;
      if (violation) j["witness"] = {{"b", violation->first}, {"x", violation->second}};
      j["message"] = message;
      out_ << j.dump(2) << '\n';
    } else {
      out_ << echo.line() << '\n' << message << '\n';
    }
    return violation ? kCheckFailed : kOk;
  }

  int check_inequality() {
    const ConditionReport cond = check_conditions(opt_.n, opt_.b, opt_.B);
    const Inequality4Check c = check_inequality4(opt_.n, opt_.b, opt_.B);
    Echo echo("check inequality");
    echo.add("n", opt_.n).add("b", opt_.b).add("B", opt_.B);
    // A violation only falsifies the theorem when both conditions hold.
    const bool failed = !c.holds && cond.equivalence_guaranteed;
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["c1"] = cond.c1_holds;
      j["c2"] = cond.c2_holds;
      j["equivalence_guaranteed"] = cond.equivalence_guaranteed;
      j["holds"] = c.holds;
      if (c.witness) {
        j["witness"] = {{"round", c.witness->round},
                        {"z", c.witness->z},
                        {"lhs", c.witness->lhs},
                        {"rhs", c.witness->rhs}};
      }
      out_ << j.dump(2) << '\n';
    } else {
      out_ << echo.line() << '\n';
      out_ << "c1=" << cond.c1_holds << " c2=" << cond.c2_holds
           << " equivalence_guaranteed=" << cond.equivalence_guaranteed << '\n';
      if (c.holds) {
        out_ << "inequality4 holds for every round and z\n";
      } else {
        out_ << "inequality4 violated at round=" << c.witness->round << " z=" << c.witness->z
             << " lhs=" << c.witness->lhs << " rhs=" << c.witness->rhs << '\n';
      }
    }
    return failed ? kCheckFailed : kOk;
  }

  int check_tightness() {
    const Rational alpha = Rational::parse(opt_.alpha);
    const auto witness = find_tightness_counterexample(alpha, opt_.tight_max_b);
    Echo echo("check tightness");
    echo.add("alpha", alpha.str()).add("max-b", opt_.tight_max_b);
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["found"] = witness.has_value();
      if (witness) {
        j["witness"] = {{"b", witness->b},
                        {"x", witness->x},
                        {"lhs", witness->terms.lhs},
                        {"rhs", witness->terms.rhs},
                        {"divisor", witness->terms.divisor}};
      }
      out_ << j.dump(2) << '\n';
      return kOk;
    }
    out_ << echo.line() << '\n';
    if (witness) {
      out_ << "counterexample b=" << witness->b << " x=" << witness->x
           << " lhs=" << witness->terms.lhs << " rhs=" << witness->terms.rhs << '\n';
    } else {
      out_ << "no counterexample for b in [2," << opt_.tight_max_b << "]\n";
    }
    return kOk;
  }

  int check_divergence() {
    const auto hit = search_divergence(opt_.n, opt_.b, opt_.B, opt_.attempts, opt_.rng_seed);
    if (hit && !opt_.matrix_path.empty()) {
      std::ofstream file(opt_.matrix_path, std::ios::binary);
      if (!file) throw UsageError("cannot write matrix file '" + opt_.matrix_path + "'");
      file << "# one row per arm; sh selects " << hit->sh_arm << ", ash selects " << hit->ash_arm
           << " with n=" << hit->n << " b=" << hit->b << " B=" << hit->B << '\n';
      for (const auto& row : hit->rewards) {
        for (std::size_t j = 0; j < row.size(); ++j) file << (j ? "," : "") << format_double(row[j]);
        file << '\n';
      }
    }
    Echo echo("check divergence");
    echo.add("n", opt_.n).add("b", opt_.b).add("B", opt_.B).add("attempts", opt_.attempts);
    echo.add("rng-seed", opt_.rng_seed);
    const ConditionReport cond = check_conditions(opt_.n, opt_.b, opt_.B);
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["equivalence_guaranteed"] = cond.equivalence_guaranteed;
      j["found"] = hit.has_value();
      if (hit) {
        j["attempts_used"] = hit->attempts;
        j["sh_arm"] = hit->sh_arm;
        j["ash_arm"] = hit->ash_arm;
      }
      out_ << j.dump(2) << '\n';
    } else {
      out_ << echo.line() << '\n';
      if (hit) {
        out_ << "divergence after " << hit->attempts << " streams: sh selects " << hit->sh_arm
             << ", ash selects " << hit->ash_arm << '\n';
      } else {
        out_ << "no divergence in " << opt_.attempts << " streams\n";
      }
    }
    // A divergence where equivalence is guaranteed would falsify the theorem.
    return hit && cond.equivalence_guaranteed ? kCheckFailed : kOk;
  }

  SweepConfig sweep_config() const {
    SweepConfig cfg;
    cfg.regime = parse_regime(opt_.regime);
    cfg.trials = opt_.trials;
    cfg.seeds_per_trial = opt_.seeds;
    cfg.rng_seed = opt_.rng_seed;
    cfg.max_arms = opt_.n_max;
    cfg.threads = opt_.threads;
    if (!opt_.algos.empty()) {
      cfg.algos.clear();
      for (const auto& a : opt_.algos) {
        const Algorithm algo = parse_algorithm(a);
        if (std::find(cfg.algos.begin(), cfg.algos.end(), algo) == cfg.algos.end()) {
          cfg.algos.push_back(algo);
        }
      }
    }
    if (cfg.trials == 0 || cfg.seeds_per_trial == 0) {
      throw UsageError("--trials and --seeds must be positive");
    }
    if (cfg.max_arms < 2) throw UsageError("--n-max must be at least 2");
    return cfg;
  }

  Echo sweep_echo(const std::string& command, const SweepConfig& cfg, bool with_algos) const {
    Echo echo(command);
    echo.add("regime", std::string(to_string(cfg.regime))).add("trials", cfg.trials);
    echo.add("seeds", cfg.seeds_per_trial).add("rng-seed", cfg.rng_seed);
    echo.add("n-max", cfg.max_arms);
    if (with_algos) {
      std::string names;
      for (auto a : cfg.algos) names += (names.empty() ? "" : ",") + std::string(to_string(a));
      echo.add("algos", names);
    }
    return echo;
  }

  int check_equivalence() {
    const SweepConfig cfg = sweep_config();
    const EquivalenceReport report = equivalence_sweep(cfg);
    const Echo echo = sweep_echo("check equivalence", cfg, false);
    // Mismatches are expected outside the large regime and only reported there.
    const bool failed = cfg.regime == Regime::Large && report.matches != report.runs;
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["runs"] = report.runs;
      j["matches"] = report.matches;
      j["match_rate"] = report.match_rate();
      Json rows = Json::array();
      for (const auto& m : report.mismatches) {
        rows.push_back({{"instance_id", m.instance_id},
                        {"seed", m.seed},
                        {"n", m.n},
                        {"b", m.b},
                        {"B", m.B},
                        {"sh_arm", m.baseline_arm},
                        {"ash_arm", m.variant_arm}});
      }
      j["mismatches"] = rows;
      out_ << j.dump(2) << '\n';
    } else {
      out_ << echo.line() << '\n';
      out_ << "# matches " << report.matches << " of " << report.runs
           << " match_rate=" << format_double(report.match_rate()) << '\n';
      out_ << "instance_id,seed,n,b,B,sh_arm,ash_arm\n";
      for (const auto& m : report.mismatches) {
        out_ << m.instance_id << ',' << m.seed << ',' << m.n << ',' << m.b << ',' << m.B << ','
             << m.baseline_arm << ',' << m.variant_arm << '\n';
      }
    }
    return failed ? kCheckFailed : kOk;
  }

  int conditions() {
    const auto parts = split(opt_.grid, ',');
    if (parts.size() < 3) throw UsageError("--grid needs nmax,Bmax,b1[,b2,...]");
    const std::size_t n_max = parse_size(parts[0], "nmax");
    const std::size_t B_max = parse_size(parts[1], "Bmax");
    std::vector<std::size_t> bs;
    for (std::size_t i = 2; i < parts.size(); ++i) bs.push_back(parse_size(parts[i], "b"));
    if (n_max < 2 || B_max < 1) throw UsageError("--grid needs nmax >= 2 and Bmax >= 1");
    for (auto b : bs) {
      if (b < 2) throw UsageError("--grid batch sizes must be at least 2");
    }
    Echo echo("conditions");
    echo.add("grid", opt_.grid);
    Json rows = Json::array();
    if (!json()) out_ << echo.line() << "\nn,B,b,c1,c2\n";
    for (std::size_t n = 2; n <= n_max; ++n) {
      for (std::size_t B = 1; B <= B_max; ++B) {
        for (auto b : bs) {
          const ConditionReport c = check_conditions(n, b, B);
          if (json()) {
            rows.push_back({{"n", n}, {"B", B}, {"b", b}, {"c1", c.c1_holds}, {"c2", c.c2_holds}});
          } else {
            out_ << n << ',' << B << ',' << b << ',' << int(c.c1_holds) << ',' << int(c.c2_holds)
                 << '\n';
          }
        }
      }
    }
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["rows"] = rows;
      out_ << j.dump(2) << '\n';
    }
    return kOk;
  }

  int lemma_curves() {
    if (opt_.b_values.empty()) throw UsageError("--b-values is required");
    std::string listed;
    for (auto b : opt_.b_values) {
      if (b < 2) throw UsageError("--b-values entries must be at least 2");
      listed += (listed.empty() ? "" : ",") + std::to_string(b);
    }
    Echo echo("lemma-curves");
    echo.add("b-values", listed);
    Json rows = Json::array();
    if (!json()) out_ << echo.line() << "\nb,x,lhs,rhs\n";
    for (auto b : opt_.b_values) {
      for (std::size_t x = 3; x <= 4 * b; ++x) {
        const LemmaTerms t = lemma_terms(b, x);
        if (json()) {
          rows.push_back({{"b", b}, {"x", x}, {"lhs", t.lhs}, {"rhs", t.rhs}});
        } else {
          out_ << b << ',' << x << ',' << t.lhs << ',' << t.rhs << '\n';
        }
      }
    }
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["rows"] = rows;
      out_ << j.dump(2) << '\n';
    }
    return kOk;
  }

  int sweep() {
    const SweepConfig cfg = sweep_config();
    const auto records = regret_sweep(cfg);
    const Echo echo = sweep_echo("sweep", cfg, true);
    const auto metadata = sweep_metadata(cfg);
    if (json()) {
      Json j;
      j["config"] = echo.json();
      j["metadata"] = metadata;
      Json rows = Json::array();
      for (const auto& r : records) {
        rows.push_back({{"instance_id", r.instance_id},
                        {"n", r.n},
                        {"alpha", r.alpha},
                        {"mu_min", r.mu_min},
                        {"mu_max", r.mu_max},
                        {"b", r.b},
                        {"B", r.B},
                        {"algo", std::string(to_string(r.algo))},
                        {"seed", r.seed},
                        {"selected_arm", r.selected_arm},
                        {"regret", r.regret}});
      }
      j["records"] = rows;
      out_ << j.dump(2) << '\n';
      return kOk;
    }
    out_ << echo.line() << '\n';
    write_sweep_csv(out_, records, metadata);
    return kOk;
  }

  int fit() {
    std::ifstream in(opt_.in_path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + opt_.in_path + "'");
    const auto records = read_sweep_csv(in);
    if (records.empty()) throw UsageError("'" + opt_.in_path + "' holds no records");
    const Algorithm baseline = parse_algorithm(opt_.baseline);
    const auto fits = fit_slopes(records, baseline);

    Echo echo("fit");
    echo.add("in", opt_.in_path).add("baseline", std::string(to_string(baseline)));
    Json j;
    j["config"] = echo.json();
    j["baseline"] = std::string(to_string(baseline));
    Json slopes = Json::object();
    for (const auto& [algo, fit] : fits) {
      const EquivalenceReport match = compare_selections(records, baseline, algo);
      slopes[std::string(to_string(algo))] = {{"beta", fit.beta},
                                              {"instances", fit.point_count},
                                              {"match_rate", match.match_rate()}};
    }
    j["fits"] = slopes;
    out_ << j.dump(2) << '\n';
    return kOk;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Sequential halving and its batched variants", "halving"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--rng-seed", opt.rng_seed, "Master seed for reward streams and samplers");
  app.add_option("--out", opt.out_path, "Output file (default stdout)");
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* schedule = app.add_subcommand("schedule", "Round table and target-pull sequence");
  schedule->add_option("--n", opt.n, "Number of arms")->required();
  schedule->add_option("--budget", opt.budget, "Total budget T")->required();
  schedule->add_option("--mode", opt.mode, "breadth|advance");
  schedule->add_flag("--json", opt.json_flag, "Same as --format json");
  schedule->add_flag("--full", opt.full, "Print every target value");

  auto* run = app.add_subcommand("run", "Single run on a polynomial-gap instance");
  run->add_option("--algo", opt.algo, "sh|ash|bsh|jun16")->required();
  run->add_option("--n", opt.n, "Number of arms (must match --instance)");
  run->add_option("--batch-size", opt.batch_size, "Batch size b (1 for sh)");
  run->add_option("--batch-budget", opt.batch_budget, "Batch budget B")->required();
  run->add_option("--seed", opt.seed, "Seed index");
  run->add_option("--instance", opt.instance, "n,alpha,mu_min,mu_max");
  run->add_option("--matrix", opt.matrix_path, "Reward matrix CSV, one row per arm");
  run->add_option("--trace", opt.trace_path, "Write the pull trace CSV here");
  run->add_option("--mode", opt.mode, "breadth|advance (sh only)");

  auto* check = app.add_subcommand("check", "Exhaustive theory checks");
  check->require_subcommand(1);
  auto* lemma = check->add_subcommand("lemma", "Enumerate the lemma for b in [2, max-b]");
  lemma->add_option("--max-b", opt.max_b, "Largest b");
  auto* inequality = check->add_subcommand("inequality", "Key inequality on one schedule");
  inequality->add_option("--n", opt.n)->required();
  inequality->add_option("--b", opt.b)->required();
  inequality->add_option("--B", opt.B)->required();
  auto* tightness = check->add_subcommand("tightness", "Smallest counterexample below scale 4");
  tightness->add_option("--alpha", opt.alpha, "Scale, e.g. 3.9 or 39/10")->required();
  tightness->add_option("--max-b", opt.tight_max_b, "Largest b searched");
  auto* divergence = check->add_subcommand("divergence", "Search a reward matrix where ASH != SH");
  divergence->add_option("--n", opt.n)->required();
  divergence->add_option("--b", opt.b)->required();
  divergence->add_option("--B", opt.B)->required();
  divergence->add_option("--attempts", opt.attempts, "Bernoulli streams to try");
  divergence->add_option("--matrix", opt.matrix_path, "Write the matrix found here");
  auto* equivalence = check->add_subcommand("equivalence", "Compare ASH and SH selections");
  equivalence->add_option("--regime", opt.regime, "large|small");
  equivalence->add_option("--trials", opt.trials, "Sampled instances");
  equivalence->add_option("--seeds", opt.seeds, "Seeds per instance");
  equivalence->add_option("--n-max", opt.n_max, "Largest arm count sampled");
  equivalence->add_option("--threads", opt.threads, "Worker threads (0: all cores)");

  auto* conditions = app.add_subcommand("conditions", "Condition regions as CSV");
  conditions->add_option("--grid", opt.grid, "nmax,Bmax,b1[,b2,...]")->required();

  auto* curves = app.add_subcommand("lemma-curves", "Both lemma sides over x in [3, 4b]");
  curves->add_option("--b-values", opt.b_values, "Batch sizes")->required()->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Paired regret sweep");
  sweep->add_option("--regime", opt.regime, "large|small");
  sweep->add_option("--trials", opt.trials, "Sampled instances");
  sweep->add_option("--seeds", opt.seeds, "Seeds per instance");
  sweep->add_option("--n-max", opt.n_max, "Largest arm count sampled");
  sweep->add_option("--threads", opt.threads, "Worker threads (0: all cores)");
  sweep->add_option("--algos", opt.algos, "Algorithms")->delimiter(',');

  auto* fit = app.add_subcommand("fit", "Through-origin slopes against a baseline");
  fit->add_option("--in", opt.in_path, "Sweep CSV")->required();
  fit->add_option("--baseline", opt.baseline, "Baseline algorithm");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* active = &app;
    for (auto* sub = active; sub != nullptr;) {
      const auto chosen = sub->get_subcommands();
      if (chosen.empty()) break;
      active = sub = chosen.front();
    }
    err << active->help();
    return kUsage;
  }

  std::ofstream file;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << opt.out_path << "'\n";
      return kUsage;
    }
  }
  std::ostream& sink = opt.out_path.empty() ? out : static_cast<std::ostream&>(file);
  Runner runner(opt, sink);

  try {
    if (*schedule) return runner.schedule();
    if (*run) return runner.run();
    if (*lemma) return runner.check_lemma();
    if (*inequality) return runner.check_inequality();
    if (*tightness) return runner.check_tightness();
    if (*divergence) return runner.check_divergence();
    if (*equivalence) return runner.check_equivalence();
    if (*conditions) return runner.conditions();
    if (*curves) return runner.lemma_curves();
    if (*sweep) return runner.sweep();
    if (*fit) return runner.fit();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace halving::cli
