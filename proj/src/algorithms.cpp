#include "halving/algorithms.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "halving/error.hpp"
#include "halving/theory.hpp"
#include "pull_engine.hpp"

namespace halving {

BatchConfig::BatchConfig(std::size_t batch_size, std::size_t batch_budget)
    : batch_size_(batch_size), batch_budget_(batch_budget) {
  if (batch_size == 0 || batch_budget == 0) {
    throw Error(ErrorKind::InvalidConfig, "batch size and batch budget must be >= 1");
  }
  if (batch_size > std::numeric_limits<std::size_t>::max() / batch_budget) {
    throw Error(ErrorKind::InvalidConfig, "b * B overflows");
  }
}

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::SH: return "sh";
    case Algorithm::ASH: return "ash";
    case Algorithm::BSH: return "bsh";
    case Algorithm::Jun16: return "jun16";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "sh") return Algorithm::SH;
  if (text == "ash") return Algorithm::ASH;
  if (text == "bsh") return Algorithm::BSH;
  if (text == "jun16") return Algorithm::Jun16;
  throw Error(ErrorKind::ParseError, "unknown algorithm '" + std::string(text) + "'");
}

RunTrace run_sh(std::size_t n, std::size_t budget, const RewardSource& source, TargetMode mode,
                const RunOptions& options) {
  const HalvingSchedule schedule = build_schedule(n, budget);
  const TargetPulls targets = make_targets(schedule, mode);
  return detail::run_target_engine(
      {schedule, targets.values, 1, targets.values.size(), SelectionKey::MeanOnly}, source,
      options);
}

namespace {

RunTrace run_batched(std::size_t n, const BatchConfig& cfg, const RewardSource& source,
                     TargetMode mode, SelectionKey key, const RunOptions& options) {
  const HalvingSchedule schedule = build_schedule(n, cfg.total_budget());
  const TargetPulls targets = make_targets(schedule, mode);
  RunTrace trace = detail::run_target_engine(
      {schedule, targets.values, cfg.batch_size(), cfg.batch_budget(), key}, source, options);
  // Under both equivalence conditions every round holds at least b pulls,
  // so no batch can touch three rounds.
  if (cfg.batch_size() >= 2 && trace.max_rounds_spanned > 2 &&
      check_conditions(n, cfg.batch_size(), cfg.batch_budget()).equivalence_guaranteed) {
    throw std::logic_error("batch spans " + std::to_string(trace.max_rounds_spanned) +
                           " rounds although (C1) and (C2) hold");
  }
  return trace;
}

}  // namespace

RunTrace run_ash(std::size_t n, const BatchConfig& cfg, const RewardSource& source,
                 const RunOptions& options) {
  return run_batched(n, cfg, source, TargetMode::AdvanceFirst, SelectionKey::PullsThenMean,
                     options);
}

RunTrace run_bsh(std::size_t n, const BatchConfig& cfg, const RewardSource& source,
                 const RunOptions& options) {
  return run_batched(n, cfg, source, TargetMode::BreadthFirst, SelectionKey::MeanOnly, options);
}

RunTrace run_algorithm(Algorithm algo, std::size_t n, const BatchConfig& cfg,
                       const RewardSource& source, const RunOptions& options) {
  switch (algo) {
    case Algorithm::SH: return run_sh(n, cfg.total_budget(), source, TargetMode::AdvanceFirst, options);
    case Algorithm::ASH: return run_ash(n, cfg, source, options);
    case Algorithm::BSH: return run_bsh(n, cfg, source, options);
    case Algorithm::Jun16: return run_jun16(n, cfg, source, options);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown algorithm");
}

double simple_regret(const RunTrace& trace, std::span<const double> means) {
  if (trace.selected >= means.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "selected arm outside mean vector");
  }
  const double best = *std::max_element(means.begin(), means.end());
  return best - means[trace.selected];
}

}  // namespace halving
