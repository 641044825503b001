#pragma once

// Exhaustive checks of the conditions under which advance-first batched SH
// makes the same choices as sequential SH. All arithmetic is on integers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace halving {

struct ConditionReport {
  std::size_t n = 0;
  std::size_t b = 0;
  std::size_t B = 0;
  bool c1_holds = false;  // b * B >= n * ceil(log2 n)
  bool c2_holds = false;  // B >= 4 * ceil(log2 n)
  bool equivalence_guaranteed = false;
};

ConditionReport check_conditions(std::size_t n, std::size_t b, std::size_t B);

// Both sides of ceil(x/2) - 1 >= ceil((b-1) / floor(scale*b/x)) for a given
// numerator/denominator scale (4/1 for the lemma).
struct LemmaTerms {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::int64_t divisor = 0;  // floor(scale*b/x)
  bool holds() const noexcept { return lhs >= rhs; }
};

LemmaTerms lemma_terms(std::uint64_t b, std::uint64_t x, std::uint64_t scale_num = 4,
                       std::uint64_t scale_den = 1);

struct LemmaCheck {
  bool holds = true;
  std::optional<std::size_t> witness_x;
};

// Enumerates x in [3, 4b]. b >= 2.
LemmaCheck check_lemma1(std::size_t b);

struct Inequality4Witness {
  std::size_t round = 0;
  std::size_t z = 0;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

struct Inequality4Check {
  bool holds = true;
  std::optional<Inequality4Witness> witness;
};

// For every round r < ceil(log2 n) - 1 and z in [1, b-1], evaluates
// |S_{r+1}| - ceil((b-z)/J_{r+1}) >= ceil(z/J_r) on the schedule for b * B.
// Schedule errors propagate.
Inequality4Check check_inequality4(std::size_t n, std::size_t b, std::size_t B);

// Exact positive rational; parsed from "3.9", "39/10" or "4".
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational parse(std::string_view text);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

struct TightnessWitness {
  std::size_t b = 0;
  std::size_t x = 0;
  LemmaTerms terms;
};

// Smallest b in [2, b_max] (and smallest x for it) with
// ceil(x/2) - 1 < ceil((b-1)/floor(alpha*b/x)), x in [3, floor(alpha*b)],
// floor(alpha*b/x) >= 1. Throws Error(AlphaOutOfRange) unless 0 < alpha < 4.
std::optional<TightnessWitness> find_tightness_counterexample(const Rational& alpha,
                                                              std::size_t b_max);

}  // namespace halving
