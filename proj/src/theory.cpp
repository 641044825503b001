#include "halving/theory.hpp"

#include <charconv>
#include <limits>

#include "halving/error.hpp"
#include "halving/schedule.hpp"

namespace halving {

namespace {

__extension__ typedef unsigned __int128 u128;

std::int64_t ceil_div(std::uint64_t num, std::uint64_t den) {
  return static_cast<std::int64_t>((num + den - 1) / den);
}

}  // namespace

ConditionReport check_conditions(std::size_t n, std::size_t b, std::size_t B) {
  ConditionReport report{n, b, B};
  const std::size_t rounds = ceil_log2(n);
  report.c1_holds = static_cast<u128>(b) * B >= static_cast<u128>(n) * rounds;
  report.c2_holds = static_cast<u128>(B) >= static_cast<u128>(4) * rounds;
  report.equivalence_guaranteed = report.c1_holds && report.c2_holds;
  return report;
}

LemmaTerms lemma_terms(std::uint64_t b, std::uint64_t x, std::uint64_t scale_num,
                       std::uint64_t scale_den) {
  LemmaTerms terms;
  terms.lhs = static_cast<std::int64_t>((x + 1) / 2) - 1;
  terms.divisor = static_cast<std::int64_t>(static_cast<u128>(scale_num) * b /
                                            (static_cast<u128>(scale_den) * x));
  terms.rhs = terms.divisor > 0 ? ceil_div(b - 1, static_cast<std::uint64_t>(terms.divisor))
                                : std::numeric_limits<std::int64_t>::max();
  return terms;
}

LemmaCheck check_lemma1(std::size_t b) {
  if (b < 2) throw Error(ErrorKind::InvalidConfig, "lemma needs b >= 2");
  for (std::size_t x = 3; x <= 4 * b; ++x) {
    if (!lemma_terms(b, x).holds()) return {false, x};
  }
  return {true, std::nullopt};
}

Inequality4Check check_inequality4(std::size_t n, std::size_t b, std::size_t B) {
  if (b == 0 || B == 0) throw Error(ErrorKind::InvalidConfig, "b and B must be >= 1");
  const HalvingSchedule schedule = build_schedule(n, b * B);
  const auto& rounds = schedule.rounds;
  for (std::size_t r = 0; r + 1 < rounds.size(); ++r) {
    const std::uint64_t j_now = rounds[r].pulls_per_arm;
    const std::uint64_t j_next = rounds[r + 1].pulls_per_arm;
    const auto next_size = static_cast<std::int64_t>(rounds[r + 1].active_size);
    for (std::size_t z = 1; z < b; ++z) {
      const std::int64_t lhs = next_size - ceil_div(b - z, j_next);
      const std::int64_t rhs = ceil_div(z, j_now);
      if (lhs < rhs) return {false, Inequality4Witness{r, z, lhs, rhs}};
    }
  }
  return {true, std::nullopt};
}

Rational Rational::parse(std::string_view text) {
  const auto fail = [&] {
    return Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  };
  const auto parse_uint = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw fail();
    return v;
  };
  Rational r;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    r.num = parse_uint(text.substr(0, slash));
    r.den = parse_uint(text.substr(slash + 1));
    if (r.den == 0) throw fail();
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12) throw fail();
    r.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
    r.num = (whole.empty() ? 0 : parse_uint(whole)) * r.den + parse_uint(frac);
  } else {
    r.num = parse_uint(text);
  }
  std::uint64_t a = r.num, c = r.den;
  while (c != 0) {
    const std::uint64_t tmp = a % c;
    a = c;
    c = tmp;
  }
  if (a > 1) {
    r.num /= a;
    r.den /= a;
  }
  return r;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::optional<TightnessWitness> find_tightness_counterexample(const Rational& alpha,
                                                              std::size_t b_max) {
  if (alpha.num == 0 || alpha.num >= 4 * alpha.den) {
    throw Error(ErrorKind::AlphaOutOfRange, "alpha must satisfy 0 < alpha < 4, got " + alpha.str());
  }
  for (std::size_t b = 2; b <= b_max; ++b) {
    const auto x_max = static_cast<std::size_t>(static_cast<u128>(alpha.num) * b / alpha.den);
    for (std::size_t x = 3; x <= x_max; ++x) {
      const LemmaTerms terms = lemma_terms(b, x, alpha.num, alpha.den);
      if (terms.divisor >= 1 && !terms.holds()) return TightnessWitness{b, x, terms};
    }
  }
  return std::nullopt;
}

}  // namespace halving
