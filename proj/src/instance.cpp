#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "halving/error.hpp"
#include "halving/experiments.hpp"

namespace halving {

ProblemInstance make_instance(std::size_t n, double alpha, double mu_min, double mu_max) {
  if (n < 2) throw Error(ErrorKind::InvalidRange, "instance needs n >= 2");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidRange, "alpha must be positive");
  }
  if (!(mu_min > 0.0 && mu_min < mu_max && mu_max < 1.0)) {
    throw Error(ErrorKind::InvalidRange, "need 0 < mu_min < mu_max < 1");
  }
  ProblemInstance inst{n, alpha, mu_min, mu_max, {}};
  inst.means.resize(n);
  const double span = mu_max - mu_min;
  const double last = static_cast<double>(n - 1);
  for (std::size_t a = 0; a < n; ++a) {
    const double mu = mu_max - span * std::pow(static_cast<double>(a) / last, alpha);
    inst.means[a] = std::clamp(mu, mu_min, mu_max);
  }
  inst.means.back() = mu_min;
  return inst;
}

ProblemInstance parse_instance(std::string_view text) {
  double values[4] = {};
  std::string_view rest = text;
  for (int i = 0; i < 4; ++i) {
    const auto comma = rest.find(',');
    if ((i < 3) != (comma != std::string_view::npos)) {
      throw Error(ErrorKind::ParseError, "instance must be n,alpha,mu_min,mu_max");
    }
    const std::string_view field = rest.substr(0, comma);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), values[i]);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw Error(ErrorKind::ParseError, "bad instance field '" + std::string(field) + "'");
    }
    if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
  }
  if (values[0] < 2 || values[0] != std::floor(values[0])) {
    throw Error(ErrorKind::InvalidRange, "instance n must be an integer >= 2");
  }
  return make_instance(static_cast<std::size_t>(values[0]), values[1], values[2], values[3]);
}

}  // namespace halving
