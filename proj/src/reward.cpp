#include "halving/reward.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <string>
#include <string_view>

#include "halving/error.hpp"

namespace halving {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w));
  return h;
}

RewardSource RewardSource::bernoulli(std::vector<double> means, std::uint64_t seed) {
  if (means.empty()) throw Error(ErrorKind::InvalidArmCount, "no arms");
  for (double m : means) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw Error(ErrorKind::InvalidRange, "Bernoulli mean outside [0,1]: " + std::to_string(m));
    }
  }
  RewardSource source;
  source.kind_ = Kind::Bernoulli;
  source.seed_ = seed;
  source.means_ = std::move(means);
  return source;
}

RewardSource RewardSource::explicit_matrix(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw Error(ErrorKind::InvalidArmCount, "no arms");
  RewardSource source;
  source.kind_ = Kind::ExplicitMatrix;
  source.means_.reserve(rows.size());
  for (const auto& row : rows) {
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::InvalidRange, "matrix reward outside [0,1]: " + std::to_string(v));
      }
    }
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    source.means_.push_back(row.empty() ? 0.0 : total / static_cast<double>(row.size()));
  }
  source.rows_ = std::make_shared<const std::vector<std::vector<double>>>(std::move(rows));
  return source;
}

namespace {

double parse_cell(std::string_view cell, std::size_t line_no) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
    cell.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": bad number '" + std::string(cell) + "'");
  }
  return value;
}

}  // namespace

RewardSource RewardSource::matrix_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      row.push_back(parse_cell(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  return explicit_matrix(std::move(rows));
}

RewardSource RewardSource::matrix_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  return matrix_from_csv(in);
}

std::size_t RewardSource::arms() const noexcept { return means_.size(); }

double RewardSource::reward(std::size_t arm, std::size_t pull_index) const {
  if (arm >= means_.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "arm " + std::to_string(arm) + " of " +
                                                std::to_string(means_.size()));
  }
  if (kind_ == Kind::ExplicitMatrix) {
    const auto& row = (*rows_)[arm];
    if (pull_index >= row.size()) {
      throw Error(ErrorKind::MatrixExhausted, "arm " + std::to_string(arm) + " has no pull " +
                                                  std::to_string(pull_index));
    }
    return row[pull_index];
  }
  const std::uint64_t bits = mix64(mix64(seed_ ^ mix64(arm)) + pull_index);
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return u < means_[arm] ? 1.0 : 0.0;
}

}  // namespace halving
