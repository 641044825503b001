#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <span>
#include <vector>

namespace halving {

// 64-bit finalizer of splitmix64. Used to derive counter-based reward draws
// and independent RNG seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Combines words into one seed; order matters.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept;

// Per-arm i.i.d. reward streams. reward(arm, j) is the reward of the j-th
// pull of `arm` (both zero-based) and depends only on (seed, arm, j), so
// algorithms that pull arms in different orders still see the same matrix.
// Immutable after construction; safe to share across threads.
class RewardSource {
 public:
  enum class Kind { Bernoulli, ExplicitMatrix };

  static RewardSource bernoulli(std::vector<double> means, std::uint64_t seed);
  // Row a holds the rewards of arm a in pull order. Values must lie in [0, 1].
  static RewardSource explicit_matrix(std::vector<std::vector<double>> rows);
  // CSV: one row per arm, one column per pull index. Rows may differ in length.
  static RewardSource matrix_from_csv(std::istream& in);
  static RewardSource matrix_from_csv(const std::filesystem::path& path);

  Kind kind() const noexcept { return kind_; }
  std::size_t arms() const noexcept;
  std::uint64_t seed() const noexcept { return seed_; }
  // Bernoulli parameters, or the row averages of an explicit matrix.
  std::span<const double> means() const noexcept { return means_; }

  // Throws Error(IndexOutOfRange) for a bad arm and Error(MatrixExhausted)
  // when an explicit row has no entry j.
  double reward(std::size_t arm, std::size_t pull_index) const;

 private:
  RewardSource() = default;

  Kind kind_ = Kind::Bernoulli;
  std::uint64_t seed_ = 0;
  std::vector<double> means_;
  std::shared_ptr<const std::vector<std::vector<double>>> rows_;
};

}  // namespace halving
