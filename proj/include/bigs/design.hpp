#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bigs/big.hpp"
#include "bigs/rational.hpp"

namespace bigs {

struct WeightedSample {
  std::vector<std::size_t> units;  // ascending frame indices
  Rational probability;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Initial-sample distribution p(s0) over subsets of a frame of N units.
class Design {
 public:
  enum class Kind { Srswor, Enumerated };

  static Design srswor(std::size_t frame_size, std::size_t sample_size);
  /// Support points must be distinct subsets of 0..N-1 with probabilities
  /// summing to exactly 1.
  static Design enumerated(std::size_t frame_size, std::vector<WeightedSample> support);

  Kind kind() const noexcept { return kind_; }
  std::size_t frame_size() const noexcept { return N_; }
  /// n for SRSWOR; 0 for enumerated designs.
  std::size_t sample_size() const noexcept { return n_; }
  const std::vector<WeightedSample>& support() const noexcept { return support_; }
  std::string describe() const;

  /// Probability that s0 misses every unit of `units`.
  Rational exclusion_probability(std::span<const std::size_t> units) const;
  /// pi_i.
  Rational inclusion_probability(std::size_t i) const;
  /// pi_ij; equals pi_i when i == j.
  Rational joint_inclusion_probability(std::size_t i, std::size_t j) const;
  /// Number of support points, C(N, n) for SRSWOR.
  BigInt support_size() const;

  std::vector<std::size_t> draw(std::mt19937_64& rng) const;

 private:
  Design(Kind kind, std::size_t N, std::size_t n) : kind_(kind), N_(N), n_(n) {}
  void check_units(std::span<const std::size_t> units) const;

  Kind kind_;
  std::size_t N_;
  std::size_t n_;
  std::vector<WeightedSample> support_;
  std::vector<double> cumulative_;  // enumerated draws
};

/// Calls `visit` once per support point, in lexicographic order for SRSWOR.
/// Throws EnumerationCapError when the support exceeds `cap`.
void for_each_sample(const Design& d, const std::function<void(const WeightedSample&)>& visit,
                     std::uint64_t cap = kDefaultEnumerationCap);
std::vector<WeightedSample> enumerate_design(const Design& d,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// Lines "p: unit unit ..." with exact p such as "1/10". Units are matched
/// against `frame` labels.
Design load_enumerated_design(std::istream& in, std::span<const std::string> frame);

/// pi_(k) = 1 - Pr(s0 misses beta_k).
Rational first_order_inclusion(const Design& d, const Big& b, std::size_t k);
/// pi_(kl) by inclusion-exclusion over beta_k, beta_l and their union.
Rational second_order_inclusion(const Design& d, const Big& b, std::size_t k, std::size_t l);

struct SampleBig {
  std::vector<std::size_t> s0;             // ascending frame indices
  std::vector<std::size_t> omega;          // Omega_s, ascending motif indices
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // H_s
  std::vector<std::size_t> out_ancestors;  // beta(Omega_s) minus s0
};

SampleBig realize_sample_big(const Big& b, std::span<const std::size_t> s0);

}  // namespace bigs
