#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bigs/acs.hpp"
#include "bigs/big.hpp"
#include "bigs/design.hpp"
#include "bigs/rational.hpp"

namespace bigs {

/// MeanPerUnit divides totals by |F|.
enum class Scale { Total, MeanPerUnit };

Scale parse_scale(std::string_view text);  // "total" or "mean"
std::string scale_name(Scale s);
/// theta on the requested scale.
Rational scaled_target(const Big& b, Scale s);

/// Weights omega_ik for the HH-type estimator.
class WeightScheme {
 public:
  enum class Kind { EqualShare, InvAlpha, Custom };
  struct Entry {
    std::string unit;
    std::string motif;
    Rational weight;
  };

  /// omega_ik = 1/|beta_k|.
  static WeightScheme equal_share() { return WeightScheme(Kind::EqualShare); }
  /// omega_ik = |alpha_i|^-1 / sum_{j in beta_k} |alpha_j|^-1, with alpha taken
  /// from the BIG the scheme is resolved against.
  static WeightScheme inv_alpha() { return WeightScheme(Kind::InvAlpha); }
  static WeightScheme custom(std::vector<Entry> entries);
  /// "equal" / "equal_share" / "inv_alpha".
  static WeightScheme parse(std::string_view text);
  /// Lines "unit motif weight"; units not listed for a motif get weight 0.
  static WeightScheme load(std::istream& in);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  /// Weights for every motif, aligned with beta(k). Throws ConstraintError
  /// when a row does not sum to exactly 1 or a weight sits outside beta_k.
  std::vector<std::vector<Rational>> resolve(const Big& b) const;

 private:
  explicit WeightScheme(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::vector<Entry> entries_;
};

struct EstimateTerm {
  std::string label;  // motif for HT, frame unit for HH
  Rational value;     // y_k or z_i
  Rational probability;
};

struct EstimatorReport {
  std::string estimator;
  Scale scale = Scale::Total;
  Rational estimate;
  std::vector<EstimateTerm> terms;
};

/// An estimator bound to a BIG and design, evaluated per initial sample.
/// Implementations keep references to their inputs and are safe to call
/// concurrently.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual Scale scale() const = 0;
  virtual EstimatorReport evaluate(std::span<const std::size_t> s0) const = 0;
  virtual Rational estimate(std::span<const std::size_t> s0) const { return evaluate(s0).estimate; }
};

/// theta_y = sum_{k in Omega_s} y_k / pi_(k).
class HtStrategy final : public Strategy {
 public:
  HtStrategy(const Big& b, const Design& d, Scale scale = Scale::Total);
  std::string name() const override { return "ht"; }
  Scale scale() const override { return scale_; }
  EstimatorReport evaluate(std::span<const std::size_t> s0) const override;
  Rational estimate(std::span<const std::size_t> s0) const override;
  const std::vector<Rational>& motif_probabilities() const noexcept { return pi_; }

 private:
  const Big* b_;
  Scale scale_;
  std::vector<Rational> pi_;
};

/// theta_z = sum_{i in s0} z_i / pi_i with z_i = sum_{k in alpha_i} omega_ik y_k.
class HhStrategy final : public Strategy {
 public:
  HhStrategy(const Big& b, const Design& d, const WeightScheme& w, Scale scale = Scale::Total);
  std::string name() const override { return name_; }
  Scale scale() const override { return scale_; }
  EstimatorReport evaluate(std::span<const std::size_t> s0) const override;
  Rational estimate(std::span<const std::size_t> s0) const override;
  const std::vector<Rational>& z() const noexcept { return z_; }

 private:
  const Big* b_;
  Scale scale_;
  std::string name_;
  std::vector<Rational> z_;
  std::vector<Rational> pi_;
};

/// Modified HT for ACS: an above-threshold grid counts with the inclusion
/// probability of its network; a below-threshold grid counts only when it
/// was selected in s0, with its design inclusion probability.
class AcsModifiedHtStrategy final : public Strategy {
 public:
  AcsModifiedHtStrategy(const AcsPopulation& pop, const Design& d, Scale scale = Scale::Total);
  std::string name() const override { return "modified_ht"; }
  Scale scale() const override { return scale_; }
  EstimatorReport evaluate(std::span<const std::size_t> s0) const override;

 private:
  const AcsPopulation* pop_;
  Scale scale_;
  std::vector<Rational> pi_;  // per grid, the probability used when eligible
};

/// Averages `base` over all initial samples that yield the same Omega_s in
/// the governing BIG, weighted by p(s0). Enumerates the design once.
class RaoBlackwellStrategy final : public Strategy {
 public:
  RaoBlackwellStrategy(const Strategy& base, const Big& governing, const Design& d,
                       std::uint64_t cap = kDefaultEnumerationCap);
  std::string name() const override { return "rb_" + base_->name(); }
  Scale scale() const override { return base_->scale(); }
  EstimatorReport evaluate(std::span<const std::size_t> s0) const override;
  Rational estimate(std::span<const std::size_t> s0) const override;
  Rational estimate_for(const std::vector<std::size_t>& omega) const;

 private:
  const Strategy* base_;
  const Big* governing_;
  std::map<std::vector<std::size_t>, Rational> by_omega_;
};

EstimatorReport ht_estimate(const SampleBig& sb, const Design& d, const Big& b,
                            Scale scale = Scale::Total);
EstimatorReport hh_estimate(const SampleBig& sb, const Design& d, const Big& b,
                            const WeightScheme& w, Scale scale = Scale::Total);
/// Modified HT over an ACS observation; above-threshold grids take pi_(k)
/// from `b` (any ACS BIG: their ancestors are their network).
EstimatorReport modified_ht_acs(const AcsObservation& obs, const Design& d, const Big& b,
                                Scale scale = Scale::Total);
EstimatorReport rao_blackwellize(const Strategy& base, const Design& d, const Big& governing,
                                 const SampleBig& observed);

/// Delta_kl of the variance difference V(theta_z) - V(theta_y) =
/// sum_kl Delta_kl y_k y_l.
class DeltaMatrix {
 public:
  explicit DeltaMatrix(std::size_t size) : size_(size), entries_(size * size) {}
  std::size_t size() const noexcept { return size_; }
  const Rational& operator()(std::size_t k, std::size_t l) const { return entries_[k * size_ + l]; }
  Rational& operator()(std::size_t k, std::size_t l) { return entries_[k * size_ + l]; }
  Rational quadratic_form(std::span<const Rational> y) const;

 private:
  std::size_t size_;
  std::vector<Rational> entries_;
};

/// General form from pi_i, pi_ij and pi_(kl). Throws ConstraintError when
/// some pi_(kl) is zero.
DeltaMatrix delta_matrix(const Big& b, const Design& d, const WeightScheme& w);
/// Closed form under SRSWOR(N, n).
DeltaMatrix delta_matrix_srswor(const Big& b, std::size_t N, std::size_t n, const WeightScheme& w);
/// Closed form under SRSWOR with equal-share weights, from m_k, m_l, m_kl.
DeltaMatrix delta_matrix_equal_share(const Big& b, std::size_t N, std::size_t n);

struct ExactMoments {
  Rational expectation;
  Rational variance;  // probability-weighted second central moment
  Rational mse;
};

struct SampleEstimate {
  std::vector<std::size_t> s0;
  Rational probability;
  Rational estimate;
};

ExactMoments exact_moments(const Strategy& s, const Design& d, const Rational& theta,
                           std::vector<SampleEstimate>* per_sample = nullptr,
                           std::uint64_t cap = kDefaultEnumerationCap);

struct MonteCarloMoments {
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  double mean = 0, mean_se = 0;
  double variance = 0, variance_se = 0;
  double mse = 0, mse_se = 0;
};

/// Replicates run in blocks; block b draws from an mt19937_64 seeded with
/// seed_seq{seed, b}, so results do not depend on the thread count.
MonteCarloMoments monte_carlo_moments(const Strategy& s, const Design& d, double theta,
                                      std::uint64_t replicates, std::uint64_t seed,
                                      unsigned threads = 0);

}  // namespace bigs
