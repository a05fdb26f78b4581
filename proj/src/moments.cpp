#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "bigs/errors.hpp"
#include "bigs/estimator.hpp"

namespace bigs {

ExactMoments exact_moments(const Strategy& s, const Design& d, const Rational& theta,
                           std::vector<SampleEstimate>* per_sample, std::uint64_t cap) {
  std::vector<SampleEstimate> rows;
  for_each_sample(
      d,
      [&](const WeightedSample& w) {
        rows.push_back(SampleEstimate{w.units, w.probability, s.estimate(w.units)});
      },
      cap);

  ExactMoments m;
  for (const auto& r : rows) m.expectation += r.probability * r.estimate;
  for (const auto& r : rows) {
    const Rational dev = r.estimate - m.expectation;
    const Rational err = r.estimate - theta;
    m.variance += r.probability * dev * dev;
    m.mse += r.probability * err * err;
  }
  if (per_sample) *per_sample = std::move(rows);
  return m;
}

namespace {

constexpr std::uint64_t kBlock = 4096;

double mean_of(const std::vector<double>& v) {
  double sum = 0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

MonteCarloMoments monte_carlo_moments(const Strategy& s, const Design& d, double theta,
                                      std::uint64_t replicates, std::uint64_t seed,
                                      unsigned threads) {
  if (replicates == 0) throw ArgumentError("Monte Carlo needs at least one replicate");
  const std::uint64_t blocks = (replicates + kBlock - 1) / kBlock;
  std::vector<double> values(replicates);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    try {
      for (std::uint64_t b; (b = next.fetch_add(1)) < blocks && !failed;) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(seq);
        const std::uint64_t end = std::min(replicates, (b + 1) * kBlock);
        for (std::uint64_t r = b * kBlock; r < end; ++r)
          values[r] = to_double(s.estimate(d.draw(rng)));
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const double R = static_cast<double>(replicates);
  MonteCarloMoments m;
  m.replicates = replicates;
  m.seed = seed;
  m.mean = mean_of(values);

  double m2 = 0, m4 = 0;
  std::vector<double> sq_err(values.size());
  for (std::size_t r = 0; r < values.size(); ++r) {
    const double dev = values[r] - m.mean;
    m2 += dev * dev;
    m4 += dev * dev * dev * dev;
    sq_err[r] = (values[r] - theta) * (values[r] - theta);
  }
  m2 /= R;
  m4 /= R;
  m.variance = replicates > 1 ? m2 * R / (R - 1) : 0.0;
  m.mean_se = std::sqrt(m.variance / R);
  m.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / R);

  m.mse = mean_of(sq_err);
  double mse_var = 0;
  for (double x : sq_err) mse_var += (x - m.mse) * (x - m.mse);
  m.mse_se = replicates > 1 ? std::sqrt(mse_var / (R - 1) / R) : 0.0;
  return m;
}

}  // namespace bigs
