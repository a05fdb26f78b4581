#include "bigs/estimator.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bigs/errors.hpp"

namespace bigs {

namespace {

Rational apply_scale(const Rational& total, Scale scale, std::size_t frame_size) {
  if (scale == Scale::Total) return total;
  return total / Rational(frame_size);
}

std::string lower(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '-') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

Scale parse_scale(std::string_view text) {
  const std::string s = lower(text);
  if (s == "total") return Scale::Total;
  if (s == "mean" || s == "mean_per_unit") return Scale::MeanPerUnit;
  throw ArgumentError("unknown scale '" + std::string(text) + "' (expected total or mean)");
}

std::string scale_name(Scale s) { return s == Scale::Total ? "total" : "mean"; }

Rational scaled_target(const Big& b, Scale s) { return apply_scale(b.theta(), s, b.frame_size()); }

WeightScheme WeightScheme::custom(std::vector<Entry> entries) {
  WeightScheme w(Kind::Custom);
  w.entries_ = std::move(entries);
  return w;
}

WeightScheme WeightScheme::parse(std::string_view text) {
  const std::string s = lower(text);
  if (s == "equal" || s == "equal_share") return equal_share();
  if (s == "inv_alpha") return inv_alpha();
  throw ArgumentError("unknown weight scheme '" + std::string(text) +
                      "' (expected equal, inv_alpha or a weights file)");
}

WeightScheme WeightScheme::load(std::istream& in) {
  std::vector<Entry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;
    if (tok.size() != 3) throw ParseError(line_no, "expected '<unit> <motif> <weight>'");
    try {
      entries.push_back(Entry{tok[0], tok[1], parse_rational(tok[2])});
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad weight '" + tok[2] + "'");
    }
  }
  return custom(std::move(entries));
}

std::string WeightScheme::name() const {
  switch (kind_) {
    case Kind::EqualShare:
      return "equal";
    case Kind::InvAlpha:
      return "inv_alpha";
    case Kind::Custom:
      return "custom";
  }
  return "?";
}

std::vector<std::vector<Rational>> WeightScheme::resolve(const Big& b) const {
  std::vector<std::vector<Rational>> w(b.motif_count());
  for (std::size_t k = 0; k < b.motif_count(); ++k) {
    const auto& beta = b.beta(k);
    w[k].assign(beta.size(), Rational(0));
    if (kind_ == Kind::EqualShare) {
      for (auto& x : w[k]) x = Rational(1, beta.size());
    } else if (kind_ == Kind::InvAlpha) {
      Rational norm = 0;
      for (std::size_t i : beta) norm += Rational(1, b.alpha(i).size());
      for (std::size_t a = 0; a < beta.size(); ++a)
        w[k][a] = Rational(1, b.alpha(beta[a]).size()) / norm;
    }
  }
  if (kind_ == Kind::Custom) {
    for (const auto& e : entries_) {
      const auto i = b.find_unit(e.unit);
      const auto k = b.find_motif(e.motif);
      if (!i) throw ConstraintError("weight for unknown unit '" + e.unit + "'");
      if (!k) throw ConstraintError("weight for unknown motif '" + e.motif + "'");
      const auto& beta = b.beta(*k);
      auto it = std::lower_bound(beta.begin(), beta.end(), *i);
      if (it == beta.end() || *it != *i) {
        if (e.weight != 0)
          throw ConstraintError("weight on unit '" + e.unit + "' outside beta of motif '" +
                                e.motif + "'");
        continue;
      }
      w[*k][static_cast<std::size_t>(it - beta.begin())] += e.weight;
    }
  }
  for (std::size_t k = 0; k < b.motif_count(); ++k) {
    Rational sum = 0;
    for (const auto& x : w[k]) sum += x;
    if (sum != 1)
      throw ConstraintError("weights of motif '" + b.motif(k).label + "' sum to " +
                            to_exact_string(sum) + ", not 1");
  }
  return w;
}

HtStrategy::HtStrategy(const Big& b, const Design& d, Scale scale) : b_(&b), scale_(scale) {
  if (d.frame_size() != b.frame_size())
    throw ArgumentError("design frame size differs from the BIG frame size");
  pi_.reserve(b.motif_count());
  for (std::size_t k = 0; k < b.motif_count(); ++k) pi_.push_back(first_order_inclusion(d, b, k));
}

Rational HtStrategy::estimate(std::span<const std::size_t> s0) const {
  const SampleBig sb = realize_sample_big(*b_, s0);
  Rational total = 0;
  for (std::size_t k : sb.omega) total += b_->motif(k).y / pi_[k];
  return apply_scale(total, scale_, b_->frame_size());
}

EstimatorReport HtStrategy::evaluate(std::span<const std::size_t> s0) const {
  const SampleBig sb = realize_sample_big(*b_, s0);
  EstimatorReport r{name(), scale_, 0, {}};
  Rational total = 0;
  for (std::size_t k : sb.omega) {
    total += b_->motif(k).y / pi_[k];
    r.terms.push_back(EstimateTerm{b_->motif(k).label, b_->motif(k).y, pi_[k]});
  }
  r.estimate = apply_scale(total, scale_, b_->frame_size());
  return r;
}

HhStrategy::HhStrategy(const Big& b, const Design& d, const WeightScheme& w, Scale scale)
    : b_(&b), scale_(scale), name_("hh_" + w.name()), z_(b.frame_size()), pi_(b.frame_size()) {
  if (d.frame_size() != b.frame_size())
    throw ArgumentError("design frame size differs from the BIG frame size");
  const auto weights = w.resolve(b);
  for (std::size_t k = 0; k < b.motif_count(); ++k) {
    const auto& beta = b.beta(k);
    for (std::size_t a = 0; a < beta.size(); ++a) z_[beta[a]] += weights[k][a] * b.motif(k).y;
  }
  for (std::size_t i = 0; i < b.frame_size(); ++i) pi_[i] = d.inclusion_probability(i);
}

Rational HhStrategy::estimate(std::span<const std::size_t> s0) const {
  Rational total = 0;
  for (std::size_t i : s0) {
    if (pi_.at(i) == 0) throw ConstraintError("unit with zero inclusion probability in s0");
    total += z_[i] / pi_[i];
  }
  return apply_scale(total, scale_, b_->frame_size());
}

EstimatorReport HhStrategy::evaluate(std::span<const std::size_t> s0) const {
  EstimatorReport r{name(), scale_, estimate(s0), {}};
  std::vector<std::size_t> units(s0.begin(), s0.end());
  std::sort(units.begin(), units.end());
  for (std::size_t i : units) r.terms.push_back(EstimateTerm{b_->unit(i), z_[i], pi_[i]});
  return r;
}

AcsModifiedHtStrategy::AcsModifiedHtStrategy(const AcsPopulation& pop, const Design& d,
                                             Scale scale)
    : pop_(&pop), scale_(scale) {
  const AcsStructure acs(pop);
  if (d.frame_size() != acs.size())
    throw ArgumentError("design frame size differs from the number of grids");
  pi_.resize(acs.size());
  std::vector<Rational> network_pi;
  for (const auto& net : acs.networks()) network_pi.push_back(1 - d.exclusion_probability(net));
  for (NodeIndex i = 0; i < acs.size(); ++i)
    pi_[i] = acs.above(i) ? network_pi[static_cast<std::size_t>(acs.network_of(i))]
                          : d.inclusion_probability(i);
}

EstimatorReport AcsModifiedHtStrategy::evaluate(std::span<const std::size_t> s0) const {
  const AcsObservation obs = acs_sample(*pop_, s0);
  EstimatorReport r{name(), scale_, 0, {}};
  Rational total = 0;
  for (NodeIndex i : obs.observed_grids()) {
    if (!obs.above[i] && obs.entry[i] != AcsEntry::Direct) continue;
    total += pop_->y[i] / pi_[i];
    r.terms.push_back(EstimateTerm{pop_->grid.label(i), pop_->y[i], pi_[i]});
  }
  r.estimate = apply_scale(total, scale_, obs.entry.size());
  return r;
}

RaoBlackwellStrategy::RaoBlackwellStrategy(const Strategy& base, const Big& governing,
                                           const Design& d, std::uint64_t cap)
    : base_(&base), governing_(&governing) {
  std::map<std::vector<std::size_t>, std::pair<Rational, Rational>> sums;
  for_each_sample(
      d,
      [&](const WeightedSample& s) {
        auto& [weighted, mass] = sums[realize_sample_big(governing, s.units).omega];
        weighted += s.probability * base.estimate(s.units);
        mass += s.probability;
      },
      cap);
  for (auto& [omega, acc] : sums)
    if (acc.second != 0) by_omega_.emplace(omega, acc.first / acc.second);
}

Rational RaoBlackwellStrategy::estimate_for(const std::vector<std::size_t>& omega) const {
  auto it = by_omega_.find(omega);
  if (it == by_omega_.end())
    throw ArgumentError("observed sample has zero probability under the design");
  return it->second;
}

Rational RaoBlackwellStrategy::estimate(std::span<const std::size_t> s0) const {
  return estimate_for(realize_sample_big(*governing_, s0).omega);
}

EstimatorReport RaoBlackwellStrategy::evaluate(std::span<const std::size_t> s0) const {
  return EstimatorReport{name(), scale(), estimate(s0), {}};
}

EstimatorReport ht_estimate(const SampleBig& sb, const Design& d, const Big& b, Scale scale) {
  EstimatorReport r{"ht", scale, 0, {}};
  Rational total = 0;
  for (std::size_t k : sb.omega) {
    const Rational pi = first_order_inclusion(d, b, k);
    total += b.motif(k).y / pi;
    r.terms.push_back(EstimateTerm{b.motif(k).label, b.motif(k).y, pi});
  }
  r.estimate = apply_scale(total, scale, b.frame_size());
  return r;
}

EstimatorReport hh_estimate(const SampleBig& sb, const Design& d, const Big& b,
                            const WeightScheme& w, Scale scale) {
  return HhStrategy(b, d, w, scale).evaluate(sb.s0);
}

EstimatorReport modified_ht_acs(const AcsObservation& obs, const Design& d, const Big& b,
                                Scale scale) {
  if (obs.entry.size() != b.frame_size() || b.motif_count() != b.frame_size())
    throw ArgumentError("ACS observation does not match the BIG");
  EstimatorReport r{"modified_ht", scale, 0, {}};
  Rational total = 0;
  for (NodeIndex i : obs.observed_grids()) {
    if (!obs.above[i] && obs.entry[i] != AcsEntry::Direct) continue;
    const Rational pi = obs.above[i] ? first_order_inclusion(d, b, i) : d.inclusion_probability(i);
    total += b.motif(i).y / pi;
    r.terms.push_back(EstimateTerm{b.motif(i).label, b.motif(i).y, pi});
  }
  r.estimate = apply_scale(total, scale, b.frame_size());
  return r;
}

EstimatorReport rao_blackwellize(const Strategy& base, const Design& d, const Big& governing,
                                 const SampleBig& observed) {
  const RaoBlackwellStrategy rb(base, governing, d);
  return EstimatorReport{rb.name(), base.scale(), rb.estimate_for(observed.omega), {}};
}

Rational DeltaMatrix::quadratic_form(std::span<const Rational> y) const {
  if (y.size() != size_) throw ArgumentError("y has the wrong length for the Delta matrix");
  Rational sum = 0;
  for (std::size_t k = 0; k < size_; ++k)
    for (std::size_t l = 0; l < size_; ++l) sum += (*this)(k, l) * y[k] * y[l];
  return sum;
}

namespace {

// pi_(kl) / (pi_(k) pi_(l)), rejecting pairs that are never observed together.
Rational ht_pair_ratio(const Design& d, const Big& b, std::size_t k, std::size_t l,
                       const std::vector<Rational>& pi_motif) {
  const Rational joint = second_order_inclusion(d, b, k, l);
  if (joint == 0)
    throw ConstraintError("motifs '" + b.motif(k).label + "' and '" + b.motif(l).label +
                          "' have zero joint inclusion probability; Delta is undefined");
  return joint / (pi_motif[k] * pi_motif[l]);
}

std::vector<Rational> motif_pis(const Design& d, const Big& b) {
  std::vector<Rational> pi;
  for (std::size_t k = 0; k < b.motif_count(); ++k) pi.push_back(first_order_inclusion(d, b, k));
  return pi;
}

}  // namespace

DeltaMatrix delta_matrix(const Big& b, const Design& d, const WeightScheme& w) {
  const auto weights = w.resolve(b);
  const std::size_t N = b.frame_size();
  std::vector<Rational> ratio(N * N);  // pi_ij / (pi_i pi_j)
  for (std::size_t i = 0; i < N; ++i) {
    const Rational pi_i = d.inclusion_probability(i);
    for (std::size_t j = i; j < N; ++j) {
      const Rational pi_j = d.inclusion_probability(j);
      ratio[i * N + j] = ratio[j * N + i] = d.joint_inclusion_probability(i, j) / (pi_i * pi_j);
    }
  }
  const auto pi_motif = motif_pis(d, b);
  DeltaMatrix delta(b.motif_count());
  for (std::size_t k = 0; k < b.motif_count(); ++k)
    for (std::size_t l = 0; l < b.motif_count(); ++l) {
      Rational sum = 0;
      const auto& bk = b.beta(k);
      const auto& bl = b.beta(l);
      for (std::size_t a = 0; a < bk.size(); ++a)
        for (std::size_t c = 0; c < bl.size(); ++c)
          sum += ratio[bk[a] * N + bl[c]] * weights[k][a] * weights[l][c];
      delta(k, l) = sum - ht_pair_ratio(d, b, k, l, pi_motif);
    }
  return delta;
}

DeltaMatrix delta_matrix_srswor(const Big& b, std::size_t N, std::size_t n, const WeightScheme& w) {
  const Design d = Design::srswor(N, n);
  const auto weights = w.resolve(b);
  const auto pi_motif = motif_pis(d, b);
  const Rational same(N, n);
  const Rational other = N > 1 ? Rational(BigInt(N) * (n - 1), BigInt(n) * (N - 1)) : Rational(0);
  DeltaMatrix delta(b.motif_count());
  for (std::size_t k = 0; k < b.motif_count(); ++k)
    for (std::size_t l = 0; l < b.motif_count(); ++l) {
      Rational shared = 0;
      Rational cross = 0;
      const auto& bk = b.beta(k);
      const auto& bl = b.beta(l);
      for (std::size_t a = 0; a < bk.size(); ++a)
        for (std::size_t c = 0; c < bl.size(); ++c) {
          const Rational term = weights[k][a] * weights[l][c];
          if (bk[a] == bl[c])
            shared += term;
          else
            cross += term;
        }
      delta(k, l) = same * shared + other * cross - ht_pair_ratio(d, b, k, l, pi_motif);
    }
  return delta;
}

DeltaMatrix delta_matrix_equal_share(const Big& b, std::size_t N, std::size_t n) {
  const Design d = Design::srswor(N, n);
  const auto pi_motif = motif_pis(d, b);
  const Rational lead = N > 1 ? Rational(BigInt(N) * N, BigInt(n) * (N - 1)) * (1 - Rational(n, N))
                              : Rational(0);
  // With N = 1 every pi ratio is 1.
  const Rational other = N > 1 ? Rational(BigInt(N) * (n - 1), BigInt(n) * (N - 1)) : Rational(1);
  DeltaMatrix delta(b.motif_count());
  for (std::size_t k = 0; k < b.motif_count(); ++k)
    for (std::size_t l = 0; l < b.motif_count(); ++l) {
      const auto& bk = b.beta(k);
      const auto& bl = b.beta(l);
      std::vector<std::size_t> common;
      std::set_intersection(bk.begin(), bk.end(), bl.begin(), bl.end(), std::back_inserter(common));
      const Rational share(common.size(), bk.size() * bl.size());
      delta(k, l) = lead * share + other - ht_pair_ratio(d, b, k, l, pi_motif);
    }
  return delta;
}

}  // namespace bigs
