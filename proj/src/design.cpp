#include "bigs/design.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bigs/errors.hpp"

namespace bigs {

namespace {

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> units) {
  std::vector<std::size_t> v(units.begin(), units.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

}  // namespace

Design Design::srswor(std::size_t frame_size, std::size_t sample_size) {
  if (frame_size == 0) throw ArgumentError("SRSWOR needs a nonempty frame");
  if (sample_size == 0 || sample_size > frame_size)
    throw ArgumentError("SRSWOR sample size must be in 1.." + std::to_string(frame_size));
  return Design(Kind::Srswor, frame_size, sample_size);
}

Design Design::enumerated(std::size_t frame_size, std::vector<WeightedSample> support) {
  if (support.empty()) throw ArgumentError("enumerated design has no support points");
  Design d(Kind::Enumerated, frame_size, 0);
  Rational total = 0;
  std::set<std::vector<std::size_t>> seen;
  for (auto& s : support) {
    std::sort(s.units.begin(), s.units.end());
    if (std::adjacent_find(s.units.begin(), s.units.end()) != s.units.end())
      throw ArgumentError("support point repeats a unit");
    if (!s.units.empty() && s.units.back() >= frame_size)
      throw ArgumentError("support point unit out of range");
    if (s.probability < 0) throw ArgumentError("negative support probability");
    if (!seen.insert(s.units).second) throw ArgumentError("support point listed twice");
    total += s.probability;
  }
  if (total != 1)
    throw ArgumentError("support probabilities sum to " + to_exact_string(total) + ", not 1");
  double running = 0;
  for (const auto& s : support) {
    running += to_double(s.probability);
    d.cumulative_.push_back(running);
  }
  d.support_ = std::move(support);
  return d;
}

std::string Design::describe() const {
  if (kind_ == Kind::Srswor)
    return "srswor(N=" + std::to_string(N_) + ",n=" + std::to_string(n_) + ")";
  return "enumerated(N=" + std::to_string(N_) + ",points=" + std::to_string(support_.size()) + ")";
}

void Design::check_units(std::span<const std::size_t> units) const {
  for (std::size_t i : units)
    if (i >= N_) throw ArgumentError("unit " + std::to_string(i) + " is outside the frame");
}

Rational Design::exclusion_probability(std::span<const std::size_t> units) const {
  check_units(units);
  const auto set = sorted_unique(units);
  if (kind_ == Kind::Srswor) return Rational(binomial(N_ - set.size(), n_), binomial(N_, n_));
  Rational p = 0;
  for (const auto& s : support_)
    if (disjoint(s.units, set)) p += s.probability;
  return p;
}

Rational Design::inclusion_probability(std::size_t i) const {
  const std::size_t u[] = {i};
  check_units(u);
  if (kind_ == Kind::Srswor) return Rational(n_, N_);
  return 1 - exclusion_probability(u);
}

Rational Design::joint_inclusion_probability(std::size_t i, std::size_t j) const {
  if (i == j) return inclusion_probability(i);
  const std::size_t u[] = {i, j};
  check_units(u);
  if (kind_ == Kind::Srswor) {
    if (N_ < 2) return 0;
    return Rational(BigInt(n_) * (n_ - 1), BigInt(N_) * (N_ - 1));
  }
  Rational p = 0;
  for (const auto& s : support_)
    if (std::binary_search(s.units.begin(), s.units.end(), i) &&
        std::binary_search(s.units.begin(), s.units.end(), j))
      p += s.probability;
  return p;
}

BigInt Design::support_size() const {
  if (kind_ == Kind::Srswor) return binomial(N_, n_);
  return BigInt(support_.size());
}

std::vector<std::size_t> Design::draw(std::mt19937_64& rng) const {
  if (kind_ == Kind::Srswor) {
    // Partial Fisher-Yates.
    std::vector<std::size_t> pool(N_);
    for (std::size_t i = 0; i < N_; ++i) pool[i] = i;
    for (std::size_t a = 0; a < n_; ++a) {
      std::uniform_int_distribution<std::size_t> pick(a, N_ - 1);
      std::swap(pool[a], pool[pick(rng)]);
    }
    pool.resize(n_);
    std::sort(pool.begin(), pool.end());
    return pool;
  }
  std::uniform_real_distribution<double> u(0.0, cumulative_.back());
  const double x = u(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  if (it == cumulative_.end()) --it;
  return support_[static_cast<std::size_t>(it - cumulative_.begin())].units;
}

void for_each_sample(const Design& d, const std::function<void(const WeightedSample&)>& visit,
                     std::uint64_t cap) {
  if (d.support_size() > cap)
    throw EnumerationCapError("design " + d.describe() + " has " +
                              d.support_size().str() + " support points, above the cap of " +
                              std::to_string(cap) + "; use Monte Carlo simulation instead");
  if (d.kind() == Design::Kind::Enumerated) {
    for (const auto& s : d.support()) visit(s);
    return;
  }
  const std::size_t N = d.frame_size();
  const std::size_t n = d.sample_size();
  WeightedSample s{std::vector<std::size_t>(n), Rational(1, binomial(N, n))};
  for (std::size_t a = 0; a < n; ++a) s.units[a] = a;
  while (true) {
    visit(s);
    std::size_t pos = n;
    while (pos > 0 && s.units[pos - 1] == N - n + pos - 1) --pos;
    if (pos == 0) break;
    ++s.units[pos - 1];
    for (std::size_t a = pos; a < n; ++a) s.units[a] = s.units[a - 1] + 1;
  }
}

std::vector<WeightedSample> enumerate_design(const Design& d, std::uint64_t cap) {
  std::vector<WeightedSample> out;
  for_each_sample(d, [&](const WeightedSample& s) { out.push_back(s); }, cap);
  return out;
}

Design load_enumerated_design(std::istream& in, std::span<const std::string> frame) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < frame.size(); ++i) index.emplace(frame[i], i);

  std::vector<WeightedSample> support;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected 'p: unit unit ...'");
    WeightedSample s;
    std::string p = line.substr(0, colon);
    p.erase(0, p.find_first_not_of(" \t"));
    p.erase(p.find_last_not_of(" \t\r") + 1);
    try {
      s.probability = parse_rational(p);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad probability '" + p + "'");
    }
    std::istringstream fields(line.substr(colon + 1));
    for (std::string label; fields >> label;) {
      auto it = index.find(label);
      if (it == index.end()) throw ParseError(line_no, "unknown frame unit '" + label + "'");
      s.units.push_back(it->second);
    }
    support.push_back(std::move(s));
  }
  try {
    return Design::enumerated(frame.size(), std::move(support));
  } catch (const ArgumentError& e) {
    throw ParseError(0, e.what());
  }
}

Rational first_order_inclusion(const Design& d, const Big& b, std::size_t k) {
  const auto& beta = b.beta(k);
  if (beta.empty()) throw InfeasibleError("motif '" + b.motif(k).label + "' has empty beta");
  return 1 - d.exclusion_probability(beta);
}

Rational second_order_inclusion(const Design& d, const Big& b, std::size_t k, std::size_t l) {
  const auto& bk = b.beta(k);
  const auto& bl = b.beta(l);
  if (bk.empty() || bl.empty()) throw InfeasibleError("empty beta in pairwise inclusion");
  std::vector<std::size_t> both(bk.begin(), bk.end());
  both.insert(both.end(), bl.begin(), bl.end());
  return 1 - (d.exclusion_probability(bk) + d.exclusion_probability(bl) -
              d.exclusion_probability(both));
}

SampleBig realize_sample_big(const Big& b, std::span<const std::size_t> s0) {
  SampleBig sb;
  sb.s0 = sorted_unique(s0);
  for (std::size_t i : sb.s0) {
    if (i >= b.frame_size()) throw ArgumentError("initial unit outside the frame");
    for (std::size_t k : b.alpha(i)) {
      sb.omega.push_back(k);
      sb.edges.emplace_back(i, k);
    }
  }
  sb.omega = sorted_unique(sb.omega);
  std::vector<std::size_t> ancestors;
  for (std::size_t k : sb.omega)
    for (std::size_t j : b.beta(k))
      if (!std::binary_search(sb.s0.begin(), sb.s0.end(), j)) ancestors.push_back(j);
  sb.out_ancestors = sorted_unique(ancestors);
  return sb;
}

}  // namespace bigs
