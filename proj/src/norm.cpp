#include "morrey/norm.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "morrey/summed_area_table.hpp"

namespace morrey {

double windowed_value(long double cardinality, long double psum, double p, double q) {
  if (psum == 0) return 0.0;
  const long double prefactor = std::pow(cardinality, 1.0L / q - 1.0L / p);
  const long double root = p == 1.0 ? psum : (p == 2.0 ? std::sqrt(psum) : std::pow(psum, 1.0L / p));
  return static_cast<double>(prefactor * root);
}

namespace {

void check_dims(const Sequence& x, const SpaceParams& params) {
  if (x.dim() != params.d()) {
    throw ValidationError("sequence has d=" + std::to_string(x.dim()) + " but the space has d=" +
                          std::to_string(params.d()));
  }
}

Rational abs_pow(const Rational& v, unsigned p) { return pow(Rational(abs(v)), p); }

long double abs_pow(double v, double p) {
  const long double a = std::fabs(static_cast<long double>(v));
  return p == 1.0 ? a : std::pow(a, static_cast<long double>(p));
}

NormValue zero_norm(const Sequence& x, const SpaceParams& params) {
  NormValue out;
  out.argmax = Window{LatticePoint::origin(x.dim()), 0};
  if (params.exact()) out.exact = ExactCertificate{BigInt(1), Rational(0), params.p_int(), params.q_int()};
  return out;
}

// Every radius that is ceil(gap / 2) for a gap between two support
// coordinates on one axis, plus 0.
template <typename T>
std::vector<std::int64_t> candidate_radii(const SummedAreaTable<T>& table) {
  std::set<std::int64_t> radii{0};
  for (int a = 0; a < table.dim(); ++a) {
    const auto& axis = table.axis(a);
    for (std::size_t i = 0; i < axis.size(); ++i) {
      for (std::size_t k = i + 1; k < axis.size(); ++k) radii.insert((axis[k] - axis[i] + 1) / 2);
    }
  }
  return {radii.begin(), radii.end()};
}

// Advances an odometer over the product of per-axis choice lists, last axis
// fastest. Returns false once every combination has been visited.
bool advance(std::vector<std::size_t>& index, const std::vector<std::vector<std::int64_t>>& choices) {
  for (int a = static_cast<int>(index.size()) - 1; a >= 0; --a) {
    if (++index[a] < choices[a].size()) return true;
    index[a] = 0;
  }
  return false;
}

template <typename T>
T mass_at_lower_corner(const SummedAreaTable<T>& table, const std::vector<std::int64_t>& lower, std::int64_t N,
                       std::vector<std::int64_t>& upper) {
  for (std::size_t a = 0; a < lower.size(); ++a) upper[a] = lower[a] + 2 * N;
  return table.box_sum(lower, upper);
}

template <typename T>
T max_mass_at_radius(const SummedAreaTable<T>& table, std::int64_t N) {
  const int d = table.dim();
  std::vector<std::vector<std::int64_t>> choices;
  for (int a = 0; a < d; ++a) choices.push_back(table.axis(a));
  std::vector<std::size_t> index(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> lower(static_cast<std::size_t>(d));
  std::vector<std::int64_t> upper(static_cast<std::size_t>(d));
  T best(0);
  do {
    for (int a = 0; a < d; ++a) lower[a] = choices[a][index[a]];
    T mass = mass_at_lower_corner(table, lower, N, upper);
    if (mass > best) best = std::move(mass);
  } while (advance(index, choices));
  return best;
}

// Lexicographically smallest center in the bounding box whose radius-N window
// carries `accept`-able mass. Mass is constant on the cells cut out by the
// breakpoints c - N and c + N + 1, so only cell lower corners are visited.
template <typename T, typename Accept>
LatticePoint smallest_center(const SummedAreaTable<T>& table, const CanonicalRange& range, std::int64_t N,
                             Accept accept) {
  const int d = table.dim();
  std::vector<std::vector<std::int64_t>> choices(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const std::int64_t lo = range.centers.lo[a];
    const std::int64_t hi = range.centers.hi[a];
    std::set<std::int64_t> points{lo};
    for (auto c : table.axis(a)) {
      for (auto m : {c - N, c + N + 1}) {
        if (m >= lo && m <= hi) points.insert(m);
      }
    }
    choices[a].assign(points.begin(), points.end());
  }
  std::vector<std::size_t> index(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> lower(static_cast<std::size_t>(d));
  std::vector<std::int64_t> upper(static_cast<std::size_t>(d));
  do {
    for (int a = 0; a < d; ++a) {
      lower[a] = choices[a][index[a]] - N;
      upper[a] = choices[a][index[a]] + N;
    }
    if (accept(table.box_sum(lower, upper))) {
      std::vector<std::int64_t> m(static_cast<std::size_t>(d));
      for (int a = 0; a < d; ++a) m[a] = choices[a][index[a]];
      return LatticePoint(std::move(m));
    }
  } while (advance(index, choices));
  throw std::logic_error("no center attains the maximal mass");
}

NormValue exact_norm_value(const Sequence& x, const SpaceParams& params, const NormLimits& limits) {
  const unsigned p = params.p_int();
  const unsigned q = params.q_int();
  const int d = x.dim();

  std::vector<std::pair<LatticePoint, Rational>> powered;
  BigInt denominator = 1;
  for (const auto& [k, v] : x.entries()) {
    powered.emplace_back(k, abs_pow(v.exact(), p));
    denominator = boost::multiprecision::lcm(denominator, BigInt(boost::multiprecision::denominator(powered.back().second)));
  }
  std::vector<std::pair<LatticePoint, BigInt>> masses;
  masses.reserve(powered.size());
  for (auto& [k, r] : powered) {
    masses.emplace_back(k, BigInt(boost::multiprecision::numerator(r) * (denominator / boost::multiprecision::denominator(r))));
  }
  const SummedAreaTable<BigInt> table(d, masses, limits.max_table_cells);

  // Value^{pq} is proportional to mass^q / (2N+1)^{d(q-p)}.
  const unsigned shrink_exponent = static_cast<unsigned>(d) * (q - p);
  std::int64_t best_radius = 0;
  BigInt best_mass = 0;
  BigInt best_weighted_mass = 0;  // best_mass^q
  BigInt best_side_power = 1;      // (2 best_radius + 1)^{d(q-p)}
  for (std::int64_t N : candidate_radii(table)) {
    BigInt mass = max_mass_at_radius(table, N);
    BigInt weighted = pow(mass, q);
    BigInt side_power = pow(BigInt(2 * N + 1), shrink_exponent);
    if (weighted * best_side_power > best_weighted_mass * side_power) {
      best_radius = N;
      best_mass = std::move(mass);
      best_weighted_mass = std::move(weighted);
      best_side_power = std::move(side_power);
    }
  }

  const CanonicalRange range = canonical_range(x);
  LatticePoint center =
      smallest_center(table, range, best_radius, [&](const BigInt& mass) { return mass == best_mass; });

  ExactCertificate cert{window_cardinality(best_radius, d), Rational(best_mass, denominator), p, q};
  NormValue out;
  out.float_value = windowed_value(cert.cardinality.convert_to<long double>(), cert.psum.convert_to<long double>(),
                                   static_cast<double>(p), static_cast<double>(q));
  out.exact = std::move(cert);
  out.argmax = Window{std::move(center), best_radius};
  return out;
}

NormValue float_norm_value(const Sequence& x, const SpaceParams& params, const NormLimits& limits) {
  const double p = params.p_double();
  const double q = params.q_double();
  const int d = x.dim();

  std::vector<std::pair<LatticePoint, long double>> masses;
  masses.reserve(x.support_size());
  for (const auto& [k, v] : x.entries()) masses.emplace_back(k, abs_pow(v.approx(), p));
  const SummedAreaTable<long double> table(d, masses, limits.max_table_cells);

  std::int64_t best_radius = 0;
  long double best_mass = 0;
  double best_value = -1.0;
  for (std::int64_t N : candidate_radii(table)) {
    const long double mass = max_mass_at_radius(table, N);
    const double value = windowed_value(std::pow(2.0L * N + 1, d), mass, p, q);
    if (value > best_value) {
      best_radius = N;
      best_mass = mass;
      best_value = value;
    }
  }

  const CanonicalRange range = canonical_range(x);
  const long double threshold = best_mass * (1.0L - 1e-12L);
  LatticePoint center =
      smallest_center(table, range, best_radius, [&](long double mass) { return mass >= threshold; });

  NormValue out;
  out.float_value = best_value;
  out.argmax = Window{std::move(center), best_radius};
  return out;
}

}  // namespace

NormValue morrey_norm(const Sequence& x, const SpaceParams& params, const NormLimits& limits) {
  check_dims(x, params);
  if (x.support_size() > limits.max_support) {
    throw ValidationError("support size " + std::to_string(x.support_size()) + " exceeds the limit of " +
                          std::to_string(limits.max_support));
  }
  if (x.is_zero()) return zero_norm(x, params);
  return params.exact() ? exact_norm_value(x, params, limits) : float_norm_value(x, params, limits);
}

CanonicalRange canonical_range(const Sequence& x) {
  const int d = x.dim();
  if (x.is_zero()) return {{LatticePoint::origin(d), LatticePoint::origin(d)}, 0};
  std::vector<std::int64_t> lo(x.entries().begin()->first.coords().begin(), x.entries().begin()->first.coords().end());
  std::vector<std::int64_t> hi = lo;
  for (const auto& [k, v] : x.entries()) {
    for (int a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], k[a]);
      hi[a] = std::max(hi[a], k[a]);
    }
  }
  std::int64_t span = 0;
  for (int a = 0; a < d; ++a) span = std::max(span, hi[a] - lo[a]);
  return {{LatticePoint(lo), LatticePoint(hi)}, (span + 1) / 2};
}

NormValue morrey_norm_bruteforce(const Sequence& x, const SpaceParams& params, const CenterBox& centers,
                                 std::int64_t max_radius) {
  check_dims(x, params);
  if (x.is_zero()) return zero_norm(x, params);
  const int d = x.dim();
  if (centers.lo.dim() != d || centers.hi.dim() != d) throw ValidationError("center box dimension mismatch");
  for (int a = 0; a < d; ++a) {
    if (centers.lo[a] > centers.hi[a]) throw ValidationError("empty center box");
  }
  if (max_radius < 0) throw ValidationError("max radius must be nonnegative");

  std::vector<std::vector<std::int64_t>> choices(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    for (std::int64_t m = centers.lo[a]; m <= centers.hi[a]; ++m) choices[a].push_back(m);
  }

  NormValue best;
  bool have_best = false;
  std::optional<Rational> best_power;  // value^{pq}, exact mode
  for (std::int64_t N = 0; N <= max_radius; ++N) {
    std::vector<std::size_t> index(static_cast<std::size_t>(d), 0);
    do {
      std::vector<std::int64_t> m(static_cast<std::size_t>(d));
      for (int a = 0; a < d; ++a) m[a] = choices[a][index[a]];
      Window w{LatticePoint(std::move(m)), N};
      if (params.exact()) {
        Rational psum = 0;
        for (const auto& [k, v] : x.entries()) {
          if (w.contains(k)) psum += abs_pow(v.exact(), params.p_int());
        }
        ExactCertificate cert{window_cardinality(N, d), psum, params.p_int(), params.q_int()};
        Rational power = cert.power_pq();
        if (!have_best || power > *best_power) {
          best_power = std::move(power);
          best.float_value = windowed_value(cert.cardinality.convert_to<long double>(),
                                            cert.psum.convert_to<long double>(), params.p_double(), params.q_double());
          best.exact = std::move(cert);
          best.argmax = std::move(w);
          have_best = true;
        }
      } else {
        long double psum = 0;
        for (const auto& [k, v] : x.entries()) {
          if (w.contains(k)) psum += abs_pow(v.approx(), params.p_double());
        }
        const double value =
            windowed_value(std::pow(2.0L * N + 1, d), psum, params.p_double(), params.q_double());
        if (!have_best || value > best.float_value) {
          best.float_value = value;
          best.argmax = std::move(w);
          have_best = true;
        }
      }
    } while (advance(index, choices));
  }
  return best;
}

int compare_exact(const ExactCertificate& a, const ExactCertificate& b) {
  if (a.p != b.p || a.q != b.q) throw ValidationError("certificates for different (p, q) are not comparable");
  const Rational lhs = a.power_pq();
  const Rational rhs = b.power_pq();
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool norm_equals(const NormValue& v, const Rational& target) {
  if (!v.exact) throw ValidationError("exact comparison needs an exact certificate");
  const auto& c = *v.exact;
  if (target < 0) return false;
  return pow(c.psum, c.q) == pow(target, c.p * c.q) * Rational(pow(c.cardinality, c.q - c.p));
}

std::optional<Rational> exact_norm(const ExactCertificate& c) { return exact_root(c.power_pq(), c.p * c.q); }

std::optional<Rational> exact_norm_squared(const ExactCertificate& c) {
  const unsigned pq = c.p * c.q;
  const unsigned g = std::gcd(pq, 2u);
  auto root = exact_root(c.power_pq(), pq / g);
  if (!root) return std::nullopt;
  return pow(*root, 2u / g);
}

}  // namespace morrey
