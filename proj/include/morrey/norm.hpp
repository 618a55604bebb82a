#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "morrey/core_types.hpp"

namespace morrey {

/// Desk-scale guards for the norm computation.
struct NormLimits {
  std::size_t max_support = 10'000;
  std::size_t max_table_cells = std::size_t{1} << 26;
};

/// Discrete Morrey norm
///
///   ||x|| = sup_{m, N} |S_{m,N}|^{1/q - 1/p} (sum_{k in S_{m,N}} |x_k|^p)^{1/p}.
///
/// Only windows whose lower corner sits on support coordinates and whose
/// radius is ceil(gap / 2) for some coordinate gap are scanned: any other
/// window can be shrunk onto one of these without losing mass, and the
/// prefactor does not increase with N. The reported argmax is the
/// lexicographically smallest (N, m) among maximizers with m in the support
/// bounding box. In exact mode the scan runs on integers (masses scaled by a
/// common denominator) and the result carries an ExactCertificate.
NormValue morrey_norm(const Sequence& x, const SpaceParams& params, const NormLimits& limits = {});

/// Axis-aligned box of window centers for the brute-force scan.
struct CenterBox {
  LatticePoint lo;
  LatticePoint hi;
};

/// The range morrey_norm's argmax convention refers to: centers in the
/// support bounding box, radii up to the smallest one that lets a centered
/// window cover the whole support.
struct CanonicalRange {
  CenterBox centers;
  std::int64_t max_radius = 0;
};
CanonicalRange canonical_range(const Sequence& x);

/// Oracle: visits every window with center in `centers` and radius in
/// [0, max_radius], summing |x_k|^p directly. No prefix tables.
NormValue morrey_norm_bruteforce(const Sequence& x, const SpaceParams& params, const CenterBox& centers,
                                 std::int64_t max_radius);

/// Exact test of ||x|| == target via T^q == target^{pq} |S|^{q-p}.
/// Throws ValidationError when v has no certificate.
bool norm_equals(const NormValue& v, const Rational& target);

/// Exact three-way comparison of two certified values with equal (p, q).
int compare_exact(const ExactCertificate& a, const ExactCertificate& b);

/// ||x|| itself when it is rational.
std::optional<Rational> exact_norm(const ExactCertificate& c);

/// ||x||^2 when it is rational.
std::optional<Rational> exact_norm_squared(const ExactCertificate& c);

/// |S|^{1/q-1/p} psum^{1/p} in extended precision.
double windowed_value(long double cardinality, long double psum, double p, double q);

}  // namespace morrey
