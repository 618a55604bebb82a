#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "morrey/core_types.hpp"

namespace morrey {

/// Signs of member i (1-based) of an n-member family across the 2^{n-1}
/// progression slots: 2^{i-1} constant blocks alternating +1, -1.
struct SignPattern {
  int n = 2;
  int i = 1;
  std::vector<int> signs;
};

SignPattern rademacher_pattern(int i, int n);

/// Spacing predicate (j+1)^{d(1/q-1/p)} < 2^{-(n-1)/p}, decided exactly as
/// 2^{(n-1)q} < (j+1)^{d(q-p)} after clearing denominators of the exponents.
bool spacing_ok(std::int64_t j, int n, const Rational& p, const Rational& q, int d);

/// Smallest even j >= 0 with spacing_ok. Requires p < q.
std::int64_t min_even_j(int n, const Rational& p, const Rational& q, int d);

/// Member i is sign_i[r] at (r j, 0, ..., 0) for r < 2^{n-1}, zero elsewhere.
/// j defaults to min_even_j; an explicit j must be even and pass spacing_ok.
WitnessFamily build_witness(int n, const SpaceParams& params, std::optional<std::int64_t> j = std::nullopt);

inline constexpr int kMaxWitnessN = 16;

/// Writes member_<i>.json files plus manifest.json into `dir`; returns the
/// manifest path. Manifest: {n, p, q, d, j, members: [file names]}.
std::filesystem::path write_witness(const WitnessFamily& family, const std::filesystem::path& dir);

/// Loads a manifest written by write_witness (member paths are relative to it).
WitnessFamily read_witness(const std::filesystem::path& manifest, Mode mode = Mode::kExact);

}  // namespace morrey
