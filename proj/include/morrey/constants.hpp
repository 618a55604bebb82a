#pragma once

#include <optional>
#include <span>
#include <vector>

#include "morrey/core_types.hpp"
#include "morrey/json_io.hpp"

namespace morrey {

/// A choice of signs (+1, e_2, ..., e_n); the first sign is always +1.
struct SignCombo {
  std::vector<int> signs;
  bool operator==(const SignCombo&) const = default;
};

/// All 2^{n-1} combos, binary counting on positions 2..n with position n as
/// the least significant digit and +1 as digit zero.
std::vector<SignCombo> enumerate_sign_combos(int n);

/// Pointwise sum_i signs[i] x^(i), in canonical sparse form.
Sequence signed_sum(std::span<const Sequence> members, const SignCombo& combo);

/// A constant's value: always a double, plus the exact rational when known.
struct ConstantValue {
  double value = 0.0;
  std::optional<Rational> exact;
};

struct NjRatio {
  /// sum_combos ||signed sum||^2 / (2^{n-1} sum_i ||x_i||^2)
  ConstantValue squared;
  /// Same numerator over 2^{n-1} sum_i ||x_i|| (unsquared member norms).
  ConstantValue unsquared;
};

NjRatio nj_ratio(std::span<const Sequence> members, const SpaceParams& params, int threads = 1);

/// min over combos of ||signed sum||. Members must have norm 1: exactly in
/// exact mode, within 1e-9 in float mode.
ConstantValue james_min(std::span<const Sequence> members, const SpaceParams& params, int threads = 1);

struct ComboResult {
  SignCombo combo;
  NormValue norm;
  bool equals_n = false;
  /// Exactly one support value of absolute value n, all others below n.
  bool single_peak = false;
};

struct Verdicts {
  bool nj_equals_n = false;
  bool james_equals_n = false;
  bool not_uniformly_non_l1n = false;
  bool not_uniformly_n_convex = false;

  bool all() const { return nj_equals_n && james_equals_n && not_uniformly_non_l1n && not_uniformly_n_convex; }
};

struct VerificationReport {
  int n = 2;
  SpaceParams params;
  std::int64_t j = 0;
  std::vector<NormValue> member_norms;
  std::vector<bool> member_unit;
  std::vector<ComboResult> combos;
  NjRatio nj;
  std::optional<ConstantValue> james;
  Verdicts verdicts;
};

/// Builds the witness family for (n, params, j) and checks that every member
/// has norm 1 and every signed sum has norm n. Exact mode decides by integer
/// identities; float mode uses relative tolerance 1e-12.
VerificationReport verify_theorem(int n, const SpaceParams& params, std::optional<std::int64_t> j = std::nullopt,
                                  int threads = 1);

Json report_to_json(const VerificationReport& report);

/// True iff exactly one entry of s has |value| == n and all others are smaller.
bool has_single_peak(const Sequence& s, int n);

}  // namespace morrey
