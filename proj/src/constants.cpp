#include "morrey/constants.hpp"

#include <cmath>
#include <string>

#include "morrey/norm.hpp"
#include "morrey/parallel.hpp"
#include "morrey/version.hpp"
#include "morrey/witness.hpp"

namespace morrey {

namespace {

void check_members(std::span<const Sequence> members) {
  if (members.empty()) throw ValidationError("at least one member is required");
  for (const auto& x : members) {
    if (x.dim() != members.front().dim()) throw ValidationError("members have different dimensions");
  }
}

std::vector<NormValue> norms_of(std::span<const Sequence> sequences, const SpaceParams& params, int threads) {
  std::vector<NormValue> out(sequences.size());
  parallel_for(sequences.size(), threads, [&](std::size_t i) { out[i] = morrey_norm(sequences[i], params); });
  return out;
}

std::vector<Sequence> all_signed_sums(std::span<const Sequence> members) {
  std::vector<Sequence> sums;
  for (const auto& combo : enumerate_sign_combos(static_cast<int>(members.size()))) {
    sums.push_back(signed_sum(members, combo));
  }
  return sums;
}

bool near(double value, double target, double rel) { return std::fabs(value - target) <= rel * std::fabs(target); }

bool is_unit(const NormValue& v, const SpaceParams& params) {
  return params.exact() ? norm_equals(v, Rational(1)) : near(v.float_value, 1.0, 1e-9);
}

Json constant_to_json(const ConstantValue& c) {
  return Json{{"value", c.exact ? Json(to_string(*c.exact)) : Json(nullptr)}, {"value_float", c.value}};
}

}  // namespace

std::vector<SignCombo> enumerate_sign_combos(int n) {
  if (n < 1 || n > 24) throw ValidationError("sign combos need 1 <= n <= 24");
  const std::size_t count = std::size_t{1} << (n - 1);
  std::vector<SignCombo> combos;
  combos.reserve(count);
  for (std::size_t b = 0; b < count; ++b) {
    SignCombo c{std::vector<int>(static_cast<std::size_t>(n), 1)};
    for (int pos = 1; pos < n; ++pos) {
      if ((b >> (n - 1 - pos)) & 1u) c.signs[static_cast<std::size_t>(pos)] = -1;
    }
    combos.push_back(std::move(c));
  }
  return combos;
}

Sequence signed_sum(std::span<const Sequence> members, const SignCombo& combo) {
  check_members(members);
  if (combo.signs.size() != members.size()) {
    throw ValidationError("sign combo has length " + std::to_string(combo.signs.size()) + " for " +
                          std::to_string(members.size()) + " members");
  }
  Sequence out(members.front().dim());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Scalar sign(combo.signs[i]);
    for (const auto& [k, v] : members[i].entries()) out.accumulate(k, v * sign);
  }
  return out;
}

NjRatio nj_ratio(std::span<const Sequence> members, const SpaceParams& params, int threads) {
  check_members(members);
  for (const auto& x : members) {
    if (x.is_zero()) throw ValidationError("nj_ratio requires nonzero members");
  }
  const std::vector<NormValue> member_norms = norms_of(members, params, threads);
  const std::vector<NormValue> combo_norms = norms_of(all_signed_sums(members), params, threads);
  const double combos = static_cast<double>(combo_norms.size());

  double numerator = 0.0;
  for (const auto& v : combo_norms) numerator += v.float_value * v.float_value;
  double squares = 0.0;
  double plain = 0.0;
  for (const auto& v : member_norms) {
    squares += v.float_value * v.float_value;
    plain += v.float_value;
  }
  NjRatio out{{numerator / (combos * squares), std::nullopt}, {numerator / (combos * plain), std::nullopt}};

  if (params.exact()) {
    std::optional<Rational> exact_numerator = Rational(0);
    for (const auto& v : combo_norms) {
      auto sq = exact_norm_squared(*v.exact);
      if (!sq) {
        exact_numerator.reset();
        break;
      }
      *exact_numerator += *sq;
    }
    std::optional<Rational> exact_squares = Rational(0);
    std::optional<Rational> exact_plain = Rational(0);
    for (const auto& v : member_norms) {
      if (exact_squares) {
        if (auto sq = exact_norm_squared(*v.exact)) {
          *exact_squares += *sq;
        } else {
          exact_squares.reset();
        }
      }
      if (exact_plain) {
        if (auto r = exact_norm(*v.exact)) {
          *exact_plain += *r;
        } else {
          exact_plain.reset();
        }
      }
    }
    const Rational count(static_cast<long long>(combo_norms.size()));
    if (exact_numerator && exact_squares) {
      out.squared.exact = *exact_numerator / (count * *exact_squares);
      out.squared.value = to_double(*out.squared.exact);
    }
    if (exact_numerator && exact_plain) {
      out.unsquared.exact = *exact_numerator / (count * *exact_plain);
      out.unsquared.value = to_double(*out.unsquared.exact);
    }
  }
  return out;
}

ConstantValue james_min(std::span<const Sequence> members, const SpaceParams& params, int threads) {
  check_members(members);
  const std::vector<NormValue> member_norms = norms_of(members, params, threads);
  for (std::size_t i = 0; i < member_norms.size(); ++i) {
    if (!is_unit(member_norms[i], params)) {
      throw ValidationError("member " + std::to_string(i + 1) + " does not have unit norm");
    }
  }
  const std::vector<NormValue> combo_norms = norms_of(all_signed_sums(members), params, threads);
  std::size_t best = 0;
  for (std::size_t c = 1; c < combo_norms.size(); ++c) {
    const bool smaller = params.exact() ? compare_exact(*combo_norms[c].exact, *combo_norms[best].exact) < 0
                                        : combo_norms[c].float_value < combo_norms[best].float_value;
    if (smaller) best = c;
  }
  ConstantValue out{combo_norms[best].float_value, std::nullopt};
  if (params.exact()) {
    out.exact = exact_norm(*combo_norms[best].exact);
    if (out.exact) out.value = to_double(*out.exact);
  }
  return out;
}

bool has_single_peak(const Sequence& s, int n) {
  int peaks = 0;
  for (const auto& [k, v] : s.entries()) {
    if (v.is_exact()) {
      const Rational a = abs(v.exact());
      if (a > n) return false;
      if (a == n) ++peaks;
    } else {
      const double a = std::fabs(v.approx());
      if (a > n) return false;
      if (a == n) ++peaks;
    }
  }
  return peaks == 1;
}

VerificationReport verify_theorem(int n, const SpaceParams& params, std::optional<std::int64_t> j, int threads) {
  const WitnessFamily family = build_witness(n, params, j);
  VerificationReport report{n, params, family.j, {}, {}, {}, {}, std::nullopt, {}};
  const auto target = static_cast<double>(n);

  report.member_norms = norms_of(family.members, params, threads);
  bool members_unit = true;
  for (const auto& v : report.member_norms) {
    const bool unit = params.exact() ? norm_equals(v, Rational(1)) : near(v.float_value, 1.0, 1e-12);
    report.member_unit.push_back(unit);
    members_unit = members_unit && unit;
  }

  const std::vector<SignCombo> combos = enumerate_sign_combos(n);
  const std::vector<Sequence> sums = all_signed_sums(family.members);
  const std::vector<NormValue> sum_norms = norms_of(sums, params, threads);
  bool combos_n = true;
  for (std::size_t c = 0; c < combos.size(); ++c) {
    const bool equals_n = params.exact() ? norm_equals(sum_norms[c], Rational(n)) : near(sum_norms[c].float_value, target, 1e-12);
    report.combos.push_back({combos[c], sum_norms[c], equals_n, has_single_peak(sums[c], n)});
    combos_n = combos_n && equals_n;
  }

  report.nj = nj_ratio(family.members, params, threads);
  if (members_unit) report.james = james_min(family.members, params, threads);

  auto hits_n = [&](const ConstantValue& c) {
    return params.exact() ? (c.exact && *c.exact == n) : near(c.value, target, 1e-12);
  };
  const bool base = members_unit && combos_n;
  report.verdicts.nj_equals_n = base && hits_n(report.nj.squared);
  report.verdicts.james_equals_n = base && report.james && hits_n(*report.james);
  // Either constant reaching n rules out uniform non-l^1_n, which in turn rules out uniform n-convexity.
  report.verdicts.not_uniformly_non_l1n = report.verdicts.nj_equals_n || report.verdicts.james_equals_n;
  report.verdicts.not_uniformly_n_convex = report.verdicts.not_uniformly_non_l1n;
  return report;
}

Json report_to_json(const VerificationReport& report) {
  Json members = Json::array();
  for (std::size_t i = 0; i < report.member_norms.size(); ++i) {
    Json entry = norm_value_to_json(report.member_norms[i]);
    entry["equals_one"] = report.member_unit[i];
    members.push_back(std::move(entry));
  }
  Json combos = Json::array();
  for (const auto& c : report.combos) {
    combos.push_back(Json{{"signs", c.combo.signs},
                          {"norm", norm_value_to_json(c.norm)},
                          {"equals_n", c.equals_n},
                          {"single_peak", c.single_peak}});
  }
  Json nj = constant_to_json(report.nj.squared);
  nj["unsquared_denominator"] = constant_to_json(report.nj.unsquared);
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"params",
               {{"n", report.n},
                {"p", to_string(report.params.p())},
                {"q", to_string(report.params.q())},
                {"d", report.params.d()},
                {"mode", report.params.exact() ? "exact" : "float"},
                {"j", report.j}}},
              {"member_norms", members},
              {"combos", combos},
              {"nj_ratio", nj},
              {"james_min", report.james ? constant_to_json(*report.james) : Json(nullptr)},
              {"verdicts",
               {{"nj_equals_n", report.verdicts.nj_equals_n},
                {"james_equals_n", report.verdicts.james_equals_n},
                {"not_uniformly_non_l1n", report.verdicts.not_uniformly_non_l1n},
                {"not_uniformly_n_convex", report.verdicts.not_uniformly_n_convex}}}};
}

}  // namespace morrey
