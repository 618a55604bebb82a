#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "morrey/constants.hpp"
#include "morrey/norm.hpp"
#include "morrey/witness.hpp"
#include "test_support.hpp"

using namespace morrey;
using morrey::testing::random_sequence;
using morrey::testing::rel_close;

namespace {

// Independent check of the l2 identity: expands every squared signed sum
// entry by entry, without going through any norm routine.
Rational parallelogram_ratio(const std::vector<Sequence>& members) {
  std::set<LatticePoint> support;
  for (const auto& x : members) {
    for (const auto& [k, v] : x.entries()) support.insert(k);
  }
  const std::size_t n = members.size();
  Rational numerator = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
    for (const auto& k : support) {
      Rational entry = members[0].at(k).exact();
      for (std::size_t i = 1; i < n; ++i) {
        const Rational& v = members[i].at(k).exact();
        entry += ((mask >> (i - 1)) & 1u) ? Rational(-v) : v;
      }
      numerator += entry * entry;
    }
  }
  Rational squares = 0;
  for (const auto& x : members) {
    for (const auto& [k, v] : x.entries()) squares += v.exact() * v.exact();
  }
  return numerator / (Rational(static_cast<long long>(std::size_t{1} << (n - 1))) * squares);
}

std::vector<Sequence> unit_coordinates(int n, int d) {
  std::vector<Sequence> out;
  for (int i = 0; i < n; ++i) {
    Sequence e(d);
    std::vector<std::int64_t> c(static_cast<std::size_t>(d), 0);
    c[0] = 3 * i;
    e.accumulate(LatticePoint(c), Scalar(1));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("enumerate_sign_combos") {
  const auto two = enumerate_sign_combos(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].signs == std::vector<int>{1, 1});
  CHECK(two[1].signs == std::vector<int>{1, -1});

  const auto three = enumerate_sign_combos(3);
  REQUIRE(three.size() == 4);
  CHECK(three[1].signs == std::vector<int>{1, 1, -1});
  CHECK(three[2].signs == std::vector<int>{1, -1, 1});

  const auto five = enumerate_sign_combos(5);
  CHECK(five.size() == 16);
  std::set<std::vector<int>> distinct;
  for (const auto& c : five) {
    CHECK(c.signs[0] == 1);
    distinct.insert(c.signs);
  }
  CHECK(distinct.size() == 16);
}

TEST_CASE("signed_sum on the n=3 witness") {
  const WitnessFamily w = build_witness(3, SpaceParams(1, 2, 1), 16);
  const Sequence plus = signed_sum(w.members, {{1, 1, 1}});
  CHECK(plus.at(LatticePoint{0}) == Scalar(3));
  CHECK(plus.at(LatticePoint{16}) == Scalar(1));
  CHECK(plus.at(LatticePoint{32}) == Scalar(1));
  CHECK(plus.at(LatticePoint{48}) == Scalar(-1));

  const Sequence minus = signed_sum(w.members, {{1, -1, -1}});
  CHECK(minus.at(LatticePoint{0}) == Scalar(-1));
  CHECK(minus.at(LatticePoint{16}) == Scalar(1));
  CHECK(minus.at(LatticePoint{32}) == Scalar(1));
  CHECK(minus.at(LatticePoint{48}) == Scalar(3));

  const std::vector<Sequence> single{w.members[1]};
  CHECK(signed_sum(single, {{1}}) == w.members[1]);

  CHECK_THROWS_AS(signed_sum(w.members, {{1, 1}}), ValidationError);
  const std::vector<Sequence> mixed{Sequence(1), Sequence(2)};
  CHECK_THROWS_AS(signed_sum(mixed, {{1, 1}}), ValidationError);
}

TEST_CASE("nj_ratio examples") {
  const WitnessFamily w = build_witness(3, SpaceParams(1, 2, 1), 16);
  const NjRatio r = nj_ratio(w.members, w.params);
  CHECK(r.squared.exact == Rational(3));
  CHECK(r.unsquared.exact == Rational(3));
  CHECK(r.squared.value == 3.0);

  std::mt19937_64 rng(1);
  const Sequence u = random_sequence(rng, 1, 6, -4, 4);
  const std::vector<Sequence> twins{u, u};
  const NjRatio same = nj_ratio(twins, SpaceParams(1, 2, 1, Mode::kFloat));
  CHECK(rel_close(same.squared.value, 1.0, 1e-12));

  const std::vector<Sequence> with_zero{u, Sequence(1)};
  CHECK_THROWS_AS(nj_ratio(with_zero, SpaceParams(1, 2, 1)), ValidationError);
}

TEST_CASE("nj_ratio in l2 equals 1, checked against direct expansion") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const int d = 1 + trial % 2;
    std::vector<Sequence> members;
    for (int i = 0; i < n; ++i) members.push_back(random_sequence(rng, d, 8, -3, 3));
    const Rational oracle = parallelogram_ratio(members);
    CHECK(oracle == 1);
    const NjRatio floating = nj_ratio(members, SpaceParams(2, 2, d, Mode::kFloat));
    CHECK(rel_close(floating.squared.value, to_double(oracle), 1e-12));
    const NjRatio exact = nj_ratio(members, SpaceParams(2, 2, d));
    CHECK(exact.squared.exact == oracle);
  }
}

TEST_CASE("james_min examples") {
  const WitnessFamily w = build_witness(3, SpaceParams(1, 2, 1), 16);
  const ConstantValue j = james_min(w.members, w.params);
  CHECK(j.exact == Rational(3));

  for (int n = 2; n <= 4; ++n) {
    const ConstantValue hilbert = james_min(unit_coordinates(n, 1), SpaceParams(2, 2, 1));
    CHECK(rel_close(hilbert.value, std::sqrt(static_cast<double>(n)), 1e-12));
    CHECK(hilbert.exact.has_value() == (n == 4));
  }

  const std::vector<Sequence> twins{w.members[0], w.members[0]};
  const ConstantValue zero = james_min(twins, w.params);
  CHECK(zero.exact == Rational(0));

  std::vector<Sequence> scaled{w.members[0].scaled(Scalar(2)), w.members[1]};
  CHECK_THROWS_AS(james_min(scaled, w.params), ValidationError);
}

TEST_CASE("random unit tuples respect the [0, n] bounds") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 3;
    const int d = 1 + trial % 2;
    const SpaceParams params(1 + trial % 2, 3, d, Mode::kFloat);
    std::vector<Sequence> members;
    for (int i = 0; i < n; ++i) {
      const Sequence x = random_sequence(rng, d, 8, -4, 4);
      members.push_back(x.scaled(Scalar(1.0 / morrey_norm(x, params).float_value)));
    }
    const double jm = james_min(members, params).value;
    CHECK(jm >= 0.0);
    CHECK(jm <= n);
    CHECK(nj_ratio(members, params).squared.value <= n);
  }
}

TEST_CASE("nj_ratio is invariant under a common scaling") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<Sequence> members;
    std::vector<Sequence> scaled;
    const Rational c = testing::random_rational(rng);
    for (int i = 0; i < n; ++i) {
      members.push_back(random_sequence(rng, 1, 6, -4, 4));
      scaled.push_back(members.back().scaled(Scalar(c)));
    }
    const SpaceParams params(1, 2, 1, Mode::kFloat);
    CHECK(rel_close(nj_ratio(members, params).squared.value, nj_ratio(scaled, params).squared.value, 1e-12));
  }
}

TEST_CASE("combo norms are invariant under reordering members") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3;
    const SpaceParams params(1, 2, 1);
    std::vector<Sequence> members;
    for (int i = 0; i < n; ++i) members.push_back(random_sequence(rng, 1, 5, -4, 4));
    std::vector<Sequence> reordered{members[2], members[0], members[1]};
    auto combo_powers = [&](const std::vector<Sequence>& tuple) {
      std::vector<Rational> powers;
      for (const auto& c : enumerate_sign_combos(n)) powers.push_back(morrey_norm(signed_sum(tuple, c), params).exact->power_pq());
      std::sort(powers.begin(), powers.end());
      return powers;
    };
    CHECK(combo_powers(members) == combo_powers(reordered));
  }
}

TEST_CASE("verify_theorem examples") {
  for (const auto& [n, p, q, d] : {std::tuple{3, 1, 2, 1}, {4, 2, 3, 1}, {3, 1, 2, 2}}) {
    CAPTURE(n);
    CAPTURE(d);
    const VerificationReport r = verify_theorem(n, SpaceParams(p, q, d));
    CHECK(r.verdicts.all());
    CHECK(r.nj.squared.exact == Rational(n));
    REQUIRE(r.james);
    CHECK(r.james->exact == Rational(n));
    CHECK(r.combos.size() == (std::size_t{1} << (n - 1)));
    for (const auto& c : r.combos) {
      CHECK(c.equals_n);
      CHECK(c.single_peak);
      // The certificate satisfies T^q = n^{pq} |S|^{q-p} literally.
      const auto& cert = *c.norm.exact;
      CHECK(pow(cert.psum, cert.q) == pow(Rational(n), cert.p * cert.q) * Rational(pow(cert.cardinality, cert.q - cert.p)));
    }
  }
}

TEST_CASE("verify_theorem in float mode agrees with exact verdicts") {
  for (int n = 2; n <= 4; ++n) {
    const VerificationReport exact = verify_theorem(n, SpaceParams(2, 3, 1));
    const VerificationReport floating = verify_theorem(n, SpaceParams(2, 3, 1, Mode::kFloat));
    CHECK(exact.verdicts.all() == floating.verdicts.all());
    CHECK(floating.verdicts.all());
  }
}

TEST_CASE("verification with a non-minimal but valid spacing") {
  const VerificationReport r = verify_theorem(3, SpaceParams(1, 2, 1), 18);
  CHECK(r.j == 18);
  CHECK(r.verdicts.all());
}

TEST_CASE("report JSON is identical for any thread count") {
  const SpaceParams params(1, 3, 2);
  const std::string one = report_to_json(verify_theorem(4, params, std::nullopt, 1)).dump();
  CHECK(report_to_json(verify_theorem(4, params, std::nullopt, 2)).dump() == one);
  CHECK(report_to_json(verify_theorem(4, params, std::nullopt, 8)).dump() == one);
  const Json doc = Json::parse(one);
  CHECK(doc["nj_ratio"]["value"] == "4");
  CHECK(doc["james_min"]["value"] == "4");
  CHECK(doc["combos"][0]["norm"]["exact"]["T"].get<std::string>().find('/') != std::string::npos);
}

TEST_CASE("has_single_peak") {
  Sequence s(1);
  s.accumulate(LatticePoint{0}, Scalar(3));
  s.accumulate(LatticePoint{1}, Scalar(-1));
  CHECK(has_single_peak(s, 3));
  s.accumulate(LatticePoint{2}, Scalar(-3));
  CHECK_FALSE(has_single_peak(s, 3));
  CHECK_FALSE(has_single_peak(Sequence(1), 3));
}
