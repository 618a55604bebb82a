#include <doctest.h>

#include <random>

#include "morrey/core_types.hpp"
#include "morrey/json_io.hpp"
#include "test_support.hpp"

using namespace morrey;

TEST_CASE("parse_rational accepts fractions and integers, decimals only when allowed") {
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("1.25", DecimalPolicy::kAllow) == Rational(5, 4));
  CHECK(parse_rational("-2e-3", DecimalPolicy::kAllow) == Rational(-1, 500));
  CHECK_THROWS_AS(parse_rational("1.5"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ValidationError);
}

TEST_CASE("rational formatting") {
  CHECK(to_fraction_string(Rational(1)) == "1/1");
  CHECK(to_fraction_string(Rational(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(3)) == "3");
  CHECK(to_string(Rational(3, 9)) == "1/3");
}

TEST_CASE("exact roots") {
  CHECK(exact_root(BigInt(27), 3) == BigInt(3));
  CHECK_FALSE(exact_root(BigInt(28), 3).has_value());
  CHECK(exact_root(BigInt(0), 5) == BigInt(0));
  CHECK(exact_root(Rational(16, 81), 4) == Rational(2, 3));
  CHECK_FALSE(exact_root(Rational(2), 2).has_value());
  const BigInt big = pow(BigInt(12345678901LL), 7);
  CHECK(exact_root(big, 7) == BigInt(12345678901LL));
  CHECK_FALSE(exact_root(BigInt(big + 1), 7).has_value());
}

TEST_CASE("rational arithmetic is exact on random operands") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational a = testing::random_rational(rng, 1000, 997);
    const Rational b = testing::random_rational(rng, 1000, 997);
    const Rational sum = a + b;
    // Reduced form with positive denominator, and the sum recombines exactly.
    CHECK(boost::multiprecision::denominator(sum) > 0);
    CHECK(gcd(boost::multiprecision::numerator(sum), boost::multiprecision::denominator(sum)) == 1);
    CHECK(sum - b == a);
    CHECK(parse_rational(to_fraction_string(sum)) == sum);
  }
}

TEST_CASE("window_cardinality") {
  CHECK(window_cardinality(0, 1) == 1);
  CHECK(window_cardinality(1, 2) == 9);
  CHECK(window_cardinality(2, 3) == 125);
  CHECK(window_cardinality(1'000'000, 2) == BigInt(2'000'001) * 2'000'001);
  for (std::int64_t N = 0; N < 20; ++N) {
    for (int d = 1; d <= 4; ++d) CHECK(window_cardinality(N, d) % 2 == 1);
  }
  CHECK_THROWS_AS(window_cardinality(-1, 1), ValidationError);
}

TEST_CASE("window containment uses the sup metric") {
  const Window w{LatticePoint{2, -1}, 2};
  CHECK(w.contains(LatticePoint{4, 1}));
  CHECK(w.contains(LatticePoint{0, -3}));
  CHECK_FALSE(w.contains(LatticePoint{5, -1}));
}

TEST_CASE("sequence_from_entries") {
  SUBCASE("delta") {
    const std::vector<std::pair<LatticePoint, Scalar>> pairs{{LatticePoint{0}, Scalar(1)}};
    const Sequence x = sequence_from_entries(1, pairs);
    CHECK(x.support_size() == 1);
    CHECK(x.at(LatticePoint{0}) == Scalar(1));
  }
  SUBCASE("zeros are dropped") {
    const std::vector<std::pair<LatticePoint, Scalar>> pairs{{LatticePoint{0}, Scalar(1)}, {LatticePoint{5}, Scalar(0)}};
    const Sequence x = sequence_from_entries(1, pairs);
    CHECK(x.support_size() == 1);
    CHECK(x.at(LatticePoint{5}).is_zero());
  }
  SUBCASE("duplicates rejected") {
    const std::vector<std::pair<LatticePoint, Scalar>> pairs{{LatticePoint{0, 0}, Scalar(1)},
                                                             {LatticePoint{0, 0}, Scalar(2)}};
    CHECK_THROWS_AS(sequence_from_entries(2, pairs), ValidationError);
  }
  SUBCASE("dimension mismatch rejected") {
    const std::vector<std::pair<LatticePoint, Scalar>> pairs{{LatticePoint{0, 0}, Scalar(1)}};
    CHECK_THROWS_AS(sequence_from_entries(1, pairs), ValidationError);
  }
}

TEST_CASE("sequence construction is idempotent and JSON round-trips") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 3;
    const Sequence x = testing::random_sequence(rng, d, 12, -7, 7);
    std::vector<std::pair<LatticePoint, Scalar>> pairs(x.entries().begin(), x.entries().end());
    CHECK(sequence_from_entries(d, pairs) == x);
    CHECK(sequence_from_json(Json::parse(sequence_to_json(x).dump()), DecimalPolicy::kReject) == x);
  }
}

TEST_CASE("sequence JSON parsing") {
  const auto doc = Json::parse(R"({"d": 2, "entries": [{"k": [0, 1], "v": "-3/2"}, {"k": [4, 4], "v": "2"}]})");
  const Sequence x = sequence_from_json(doc, DecimalPolicy::kReject);
  CHECK(x.at(LatticePoint{0, 1}) == Scalar(Rational(-3, 2)));
  CHECK(x.is_exact());

  const auto decimal = Json::parse(R"({"d": 1, "entries": [{"k": [3], "v": "0.25"}]})");
  CHECK_THROWS_AS(sequence_from_json(decimal, DecimalPolicy::kReject), ValidationError);
  const Sequence y = sequence_from_json(decimal, DecimalPolicy::kAllow);
  CHECK_FALSE(y.is_exact());
  CHECK(y.at(LatticePoint{3}).approx() == 0.25);

  CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"d": 1, "entries": [{"k": [0, 0], "v": "1"}]})"),
                                     DecimalPolicy::kReject),
                  ValidationError);
  CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"d": 1, "entries": [{"k": [0], "v": 1}]})"),
                                     DecimalPolicy::kReject),
                  ValidationError);
  CHECK_THROWS_AS(sequence_from_json(Json::parse(R"({"entries": []})"), DecimalPolicy::kReject), ValidationError);
}

TEST_CASE("SpaceParams validation") {
  CHECK_NOTHROW(SpaceParams(1, 2, 1));
  CHECK_NOTHROW(SpaceParams(2, 2, 3));
  CHECK_THROWS_AS(SpaceParams(2, 1, 1), ValidationError);
  CHECK_THROWS_AS(SpaceParams(Rational(1, 2), 2, 1), ValidationError);
  CHECK_THROWS_AS(SpaceParams(1, 2, 0), ValidationError);
  CHECK_THROWS_AS(SpaceParams(Rational(3, 2), 2, 1, Mode::kExact), ValidationError);
  CHECK_NOTHROW(SpaceParams(Rational(3, 2), 2, 1, Mode::kFloat));
}
