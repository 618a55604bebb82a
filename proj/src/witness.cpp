#include "morrey/witness.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "morrey/json_io.hpp"

namespace morrey {

namespace {

void check_n(int n) {
  if (n < 2 || n > kMaxWitnessN) {
    throw ValidationError("n must lie in [2, " + std::to_string(kMaxWitnessN) + "], got " + std::to_string(n));
  }
}

void check_strict(const Rational& p, const Rational& q) {
  if (!(p < q)) throw ValidationError("the witness construction requires p < q");
}

unsigned exponent_to_unsigned(const Rational& e) {
  const std::int64_t v = to_int64(e, "exponent");
  if (v < 0 || v > 1'000'000) throw ValidationError("spacing exponent out of range");
  return static_cast<unsigned>(v);
}

}  // namespace

SignPattern rademacher_pattern(int i, int n) {
  check_n(n);
  if (i < 1 || i > n) throw ValidationError("pattern index i must lie in [1, n]");
  const std::size_t slots = std::size_t{1} << (n - 1);
  const std::size_t block = std::size_t{1} << (n - i);
  SignPattern pattern{n, i, std::vector<int>(slots)};
  for (std::size_t r = 0; r < slots; ++r) pattern.signs[r] = (r / block) % 2 == 0 ? 1 : -1;
  return pattern;
}

bool spacing_ok(std::int64_t j, int n, const Rational& p, const Rational& q, int d) {
  check_strict(p, q);
  if (j < 0) return false;
  const Rational lhs_exp = Rational(n - 1) * q;
  const Rational rhs_exp = Rational(d) * (q - p);
  const BigInt scale = boost::multiprecision::lcm(BigInt(boost::multiprecision::denominator(lhs_exp)),
                                                  BigInt(boost::multiprecision::denominator(rhs_exp)));
  const unsigned a = exponent_to_unsigned(lhs_exp * Rational(scale));
  const unsigned b = exponent_to_unsigned(rhs_exp * Rational(scale));
  return pow(BigInt(2), a) < pow(BigInt(j) + 1, b);
}

std::int64_t min_even_j(int n, const Rational& p, const Rational& q, int d) {
  check_n(n);
  check_strict(p, q);
  if (d < 1) throw ValidationError("dimension d must be positive");
  // log2 of the real threshold j + 1 > 2^{(n-1)q / (d(q-p))}.
  const long double log2_bound = (n - 1) * to_double(q) / (d * to_double(Rational(q - p)));
  if (log2_bound > 60) throw ValidationError("spacing j would exceed the 64-bit coordinate range");
  auto j = static_cast<std::int64_t>(std::floor(std::exp2(log2_bound))) - 4;
  j = std::max<std::int64_t>(0, j - j % 2);
  while (!spacing_ok(j, n, p, q, d)) j += 2;
  while (j >= 2 && spacing_ok(j - 2, n, p, q, d)) j -= 2;
  return j;
}

WitnessFamily build_witness(int n, const SpaceParams& params, std::optional<std::int64_t> j) {
  check_n(n);
  check_strict(params.p(), params.q());
  std::int64_t spacing = 0;
  if (j) {
    if (*j < 0 || *j % 2 != 0) throw ValidationError("j must be a nonnegative even integer");
    if (!spacing_ok(*j, n, params.p(), params.q(), params.d())) {
      throw ValidationError("j=" + std::to_string(*j) + " violates the spacing condition");
    }
    spacing = *j;
  } else {
    spacing = min_even_j(n, params.p(), params.q(), params.d());
  }
  const std::int64_t slots = std::int64_t{1} << (n - 1);
  if (spacing > std::numeric_limits<std::int64_t>::max() / slots) throw ValidationError("witness support overflows");

  WitnessFamily family{n, params, spacing, {}};
  for (int i = 1; i <= n; ++i) {
    const SignPattern pattern = rademacher_pattern(i, n);
    Sequence member(params.d());
    for (std::int64_t r = 0; r < slots; ++r) {
      std::vector<std::int64_t> coords(static_cast<std::size_t>(params.d()), 0);
      coords[0] = r * spacing;
      member.accumulate(LatticePoint(std::move(coords)), Scalar(pattern.signs[static_cast<std::size_t>(r)]));
    }
    family.members.push_back(std::move(member));
  }
  return family;
}

std::filesystem::path write_witness(const WitnessFamily& family, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create directory '" + dir.string() + "': " + ec.message());
  Json members = Json::array();
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const std::string name = "member_" + std::to_string(i + 1) + ".json";
    write_json_file(dir / name, sequence_to_json(family.members[i]));
    members.push_back(name);
  }
  const Json manifest{{"n", family.n},
                      {"p", to_string(family.params.p())},
                      {"q", to_string(family.params.q())},
                      {"d", family.params.d()},
                      {"j", family.j},
                      {"members", members}};
  const auto path = dir / "manifest.json";
  write_json_file(path, manifest);
  return path;
}

WitnessFamily read_witness(const std::filesystem::path& manifest, Mode mode) {
  const Json doc = read_json_file(manifest);
  try {
    const auto decimals = mode == Mode::kFloat ? DecimalPolicy::kAllow : DecimalPolicy::kReject;
    SpaceParams params(parse_rational(doc.at("p").get<std::string>(), decimals),
                       parse_rational(doc.at("q").get<std::string>(), decimals), doc.at("d").get<int>(), mode);
    WitnessFamily family{doc.at("n").get<int>(), params, doc.at("j").get<std::int64_t>(), {}};
    for (const auto& name : doc.at("members")) {
      family.members.push_back(
          sequence_from_json(read_json_file(manifest.parent_path() / name.get<std::string>()), decimals));
    }
    if (static_cast<int>(family.members.size()) != family.n) throw ValidationError("manifest member count differs from n");
    return family;
  } catch (const Json::exception& e) {
    throw ValidationError("malformed witness manifest: " + std::string(e.what()));
  }
}

}  // namespace morrey
