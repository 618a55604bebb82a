#include "morrey/rational.hpp"

#include <cctype>
#include <limits>

namespace morrey {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view text, std::string_view full) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) {
    throw ValidationError("malformed number '" + std::string(full) + "'");
  }
  BigInt value{std::string(digits)};
  return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  std::int64_t exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    BigInt exp_value = parse_integer(rest.substr(e + 1), text);
    if (abs(exp_value) > 4096) throw ValidationError("exponent out of range in '" + std::string(text) + "'");
    exponent = exp_value.convert_to<std::int64_t>();
    rest = rest.substr(0, e);
  }
  std::string_view whole = rest;
  std::string_view frac;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    whole = rest.substr(0, dot);
    frac = rest.substr(dot + 1);
  }
  if (whole.empty() && frac.empty()) throw ValidationError("malformed number '" + std::string(text) + "'");
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
    throw ValidationError("malformed number '" + std::string(text) + "'");
  }
  BigInt mantissa{std::string(whole) + std::string(frac)};
  exponent -= static_cast<std::int64_t>(frac.size());
  Rational value(mantissa);
  BigInt scale = pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    value /= scale;
  } else {
    value *= scale;
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text, DecimalPolicy decimals) {
  if (text.empty()) throw ValidationError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    if (!all_digits(den_text)) throw ValidationError("malformed rational '" + std::string(text) + "'");
    BigInt den(std::string{den_text});
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) {
    if (decimals == DecimalPolicy::kReject) {
      throw ValidationError("decimal '" + std::string(text) + "' requires float mode");
    }
    return parse_decimal(text);
  }
  return Rational(parse_integer(text, text));
}

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

std::string to_string(const Rational& r) {
  if (is_integer(r)) return boost::multiprecision::numerator(r).str();
  return to_fraction_string(r);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational pow(const Rational& base, unsigned exponent) {
  return Rational(pow(boost::multiprecision::numerator(base), exponent),
                  pow(boost::multiprecision::denominator(base), exponent));
}

BigInt pow(const BigInt& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

std::optional<BigInt> exact_root(const BigInt& value, unsigned k) {
  if (value < 0 || k == 0) return std::nullopt;
  if (k == 1 || value < 2) return value;
  // Newton iteration from an over-estimate converges monotonically down to floor(value^(1/k)).
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(value)) + 1;
  BigInt x = BigInt(1) << ((bits + k - 1) / k);
  while (true) {
    BigInt y = ((k - 1) * x + value / pow(x, k - 1)) / k;
    if (y >= x) break;
    x = std::move(y);
  }
  if (pow(x, k) == value) return x;
  return std::nullopt;
}

std::optional<Rational> exact_root(const Rational& value, unsigned k) {
  if (value < 0) return std::nullopt;
  auto num = exact_root(BigInt(boost::multiprecision::numerator(value)), k);
  if (!num) return std::nullopt;
  auto den = exact_root(BigInt(boost::multiprecision::denominator(value)), k);
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

std::int64_t to_int64(const Rational& r, std::string_view what) {
  if (!is_integer(r)) throw ValidationError(std::string(what) + " must be an integer");
  const BigInt& n = boost::multiprecision::numerator(r);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    throw ValidationError(std::string(what) + " out of range");
  }
  return n.convert_to<std::int64_t>();
}

}  // namespace morrey
