#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace morrey {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed input or violated preconditions. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DecimalPolicy { kReject, kAllow };

// Parses "a/b", "a" or (when allowed) a decimal such as "-1.25" or "2e-3"
// into an exact rational. Whitespace is not accepted.
Rational parse_rational(std::string_view text, DecimalPolicy decimals = DecimalPolicy::kReject);

// "num/den" form, always with the slash ("1/1", "-3/2").
std::string to_fraction_string(const Rational& r);

// Shortest form: "3" for integers, "3/2" otherwise.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

// Exact k-th root of a nonnegative integer, if it is a perfect k-th power.
std::optional<BigInt> exact_root(const BigInt& value, unsigned k);

// Exact k-th root of a nonnegative rational in lowest terms, if one exists.
std::optional<Rational> exact_root(const Rational& value, unsigned k);

// Narrowing with a range check; throws ValidationError when r is not an
// integer or does not fit.
std::int64_t to_int64(const Rational& r, std::string_view what);

}  // namespace morrey
