#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "morrey/rational.hpp"

namespace morrey {

/// A point of Z^d.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static LatticePoint origin(int d) { return LatticePoint(std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)); }

  int dim() const { return static_cast<int>(coords_.size()); }
  std::int64_t operator[](int axis) const { return coords_[static_cast<std::size_t>(axis)]; }
  std::span<const std::int64_t> coords() const { return coords_; }

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// Sequence entry: exact rational or double, depending on where it came from.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Scalar(double x) : value_(x) {}                // NOLINT(google-explicit-constructor)
  Scalar(int x) : value_(Rational(x)) {}         // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const;
  double approx() const;
  bool is_zero() const;

  Scalar operator-() const;
  Scalar operator*(const Scalar& other) const;
  Scalar operator+(const Scalar& other) const;

  bool operator==(const Scalar& other) const = default;

 private:
  std::variant<Rational, double> value_;
};

enum class Mode { kExact, kFloat };

/// (p, q, d) for the space l^p_q(Z^d). Validated on construction.
class SpaceParams {
 public:
  SpaceParams(Rational p, Rational q, int d, Mode mode = Mode::kExact);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  int d() const { return d_; }
  Mode mode() const { return mode_; }
  bool exact() const { return mode_ == Mode::kExact; }

  // Only meaningful in exact mode, where p and q are integers.
  unsigned p_int() const;
  unsigned q_int() const;
  double p_double() const { return to_double(p_); }
  double q_double() const { return to_double(q_); }

  SpaceParams with_mode(Mode mode) const { return {p_, q_, d_, mode}; }

 private:
  Rational p_;
  Rational q_;
  int d_;
  Mode mode_;
};

/// Finitely supported x : Z^d -> R. Zero entries are never stored.
class Sequence {
 public:
  using Entries = std::map<LatticePoint, Scalar>;

  explicit Sequence(int d);

  int dim() const { return d_; }
  const Entries& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  bool is_exact() const;
  Scalar at(const LatticePoint& k) const;

  // Adds value at k; the entry disappears if the result is zero.
  void accumulate(const LatticePoint& k, const Scalar& value);

  Sequence scaled(const Scalar& c) const;

  bool operator==(const Sequence&) const = default;

 private:
  int d_;
  Entries entries_;
};

/// Canonical construction. Throws ValidationError on dimension mismatch or a
/// repeated lattice point; zero values are dropped.
Sequence sequence_from_entries(int d, std::span<const std::pair<LatticePoint, Scalar>> pairs);

/// The cube S_{m,N} = {k : |k - m|_inf <= N}.
struct Window {
  LatticePoint m;
  std::int64_t N = 0;

  bool contains(const LatticePoint& k) const;
  auto operator<=>(const Window& other) const {
    if (auto c = N <=> other.N; c != 0) return c;
    return m <=> other.m;
  }
  bool operator==(const Window&) const = default;
};

/// |S_{m,N}| = (2N+1)^d.
BigInt window_cardinality(std::int64_t N, int d);

/// Exact form of a windowed value |S|^{1/q-1/p} T^{1/p}.
struct ExactCertificate {
  BigInt cardinality;
  Rational psum;
  unsigned p = 1;
  unsigned q = 1;

  // v^{pq} = T^q / |S|^{q-p}; monotone in v, used for exact comparisons.
  Rational power_pq() const;
};

struct NormValue {
  double float_value = 0.0;
  std::optional<ExactCertificate> exact;
  Window argmax;
};

struct WitnessFamily {
  int n = 2;
  SpaceParams params;
  std::int64_t j = 0;
  std::vector<Sequence> members;
};

}  // namespace morrey
