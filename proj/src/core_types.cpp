#include "morrey/core_types.hpp"

#include <set>
#include <string>

namespace morrey {

const Rational& Scalar::exact() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw ValidationError("exact mode requires rational entries");
}

double Scalar::approx() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return to_double(*r);
  return std::get<double>(value_);
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r == 0;
  return std::get<double>(value_) == 0.0;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-exact()));
  return Scalar(-approx());
}

Scalar Scalar::operator*(const Scalar& other) const {
  if (is_exact() && other.is_exact()) return Scalar(Rational(exact() * other.exact()));
  return Scalar(approx() * other.approx());
}

Scalar Scalar::operator+(const Scalar& other) const {
  if (is_exact() && other.is_exact()) return Scalar(Rational(exact() + other.exact()));
  return Scalar(approx() + other.approx());
}

SpaceParams::SpaceParams(Rational p, Rational q, int d, Mode mode)
    : p_(std::move(p)), q_(std::move(q)), d_(d), mode_(mode) {
  if (d_ < 1) throw ValidationError("dimension d must be positive");
  if (p_ < 1) throw ValidationError("p must satisfy p >= 1");
  if (q_ < p_) throw ValidationError("q must satisfy q >= p");
  if (mode_ == Mode::kExact && (!is_integer(p_) || !is_integer(q_))) {
    throw ValidationError("exact mode requires integer p and q");
  }
  if (mode_ == Mode::kExact && q_ > 64) throw ValidationError("exact mode supports q <= 64");
}

unsigned SpaceParams::p_int() const {
  if (!is_integer(p_)) throw ValidationError("p is not an integer");
  return static_cast<unsigned>(to_int64(p_, "p"));
}

unsigned SpaceParams::q_int() const {
  if (!is_integer(q_)) throw ValidationError("q is not an integer");
  return static_cast<unsigned>(to_int64(q_, "q"));
}

Sequence::Sequence(int d) : d_(d) {
  if (d < 1) throw ValidationError("dimension d must be positive");
}

bool Sequence::is_exact() const {
  for (const auto& [k, v] : entries_) {
    if (!v.is_exact()) return false;
  }
  return true;
}

Scalar Sequence::at(const LatticePoint& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? Scalar() : it->second;
}

void Sequence::accumulate(const LatticePoint& k, const Scalar& value) {
  if (k.dim() != d_) {
    throw ValidationError("lattice point of length " + std::to_string(k.dim()) + " in a d=" + std::to_string(d_) +
                          " sequence");
  }
  auto [it, inserted] = entries_.try_emplace(k, value);
  if (!inserted) it->second = it->second + value;
  if (it->second.is_zero()) entries_.erase(it);
}

Sequence Sequence::scaled(const Scalar& c) const {
  Sequence out(d_);
  if (c.is_zero()) return out;
  for (const auto& [k, v] : entries_) out.entries_.emplace_hint(out.entries_.end(), k, v * c);
  return out;
}

Sequence sequence_from_entries(int d, std::span<const std::pair<LatticePoint, Scalar>> pairs) {
  Sequence out(d);
  std::set<LatticePoint> seen;
  for (const auto& [k, v] : pairs) {
    if (k.dim() != d) throw ValidationError("lattice point dimension does not match d=" + std::to_string(d));
    if (!seen.insert(k).second) throw ValidationError("duplicate lattice point");
    out.accumulate(k, v);
  }
  return out;
}

bool Window::contains(const LatticePoint& k) const {
  for (int a = 0; a < k.dim(); ++a) {
    const std::int64_t delta = k[a] - m[a];
    if (delta > N || delta < -N) return false;
  }
  return true;
}

BigInt window_cardinality(std::int64_t N, int d) {
  if (N < 0) throw ValidationError("window radius must be nonnegative");
  return pow(BigInt(2 * N + 1), static_cast<unsigned>(d));
}

Rational ExactCertificate::power_pq() const {
  return pow(psum, q) / Rational(pow(cardinality, q - p));
}

}  // namespace morrey
