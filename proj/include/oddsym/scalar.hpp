#pragma once

#include <optional>
#include <string>
#include <utility>

#include "oddsym/polynomial.hpp"

namespace oddsym {

/// Exact rational function over the Gaussian rationals in the even
/// indeterminates. Always stored reduced with a monic denominator, so
/// structural equality is mathematical equality.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT
  Scalar(GaussianRational c) : num_(std::move(c)), den_(1) {}  // NOLINT
  Scalar(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw NotInvertible("zero denominator");
    normalize();
  }

  static Scalar rational(long p, long q) { return Scalar(GaussianRational(mpq_class(p, q))); }
  static Scalar variable(Var v) { return Scalar(Polynomial::variable(v)); }
  static Scalar i() { return Scalar(GaussianRational::imaginary_unit()); }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  GaussianRational constant_value() const { return num_.constant_term(); }
  std::uint32_t support() const { return num_.support() | den_.support(); }
  bool depends_on(Var v) const { return (support() >> v.slot()) & 1u; }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b, false); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, b, true); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return Scalar::raw(a.num_ * b.num_, Polynomial(1));
    // Cross-cancel before multiplying to keep the factors small.
    Polynomial g1 = poly::gcd(a.num_, b.den_);
    Polynomial g2 = poly::gcd(b.num_, a.den_);
    Polynomial an = poly::divide_or_throw(a.num_, g1), bd = poly::divide_or_throw(b.den_, g1);
    Polynomial bn = poly::divide_or_throw(b.num_, g2), ad = poly::divide_or_throw(a.den_, g2);
    Scalar r = Scalar::raw(an * bn, ad * bd);
    r.make_monic();
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw NotInvertible("inverse of zero scalar");
    Scalar r = Scalar::raw(den_, num_);
    r.make_monic();
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  Scalar pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    return Scalar::raw(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
  }

  Scalar derivative(Var v) const {
    if (den_.is_constant()) return Scalar::raw(num_.derivative(v), den_);
    Polynomial n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    return Scalar(std::move(n), den_ * den_);
  }

  /// Principal square root, or nullopt if numerator or denominator is not a
  /// perfect square.
  std::optional<Scalar> sqrt() const {
    auto n = poly::sqrt_exact(num_);
    if (!n) return std::nullopt;
    auto d = poly::sqrt_exact(den_);
    if (!d) return std::nullopt;
    Scalar r = Scalar::raw(*std::move(n), *std::move(d));
    r.make_monic();
    return r;
  }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  static Scalar raw(Polynomial n, Polynomial d) {
    Scalar s;
    s.num_ = std::move(n);
    s.den_ = std::move(d);
    if (s.num_.is_zero()) s.den_ = Polynomial(1);
    return s;
  }

  static Scalar add(const Scalar& a, const Scalar& b, bool subtract) {
    if (a.den_ == b.den_) {
      Polynomial n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (a.den_.is_one()) return Scalar::raw(std::move(n), Polynomial(1));
      return Scalar(std::move(n), a.den_);
    }
    Polynomial g = poly::gcd(a.den_, b.den_);
    Polynomial ca = poly::divide_or_throw(b.den_, g);
    Polynomial cb = poly::divide_or_throw(a.den_, g);
    Polynomial n = subtract ? a.num_ * ca - b.num_ * cb : a.num_ * ca + b.num_ * cb;
    return Scalar(std::move(n), a.den_ * ca);
  }

  void make_monic() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    const GaussianRational& lc = den_.leading_coef();
    if (!lc.is_one()) {
      GaussianRational inv = GaussianRational(1) / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (!den_.is_constant()) {
      Polynomial g = poly::gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = poly::divide_or_throw(num_, g);
        den_ = poly::divide_or_throw(den_, g);
      }
    }
    make_monic();
  }

  Polynomial num_;
  Polynomial den_;
};

}  // namespace oddsym
