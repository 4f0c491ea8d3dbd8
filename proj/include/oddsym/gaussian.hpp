#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace oddsym {

/// Exact element a + b*I of the Gaussian rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT: implicit by design of literals
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
    if (sgn(o.im_) == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    mpq_class n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Leading-sign convention used for principal roots: positive real part,
  /// or zero real part and positive imaginary part.
  bool is_positive_oriented() const {
    int s = sgn(re_);
    return s > 0 || (s == 0 && sgn(im_) > 0);
  }

  std::string to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) {
      if (im_ == 1) return "I";
      if (im_ == -1) return "-I";
      return im_.get_str() + "*I";
    }
    std::string s = "(" + re_.get_str();
    if (sgn(im_) > 0) s += " + "; else s += " - ";
    mpq_class a = abs(im_);
    s += (a == 1 ? std::string("I") : a.get_str() + "*I");
    return s + ")";
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

namespace detail {

inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return mpq_class(0);
  mpz_class n = q.get_num();
  mpz_class d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(rn, rd);
}

}  // namespace detail

/// Exact square root in Q(i), principal branch; nullopt if none exists.
inline std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  if (z.is_zero()) return GaussianRational(0);
  if (z.is_real()) {
    if (sgn(z.re()) > 0) {
      auto r = detail::rational_sqrt(z.re());
      if (!r) return std::nullopt;
      return GaussianRational(*r, 0);
    }
    auto r = detail::rational_sqrt(-z.re());
    if (!r) return std::nullopt;
    return GaussianRational(0, *r);
  }
  auto m = detail::rational_sqrt(z.norm());
  if (!m) return std::nullopt;
  auto u = detail::rational_sqrt((z.re() + *m) / 2);
  if (!u || sgn(*u) == 0) return std::nullopt;
  mpq_class v = z.im() / (2 * *u);
  GaussianRational r(*u, v);
  if (!(r * r == z)) return std::nullopt;
  return r;
}

}  // namespace oddsym
