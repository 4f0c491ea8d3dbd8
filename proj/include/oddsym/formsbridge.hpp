#pragma once

// Differential forms on R^n as functions of (x, xi) with xi^i = dx^i, and
// multivector fields as functions of (x, th). Forms and semidensities on
// R^{n|n} correspond through the odd Fourier transform
//
//   s(x, th) = int exp(-xi^i th_i) w(x, xi) D(xi),
//
// where the xi-integral is the right derivative by xi^1, then xi^2, ...
// With this kernel, for n = 2: f -> f th1 th2, w1 dx1 + w2 dx2 -> w1 th2 - w2 th1
// and w dx1 dx2 -> -w.

#include <string>
#include <vector>

#include "oddsym/charts.hpp"

namespace oddsym {

/// A form is a function of x^i and xi^i (xi^i <= n), with external odd
/// parameters allowed in coefficients. No th.
class DifferentialForm {
 public:
  DifferentialForm() = default;
  DifferentialForm(SuperFunction omega, int n) : n_(n), omega_(std::move(omega)) {
    if (n < 0 || n > kMaxOddIndex) throw DomainError("form dimension out of range");
    ThetaMonomial s = omega_.odd_support();
    if (s & (mono::kind_mask(OddKind::theta) | mono::kind_mask(OddKind::po)))
      throw DomainError("a differential form must not contain th or po");
    if (s & mono::kind_mask(OddKind::xi) & ~xi_mask(n)) throw UnknownIndex("form uses xi beyond its dimension");
  }

  int dimension() const { return n_; }
  const SuperFunction& function() const { return omega_; }
  const std::string& chart() const { return omega_.chart(); }

  static ThetaMonomial xi_mask(int n) {
    ThetaMonomial m = 0;
    for (int i = 1; i <= n; ++i) m |= mono::of(OddGenerator::xi(i));
    return m;
  }

  /// Terms of form degree k.
  DifferentialForm component(int k) const {
    const ThetaMonomial xm = xi_mask(n_);
    return {omega_.filter([&](ThetaMonomial m) { return mono::degree(m & xm) == k; }), n_};
  }

  /// Left coefficient w_I of xi^{i1} ... xi^{ik} (ascending indices).
  SuperFunction coefficient(const std::vector<int>& indices) const {
    ThetaMonomial want = 0;
    for (int i : indices) want |= mono::of(OddGenerator::xi(i));
    const ThetaMonomial xm = xi_mask(n_);
    SuperFunction r = omega_.filter([&](ThetaMonomial m) { return (m & xm) == want; });
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) r = partial_odd_right(r, OddGenerator::xi(*it));
    return r;
  }

  SuperFunction top_coefficient() const {
    std::vector<int> all;
    for (int i = 1; i <= n_; ++i) all.push_back(i);
    return coefficient(all);
  }

  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return a.n_ == b.n_ && a.omega_ == b.omega_;
  }
  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    return {a.omega_ + b.omega_, a.n_};
  }
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
    return {a.omega_ - b.omega_, a.n_};
  }

 private:
  int n_ = 0;
  SuperFunction omega_;
};

/// sigma(x) D(x) on the even base. sigma must be free of th and xi.
struct BaseDensity {
  SuperFunction sigma;

  BaseDensity() : sigma(1) {}
  explicit BaseDensity(SuperFunction s) : sigma(std::move(s)) {
    if (sigma.odd_support() & (mono::kind_mask(OddKind::theta) | mono::kind_mask(OddKind::xi)))
      throw DomainError("a base density must not depend on th or xi");
  }
};

namespace detail {

/// prod_i (1 + c xi^i th_i) = exp(c sum_i xi^i th_i).
inline SuperFunction fourier_kernel(int n, long c) {
  SuperFunction k(1);
  for (int i = 1; i <= n; ++i)
    k = k * (SuperFunction(1) + Scalar(c) * (SuperFunction::xi(i) * SuperFunction::theta(i)));
  return k;
}

inline void require_no_xi(const SuperFunction& f, const char* what) {
  if (f.odd_support() & mono::kind_mask(OddKind::xi)) throw DomainError(std::string(what) + ": unexpected xi");
}

}  // namespace detail

inline Density form_to_semidensity(const DifferentialForm& w) {
  const int n = w.dimension();
  SuperFunction r = detail::fourier_kernel(n, -1) * w.function();
  for (int i = 1; i <= n; ++i) r = partial_odd_right(r, OddGenerator::xi(i));
  return Density::semidensity(r.with_chart(w.chart()));
}

/// Inverse transform: kernel exp((-1)^n xi th), then the left th-derivatives
/// d/dth_1 first, d/dth_2 next, ...
inline DifferentialForm semidensity_to_form(const Density& s, int n) {
  if (s.weight != mpq_class(1, 2)) throw DomainError("semidensity_to_form: weight must be 1/2");
  detail::require_no_xi(s.coefficient, "semidensity_to_form");
  SuperFunction r = detail::fourier_kernel(n, n % 2 ? -1 : 1) * s.coefficient;
  for (int i = 1; i <= n; ++i) r = partial_odd(r, OddGenerator::theta(i));
  return {r.with_chart(s.coefficient.chart()), n};
}

/// Multivector field f(x, th) against sigma: the form corresponding to the
/// semidensity sigma f.
inline DifferentialForm hodge(const SuperFunction& f, const BaseDensity& sigma, int n) {
  return semidensity_to_form(Density::semidensity(sigma.sigma * f), n);
}

inline SuperFunction inverse_hodge(const DifferentialForm& w, const BaseDensity& sigma) {
  return invert(sigma.sigma) * form_to_semidensity(w).coefficient;
}

/// d = xi^i d/dx^i.
inline DifferentialForm de_rham(const DifferentialForm& w) {
  SuperFunction r = SuperFunction().with_chart(w.chart());
  for (int i = 1; i <= w.dimension(); ++i) r += SuperFunction::xi(i) * partial_even(w.function(), Var::x(i));
  return {r, w.dimension()};
}

/// Contraction with the vector field X = sum X^i d/dx^i (X^i even, th-free):
/// sum X^i d/dxi^i.
inline DifferentialForm interior(const std::vector<SuperFunction>& X, const DifferentialForm& w) {
  if (static_cast<int>(X.size()) != w.dimension()) throw DomainError("interior: vector field has wrong dimension");
  SuperFunction r = SuperFunction().with_chart(w.chart());
  for (int i = 0; i < w.dimension(); ++i) {
    if (!X[i].is_even()) throw ParityError("interior: components must be even");
    r += X[i] * partial_odd(w.function(), OddGenerator::xi(i + 1));
  }
  return {r, w.dimension()};
}

/// Cartan formula L_X = d i_X + i_X d.
inline DifferentialForm cartan_lie(const std::vector<SuperFunction>& X, const DifferentialForm& w) {
  return de_rham(interior(X, w)) + interior(X, de_rham(w));
}

/// The multivector function sum X^i th_i of a vector field.
inline SuperFunction vector_as_function(const std::vector<SuperFunction>& X) {
  SuperFunction f;
  for (std::size_t i = 0; i < X.size(); ++i) f += X[i] * SuperFunction::theta(static_cast<int>(i) + 1);
  return f;
}

/// Classical divergence of a multivector field: sigma^{-1} sum_i d/dx^i (sigma d/dth_i T).
inline SuperFunction classical_divergence(const SuperFunction& T, const BaseDensity& sigma, int n) {
  SuperFunction r = SuperFunction().with_chart(T.chart());
  SuperFunction inv = invert(sigma.sigma);
  for (int i = 1; i <= n; ++i) r += inv * partial_even(sigma.sigma * partial_odd(T, OddGenerator::theta(i)), Var::x(i));
  return r;
}

struct DivergenceReport {
  SuperFunction laplacian;   // Delta_{sigma^2} T
  SuperFunction classical;   // direct divergence
  bool square_zero = false;  // Delta_{sigma^2}^2 T = 0
  bool ok() const { return laplacian == classical && square_zero; }
};

inline DivergenceReport divergence_correspondence(const SuperFunction& T, const BaseDensity& sigma, int n) {
  VolumeForm rho(sigma.sigma * sigma.sigma);
  DivergenceReport rep;
  rep.laplacian = delta_rho(rho, T);
  rep.classical = classical_divergence(T, sigma, n);
  rep.square_zero = delta_rho(rho, rep.laplacian).is_zero();
  return rep;
}

/// [Delta, f] s = Delta(f s) - (-1)^p(f) f Delta s, summed over parity parts of f.
inline Density lie_along_multivector(const Density& s, const SuperFunction& f) {
  if (s.weight != mpq_class(1, 2)) throw DomainError("lie_along_multivector: weight must be 1/2");
  auto [fe, fo] = f.parity_split();
  const SuperFunction& c = s.coefficient;
  return Density(delta0(f * c) - fe * delta0(c) + fo * delta0(c), s.weight, s.chart);
}

namespace detail {

inline void require_one_form(const std::vector<SuperFunction>& a, int n) {
  if (static_cast<int>(a.size()) != n) throw DomainError("one-form has wrong number of components");
  for (const auto& ai : a) {
    if (!ai.is_odd()) throw ParityError("one-form components must be odd");
    if (ai.odd_support() & (mono::kind_mask(OddKind::theta) | mono::kind_mask(OddKind::xi)))
      throw DomainError("one-form components must not depend on th or xi");
  }
}

}  // namespace detail

/// s(x, th_i + a_i).
inline Density one_form_action(const std::vector<SuperFunction>& a, const Density& s, int n) {
  detail::require_one_form(a, n);
  Substitution sub;
  sub.target_chart = s.coefficient.chart();
  for (int i = 1; i <= n; ++i) sub.set(OddGenerator::theta(i), SuperFunction::theta(i) + a[i - 1]);
  return Density(substitute(s.coefficient, sub), s.weight, s.chart);
}

/// The same action on forms: exp(a) w with a = sum a_i xi^i.
inline DifferentialForm one_form_action(const std::vector<SuperFunction>& a, const DifferentialForm& w) {
  const int n = w.dimension();
  detail::require_one_form(a, n);
  SuperFunction sum;
  for (int i = 1; i <= n; ++i) sum += a[i - 1] * SuperFunction::xi(i);
  return {exp_nilpotent(sum) * w.function(), n};
}

/// The form whose semidensity is the principal square root of s_w s_w'.
inline DifferentialForm star_product(const DifferentialForm& w, const DifferentialForm& w2) {
  if (w.dimension() != w2.dimension()) throw DomainError("star_product: dimension mismatch");
  if (w.top_coefficient().body().is_zero() || w2.top_coefficient().body().is_zero())
    throw NotInvertible("star_product: top-degree component has zero body");
  SuperFunction prod = form_to_semidensity(w).coefficient * form_to_semidensity(w2).coefficient;
  if (!prod.is_even()) throw ParityError("star_product: product of semidensities is not even");
  return semidensity_to_form(Density::semidensity(sqrt_even(prod)), w.dimension());
}

/// Pull s back along th -> th + alpha (alpha closed) and take the top form
/// component: the density s induces on the Lagrangian graph of alpha.
inline BaseDensity restrict_to_lagrangian(const Density& s, const std::vector<SuperFunction>& alpha, int n) {
  detail::require_one_form(alpha, n);
  if (!is_closed_one_form(alpha)) throw DomainError("restrict_to_lagrangian: one-form is not closed");
  Density shifted = one_form_action(alpha, s, n);
  return BaseDensity(semidensity_to_form(shifted, n).top_coefficient());
}

/// First-order change of the restriction of a closed s under delta_Q, against
/// the top component of d of the (n-1)-form of the shifted Q s. Equal sides
/// mean the restricted density changes by an exact top form.
inline Relation adjusted_variation(const Density& s, const std::vector<SuperFunction>& alpha, const SuperFunction& Q,
                                   int n) {
  if (!delta0(s.coefficient).is_zero()) throw DomainError("adjusted_variation: semidensity is not closed");
  SuperFunction change = restrict_to_lagrangian(delta_Q_differential(Q, s), alpha, n).sigma;
  Density shifted = one_form_action(alpha, Density::semidensity(Q * s.coefficient), n);
  DifferentialForm eta = semidensity_to_form(shifted, n).component(n - 1);
  return {change, de_rham(eta).top_coefficient()};
}

/// Degree-0 coefficient of the form of s.
inline SuperFunction degree_zero_coefficient(const Density& s, int n) {
  return semidensity_to_form(s, n).coefficient({});
}

}  // namespace oddsym
