#pragma once

#include <string>
#include <utility>

#include "oddsym/brackets.hpp"

namespace oddsym {

/// Volume form rho(x,th) D(x,th) given by its coefficient in a Darboux chart.
class VolumeForm {
 public:
  VolumeForm() : rho_(1) {}
  VolumeForm(SuperFunction rho) : rho_(std::move(rho)) {  // NOLINT
    if (!rho_.is_even()) throw ParityError("volume form coefficient must be even");
    if (rho_.body().is_zero()) throw NotInvertible("volume form coefficient has zero body");
    inverse_ = invert(rho_);
  }

  const SuperFunction& coefficient() const { return rho_; }
  const SuperFunction& inverse() const { return inverse_; }
  const std::string& chart() const { return rho_.chart(); }

  /// {log rho, f} = rho^{-1} {rho, f}.
  SuperFunction log_bracket(const SuperFunction& f) const { return inverse_ * odd_bracket(rho_, f); }

 private:
  SuperFunction rho_;
  SuperFunction inverse_ = SuperFunction(1);
};

/// Highest th-index or x-index appearing in f.
inline int dimension_of(const SuperFunction& f) {
  int n = 0;
  const ThetaMonomial odd = f.odd_support();
  const std::uint32_t even = f.even_support();
  for (int i = 1; i <= kMaxIndex; ++i) {
    if ((odd & mono::of(OddGenerator::theta(i))) || ((even >> Var::x(i).slot()) & 1u)) n = i;
  }
  return n;
}

/// Delta_0 f = sum_i d^2 f / dx^i dth_i.
inline SuperFunction delta0(const SuperFunction& f) {
  SuperFunction r = SuperFunction().with_chart(f.chart());
  const ThetaMonomial odd = f.odd_support();
  for (int i = 1; i <= kMaxIndex; ++i) {
    OddGenerator th = OddGenerator::theta(i);
    if (!(odd & mono::of(th))) continue;
    r += partial_even(partial_odd(f, th), Var::x(i));
  }
  return r;
}

/// Delta_rho f = Delta_0 f + 1/2 {log rho, f}.
inline SuperFunction delta_rho(const VolumeForm& rho, const SuperFunction& f) {
  return delta0(f) + Scalar::rational(1, 2) * rho.log_bracket(f);
}

/// div_rho D_f = 2 (-1)^p(f) Delta_rho f for homogeneous f.
inline SuperFunction divergence(const VolumeForm& rho, const SuperFunction& f) {
  auto p = f.parity();
  if (!p) throw ParityError("divergence: split f into homogeneous parts first");
  SuperFunction d = Scalar(*p ? -2 : 2) * delta_rho(rho, f);
  return d;
}

/// Divergence of a homogeneous vector field with respect to rho D(z):
/// rho^{-1} sum_A (-1)^{a(p(X)+1)} d_A (rho X^A).
inline SuperFunction field_divergence(const VolumeForm& rho, const VectorField& X, int field_parity) {
  VectorField weighted;
  for (const auto& [c, comp] : X.components) weighted.components.emplace_back(c, rho.coefficient() * comp);
  return rho.inverse() * coordinate_divergence(weighted, field_parity);
}

/// Two sides of an identity that is expected to hold exactly.
struct Relation {
  SuperFunction lhs;
  SuperFunction rhs;
  bool holds() const { return lhs == rhs; }
};

/// Delta_{rho'} f - Delta_rho f against 1/2 {log g, f} with g = rho'/rho.
inline Relation delta_change(const VolumeForm& rho, const VolumeForm& rho_prime, const SuperFunction& f) {
  SuperFunction g = rho_prime.coefficient() * rho.inverse();
  SuperFunction predicted = Scalar::rational(1, 2) * (invert(g) * odd_bracket(g, f));
  return {delta_rho(rho_prime, f) - delta_rho(rho, f), predicted};
}

inline SuperFunction delta_rho_squared(const VolumeForm& rho, const SuperFunction& f) {
  return delta_rho(rho, delta_rho(rho, f));
}

/// H(rho', rho) = g^{-1/2} Delta_rho g^{1/2} with g = rho'/rho.
inline SuperFunction modular_hamiltonian(const VolumeForm& rho, const VolumeForm& rho_prime) {
  SuperFunction g = rho_prime.coefficient() * rho.inverse();
  SuperFunction r = sqrt_even(g);
  return invert(r) * delta_rho(rho, r);
}

/// Delta^2_{rho'} f - Delta^2_rho f against {H(rho', rho), f}.
inline Relation cocycle_relation(const VolumeForm& rho, const VolumeForm& rho_prime, const SuperFunction& f) {
  SuperFunction H = modular_hamiltonian(rho, rho_prime);
  return {delta_rho_squared(rho_prime, f) - delta_rho_squared(rho, f), odd_bracket(H, f)};
}

/// Delta_rho^2 f against {Delta_0 sqrt(rho) / sqrt(rho), f}.
inline Relation delta_squared_hamiltonian(const VolumeForm& rho, const SuperFunction& f) {
  SuperFunction r = sqrt_even(rho.coefficient());
  return {delta_rho_squared(rho, f), odd_bracket(delta0(r) * invert(r), f)};
}

/// Delta_rho^2 is a derivation, so it vanishes iff it vanishes on x^i, th_i.
inline bool delta_rho_squared_vanishes(const VolumeForm& rho, int n) {
  for (int i = 1; i <= n; ++i) {
    if (!delta_rho_squared(rho, SuperFunction::x(i, rho.chart())).is_zero()) return false;
    if (!delta_rho_squared(rho, SuperFunction::theta(i, rho.chart())).is_zero()) return false;
  }
  return true;
}

/// Modular vector field of a volume form on an even symplectic phase space:
/// f -> div_rho D_f = -rho^{-1} {rho, f}_0, the Hamiltonian field of -log rho.
inline VectorField even_modular_field(const PhaseSpace& P, const SuperFunction& rho) {
  if (P.epsilon() != 0) throw DomainError("even_modular_field: phase space bracket must be even");
  if (!rho.is_even() || rho.body().is_zero()) throw NotInvertible("even_modular_field: rho must be even and invertible");
  SuperFunction inv = -invert(rho);
  VectorField X = P.hamiltonian_field(rho);
  for (auto& [c, comp] : X.components) comp = inv * comp;
  return X;
}

}  // namespace oddsym
