#pragma once

// Master equations for functions and semidensities on R^{n|n}.

#include <optional>
#include <string>
#include <vector>

#include "oddsym/formsbridge.hpp"

namespace oddsym {

inline SuperFunction hbar() { return SuperFunction::variable(Var::hbar()); }

/// Coefficients of hbar^0, hbar^1, ... of f. Denominators must be free of hbar.
inline std::vector<SuperFunction> hbar_expansion(const SuperFunction& f) {
  const int slot = Var::hbar().slot();
  std::vector<SuperFunction> out;
  for (const auto& [m, c] : f.terms()) {
    if (c.den().depends_on(Var::hbar())) throw DomainError("hbar_expansion: hbar occurs in a denominator");
    auto coeffs = c.num().coefficients(slot);
    if (out.size() < coeffs.size()) out.resize(coeffs.size(), SuperFunction().with_chart(f.chart()));
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (!coeffs[k].is_zero()) out[k] += SuperFunction::monomial(m, Scalar(coeffs[k], c.den()), f.chart());
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

struct ExpIdentityReport {
  SuperFunction residual;             // Delta_0 g + 1/2 {g, g}
  std::optional<bool> literal_holds;  // Delta_0 exp g = residual exp g, when g has zero body
};

/// Delta_0 exp g = (Delta_0 g + 1/2 {g, g}) exp g, for even g. exp g is only
/// expanded when g is nilpotent.
inline ExpIdentityReport exp_identity_residual(const SuperFunction& g) {
  if (!g.is_even()) throw ParityError("exp identity: g must be even");
  ExpIdentityReport rep;
  rep.residual = delta0(g) + Scalar::rational(1, 2) * odd_bracket(g, g);
  if (g.body().is_zero()) {
    SuperFunction e = exp_nilpotent(g);
    rep.literal_holds = delta0(e) == rep.residual * e;
  }
  return rep;
}

inline void require_master_action(const SuperFunction& S) {
  if (!S.is_even()) throw ParityError("master action must be even");
}

/// -4 hbar Delta_0 S + {S, S}.
inline SuperFunction quantum_master_residual(const SuperFunction& S) {
  require_master_action(S);
  return Scalar(-4) * (hbar() * delta0(S)) + odd_bracket(S, S);
}

struct ClassicalMasterReport {
  SuperFunction self_bracket;  // {S, S}
  bool hbar_limit_agrees = false;
  bool holds() const { return self_bracket.is_zero(); }
};

/// {S, S}, checked against the hbar^0 part of the quantum residual.
inline ClassicalMasterReport classical_master_check(const SuperFunction& S) {
  require_master_action(S);
  ClassicalMasterReport rep;
  rep.self_bracket = odd_bracket(S, S);
  auto q = hbar_expansion(quantum_master_residual(S));
  SuperFunction q0 = q.empty() ? SuperFunction() : q[0];
  auto limit = hbar_expansion(rep.self_bracket);
  SuperFunction s0 = limit.empty() ? SuperFunction() : limit[0];
  rep.hbar_limit_agrees = q0 == s0;
  return rep;
}

struct SemidensityMasterReport {
  bool closed = false;
  std::optional<bool> exact;  // s = Delta r for the supplied r
};

inline SemidensityMasterReport semidensity_master_check(const Density& s,
                                                        const std::optional<SuperFunction>& r = std::nullopt) {
  if (s.weight != mpq_class(1, 2)) throw DomainError("semidensity_master_check: weight must be 1/2");
  SemidensityMasterReport rep;
  rep.closed = delta0(s.coefficient).is_zero();
  if (r) rep.exact = delta0(*r) == s.coefficient;
  return rep;
}

/// True if f involves no x, pe, th, xi or po: a constant built from external
/// odd parameters, hbar and even parameters.
inline bool is_parameter_constant(const SuperFunction& f) {
  const ThetaMonomial coord = mono::kind_mask(OddKind::theta) | mono::kind_mask(OddKind::xi) |
                              mono::kind_mask(OddKind::po);
  if (f.odd_support() & coord) return false;
  std::uint32_t even_coords = 0;
  for (int i = 1; i <= kMaxIndex; ++i) even_coords |= (1u << Var::x(i).slot()) | (1u << Var::pe(i).slot());
  for (const auto& [m, c] : f.terms())
    if (c.support() & even_coords) return false;
  return true;
}

struct NuReport {
  SuperFunction quotient;  // Delta_0 sqrt(rho) / sqrt(rho)
  bool delta_squared_zero = false;
  bool constant = false;   // quotient is a parameter constant
  std::optional<SuperFunction> nu;
  bool sqrt_closed = false;                // Delta_0 sqrt(rho) = 0
  std::optional<SuperFunction> degree_zero;  // w_0 of the closed form of sqrt(rho), when nu = 0
  std::string status;
};

/// Delta sqrt(rho) = nu sqrt(rho). When Delta_rho^2 = 0 the quotient is an odd
/// constant nu; otherwise it is a nonconstant Hamiltonian of Delta_rho^2.
inline NuReport nu_constant(const VolumeForm& rho, int n) {
  NuReport rep;
  SuperFunction r = sqrt_even(rho.coefficient());
  rep.quotient = delta0(r) * invert(r);
  rep.sqrt_closed = delta0(r).is_zero();
  rep.delta_squared_zero = delta_rho_squared_vanishes(rho, n);
  rep.constant = is_parameter_constant(rep.quotient);
  if (!rep.delta_squared_zero) {
    rep.status = "Delta_rho^2 != 0: quotient is a nonconstant Hamiltonian";
    return rep;
  }
  if (!rep.constant) {
    rep.status = "Delta_rho^2 = 0 on generators but the quotient is not constant";
    return rep;
  }
  rep.nu = rep.quotient;
  if (rep.quotient.is_zero()) {
    rep.degree_zero = degree_zero_coefficient(Density::semidensity(r), n);
    rep.status = "nu = 0: sqrt(rho) closed, Delta_rho^2 = 0";
  } else {
    rep.status = "nu != 0: Delta_rho^2 = 0 but sqrt(rho) is not closed";
  }
  return rep;
}

}  // namespace oddsym
