#pragma once

// Sample Darboux transitions of the three basic types and their compositions,
// and sample volume forms, shared by the tests and the check suite.

#include <vector>

#include "oddsym/charts.hpp"

namespace oddsym::samples {

inline SuperFunction X(int i) { return SuperFunction::x(i); }
inline SuperFunction T(int i) { return SuperFunction::theta(i); }
inline SuperFunction E(int i) { return SuperFunction::eps(i); }
inline SuperFunction C(long p, long q = 1) { return SuperFunction(Scalar::rational(p, q)); }

/// Induced point transformations with nonlinear x(x') and perfect-square Berezinian.
inline std::vector<Transition> point_transitions(int n) {
  std::vector<Transition> out;
  if (n == 1) {
    out.push_back(point_transition(1, {C(2) * X(1)}));
    out.push_back(point_transition(1, {X(1) * X(1) * X(1)}));
    out.push_back(point_transition(1, {X(1) * X(1) + C(3) * X(1)}));
  } else if (n == 2) {
    out.push_back(point_transition(2, {X(1) + X(2) * X(2), X(2)}));
    out.push_back(point_transition(2, {X(1) * (C(1) + X(2)), X(2)}));
    out.push_back(point_transition(2, {X(1) + X(2), X(1) * X(1) - X(2)}));
    out.push_back(point_transition(2, {X(2) * X(2) * X(2), X(1) + X(2)}));
  } else {
    out.push_back(point_transition(3, {X(1) + X(2) * X(3), X(2), X(3) * X(3)}));
    out.push_back(point_transition(3, {X(2), X(3), X(1) * (C(1) + X(3))}));
  }
  return out;
}

/// Shifts th -> th + alpha by closed odd-valued one-forms alpha = d(phi) eps.
inline std::vector<Transition> shift_transitions(int n) {
  std::vector<Transition> out;
  auto gradient = [n](const SuperFunction& phi, const SuperFunction& e) {
    std::vector<SuperFunction> a;
    for (int i = 1; i <= n; ++i) a.push_back(partial_even(phi, Var::x(i)) * e);
    return a;
  };
  if (n == 1) {
    out.push_back(shift_transition(1, {E(1)}));
    out.push_back(shift_transition(1, gradient(X(1) * X(1) * X(1), E(1))));
  } else if (n == 2) {
    out.push_back(shift_transition(2, gradient(X(1) * X(2), E(1))));
    out.push_back(shift_transition(2, gradient(X(1) * X(1) * X(2) + X(2) * X(2), E(2))));
    auto a = gradient(X(1) * X(1), E(1));
    auto b = gradient(X(1) * X(2) * X(2), E(2));
    out.push_back(shift_transition(2, {a[0] + b[0], a[1] + b[1]}));
  } else {
    out.push_back(shift_transition(3, gradient(X(1) * X(2) * X(3), E(1))));
    out.push_back(shift_transition(3, gradient(X(1) * X(1) + X(3), E(2))));
  }
  return out;
}

/// Flows of odd Hamiltonians whose fields vanish on the body.
inline std::vector<Transition> flow_transitions(int n) {
  std::vector<Transition> out;
  if (n == 1) {
    out.push_back(exponentiate_hamiltonian(E(1) * X(1) * X(1) + E(1) * E(2) * X(1) * T(1), Scalar(1), 1));
    out.push_back(exponentiate_hamiltonian(E(1) * E(2) * X(1) * X(1) * T(1), Scalar::rational(1, 2), 1));
  } else if (n == 2) {
    out.push_back(exponentiate_hamiltonian(E(1) * T(1) * T(2), Scalar(1), 2));
    out.push_back(exponentiate_hamiltonian(E(1) * X(1) * T(1) * T(2), Scalar::rational(1, 3), 2));
    out.push_back(exponentiate_hamiltonian(E(1) * (X(1) + X(2) * X(2)) * T(1) * T(2) + E(2) * X(1) * T(1) * T(2),
                                           Scalar(2), 2));
  } else {
    out.push_back(exponentiate_hamiltonian(X(1) * T(1) * T(2) * T(3), Scalar(1), 3));
    out.push_back(exponentiate_hamiltonian(E(1) * X(2) * T(1) * T(3), Scalar(1), 3));
  }
  return out;
}

/// All three types plus pairwise and triple compositions.
inline std::vector<Transition> symplectic_transitions(int n) {
  auto p = point_transitions(n);
  auto s = shift_transitions(n);
  auto f = flow_transitions(n);
  std::vector<Transition> out;
  out.insert(out.end(), p.begin(), p.end());
  out.insert(out.end(), s.begin(), s.end());
  out.insert(out.end(), f.begin(), f.end());
  out.push_back(compose(p[0], s[0]));
  out.push_back(compose(s[0], f[0]));
  out.push_back(compose(f[0], p[0]));
  out.push_back(compose(compose(p[1], f[1]), s[1]));
  return out;
}

/// Volume forms with constant, polynomial, nilpotent-perturbed and rational bodies.
inline std::vector<VolumeForm> volume_forms() {
  const Scalar x1 = Scalar::variable(Var::x(1)), x2 = Scalar::variable(Var::x(2));
  return {
      VolumeForm(C(1)),
      VolumeForm(X(1) * X(1)),
      VolumeForm(C(1) + T(1) * T(2)),
      VolumeForm(SuperFunction((x1 * x1 + Scalar(1)) / (x2 + Scalar(2))) + X(1) * T(1) * T(2)),
      VolumeForm((X(1) + C(3)) * (C(1) + X(2) * T(1) * T(2) + T(2) * T(3))),
  };
}

/// Perfect squares w^2 with invertible w, for the cocycle identities.
inline std::vector<VolumeForm> square_volume_forms() {
  const Scalar x1 = Scalar::variable(Var::x(1)), x2 = Scalar::variable(Var::x(2));
  return {
      VolumeForm((C(1) + X(1) * X(2) * T(1) * T(2)).pow(2)),
      VolumeForm((X(1) + C(2) + T(1) * T(2) * X(2)).pow(2)),
      VolumeForm(SuperFunction((x1 + Scalar(1)) * (x1 + Scalar(1)) / (x2 * x2)) * (C(1) + T(1) * T(3))),
      VolumeForm((C(2) + T(1) * T(2) + X(3) * T(2) * T(3)).pow(2)),
  };
}

}  // namespace oddsym::samples
