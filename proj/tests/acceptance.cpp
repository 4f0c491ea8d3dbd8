// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oddsym/oddsym.hpp"

using namespace oddsym;
using namespace oddsym::samples;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

SuperFunction XI(int i) { return SuperFunction::xi(i); }
SuperFunction PE(int i) { return SuperFunction::variable(Var::pe(i)); }
SuperFunction PO(int i) { return SuperFunction::generator(OddGenerator::po(i)); }

DifferentialForm random_form(sampling::Random& rng, int n) {
  Substitution rename;
  for (int i = 1; i <= n; ++i) rename.set(OddGenerator::theta(i), XI(i));
  return {substitute(rng.function(n, 2), rename), n};
}

std::vector<Transition> all_transitions() {
  std::vector<Transition> out;
  for (int n = 1; n <= 3; ++n)
    for (auto& t : symplectic_transitions(n)) out.push_back(t);
  return out;
}

// 1. graded antisymmetry, Leibniz and Jacobi on the exhaustive degree <= 2 basis
void bracket_axioms(Outcome& o) {
  auto basis = sampling::monomial_basis(2, 2);
  auto start = Clock::now();
  auto rep = check_axioms(Bracket::canonical_odd(), basis);
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.require(rep.triples >= 10000, "fewer than 10^4 triples");
  o.require(rep.ok(), rep.ok() ? "" : rep.violations.front().axiom);
  o.require(secs < 60, "slower than 60 s");
  o.detail << basis.size() << " basis elements, " << rep.pairs << " pairs, " << rep.triples << " triples, " << secs
           << " s";
}

// 2. Delta_0^2 = 0 on functions and the canonical Laplacian squared on semidensities
void nilpotency(Outcome& o) {
  sampling::Random rng(2);
  for (int k = 0; k < 100; ++k) {
    int n = 1 + k % 3;
    auto f = rng.function(n);
    o.require(delta0(delta0(f)).is_zero(), "Delta_0^2 " + f.to_string());
    auto s = Density::semidensity(rng.function(n));
    o.require(canonical_delta(canonical_delta(s)).coefficient.is_zero(), "Delta^2 s");
  }
  o.detail << "100 functions, 100 semidensities, n = 1..3";
}

// 3. Leibniz rule and bracket derivation for Delta_rho over five volume forms
void laplacian_identities(Outcome& o) {
  sampling::Random rng(3);
  auto rhos = volume_forms();
  for (const auto& rho : rhos)
    for (int k = 0; k < 100; ++k) {
      auto f = rng.random_parity(3, 2), g = rng.random_parity(3, 2);
      Scalar s(*f.parity() % 2 ? -1 : 1);
      o.require(delta_rho(rho, f * g) ==
                    delta_rho(rho, f) * g + s * odd_bracket(f, g) + s * (f * delta_rho(rho, g)),
                "Leibniz, rho = " + rho.coefficient().to_string());
      auto u = rng.random_parity(3, 2), v = rng.random_parity(3, 2);
      Scalar t(*u.parity() % 2 ? 1 : -1);
      o.require(delta_rho(rho, odd_bracket(u, v)) ==
                    odd_bracket(delta_rho(rho, u), v) + t * odd_bracket(u, delta_rho(rho, v)),
                "bracket derivation, rho = " + rho.coefficient().to_string());
    }
  o.detail << rhos.size() << " volume forms x 100 pairs per identity";
}

// 4. Delta_0 Ber^(1/2) = 0
void bv_identity_check(Outcome& o) {
  auto ts = all_transitions();
  int types[3] = {0, 0, 0};
  for (int n = 1; n <= 3; ++n) {
    types[0] += point_transitions(n).size();
    types[1] += shift_transitions(n).size();
    types[2] += flow_transitions(n).size();
  }
  o.require(ts.size() >= 20, "fewer than 20 transitions");
  for (const auto& t : ts) {
    o.require(is_symplectomorphism(t).ok(), "transition not symplectic");
    o.require(bv_identity(t).is_zero(), "Delta Ber^(1/2) = " + bv_identity(t).to_string());
  }
  o.detail << ts.size() << " transitions: " << types[0] << " point, " << types[1] << " shift, " << types[2]
           << " flow, rest compositions";
}

// 5. transform then Delta equals Delta then transform
void equivariance(Outcome& o) {
  sampling::Random rng(5);
  auto ts = all_transitions();
  std::size_t cases = 0;
  for (const auto& t : ts)
    for (int k = 0; k < 3; ++k, ++cases) {
      auto s = Density::semidensity(rng.function(t.n, 2));
      o.require(transform_density(canonical_delta(s), t) == canonical_delta(transform_density(s, t)),
                "s = " + s.coefficient.to_string());
    }
  o.detail << cases << " (transition, semidensity) pairs";
}

// 6. Ber = 4 for the scaling, and the three images of forms on R^2
void concrete_values(Outcome& o) {
  auto ber = berezinian(Transition({}, {}, 1, {C(2) * X(1), C(1, 2) * T(1)}));
  o.require(ber == C(4), "Ber = " + ber.to_string());
  sampling::Random rng(6);
  for (int k = 0; k < 20; ++k) {
    SuperFunction w = SuperFunction(Scalar(rng.x_monomial(2, 3)) * Scalar(rng.coefficient())) + C(k);
    SuperFunction w2 = SuperFunction(Scalar(rng.x_monomial(2, 3)) * Scalar(rng.coefficient()));
    o.require(form_to_semidensity(DifferentialForm(w, 2)).coefficient == w * T(1) * T(2), "0-form image");
    o.require(form_to_semidensity(DifferentialForm(w * XI(1) + w2 * XI(2), 2)).coefficient == w * T(2) - w2 * T(1),
              "1-form image");
    o.require(form_to_semidensity(DifferentialForm(w * XI(1) * XI(2), 2)).coefficient == -w, "2-form image");
  }
  o.detail << "Ber = " << ber.to_string() << "; f -> f th1 th2, w1 dx1 + w2 dx2 -> w1 th2 - w2 th1, w dx1 dx2 -> -w";
}

// 7. Delta s_w = s_dw
void commutation_square(Outcome& o) {
  std::size_t exhaustive = 0;
  for (const auto& xm : sampling::x_monomials(2, 2))
    for (ThetaMonomial m = 0; m < 4; ++m, ++exhaustive) {
      SuperFunction coeff{Scalar(xm)};
      SuperFunction xis(1);
      if (m & 1) xis = xis * XI(1);
      if (m & 2) xis = xis * XI(2);
      DifferentialForm w(coeff * xis, 2);
      o.require(delta0(form_to_semidensity(w).coefficient) == form_to_semidensity(de_rham(w)).coefficient,
                "w = " + w.function().to_string());
    }
  sampling::Random rng(7);
  for (int k = 0; k < 100; ++k) {
    auto w = random_form(rng, 3);
    o.require(delta0(form_to_semidensity(w).coefficient) == form_to_semidensity(de_rham(w)).coefficient,
              "w = " + w.function().to_string());
  }
  o.detail << exhaustive << " basis forms at n = 2, 100 random forms at n = 3";
}

// 8. cocycle relation and Delta_rho^2 as a Hamiltonian field, perfect-square rho
void cocycle(Outcome& o) {
  sampling::Random rng(8);
  auto fixed = square_volume_forms();
  for (int k = 0; k < 50; ++k) {
    int n = 1 + k % 3;
    auto w = rng.even_invertible(n);
    VolumeForm rho(w * w);
    auto f = rng.function(n, 2);
    o.require(cocycle_relation(rho, fixed[k % fixed.size()], f).holds(), "cocycle, w = " + w.to_string());
    o.require(delta_squared_hamiltonian(rho, f).holds(), "Delta_rho^2, w = " + w.to_string());
  }
  o.detail << "50 random (rho, f) per identity";
}

// 9. normal => Delta sqrt(rho) = 0 => Delta_rho^2 = 0, with an odd-constant witness
void master_chain(Outcome& o) {
  // rho = Ber(t) is normal: the inverse transition brings it to 1.
  std::vector<std::pair<Transition, Transition>> pairs;
  for (long c : {2, 3, 5})
    pairs.emplace_back(Transition({}, {}, 1, {C(c) * X(1), C(1, c) * T(1)}),
                       Transition({}, {}, 1, {C(1, c) * X(1), C(c) * T(1)}));
  for (int n = 1; n <= 3; ++n) {
    std::vector<SuperFunction> a, b;
    for (int i = 1; i <= n; ++i) {
      a.push_back(C(3) * E(1) * X(i) * X(i) + E(2));
      b.push_back(-(C(3) * E(1) * X(i) * X(i) + E(2)));
    }
    pairs.emplace_back(shift_transition(n, a), shift_transition(n, b));
  }
  for (const auto& [Q, n] : std::vector<std::pair<SuperFunction, int>>{{E(1) * E(2) * X(1) * X(1) * T(1), 1},
                                                                        {E(1) * X(1) * T(1) * T(2), 2},
                                                                        {X(1) * T(1) * T(2) * T(3), 3}})
    pairs.emplace_back(exponentiate_hamiltonian(Q, Scalar(1), n), exponentiate_hamiltonian(Q, Scalar(-1), n));
  for (const auto& [t, inv] : pairs) {
    VolumeForm rho(berezinian(t));
    auto rep = is_normal(rho, {inv}, t.n);
    o.require(rep.normal(), "not normal: " + rho.coefficient().to_string());
    o.require(rep.sqrt_closed.value_or(false), "sqrt not closed: " + rho.coefficient().to_string());
    o.require(rep.delta_squared_zero, "Delta_rho^2 != 0: " + rho.coefficient().to_string());
  }
  auto w = C(1) + E(1) * X(1) * T(1);
  auto nu = nu_constant(VolumeForm(w * w), 1);
  o.require(nu.delta_squared_zero && !nu.sqrt_closed && nu.nu && *nu.nu == -E(1), "nu witness");
  auto bad = C(1) + X(1) * X(2) * T(1) * T(2);
  o.require(!nu_constant(VolumeForm(bad * bad), 2).delta_squared_zero, "non-normal contrast");
  o.detail << pairs.size() << " normal rho; rho = (1 + eps1 x1 th1)^2 has Delta_rho^2 = 0, nu = "
           << (nu.nu ? nu.nu->to_string() : "none") << ", sqrt(rho) not closed";
}

// 10. Jacobi of the derived bracket fails iff {S, S} != 0; even S gives a symmetric form
void derived_bracket_check(Outcome& o) {
  auto P = PhaseSpace::cotangent(2);
  MasterHamiltonian bad(P, X(2) * PE(1) * PO(1) + PE(2) * PO(2));
  MasterHamiltonian good(P, X(1) * PE(1) * PO(1) + PE(2) * PO(2));
  auto basis = sampling::monomial_basis(2, 1);
  bool bad_master = master_condition(bad).is_zero();
  bool bad_jacobi = !check_axioms(derived(bad), basis).failed("jacobi");
  bool good_master = master_condition(good).is_zero();
  bool good_jacobi = !check_axioms(derived(good), basis).failed("jacobi");
  o.require(!bad_master && !bad_jacobi, "{S,S} != 0 should break Jacobi");
  o.require(good_master && good_jacobi, "{S,S} = 0 should give Jacobi");
  MasterHamiltonian metric(P, C(1, 2) * (PE(1) * PE(1) + X(1) * PE(2) * PE(2)) + T(1) * T(2) * PE(1) * PE(2));
  o.require(metric.derived_parity() == 0 && master_condition(metric).is_zero(), "metric master condition");
  sampling::Random rng(10);
  for (int k = 0; k < 50; ++k) {
    auto f = rng.homogeneous(2, 0, 2), g = rng.homogeneous(2, 0, 2);
    o.require(derived_bracket(metric, f, g) == derived_bracket(metric, g, f), "metric symmetry");
  }
  o.detail << "S = x2 pe1 po1 + pe2 po2 fails both, S = x1 pe1 po1 + pe2 po2 passes both, even S symmetric";
}

// 11. [Delta, f] s against the Lie derivative computed from the flow
void commutator(Outcome& o) {
  sampling::Random rng(11);
  for (int k = 0; k < 100; ++k) {
    int n = 1 + k % 2;
    auto f = rng.function(n, 2), s = rng.function(n, 2);
    o.require(commutator_relation(Density::semidensity(s), f, n).holds(),
              "f = " + f.to_string() + ", s = " + s.to_string());
  }
  o.detail << "100 random (f, s), n = 1..2";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"bracket axioms, exhaustive n = 2", bracket_axioms},
      {"nilpotency of Delta_0 and of the canonical Laplacian", nilpotency},
      {"Leibniz and bracket derivation for Delta_rho", laplacian_identities},
      {"Delta_0 Ber^(1/2) = 0 for symplectic transitions", bv_identity_check},
      {"equivariance of the canonical Laplacian", equivariance},
      {"scaling Berezinian and the images of forms on R^2", concrete_values},
      {"Delta s_w = s_dw", commutation_square},
      {"cocycle relation and Delta_rho^2 Hamiltonian", cocycle},
      {"normal => closed sqrt => Delta_rho^2 = 0", master_chain},
      {"derived bracket Jacobi iff master condition", derived_bracket_check},
      {"[Delta, f] s = L_(D_f) s via the flow", commutator},
  };
  auto start = Clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << ". " << criteria[i].first << " [" << o.detail.str()
              << "] (" << secs << " s)" << std::endl;
    failed += !o.ok;
  }
  double total = std::chrono::duration<double>(Clock::now() - start).count();
  std::cout << (failed ? "FAILED" : "ALL PASSED") << ": " << criteria.size() - failed << "/" << criteria.size()
            << " criteria in " << total << " s" << std::endl;
  return failed ? 1 : 0;
}
