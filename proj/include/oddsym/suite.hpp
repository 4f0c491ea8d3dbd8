#pragma once

// Batch verification of the identities of every module on seeded random
// samples. Each check is reported under a short tag such as "bracket.jacobi".

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oddsym/master.hpp"
#include "oddsym/samples.hpp"
#include "oddsym/sampling.hpp"

namespace oddsym::suite {

/// Deliberate sign bugs, used to confirm that the suite catches them.
enum class Fault { none, bracket_sign, laplacian_sign };

struct Options {
  int n = 2;
  std::uint64_t seed = 7;
  int count = 50;
  Fault fault = Fault::none;
};

struct Check {
  std::string suite;
  std::string tag;
  std::string statement;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string counterexample;
  double seconds = 0;
  bool ok() const { return failures == 0; }
};

struct Report {
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  const Check* find(const std::string& tag) const {
    for (const auto& c : checks)
      if (c.tag == tag) return &c;
    return nullptr;
  }
};

inline std::vector<std::string> suite_names() { return {"axioms", "laplacian", "bv", "fourier", "master"}; }

namespace detail {

/// The bracket and Laplacian under test, possibly with an injected fault.
struct Ops {
  Fault fault = Fault::none;

  SuperFunction bracket(const SuperFunction& f, const SuperFunction& g) const {
    if (fault != Fault::bracket_sign) return odd_bracket(f, g);
    auto [fe, fo] = f.parity_split();
    auto [ge, go] = g.parity_split();
    return odd_bracket(fe, g) + odd_bracket(fo, ge) - odd_bracket(fo, go);
  }
  SuperFunction delta(const SuperFunction& f) const {
    SuperFunction d = delta0(f);
    if (fault == Fault::laplacian_sign)
      d -= Scalar(2) * partial_even(partial_odd(f, OddGenerator::theta(1)), Var::x(1));
    return d;
  }
  SuperFunction delta_rho(const VolumeForm& rho, const SuperFunction& f) const {
    return delta(f) + Scalar::rational(1, 2) * (rho.inverse() * bracket(rho.coefficient(), f));
  }
  Bracket as_bracket() const {
    Ops self = *this;
    return {1, [self](const SuperFunction& f, const SuperFunction& g) { return self.bracket(f, g); }};
  }
};

inline int sign(int p) { return p % 2 ? -1 : 1; }

class Runner {
 public:
  Runner(std::string suite, Report& report) : suite_(std::move(suite)), report_(report) {}

  /// `one_case` returns a description of the failure, or nullopt.
  void check(const std::string& tag, const std::string& statement, std::size_t cases,
             const std::function<std::optional<std::string>(std::size_t)>& one_case) {
    Check c{suite_, tag, statement, cases, 0, {}, 0};
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < cases; ++k) {
      std::optional<std::string> bad;
      try {
        bad = one_case(k);
      } catch (const Error& e) {
        bad = std::string("error: ") + e.what();
      }
      if (bad) {
        if (c.failures == 0) c.counterexample = *bad;
        ++c.failures;
      }
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(c));
  }

 private:
  std::string suite_;
  Report& report_;
};

inline std::optional<std::string> unequal(const SuperFunction& lhs, const SuperFunction& rhs, const std::string& what) {
  if (lhs == rhs) return std::nullopt;
  return what + ": " + lhs.to_string() + " != " + rhs.to_string();
}

inline std::optional<std::string> nonzero(const SuperFunction& v, const std::string& what) {
  if (v.is_zero()) return std::nullopt;
  return what + " = " + v.to_string();
}

inline void run_axioms(const Options& o, const Ops& ops, Report& rep) {
  Runner r("axioms", rep);
  sampling::Random rng(o.seed);
  std::vector<SuperFunction> samples;
  for (int k = 0; k < o.count; ++k) samples.push_back(rng.function(o.n, 2, 3));
  AxiomReport ax = check_axioms(ops.as_bracket(), samples, 1u << 30);
  for (const std::string axiom : {"parity", "antisymmetry", "leibniz", "jacobi"}) {
    std::vector<const AxiomViolation*> bad;
    for (const auto& v : ax.violations)
      if (v.axiom == axiom) bad.push_back(&v);
    std::size_t cases = (axiom == "jacobi" || axiom == "leibniz") ? ax.triples : ax.pairs;
    r.check("bracket." + axiom, "canonical odd bracket: graded " + axiom, cases, [&](std::size_t k) {
      if (k >= bad.size()) return std::optional<std::string>();
      std::string args;
      for (const auto& a : bad[k]->arguments) args += (args.empty() ? "" : ", ") + a.to_string();
      return std::optional<std::string>("(" + args + ") residual " + bad[k]->residual.to_string());
    });
  }

  // Jacobi of the derived bracket fails exactly when {S, S} != 0.
  using samples::C;
  using samples::T;
  using samples::X;
  const auto P = PhaseSpace::cotangent(2);
  const auto Pi = PhaseSpace::even_base_cotangent(3, true);
  auto pe = [](int i) { return SuperFunction::variable(Var::pe(i)); };
  auto po = [](int i) { return SuperFunction::generator(OddGenerator::po(i)); };
  std::vector<std::pair<MasterHamiltonian, std::vector<SuperFunction>>> hams = {
      {MasterHamiltonian(P, pe(1) * po(1) + pe(2) * po(2)), sampling::monomial_basis(2, 1)},
      {MasterHamiltonian(P, X(1) * pe(1) * po(1) + pe(2) * po(2)), sampling::monomial_basis(2, 1)},
      {MasterHamiltonian(P, X(2) * pe(1) * po(1) + pe(2) * po(2)), {X(1), X(2), T(1), T(2)}},
      {MasterHamiltonian(Pi, po(1) * po(2) + po(2) * po(3)), {X(1), X(2), X(3), X(1) * X(2)}},
      {MasterHamiltonian(Pi, po(1) * po(2) + X(2) * po(2) * po(3)), {X(1), X(2), X(3)}},
  };
  r.check("derived.master-condition", "derived bracket satisfies Jacobi iff {S, S} = 0", hams.size(),
          [&](std::size_t k) -> std::optional<std::string> {
            const auto& [M, basis] = hams[k];
            bool master = master_condition(M).is_zero();
            bool jacobi = !check_axioms(derived(M), basis).failed("jacobi");
            if (master == jacobi) return std::nullopt;
            return "S = " + M.function().to_string();
          });
  MasterHamiltonian metric(P, C(1, 2) * (pe(1) * pe(1) + X(1) * pe(2) * pe(2)) + T(1) * T(2) * pe(1) * pe(2));
  r.check("derived.parity-flipped", "even fiber-quadratic S gives a symmetric derived form", o.count,
          [&](std::size_t) -> std::optional<std::string> {
            auto f = rng.homogeneous(2, 0, 2), g = rng.homogeneous(2, 0, 2);
            return unequal(derived_bracket(metric, f, g), derived_bracket(metric, g, f), "symmetry");
          });
}

inline void run_laplacian(const Options& o, const Ops& ops, Report& rep) {
  Runner r("laplacian", rep);
  sampling::Random rng(o.seed + 1);
  r.check("laplacian.nilpotent", "Delta_0^2 = 0", o.count,
          [&](std::size_t) { return nonzero(ops.delta(ops.delta(rng.function(o.n))), "Delta^2 f"); });
  const auto rhos = samples::volume_forms();
  r.check("laplacian.leibniz", "Delta(fg) = Delta f g + (-1)^f {f, g} + (-1)^f f Delta g", o.count,
          [&](std::size_t k) {
            const auto& rho = rhos[k % rhos.size()];
            auto f = rng.random_parity(o.n, 2), g = rng.random_parity(o.n, 2);
            Scalar s(sign(*f.parity()));
            return unequal(ops.delta_rho(rho, f * g),
                           ops.delta_rho(rho, f) * g + s * ops.bracket(f, g) + s * (f * ops.delta_rho(rho, g)),
                           "rho = " + rho.coefficient().to_string() + ", f = " + f.to_string() + ", g = " + g.to_string());
          });
  r.check("laplacian.bracket-derivation", "Delta{f, g} = {Delta f, g} + (-1)^(f+1) {f, Delta g}", o.count,
          [&](std::size_t k) {
            const auto& rho = rhos[k % rhos.size()];
            auto f = rng.random_parity(o.n, 2), g = rng.random_parity(o.n, 2);
            return unequal(ops.delta_rho(rho, ops.bracket(f, g)),
                           ops.bracket(ops.delta_rho(rho, f), g) +
                               Scalar(sign(*f.parity() + 1)) * ops.bracket(f, ops.delta_rho(rho, g)),
                           "f = " + f.to_string() + ", g = " + g.to_string());
          });
  const auto squares = samples::square_volume_forms();
  r.check("laplacian.cocycle", "Delta_rho' = Delta_rho + {H(rho, rho'), .} relation", o.count, [&](std::size_t k) {
    auto rel = cocycle_relation(squares[k % squares.size()], squares[(k + 1) % squares.size()], rng.function(o.n, 2));
    return unequal(rel.lhs, rel.rhs, "cocycle");
  });
  r.check("laplacian.square-hamiltonian", "Delta_rho^2 f = {Delta sqrt(rho) / sqrt(rho), f}", o.count,
          [&](std::size_t k) {
            auto rel = delta_squared_hamiltonian(squares[k % squares.size()], rng.function(o.n, 2));
            return unequal(rel.lhs, rel.rhs, "Delta_rho^2");
          });
  const int m = std::min(o.n, 2);
  r.check("laplacian.commutator-lie", "[Delta, f] s = L_{D_f} s via the flow", o.count, [&](std::size_t) {
    auto f = rng.function(m, 2), s = rng.function(m, 2);
    SuperFunction lhs = ops.delta(f * s) - f.parity_split().first * ops.delta(s) + f.parity_split().second * ops.delta(s);
    return unequal(lhs, flow_lie_derivative(f, s, m), "f = " + f.to_string() + ", s = " + s.to_string());
  });
}

inline void run_bv(const Options& o, const Ops& ops, Report& rep) {
  Runner r("bv", rep);
  sampling::Random rng(o.seed + 2);
  using samples::C;
  using samples::T;
  using samples::X;
  r.check("bv.scaling-berezinian", "Ber of x -> 2x, th -> th/2 equals 4", 1, [&](std::size_t) {
    return unequal(berezinian(Transition({}, {}, 1, {C(2) * X(1), C(1, 2) * T(1)})), C(4), "Ber");
  });
  const auto ts = samples::symplectic_transitions(o.n);
  r.check("bv.symplectic", "sample transitions preserve the canonical bracket", ts.size(),
          [&](std::size_t k) -> std::optional<std::string> {
            auto sr = is_symplectomorphism(ts[k]);
            if (sr.ok()) return std::nullopt;
            return sr.failures.front();
          });
  r.check("bv.identity", "Delta_0 Ber^(1/2) = 0", ts.size(),
          [&](std::size_t k) { return nonzero(ops.delta(sqrt_even(berezinian(ts[k]))), "Delta Ber^(1/2)"); });
  r.check("bv.equivariance", "transform then Delta equals Delta then transform", ts.size() * 2, [&](std::size_t k) {
    const auto& t = ts[k % ts.size()];
    auto s = Density::semidensity(rng.function(o.n, 2));
    SuperFunction a = transform_density(Density::semidensity(ops.delta(s.coefficient)), t).coefficient;
    SuperFunction b = ops.delta(transform_density(s, t).coefficient);
    return unequal(a, b, "s = " + s.coefficient.to_string());
  });
  r.check("bv.chain-rule", "Ber(T1;T2) = Ber(T2) pull(Ber(T1))", ts.size() - 1, [&](std::size_t k) {
    const auto& t1 = ts[k];
    const auto& t2 = ts[k + 1];
    return unequal(berezinian(compose(t1, t2)), berezinian(t2) * t2.pull(berezinian(t1)), "chain rule");
  });
}

inline void run_fourier(const Options& o, const Ops& ops, Report& rep) {
  Runner r("fourier", rep);
  sampling::Random rng(o.seed + 3);
  using samples::X;
  using samples::T;
  auto xi = [](int i) { return SuperFunction::xi(i); };
  auto random_form = [&](int n) {
    Substitution rename;
    for (int i = 1; i <= n; ++i) rename.set(OddGenerator::theta(i), xi(i));
    return DifferentialForm(substitute(rng.function(n, 2), rename), n);
  };
  r.check("fourier.two-dimensional-images", "f -> f th1 th2, w1 dx1 + w2 dx2 -> w1 th2 - w2 th1, w dx1 dx2 -> -w", 3,
          [&](std::size_t k) {
            auto w = X(1) * X(2) + X(2);
            auto w2 = X(1);
            if (k == 0) return unequal(form_to_semidensity(DifferentialForm(w, 2)).coefficient, w * T(1) * T(2), "0-form");
            if (k == 1)
              return unequal(form_to_semidensity(DifferentialForm(w * xi(1) + w2 * xi(2), 2)).coefficient,
                             w * T(2) - w2 * T(1), "1-form");
            return unequal(form_to_semidensity(DifferentialForm(w * xi(1) * xi(2), 2)).coefficient, -w, "2-form");
          });
  r.check("fourier.round-trip", "semidensity_to_form inverts form_to_semidensity", o.count,
          [&](std::size_t) -> std::optional<std::string> {
            auto w = random_form(o.n);
            if (semidensity_to_form(form_to_semidensity(w), o.n) == w) return std::nullopt;
            return "w = " + w.function().to_string();
          });
  r.check("fourier.commutation", "Delta s_w = s_(dw)", o.count, [&](std::size_t) {
    auto w = random_form(o.n);
    return unequal(ops.delta(form_to_semidensity(w).coefficient), form_to_semidensity(de_rham(w)).coefficient,
                   "w = " + w.function().to_string());
  });
  r.check("fourier.interior", "th_i s_w = s_(i_(d/dx^i) w)", o.count, [&](std::size_t k) {
    auto w = random_form(o.n);
    int i = static_cast<int>(k % o.n);
    std::vector<SuperFunction> v(o.n);
    v[i] = SuperFunction(1);
    return unequal(T(i + 1) * form_to_semidensity(w).coefficient, form_to_semidensity(interior(v, w)).coefficient,
                   "w = " + w.function().to_string());
  });
  r.check("fourier.cartan", "[Delta, X^i th_i] s_w = s_(L_X w)", o.count, [&](std::size_t) {
    auto w = random_form(o.n);
    std::vector<SuperFunction> v;
    for (int i = 0; i < o.n; ++i) v.push_back(SuperFunction(Scalar(rng.x_monomial(o.n, 2)) * Scalar(rng.coefficient())));
    SuperFunction f = vector_as_function(v), s = form_to_semidensity(w).coefficient;
    return unequal(ops.delta(f * s) + f * ops.delta(s), form_to_semidensity(cartan_lie(v, w)).coefficient,
                   "w = " + w.function().to_string());
  });
}

inline void run_master(const Options& o, const Ops& ops, Report& rep) {
  Runner r("master", rep);
  sampling::Random rng(o.seed + 4);
  using samples::C;
  using samples::E;
  using samples::T;
  using samples::X;
  r.check("master.exp-identity", "Delta exp g = (Delta g + 1/2 {g, g}) exp g", o.count,
          [&](std::size_t) -> std::optional<std::string> {
            auto g = rng.homogeneous(o.n, 0, 2).nilpotent_part();
            SuperFunction e = exp_nilpotent(g);
            return unequal(ops.delta(e), (ops.delta(g) + Scalar::rational(1, 2) * ops.bracket(g, g)) * e,
                           "g = " + g.to_string());
          });
  r.check("master.hbar-limit", "hbar^0 part of -4 hbar Delta S + {S, S} is {S, S}", o.count,
          [&](std::size_t) -> std::optional<std::string> {
            auto S = rng.homogeneous(o.n, 0, 2) + hbar() * rng.homogeneous(o.n, 0, 1);
            if (classical_master_check(S).hbar_limit_agrees) return std::nullopt;
            return "S = " + S.to_string();
          });
  // normal => Delta sqrt(rho) = 0 => Delta_rho^2 = 0, with rho = Ber(t) normal
  // through the inverse transition.
  std::vector<std::pair<Transition, Transition>> pairs;
  pairs.emplace_back(Transition({}, {}, 1, {C(2) * X(1), C(1, 2) * T(1)}),
                     Transition({}, {}, 1, {C(1, 2) * X(1), C(2) * T(1)}));
  {
    std::vector<SuperFunction> a, b;
    for (int i = 1; i <= o.n; ++i) {
      a.push_back(E(1) * X(i) * X(i) + E(2));
      b.push_back(-(E(1) * X(i) * X(i) + E(2)));
    }
    pairs.emplace_back(shift_transition(o.n, a), shift_transition(o.n, b));
  }
  {
    SuperFunction Q = o.n == 1 ? E(1) * E(2) * X(1) * X(1) * T(1) : E(1) * X(1) * T(1) * T(2);
    pairs.emplace_back(exponentiate_hamiltonian(Q, Scalar(1), o.n), exponentiate_hamiltonian(Q, Scalar(-1), o.n));
  }
  r.check("master.normal-chain", "normal => Delta sqrt(rho) = 0 => Delta_rho^2 = 0", pairs.size(),
          [&](std::size_t k) -> std::optional<std::string> {
            const auto& [t, inv] = pairs[k];
            VolumeForm rho(berezinian(t));
            auto nr = is_normal(rho, {inv}, t.n);
            if (!nr.normal()) return "not normal through the inverse: rho = " + rho.coefficient().to_string();
            if (!nr.sqrt_closed.value_or(false)) return "sqrt(rho) not closed: rho = " + rho.coefficient().to_string();
            if (!nr.delta_squared_zero) return "Delta_rho^2 != 0: rho = " + rho.coefficient().to_string();
            return std::nullopt;
          });
  r.check("master.nu-witness", "rho = (1 + eps1 x1 th1)^2: Delta_rho^2 = 0 with nu = -eps1", 1,
          [&](std::size_t) -> std::optional<std::string> {
            auto w = C(1) + E(1) * X(1) * T(1);
            auto nr = nu_constant(VolumeForm(w * w), 1);
            if (!nr.delta_squared_zero || nr.sqrt_closed || !nr.nu || !(*nr.nu == -E(1)))
              return "nu = " + nr.quotient.to_string();
            return std::nullopt;
          });
  r.check("master.exact-closed", "s = Delta r is closed", o.count, [&](std::size_t) {
    auto rr = rng.function(o.n);
    return nonzero(ops.delta(ops.delta(rr)), "Delta(Delta r)");
  });
}

}  // namespace detail

/// Runs one suite ("axioms", "laplacian", "bv", "fourier", "master") or "all".
inline Report run_suite(const std::string& name, const Options& o) {
  if (o.n < 1 || o.n > 3) throw DomainError("suite dimension n must be 1, 2 or 3");
  if (o.count < 1) throw DomainError("suite count must be positive");
  detail::Ops ops{o.fault};
  Report rep;
  bool all = name == "all";
  bool known = all;
  if (all || name == "axioms") detail::run_axioms(o, ops, rep), known = true;
  if (all || name == "laplacian") detail::run_laplacian(o, ops, rep), known = true;
  if (all || name == "bv") detail::run_bv(o, ops, rep), known = true;
  if (all || name == "fourier") detail::run_fourier(o, ops, rep), known = true;
  if (all || name == "master") detail::run_master(o, ops, rep), known = true;
  if (!known) throw DomainError("unknown suite '" + name + "'");
  return rep;
}

}  // namespace oddsym::suite
