#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oddsym/superfunction.hpp"

namespace oddsym {

/// A coordinate of a phase space: an even variable or an odd generator.
struct Coordinate {
  bool odd = false;
  Var var{};
  OddGenerator gen{};

  static Coordinate even(Var v) { return {false, v, {}}; }
  static Coordinate odd_gen(OddGenerator g) { return {true, {}, g}; }

  int parity() const { return odd ? 1 : 0; }
  std::string name() const { return odd ? gen.name() : var.name(); }
  SuperFunction function(const std::string& chart = {}) const {
    return odd ? SuperFunction::generator(gen, chart) : SuperFunction::variable(var, chart);
  }
  bool appears_in(const SuperFunction& f) const {
    return odd ? (f.odd_support() & mono::of(gen)) != 0 : ((f.even_support() >> var.slot()) & 1u) != 0;
  }
  SuperFunction left_derivative(const SuperFunction& f) const {
    return odd ? partial_odd(f, gen) : partial_even(f, var);
  }
  SuperFunction right_derivative(const SuperFunction& f) const {
    return odd ? partial_odd_right(f, gen) : partial_even(f, var);
  }
  friend bool operator==(const Coordinate& a, const Coordinate& b) {
    return a.odd == b.odd && (a.odd ? a.gen == b.gen : a.var == b.var);
  }
};

/// Coordinates x^1..x^n, th_1..th_n of R^{n|n}.
inline std::vector<Coordinate> darboux_coordinates(int n) {
  std::vector<Coordinate> out;
  for (int i = 1; i <= n; ++i) out.push_back(Coordinate::even(Var::x(i)));
  for (int i = 1; i <= n; ++i) out.push_back(Coordinate::odd_gen(OddGenerator::theta(i)));
  return out;
}

/// The canonical odd bracket on R^{n|n} in Darboux coordinates:
/// sum_i df/dx^i dg/dth_i + (-1)^p(f) df/dth_i dg/dx^i, extended bilinearly.
inline SuperFunction odd_bracket(const SuperFunction& f, const SuperFunction& g) {
  SuperFunction result = SuperFunction().with_chart(SuperFunction::common_chart(f, g));
  const std::uint32_t fe = f.even_support(), ge = g.even_support();
  const ThetaMonomial fo = f.odd_support(), go = g.odd_support();
  auto [f_even, f_odd] = f.parity_split();
  for (int i = 1; i <= kMaxIndex; ++i) {
    Var x = Var::x(i);
    OddGenerator th = OddGenerator::theta(i);
    const bool fx = (fe >> x.slot()) & 1u, gx = (ge >> x.slot()) & 1u;
    const bool ft = fo & mono::of(th), gt = go & mono::of(th);
    if (fx && gt) result += partial_even(f, x) * partial_odd(g, th);
    if (ft && gx) {
      SuperFunction dg = partial_even(g, x);
      result += partial_odd(f_even, th) * dg;
      result -= partial_odd(f_odd, th) * dg;
    }
  }
  return result;
}

/// First-order operator sum_A X^A d/dz^A (left derivatives, components on the left).
struct VectorField {
  std::vector<std::pair<Coordinate, SuperFunction>> components;

  SuperFunction apply(const SuperFunction& g) const {
    SuperFunction r;
    for (const auto& [c, comp] : components) {
      if (comp.is_zero() || !c.appears_in(g)) continue;
      r += comp * c.left_derivative(g);
    }
    return r;
  }
  SuperFunction component(const Coordinate& c) const {
    for (const auto& [k, v] : components)
      if (k == c) return v;
    return {};
  }
  bool is_zero() const {
    for (const auto& [c, comp] : components)
      if (!comp.is_zero()) return false;
    return true;
  }
};

/// Divergence with respect to the coordinate volume form of a homogeneous
/// vector field: sum_A (-1)^{a (p(X)+1)} d_A X^A.
inline SuperFunction coordinate_divergence(const VectorField& X, int field_parity) {
  SuperFunction r;
  for (const auto& [c, comp] : X.components) {
    SuperFunction d = c.left_derivative(comp);
    r += (c.parity() * (field_parity + 1)) % 2 ? -d : d;
  }
  return r;
}

/// Component form of D_f on R^{n|n}: (df/dx^i) d/dth_i + (-1)^p(f) (df/dth_i) d/dx^i.
inline VectorField hamiltonian_field(const SuperFunction& f, int n) {
  auto par = f.parity();
  if (!par) throw ParityError("hamiltonian_field: argument must be parity-homogeneous");
  VectorField X;
  for (int i = 1; i <= n; ++i) {
    SuperFunction dth = partial_odd(f, OddGenerator::theta(i));
    X.components.emplace_back(Coordinate::even(Var::x(i)), *par ? -dth : dth);
  }
  for (int i = 1; i <= n; ++i)
    X.components.emplace_back(Coordinate::odd_gen(OddGenerator::theta(i)), partial_even(f, Var::x(i)));
  return X;
}

/// D_f g = {f, g}.
inline SuperFunction hamiltonian_apply(const SuperFunction& f, const SuperFunction& g) { return odd_bracket(f, g); }

enum class PhaseKind { odd_symplectic, cotangent, parity_reversed_cotangent, custom };

/// A bracket of parity epsilon given by its values on coordinate pairs,
/// extended as a biderivation: {F,G} = sum (F d<_A) w^{AB} (d_B G).
class PhaseSpace {
 public:
  PhaseSpace(PhaseKind kind, int epsilon, int n) : kind_(kind), epsilon_(epsilon), n_(n) {}

  /// R^{n|n} with the canonical odd bracket.
  static PhaseSpace odd_symplectic(int n) {
    PhaseSpace P(PhaseKind::odd_symplectic, 1, n);
    for (int i = 1; i <= n; ++i)
      P.set_pair(Coordinate::even(Var::x(i)), Coordinate::odd_gen(OddGenerator::theta(i)), SuperFunction(1));
    return P;
  }

  /// T*(R^{n|n}) with the canonical even bracket; the momentum of x^i is pe_i
  /// (even), that of th_i is po_i (odd).
  static PhaseSpace cotangent(int n) {
    PhaseSpace P(PhaseKind::cotangent, 0, n);
    for (int i = 1; i <= n; ++i) {
      P.set_pair(Coordinate::even(Var::x(i)), Coordinate::even(Var::pe(i)), SuperFunction(1));
      P.set_pair(Coordinate::odd_gen(OddGenerator::theta(i)), Coordinate::odd_gen(OddGenerator::po(i)),
                 SuperFunction(1));
    }
    return P;
  }

  /// Pi T*(R^{n|n}) with the canonical odd bracket; the fiber coordinate of
  /// x^i is po_i (odd), that of th_i is pe_i (even).
  static PhaseSpace parity_reversed_cotangent(int n) {
    PhaseSpace P(PhaseKind::parity_reversed_cotangent, 1, n);
    for (int i = 1; i <= n; ++i) {
      P.set_pair(Coordinate::even(Var::x(i)), Coordinate::odd_gen(OddGenerator::po(i)), SuperFunction(1));
      P.set_pair(Coordinate::odd_gen(OddGenerator::theta(i)), Coordinate::even(Var::pe(i)), SuperFunction(1));
    }
    return P;
  }

  /// Same as the above on a purely even base R^n (no th_i).
  static PhaseSpace even_base_cotangent(int n, bool parity_reversed) {
    PhaseSpace P(parity_reversed ? PhaseKind::parity_reversed_cotangent : PhaseKind::cotangent,
                 parity_reversed ? 1 : 0, n);
    for (int i = 1; i <= n; ++i)
      P.set_pair(Coordinate::even(Var::x(i)),
                 parity_reversed ? Coordinate::odd_gen(OddGenerator::po(i)) : Coordinate::even(Var::pe(i)),
                 SuperFunction(1));
    return P;
  }

  PhaseKind kind() const { return kind_; }
  int epsilon() const { return epsilon_; }
  int dimension() const { return n_; }

  /// Set {a, b} = value and {b, a} by graded antisymmetry.
  void set_pair(const Coordinate& a, const Coordinate& b, SuperFunction value) {
    int sign = ((a.parity() + epsilon_) * (b.parity() + epsilon_)) % 2 ? 1 : -1;
    set_entry(a, b, value);
    set_entry(b, a, sign > 0 ? value : -value);
  }
  /// Overwrite a single table entry {a, b} (no antisymmetrization).
  void set_entry(const Coordinate& a, const Coordinate& b, SuperFunction value) {
    int ia = index_of(a), ib = index_of(b);
    table_[{ia, ib}] = std::move(value);
  }

  const std::vector<Coordinate>& coordinates() const { return coords_; }

  std::vector<Coordinate> fiber_coordinates() const {
    std::vector<Coordinate> out;
    for (const auto& c : coords_)
      if (is_fiber(c)) out.push_back(c);
    return out;
  }
  static bool is_fiber(const Coordinate& c) {
    return c.odd ? c.gen.kind == OddKind::po : c.var.kind == VarKind::pe;
  }

  SuperFunction bracket(const SuperFunction& F, const SuperFunction& G) const {
    check_generators(F);
    check_generators(G);
    std::vector<SuperFunction> dF(coords_.size()), dG(coords_.size());
    std::vector<bool> hasF(coords_.size()), hasG(coords_.size());
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      hasF[k] = coords_[k].appears_in(F);
      hasG[k] = coords_[k].appears_in(G);
    }
    SuperFunction r = SuperFunction().with_chart(SuperFunction::common_chart(F, G));
    for (const auto& [key, w] : table_) {
      auto [a, b] = key;
      if (w.is_zero() || !hasF[a] || !hasG[b]) continue;
      if (dF[a].is_zero()) dF[a] = coords_[a].right_derivative(F);
      if (dG[b].is_zero()) dG[b] = coords_[b].left_derivative(G);
      r += dF[a] * w * dG[b];
    }
    return r;
  }

  /// D_F as a vector field: components X^B = sum_A (F d<_A) w^{AB}.
  VectorField hamiltonian_field(const SuperFunction& F) const {
    VectorField X;
    for (std::size_t b = 0; b < coords_.size(); ++b) X.components.emplace_back(coords_[b], SuperFunction());
    for (const auto& [key, w] : table_) {
      auto [a, b] = key;
      if (w.is_zero() || !coords_[a].appears_in(F)) continue;
      X.components[b].second += coords_[a].right_derivative(F) * w;
    }
    return X;
  }

  /// Set all fiber coordinates to zero.
  SuperFunction restrict_to_base(const SuperFunction& F) const {
    Substitution s;
    for (const auto& c : fiber_coordinates()) {
      if (c.odd) s.set(c.gen, SuperFunction());
      else s.set(c.var, SuperFunction());
    }
    return substitute(F, s).with_chart(F.chart());
  }

 private:
  int index_of(const Coordinate& c) {
    for (std::size_t k = 0; k < coords_.size(); ++k)
      if (coords_[k] == c) return static_cast<int>(k);
    coords_.push_back(c);
    return static_cast<int>(coords_.size()) - 1;
  }

  void check_generators(const SuperFunction& F) const {
    if (F.odd_support() & mono::kind_mask(OddKind::xi))
      throw DomainError("bracket: fiber generators xi do not belong to this phase space");
    if (kind_ == PhaseKind::odd_symplectic) {
      bool fiber = (F.odd_support() & mono::kind_mask(OddKind::po)) != 0;
      for (int i = 1; i <= kMaxIndex && !fiber; ++i) fiber = (F.even_support() >> Var::pe(i).slot()) & 1u;
      if (fiber) throw DomainError("bracket: cotangent fiber variables used on R^{n|n}");
    }
  }

  PhaseKind kind_;
  int epsilon_;
  int n_;
  std::vector<Coordinate> coords_;
  std::map<std::pair<int, int>, SuperFunction> table_;
};

/// Bilinear bracket of parity epsilon, as a callable.
struct Bracket {
  int epsilon = 1;
  std::function<SuperFunction(const SuperFunction&, const SuperFunction&)> eval;

  SuperFunction operator()(const SuperFunction& f, const SuperFunction& g) const { return eval(f, g); }

  static Bracket canonical_odd() { return {1, [](const auto& f, const auto& g) { return odd_bracket(f, g); }}; }
  static Bracket of(const PhaseSpace& P) {
    return {P.epsilon(), [P](const auto& f, const auto& g) { return P.bracket(f, g); }};
  }
};

inline SuperFunction even_bracket(const SuperFunction& f, const SuperFunction& g, int n) {
  return PhaseSpace::cotangent(n).bracket(f, g);
}
inline SuperFunction odd_fiber_bracket(const SuperFunction& f, const SuperFunction& g, int n) {
  return PhaseSpace::parity_reversed_cotangent(n).bracket(f, g);
}

struct AxiomViolation {
  std::string axiom;  // "parity", "antisymmetry", "leibniz", "jacobi"
  std::vector<SuperFunction> arguments;
  SuperFunction residual;
};

struct AxiomReport {
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  bool failed(const std::string& axiom) const {
    for (const auto& v : violations)
      if (v.axiom == axiom) return true;
    return false;
  }
};

/// Homogeneous parts of the samples (zero parts dropped).
inline std::vector<SuperFunction> homogeneous_parts(const std::vector<SuperFunction>& samples) {
  std::vector<SuperFunction> out;
  for (const auto& s : samples) {
    auto [e, o] = s.parity_split();
    if (!e.is_zero()) out.push_back(e);
    if (!o.is_zero()) out.push_back(o);
  }
  return out;
}

/// Checks the parity rule, graded antisymmetry, the Leibniz rule and the
/// graded Jacobi identity on all pairs and triples of (homogeneous parts of)
/// the samples. Stops collecting after `max_violations`.
inline AxiomReport check_axioms(const Bracket& br, const std::vector<SuperFunction>& samples,
                                std::size_t max_violations = 16) {
  AxiomReport rep;
  const auto s = homogeneous_parts(samples);
  const std::size_t m = s.size();
  const int eps = br.epsilon;
  std::vector<int> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = *s[i].parity();
  std::vector<SuperFunction> b(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) b[i * m + j] = br(s[i], s[j]);

  auto sign = [](int e) { return (e % 2) ? -1 : 1; };
  auto add = [&](const char* axiom, std::vector<SuperFunction> args, SuperFunction residual) {
    if (rep.violations.size() < max_violations) rep.violations.push_back({axiom, std::move(args), std::move(residual)});
  };

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      ++rep.pairs;
      const SuperFunction& fg = b[i * m + j];
      auto bp = fg.parity();
      if (!fg.is_zero() && (!bp || *bp != (p[i] + p[j] + eps) % 2)) add("parity", {s[i], s[j]}, fg);
      SuperFunction anti = fg + sign((p[i] + eps) * (p[j] + eps)) * Scalar(1) * b[j * m + i];
      if (!anti.is_zero()) add("antisymmetry", {s[i], s[j]}, anti);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        ++rep.triples;
        const auto& f = s[i];
        const auto& g = s[j];
        const auto& h = s[k];
        // Leibniz: {f, gh} = {f,g} h + (-1)^{(p(f)+eps) p(g)} g {f,h}
        SuperFunction lhs = br(f, g * h);
        SuperFunction rhs = b[i * m + j] * h + Scalar(sign((p[i] + eps) * p[j])) * (g * b[i * m + k]);
        if (!(lhs == rhs)) add("leibniz", {f, g, h}, lhs - rhs);
        // Jacobi: {f,{g,h}} = {{f,g},h} + (-1)^{(p(f)+eps)(p(g)+eps)} {g,{f,h}}
        SuperFunction j1 = br(f, b[j * m + k]);
        SuperFunction j2 = br(b[i * m + j], h);
        SuperFunction j3 = br(g, b[i * m + k]);
        SuperFunction res = j1 - j2 - Scalar(sign((p[i] + eps) * (p[j] + eps))) * j3;
        if (!res.is_zero()) add("jacobi", {f, g, h}, res);
      }
    }
  }
  return rep;
}

/// A fiber-quadratic Hamiltonian on T*M or Pi T*M.
class MasterHamiltonian {
 public:
  MasterHamiltonian(PhaseSpace space, SuperFunction S) : space_(std::move(space)), S_(std::move(S)) {
    if (space_.kind() == PhaseKind::odd_symplectic)
      throw DomainError("master Hamiltonian must live on T*M or Pi T*M");
    auto par = S_.parity();
    if (!par) throw ParityError("master Hamiltonian must be parity-homogeneous");
    parity_ = *par;
    for (const auto& [m, c] : S_.terms()) {
      int deg = mono::degree(m & mono::kind_mask(OddKind::po));
      for (const auto& t : c.num().terms()) {
        int d = deg;
        for (int i = 1; i <= kMaxIndex; ++i) d += t.exp[Var::pe(i).slot()];
        if (d != 2) throw DomainError("master Hamiltonian must be quadratic in the fiber variables");
      }
      if (!c.den().is_constant())
        for (int i = 1; i <= kMaxIndex; ++i)
          if (c.den().depends_on(Var::pe(i))) throw DomainError("master Hamiltonian must be polynomial in the fiber");
    }
  }

  const PhaseSpace& space() const { return space_; }
  const SuperFunction& function() const { return S_; }

  /// True when the parity is the flipped one (odd on Pi T*M, even on T*M):
  /// the derived bracket is then symmetric.
  bool is_metric() const {
    if (S_.is_zero()) return false;
    return space_.epsilon() == 0 ? parity_ == 0 : parity_ == 1;
  }

  /// Second fiber derivative d_{p_a} d_{p_b} S.
  SuperFunction component(const Coordinate& pa, const Coordinate& pb) const {
    return pa.left_derivative(pb.left_derivative(S_));
  }

  /// Parity of the derived bracket {f,{S,g}}: equal to the parity of S.
  int derived_parity() const { return S_.is_zero() ? (space_.epsilon() + 1) % 2 : parity_; }

 private:
  PhaseSpace space_;
  SuperFunction S_;
  int parity_ = 0;
};

/// {f, {S, g}} restricted to the base (fiber variables set to zero).
inline SuperFunction derived_bracket(const MasterHamiltonian& S, const SuperFunction& f, const SuperFunction& g) {
  const PhaseSpace& P = S.space();
  return P.restrict_to_base(P.bracket(f, P.bracket(S.function(), g)));
}

inline Bracket derived(const MasterHamiltonian& S) {
  return {S.derived_parity(), [S](const auto& f, const auto& g) { return derived_bracket(S, f, g); }};
}

/// {S, S} in the ambient bracket.
inline SuperFunction master_condition(const MasterHamiltonian& S) {
  return S.space().bracket(S.function(), S.function());
}

}  // namespace oddsym
