#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oddsym/laplacians.hpp"

namespace oddsym {

/// Square matrix of superfunctions. For a Jacobian the first n rows/columns
/// are even coordinates and the last n are odd ones.
class SuperMatrix {
 public:
  SuperMatrix() = default;
  explicit SuperMatrix(std::size_t size) : size_(size), entries_(size * size) {}

  static SuperMatrix identity(std::size_t size) {
    SuperMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = SuperFunction(1);
    return m;
  }

  std::size_t size() const { return size_; }
  SuperFunction& operator()(std::size_t r, std::size_t c) { return entries_[r * size_ + c]; }
  const SuperFunction& operator()(std::size_t r, std::size_t c) const { return entries_[r * size_ + c]; }

  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.size_ != b.size_) throw DomainError("matrix size mismatch");
    SuperMatrix r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i)
      for (std::size_t k = 0; k < a.size_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < a.size_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    SuperMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
    return r;
  }
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.size_ == b.size_ && a.entries_ == b.entries_;
  }

  SuperMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (rows != cols) throw DomainError("only square blocks are supported");
    SuperMatrix m(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  /// Parity of entry (r, c) required by the block structure with `even` even rows/columns.
  static int block_parity(std::size_t r, std::size_t c, std::size_t even) { return (r >= even) != (c >= even); }

  /// Checks that entry (r, c) has parity block_parity(r, c, even).
  bool has_block_structure(std::size_t even) const {
    for (std::size_t r = 0; r < size_; ++r)
      for (std::size_t c = 0; c < size_; ++c) {
        const auto& e = (*this)(r, c);
        bool ok = block_parity(r, c, even) ? e.is_odd() : e.is_even();
        if (!ok) return false;
      }
    return true;
  }

 private:
  std::size_t size_ = 0;
  std::vector<SuperFunction> entries_;
};

namespace detail {

inline SuperFunction laplace_det(const SuperMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return SuperFunction(1);
  if (n == 1) return m(0, 0);
  SuperFunction r;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    SuperMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    SuperFunction term = m(0, c) * laplace_det(minor);
    r += (c % 2) ? -term : term;
  }
  return r;
}

}  // namespace detail

/// Determinant of a matrix with even (mutually commuting) entries.
inline SuperFunction determinant(SuperMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!m(r, c).is_even()) throw ParityError("determinant: entries must be even");
  SuperFunction det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t r = k; r < n; ++r)
      if (!m(r, k).body().is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == n) {
      // No invertible pivot: the determinant is nilpotent; expand the rest.
      SuperMatrix rest = m.block(k, k, n - k, n - k);
      return det * detail::laplace_det(rest);
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(pivot, c));
      det = -det;
    }
    det = det * m(k, k);
    SuperFunction inv = invert(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (m(r, k).is_zero()) continue;
      SuperFunction factor = m(r, k) * inv;
      for (std::size_t c = k; c < n; ++c) m(r, c) -= factor * m(k, c);
    }
  }
  return det;
}

/// Inverse of a matrix with even entries and invertible determinant.
inline SuperMatrix inverse(SuperMatrix m) {
  const std::size_t n = m.size();
  SuperMatrix inv = SuperMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t r = k; r < n; ++r)
      if (!m(r, k).body().is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == n) throw NotInvertible("matrix is not invertible");
    if (pivot != k)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m(k, c), m(pivot, c));
        std::swap(inv(k, c), inv(pivot, c));
      }
    SuperFunction p = invert(m(k, k));
    for (std::size_t c = 0; c < n; ++c) {
      m(k, c) = p * m(k, c);
      inv(k, c) = p * inv(k, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || m(r, k).is_zero()) continue;
      SuperFunction factor = m(r, k);
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) -= factor * m(k, c);
        inv(r, c) -= factor * inv(k, c);
      }
    }
  }
  return inv;
}

/// Berezinian det(A - B D^{-1} C) / det(D) of an even supermatrix whose first
/// `even` rows/columns are even.
inline SuperFunction berezinian(const SuperMatrix& M, std::size_t even) {
  const std::size_t odd = M.size() - even;
  if (!M.has_block_structure(even)) throw ParityError("berezinian: matrix lacks the even/odd block structure");
  if (odd == 0) return determinant(M);
  SuperMatrix D = M.block(even, even, odd, odd);
  SuperFunction detD = determinant(D);
  if (detD.body().is_zero()) throw NotInvertible("berezinian: odd-odd block is singular");
  if (even == 0) return invert(detD);
  SuperMatrix Dinv = inverse(D);
  SuperMatrix S(even);
  for (std::size_t i = 0; i < even; ++i)
    for (std::size_t j = 0; j < even; ++j) {
      SuperFunction corr;
      for (std::size_t k = 0; k < odd; ++k) {
        if (M(i, even + k).is_zero()) continue;
        for (std::size_t l = 0; l < odd; ++l) corr += M(i, even + k) * Dinv(k, l) * M(even + l, j);
      }
      S(i, j) = M(i, j) - corr;
    }
  return determinant(S) * invert(detD);
}

/// Berezinian of a Jacobian of R^{n|n} (n even rows first).
inline SuperFunction berezinian(const SuperMatrix& M) { return berezinian(M, M.size() / 2); }

/// A change of Darboux coordinates on R^{n|n}: images[0..n) are the old x^i
/// and images[n..2n) the old th_i, as functions of the new coordinates
/// (written with the same symbols, in the target chart).
struct Transition {
  std::string source;
  std::string target;
  int n = 0;
  std::vector<SuperFunction> images;

  Transition() = default;
  Transition(std::string src, std::string tgt, int dim, std::vector<SuperFunction> imgs)
      : source(std::move(src)), target(std::move(tgt)), n(dim), images(std::move(imgs)) {
    if (static_cast<int>(images.size()) != 2 * n) throw DomainError("transition needs 2n images");
    for (int i = 0; i < n; ++i) {
      if (!images[i].is_even()) throw ParityError("image of x" + std::to_string(i + 1) + " is not even");
      if (!images[n + i].is_odd()) throw ParityError("image of th" + std::to_string(i + 1) + " is not odd");
    }
    for (auto& f : images) f = f.with_chart(target);
  }

  static Transition identity(int n, std::string src = {}, std::string tgt = {}) {
    std::vector<SuperFunction> imgs;
    for (int i = 1; i <= n; ++i) imgs.push_back(SuperFunction::x(i));
    for (int i = 1; i <= n; ++i) imgs.push_back(SuperFunction::theta(i));
    return Transition(std::move(src), std::move(tgt), n, std::move(imgs));
  }

  Substitution substitution() const {
    Substitution s;
    s.target_chart = target;
    for (int i = 1; i <= n; ++i) {
      s.set(Var::x(i), images[i - 1]);
      s.set(OddGenerator::theta(i), images[n + i - 1]);
    }
    return s;
  }

  /// f (a function of the old coordinates) written in the new coordinates.
  SuperFunction pull(const SuperFunction& f) const {
    if (!f.chart().empty() && !source.empty() && f.chart() != source) throw ChartMismatch(f.chart(), source);
    return substitute(f, substitution()).with_chart(target);
  }
};

/// T1 : U -> V followed by T2 : V -> W gives U -> W.
inline Transition compose(const Transition& t1, const Transition& t2) {
  if (t1.n != t2.n) throw DomainError("compose: dimension mismatch");
  if (!t1.target.empty() && !t2.source.empty() && t1.target != t2.source) throw ChartMismatch(t1.target, t2.source);
  std::vector<SuperFunction> imgs;
  for (const auto& f : t1.images) imgs.push_back(t2.pull(f.with_chart(t2.source)));
  return Transition(t1.source, t2.target, t1.n, std::move(imgs));
}

/// Coordinates of the new chart, in the order x'^1..x'^n, th'_1..th'_n.
inline std::vector<Coordinate> transition_coordinates(int n) { return darboux_coordinates(n); }

/// Jacobian with entry (B', A) = left derivative of old coordinate z^A with
/// respect to new coordinate z'^B. With this layout the chain rule is the
/// plain matrix product J(T1 then T2) = J(T2) * pull(J(T1)).
inline SuperMatrix jacobian(const Transition& T) {
  const auto coords = transition_coordinates(T.n);
  SuperMatrix M(2 * T.n);
  for (int b = 0; b < 2 * T.n; ++b)
    for (int a = 0; a < 2 * T.n; ++a) M(b, a) = coords[b].left_derivative(T.images[a]);
  return M;
}

/// Ber d(x,th)/d(x',th') of the transition, a function of the new coordinates.
inline SuperFunction berezinian(const Transition& T) { return berezinian(jacobian(T), T.n).with_chart(T.target); }

struct SymplecticReport {
  std::vector<std::string> failures;  // "{a, b} = value" for each wrong canonical pair
  bool ok() const { return failures.empty(); }
};

/// Checks that the images satisfy the canonical relations in the new chart.
inline SymplecticReport is_symplectomorphism(const Transition& T) {
  SymplecticReport rep;
  auto name = [&](int k) { return k < T.n ? "x" + std::to_string(k + 1) : "th" + std::to_string(k - T.n + 1); };
  for (int a = 0; a < 2 * T.n; ++a)
    for (int b = a; b < 2 * T.n; ++b) {
      SuperFunction expected;
      if (a < T.n && b == a + T.n) expected = SuperFunction(1);
      SuperFunction got = odd_bracket(T.images[a], T.images[b]);
      if (!(got == expected)) rep.failures.push_back("{" + name(a) + ", " + name(b) + "} = " + got.to_string());
    }
  return rep;
}

/// Coordinate coefficient of a density of weight t.
struct Density {
  std::string chart;
  mpq_class weight{1, 2};
  SuperFunction coefficient;

  Density() = default;
  Density(SuperFunction c, mpq_class t = mpq_class(1, 2), std::string ch = {})
      : chart(ch.empty() ? c.chart() : std::move(ch)), weight(std::move(t)), coefficient(std::move(c)) {
    weight.canonicalize();
  }
  static Density semidensity(SuperFunction c) { return Density(std::move(c), mpq_class(1, 2)); }
  static Density volume(SuperFunction c) { return Density(std::move(c), mpq_class(1)); }

  friend bool operator==(const Density& a, const Density& b) {
    return a.weight == b.weight && a.coefficient == b.coefficient;
  }
};

/// Ber^t for t integer or half-integer.
inline SuperFunction berezinian_power(const SuperFunction& ber, const mpq_class& t) {
  mpz_class num = t.get_num(), den = t.get_den();
  if (den != 1 && den != 2) throw DomainError("density weight must be an integer or half-integer");
  SuperFunction base = den == 2 ? sqrt_even(ber) : ber;
  long k = num.get_si();
  if (k < 0) {
    base = invert(base);
    k = -k;
  }
  return base.pow(static_cast<unsigned>(k));
}

/// coefficient' = pull(coefficient) * Ber^t.
inline Density transform_density(const Density& d, const Transition& T) {
  if (!d.chart.empty() && !T.source.empty() && d.chart != T.source) throw ChartMismatch(d.chart, T.source);
  SuperFunction c = T.pull(d.coefficient.with_chart(T.source));
  if (sgn(d.weight) != 0) c = c * berezinian_power(berezinian(T), d.weight);
  return Density(c.with_chart(T.target), d.weight, T.target);
}

/// Canonical Laplacian on semidensities: Delta_0 on the Darboux coefficient.
inline Density canonical_delta(const Density& s) {
  if (s.weight != mpq_class(1, 2)) throw DomainError("canonical_delta acts on semidensities (weight 1/2)");
  return Density(delta0(s.coefficient), s.weight, s.chart);
}

/// Delta_0 (Ber^{1/2}); zero for every symplectic transition.
inline SuperFunction bv_identity(const Transition& T) { return delta0(sqrt_even(berezinian(T))); }

/// Transition induced by a change of the even coordinates: old x^i are the
/// given functions of new x' (th-free), and th_i = (dx'^k/dx^i) th'_k.
inline Transition point_transition(int n, std::vector<SuperFunction> x_images, std::string src = {},
                                   std::string tgt = {}) {
  if (static_cast<int>(x_images.size()) != n) throw DomainError("point_transition needs n images");
  SuperMatrix A(n);  // A(i, k) = dx^i / dx'^k
  for (int i = 0; i < n; ++i) {
    if (x_images[i].odd_support()) throw DomainError("point_transition images must not involve odd generators");
    for (int k = 0; k < n; ++k) A(i, k) = partial_even(x_images[i], Var::x(k + 1));
  }
  SuperMatrix Ainv = inverse(A);  // Ainv(k, i) = dx'^k / dx^i
  std::vector<SuperFunction> imgs = std::move(x_images);
  for (int i = 0; i < n; ++i) {
    SuperFunction th;
    for (int k = 0; k < n; ++k) th += Ainv(k, i) * SuperFunction::theta(k + 1);
    imgs.push_back(th);
  }
  return Transition(std::move(src), std::move(tgt), n, std::move(imgs));
}

/// th_i = th'_i + alpha_i(x'), alpha odd-valued (external odd parameters).
inline Transition shift_transition(int n, const std::vector<SuperFunction>& alpha, std::string src = {},
                                   std::string tgt = {}) {
  if (static_cast<int>(alpha.size()) != n) throw DomainError("shift_transition needs n components");
  std::vector<SuperFunction> imgs;
  for (int i = 1; i <= n; ++i) imgs.push_back(SuperFunction::x(i));
  for (int i = 0; i < n; ++i) {
    if (!alpha[i].is_odd()) throw ParityError("shift components must be odd");
    if (alpha[i].odd_support() & mono::kind_mask(OddKind::theta))
      throw DomainError("shift components must not depend on th");
    imgs.push_back(SuperFunction::theta(i + 1) + alpha[i]);
  }
  return Transition(std::move(src), std::move(tgt), n, std::move(imgs));
}

/// d alpha = 0 for alpha_i(x) dx^i.
inline bool is_closed_one_form(const std::vector<SuperFunction>& alpha) {
  const int n = static_cast<int>(alpha.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(partial_even(alpha[j], Var::x(i + 1)) == partial_even(alpha[i], Var::x(j + 1)))) return false;
  return true;
}

/// Old coordinates z = exp(-t D_Q) z' of the flow z' = exp(t D_Q) z of an odd
/// Hamiltonian Q whose field has zero body on the x^i (the series is finite).
inline Transition exponentiate_hamiltonian(const SuperFunction& Q, const Scalar& t, int n, std::string src = {},
                                           std::string tgt = {}) {
  if (!Q.is_odd()) throw ParityError("exponentiate_hamiltonian: Q must be odd");
  for (int i = 1; i <= n; ++i)
    if (!odd_bracket(Q, SuperFunction::x(i)).body().is_zero())
      throw DomainError("exponentiate_hamiltonian: {Q, x" + std::to_string(i) + "} has nonzero body");
  std::vector<SuperFunction> imgs;
  const int max_steps = 2 * n + 2;
  for (const auto& c : darboux_coordinates(n)) {
    SuperFunction z = c.function(Q.chart());
    SuperFunction term = z, sum = z;
    Scalar coef(1);
    int k = 1;
    for (; k <= max_steps; ++k) {
      term = odd_bracket(Q, term);
      if (term.is_zero()) break;
      coef = coef * (-t) * Scalar::rational(1, k);
      sum += coef * term;
    }
    if (k > max_steps) throw DomainError("exponentiate_hamiltonian: series does not terminate");
    imgs.push_back(sum.with_chart({}));
  }
  return Transition(std::move(src), std::move(tgt), n, std::move(imgs));
}

/// delta_Q s = Delta_0 Q * s - {Q, s}.
inline Density delta_Q_differential(const SuperFunction& Q, const Density& s) {
  if (!Q.is_odd()) throw ParityError("delta_Q: Q must be odd");
  return Density(delta0(Q) * s.coefficient - odd_bracket(Q, s.coefficient), s.weight, s.chart);
}

/// Delta_0 delta_Q s against delta_Q Delta_0 s.
inline Relation commutation_check(const SuperFunction& Q, const Density& s) {
  return {delta0(delta_Q_differential(Q, s).coefficient),
          delta_Q_differential(Q, canonical_delta(s)).coefficient};
}

/// Lie derivative of a semidensity along D_f by the first-order formula
/// Delta_0 f * s + (-1)^p(f) {f, s} (summed over homogeneous parts of f).
inline SuperFunction lie_derivative(const SuperFunction& f, const SuperFunction& s) {
  auto [fe, fo] = f.parity_split();
  return delta0(fe) * s + odd_bracket(fe, s) + delta0(fo) * s - odd_bracket(fo, s);
}

/// Even parameter used as the flow time and odd parameter used to make even
/// Hamiltonians odd in flow_lie_derivative.
inline Var flow_time() { return Var::param(7); }
inline OddGenerator flow_odd_parameter() { return OddGenerator::eps(16); }

namespace detail {

inline SuperFunction at_time_zero(const SuperFunction& f) {
  Substitution s;
  s.set(flow_time(), SuperFunction());
  return substitute(f, s).with_chart(f.chart());
}

/// d/dt at t = 0 of the semidensity pulled back along z = z' - t {Q, z'}.
inline SuperFunction flow_derivative_odd(const SuperFunction& Q, const SuperFunction& s, int n) {
  const SuperFunction t = SuperFunction::variable(flow_time());
  std::vector<SuperFunction> imgs;
  for (const auto& c : darboux_coordinates(n)) {
    SuperFunction z = c.function();
    imgs.push_back(z - t * odd_bracket(Q, z));
  }
  Transition T({}, {}, n, std::move(imgs));
  SuperFunction pulled = T.pull(s.with_chart({}));
  SuperFunction ber = berezinian(T);
  return at_time_zero(partial_even(pulled, flow_time())) +
         Scalar::rational(1, 2) * (s * at_time_zero(partial_even(ber, flow_time())));
}

}  // namespace detail

/// Lie derivative along D_f computed from the flow: for odd f the derivative of
/// the pullback along the time-t flow; for even f the same for the odd
/// Hamiltonian tau*f with an odd parameter tau, followed by -d/dtau.
inline SuperFunction flow_lie_derivative(const SuperFunction& f, const SuperFunction& s, int n) {
  auto [fe, fo] = f.parity_split();
  SuperFunction r = SuperFunction().with_chart(s.chart());
  if (!fo.is_zero()) r += detail::flow_derivative_odd(fo, s, n);
  if (!fe.is_zero()) {
    if ((fe.odd_support() | s.odd_support()) & mono::of(flow_odd_parameter()))
      throw DomainError("flow_lie_derivative: reserved odd parameter eps16 already in use");
    SuperFunction tau = SuperFunction::generator(flow_odd_parameter());
    r -= partial_odd(detail::flow_derivative_odd(tau * fe, s, n), flow_odd_parameter());
  }
  return r.with_chart(s.chart());
}

/// [Delta, f] s = Delta_0(f s) - (-1)^p(f) f Delta_0 s against the flow Lie derivative.
inline Relation commutator_relation(const Density& s, const SuperFunction& f, int n) {
  auto [fe, fo] = f.parity_split();
  const SuperFunction& c = s.coefficient;
  SuperFunction lhs = delta0(f * c) - fe * delta0(c) + fo * delta0(c);
  return {lhs, flow_lie_derivative(f, c, n)};
}

struct NormalityReport {
  std::vector<bool> normal_in_candidate;  // coefficient 1 after each candidate transition
  std::optional<bool> sqrt_closed;        // Delta sqrt(rho) = 0; empty if sqrt(rho) is not exact
  bool delta_squared_zero = false;        // Delta_rho^2 = 0
  bool normal() const {
    for (bool b : normal_in_candidate)
      if (b) return true;
    return false;
  }
};

inline NormalityReport is_normal(const VolumeForm& rho, const std::vector<Transition>& candidates, int n) {
  NormalityReport rep;
  Density d = Density::volume(rho.coefficient());
  for (const auto& T : candidates) rep.normal_in_candidate.push_back(transform_density(d, T).coefficient == SuperFunction(1));
  try {
    SuperFunction r = sqrt_even(rho.coefficient());
    rep.sqrt_closed = delta0(r).is_zero();
  } catch (const NoExactSquareRoot&) {
  }
  rep.delta_squared_zero = delta_rho_squared_vanishes(rho, n);
  return rep;
}

}  // namespace oddsym
