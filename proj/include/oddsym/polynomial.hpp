#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/gaussian.hpp"

namespace oddsym {

// Even indeterminates. Lower slot = more significant in the lex order.
inline constexpr int kMaxIndex = 12;
inline constexpr int kNumVars = 32;

enum class VarKind : std::uint8_t { x, pe, hbar, param };

/// An even indeterminate: x^i, even fiber coordinate pe_i, hbar, or an even
/// parameter y_i.
struct Var {
  VarKind kind = VarKind::x;
  int index = 1;

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var& a, const Var& b) { return a.slot() <=> b.slot(); }

  static Var x(int i) { return {VarKind::x, i}; }
  static Var pe(int i) { return {VarKind::pe, i}; }
  static Var hbar() { return {VarKind::hbar, 1}; }
  static Var param(int i) { return {VarKind::param, i}; }

  int slot() const {
    switch (kind) {
      case VarKind::x: return index - 1;
      case VarKind::pe: return kMaxIndex + index - 1;
      case VarKind::hbar: return 2 * kMaxIndex;
      case VarKind::param: return 2 * kMaxIndex + index;
    }
    return -1;
  }

  static Var from_slot(int s) {
    if (s < kMaxIndex) return x(s + 1);
    if (s < 2 * kMaxIndex) return pe(s - kMaxIndex + 1);
    if (s == 2 * kMaxIndex) return hbar();
    return param(s - 2 * kMaxIndex);
  }

  bool valid() const {
    switch (kind) {
      case VarKind::x:
      case VarKind::pe: return index >= 1 && index <= kMaxIndex;
      case VarKind::hbar: return index == 1;
      case VarKind::param: return index >= 1 && index <= kNumVars - 2 * kMaxIndex - 1;
    }
    return false;
  }

  std::string name() const {
    switch (kind) {
      case VarKind::x: return "x" + std::to_string(index);
      case VarKind::pe: return "pe" + std::to_string(index);
      case VarKind::hbar: return "hbar";
      case VarKind::param: return "y" + std::to_string(index);
    }
    return "?";
  }
};

inline void require_valid(const Var& v) {
  if (!v.valid()) throw UnknownIndex("unknown even variable index " + std::to_string(v.index));
}

/// Exponent vector; lexicographic comparison gives the lex term order.
using Monomial = std::array<std::uint8_t, kNumVars>;

struct Term {
  Monomial exp{};
  GaussianRational coef;
};

/// Sparse multivariate polynomial over the Gaussian rationals. Terms are kept
/// sorted by decreasing monomial, without zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(GaussianRational c) {  // NOLINT
    if (!c.is_zero()) terms_.push_back({Monomial{}, std::move(c)});
  }
  Polynomial(long c) : Polynomial(GaussianRational(c)) {}  // NOLINT

  static Polynomial variable(Var v, unsigned power = 1) {
    require_valid(v);
    Polynomial p;
    Term t;
    if (power > 255) throw DomainError("exponent overflow");
    t.exp[v.slot()] = static_cast<std::uint8_t>(power);
    t.coef = 1;
    p.terms_.push_back(std::move(t));
    return p;
  }

  static Polynomial from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Monomial{});
  }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].coef.is_one(); }

  GaussianRational constant_term() const {
    if (!terms_.empty() && terms_.back().exp == Monomial{}) return terms_.back().coef;
    return 0;
  }
  const Term& leading_term() const { return terms_.front(); }
  const GaussianRational& leading_coef() const { return terms_.front().coef; }

  /// Bitmask of variable slots that occur.
  std::uint32_t support() const {
    std::uint32_t m = 0;
    for (const auto& t : terms_)
      for (int s = 0; s < kNumVars; ++s)
        if (t.exp[s]) m |= (1u << s);
    return m;
  }
  bool depends_on(Var v) const { return (support() >> v.slot()) & 1u; }

  int degree(int slot) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.exp[slot]);
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& t : terms_) {
      int s = 0;
      for (auto e : t.exp) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled(b.terms_[0].coef);
    if (a.is_constant()) return b.scaled(a.terms_[0].coef);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        Term p;
        for (int k = 0; k < kNumVars; ++k) {
          int e = s.exp[k] + t.exp[k];
          if (e > 255) throw DomainError("exponent overflow");
          p.exp[k] = static_cast<std::uint8_t>(e);
        }
        p.coef = s.coef * t.coef;
        out.push_back(std::move(p));
      }
    }
    return from_terms(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const GaussianRational& c) const {
    if (c.is_zero()) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  Polynomial pow(unsigned k) const {
    Polynomial r(1);
    Polynomial b = *this;
    while (k) {
      if (k & 1u) r *= b;
      k >>= 1u;
      if (k) b *= b;
    }
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
    return true;
  }

  Polynomial derivative(Var v) const {
    require_valid(v);
    const int s = v.slot();
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.exp[s] == 0) continue;
      Term d = t;
      d.coef *= GaussianRational(static_cast<long>(t.exp[s]));
      d.exp[s] -= 1;
      out.push_back(std::move(d));
    }
    return from_terms(std::move(out));
  }

  /// Coefficients with respect to the variable in `slot`: result[k] is the
  /// coefficient of slot^k.
  std::vector<Polynomial> coefficients(int slot) const {
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(degree(slot)) + 1);
    for (const auto& t : terms_) {
      Term c = t;
      c.exp[slot] = 0;
      buckets[t.exp[slot]].push_back(std::move(c));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
  }

  /// Coefficient of slot^k.
  Polynomial coefficient(int slot, int k) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.exp[slot] != k) continue;
      Term c = t;
      c.exp[slot] = 0;
      out.push_back(std::move(c));
    }
    return from_terms(std::move(out));
  }

  /// Evaluate in any commutative ring R (even elements of a superalgebra
  /// included). `image(slot)` gives the value of a variable; `lift(c)` embeds
  /// a coefficient.
  template <class R, class Image, class Lift>
  R evaluate(Image&& image, Lift&& lift) const {
    R result = lift(GaussianRational(0));
    if (terms_.empty()) return result;
    std::array<std::vector<R>, kNumVars> powers;
    for (const auto& t : terms_) {
      R m = lift(t.coef);
      for (int s = 0; s < kNumVars; ++s) {
        int e = t.exp[s];
        if (!e) continue;
        auto& pw = powers[s];
        if (pw.empty()) pw.push_back(image(s));
        while (static_cast<int>(pw.size()) < e) pw.push_back(pw.back() * pw.front());
        m = m * pw[e - 1];
      }
      result = result + m;
    }
    return result;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      std::string mono;
      for (int s = 0; s < kNumVars; ++s) {
        if (!t.exp[s]) continue;
        if (!mono.empty()) mono += "*";
        mono += Var::from_slot(s).name();
        if (t.exp[s] > 1) mono += "^" + std::to_string(t.exp[s]);
      }
      GaussianRational c = t.coef;
      bool negative = c.is_real() && sgn(c.re()) < 0;
      if (negative) c = -c;
      std::string cs;
      if (mono.empty()) {
        cs = c.to_string();
      } else if (!c.is_one()) {
        cs = c.to_string() + "*";
      }
      if (first) {
        out += negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      out += cs + mono;
      first = false;
    }
    return out;
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp > b.terms_[j].exp)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exp > a.terms_[i].exp) {
        Term t = b.terms_[j++];
        if (subtract) t.coef = -t.coef;
        r.terms_.push_back(std::move(t));
      } else {
        GaussianRational c = subtract ? a.terms_[i].coef - b.terms_[j].coef
                                      : a.terms_[i].coef + b.terms_[j].coef;
        if (!c.is_zero()) r.terms_.push_back({a.terms_[i].exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exp > b.exp; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coef += t.coef;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term& t) { return t.coef.is_zero(); });
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

namespace poly {

inline Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(GaussianRational(1) / p.leading_coef());
}

inline bool divides_monomial(const Monomial& d, const Monomial& m) {
  for (int s = 0; s < kNumVars; ++s)
    if (d[s] > m[s]) return false;
  return true;
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (b.is_constant()) return a.scaled(GaussianRational(1) / b.leading_coef());
  std::vector<Term> quotient;
  Polynomial r = a;
  const Term& lb = b.leading_term();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!divides_monomial(lb.exp, lr.exp)) return std::nullopt;
    Term q;
    for (int s = 0; s < kNumVars; ++s) q.exp[s] = static_cast<std::uint8_t>(lr.exp[s] - lb.exp[s]);
    q.coef = lr.coef / lb.coef;
    r -= Polynomial::from_terms({q}) * b;
    quotient.push_back(std::move(q));
  }
  return Polynomial::from_terms(std::move(quotient));
}

inline Polynomial divide_or_throw(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw DomainError("inexact polynomial division");
  return *std::move(q);
}

Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Monic gcd of the coefficients of p with respect to `slot`.
inline Polynomial content(const Polynomial& p, int slot) {
  Polynomial g;
  for (const auto& c : p.coefficients(slot)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// Sparse pseudo-remainder of a by b with respect to `slot`.
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int slot) {
  const int db = b.degree(slot);
  const Polynomial lb = b.coefficient(slot, db);
  Var v = Var::from_slot(slot);
  while (!a.is_zero()) {
    int da = a.degree(slot);
    if (da < db) break;
    Polynomial la = a.coefficient(slot, da);
    a = lb * a - la * Polynomial::variable(v, static_cast<unsigned>(da - db)) * b;
  }
  return a;
}

/// Monic greatest common divisor via recursive primitive remainder sequences.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return monic(a);
  const std::uint32_t sa = a.support(), sb = b.support();
  const int slot = std::countr_zero(sa | sb);
  const bool in_a = (sa >> slot) & 1u;
  const bool in_b = (sb >> slot) & 1u;
  if (!in_a) return gcd(a, content(b, slot));
  if (!in_b) return gcd(content(a, slot), b);

  Polynomial ca = content(a, slot);
  Polynomial cb = content(b, slot);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = monic(divide_or_throw(a, ca));
  Polynomial pb = monic(divide_or_throw(b, cb));
  if (pa.degree(slot) < pb.degree(slot)) std::swap(pa, pb);
  Polynomial g;
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, slot);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree(slot) == 0) {
      g = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    // over Q(i) every nonzero scalar is a unit; rescaling keeps coefficients small
    pb = monic(divide_or_throw(r, content(r, slot)));
  }
  if (!g.is_constant()) g = divide_or_throw(g, content(g, slot));
  return monic(c * g);
}

/// Exact square root with leading coefficient in the principal orientation,
/// or nullopt when p is not a perfect square.
inline std::optional<Polynomial> sqrt_exact(const Polynomial& p) {
  if (p.is_zero()) return Polynomial();
  const Term& lt = p.leading_term();
  Term root_lt;
  for (int s = 0; s < kNumVars; ++s) {
    if (lt.exp[s] % 2) return std::nullopt;
    root_lt.exp[s] = static_cast<std::uint8_t>(lt.exp[s] / 2);
  }
  auto c = exact_sqrt(lt.coef);
  if (!c) return std::nullopt;
  if (!c->is_positive_oriented()) *c = -*c;
  root_lt.coef = *c;
  Polynomial root = Polynomial::from_terms({root_lt});
  Polynomial twice_lt = Polynomial::from_terms({{root_lt.exp, root_lt.coef * GaussianRational(2)}});
  Polynomial rem = p - root * root;
  // Each step fixes the next term of the root in lex order.
  int guard = 0;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading_term();
    if (!divides_monomial(root_lt.exp, lr.exp)) return std::nullopt;
    Term t;
    for (int s = 0; s < kNumVars; ++s) t.exp[s] = static_cast<std::uint8_t>(lr.exp[s] - root_lt.exp[s]);
    if (!(t.exp < root_lt.exp)) return std::nullopt;
    t.coef = lr.coef / twice_lt.leading_coef();
    Polynomial tp = Polynomial::from_terms({t});
    rem = rem - (root + root + tp) * tp;
    root += tp;
    if (++guard > 100000) return std::nullopt;
  }
  return root;
}

}  // namespace poly
}  // namespace oddsym
