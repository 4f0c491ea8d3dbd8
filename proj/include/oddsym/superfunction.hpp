#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "oddsym/generators.hpp"
#include "oddsym/scalar.hpp"

namespace oddsym {

/// Element of the supercommutative algebra generated over Scalar by odd
/// generators, attached to a chart. The empty chart name is a wildcard used by
/// constants.
class SuperFunction {
 public:
  using TermMap = std::map<ThetaMonomial, Scalar, mono::Order>;

  SuperFunction() = default;
  SuperFunction(Scalar s, std::string chart = {}) : chart_(std::move(chart)) {  // NOLINT
    if (!s.is_zero()) terms_.emplace(ThetaMonomial{0}, std::move(s));
  }
  SuperFunction(long c) : SuperFunction(Scalar(c)) {}  // NOLINT

  static SuperFunction monomial(ThetaMonomial m, Scalar c = Scalar(1), std::string chart = {}) {
    SuperFunction f;
    f.chart_ = std::move(chart);
    if (!c.is_zero()) f.terms_.emplace(m, std::move(c));
    return f;
  }
  static SuperFunction generator(OddGenerator g, std::string chart = {}) {
    return monomial(mono::of(g), Scalar(1), std::move(chart));
  }
  static SuperFunction variable(Var v, std::string chart = {}) {
    return SuperFunction(Scalar::variable(v), std::move(chart));
  }
  static SuperFunction x(int i, std::string chart = {}) { return variable(Var::x(i), std::move(chart)); }
  static SuperFunction theta(int i, std::string chart = {}) {
    return generator(OddGenerator::theta(i), std::move(chart));
  }
  static SuperFunction xi(int i, std::string chart = {}) { return generator(OddGenerator::xi(i), std::move(chart)); }
  static SuperFunction eps(int i, std::string chart = {}) {
    return generator(OddGenerator::eps(i), std::move(chart));
  }

  const std::string& chart() const noexcept { return chart_; }
  SuperFunction with_chart(std::string c) const {
    SuperFunction r = *this;
    r.chart_ = std::move(c);
    return r;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(ThetaMonomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }
  Scalar body() const { return coefficient(0); }
  SuperFunction nilpotent_part() const {
    SuperFunction r = *this;
    r.terms_.erase(ThetaMonomial{0});
    return r;
  }

  /// 0 or 1 for homogeneous elements (zero counts as even), nullopt if mixed.
  std::optional<int> parity() const {
    int seen = -1;
    for (const auto& [m, c] : terms_) {
      int p = mono::parity(m);
      if (seen == -1) seen = p;
      else if (seen != p) return std::nullopt;
    }
    return seen == -1 ? 0 : seen;
  }
  bool is_even() const {
    for (const auto& [m, c] : terms_)
      if (mono::parity(m)) return false;
    return true;
  }
  bool is_odd() const {
    for (const auto& [m, c] : terms_)
      if (!mono::parity(m)) return false;
    return true;
  }
  bool is_homogeneous() const { return parity().has_value(); }

  std::pair<SuperFunction, SuperFunction> parity_split() const {
    SuperFunction e, o;
    e.chart_ = o.chart_ = chart_;
    for (const auto& [m, c] : terms_) (mono::parity(m) ? o : e).terms_.emplace(m, c);
    return {e, o};
  }

  /// Keep only the terms whose monomial satisfies `keep`.
  template <class Pred>
  SuperFunction filter(Pred&& keep) const {
    SuperFunction r;
    r.chart_ = chart_;
    for (const auto& [m, c] : terms_)
      if (keep(m)) r.terms_.emplace(m, c);
    return r;
  }

  ThetaMonomial odd_support() const {
    ThetaMonomial s = 0;
    for (const auto& [m, c] : terms_) s |= m;
    return s;
  }
  std::uint32_t even_support() const {
    std::uint32_t s = 0;
    for (const auto& [m, c] : terms_) s |= c.support();
    return s;
  }

  SuperFunction operator-() const {
    SuperFunction r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend SuperFunction operator+(const SuperFunction& a, const SuperFunction& b) {
    SuperFunction r = a;
    r.chart_ = common_chart(a, b);
    for (const auto& [m, c] : b.terms_) r.accumulate(m, c);
    return r;
  }
  friend SuperFunction operator-(const SuperFunction& a, const SuperFunction& b) { return a + (-b); }

  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
    SuperFunction r;
    r.chart_ = common_chart(a, b);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if (ma & mb) continue;
        Scalar c = ca * cb;
        if (mono::product_sign(ma, mb) < 0) c = -c;
        r.accumulate(ma | mb, c);
      }
    }
    return r;
  }

  friend SuperFunction operator*(const Scalar& s, const SuperFunction& f) {
    if (s.is_zero()) return SuperFunction().with_chart(f.chart_);
    SuperFunction r = f;
    for (auto& [m, c] : r.terms_) c = s * c;
    return r;
  }
  friend SuperFunction operator*(const SuperFunction& f, const Scalar& s) { return s * f; }

  SuperFunction& operator+=(const SuperFunction& o) { return *this = *this + o; }
  SuperFunction& operator-=(const SuperFunction& o) { return *this = *this - o; }
  SuperFunction& operator*=(const SuperFunction& o) { return *this = *this * o; }

  /// Equality of values; a constant in the wildcard chart equals the same
  /// constant in any chart.
  friend bool operator==(const SuperFunction& a, const SuperFunction& b) {
    if (!a.chart_.empty() && !b.chart_.empty() && a.chart_ != b.chart_) return false;
    return a.terms_ == b.terms_;
  }

  SuperFunction pow(unsigned k) const {
    SuperFunction r = SuperFunction(1).with_chart(chart_);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string gens;
      for (const auto& g : mono::generators(m)) {
        if (!gens.empty()) gens += "*";
        gens += g.name();
      }
      std::string cs = c.to_string();
      bool simple = c.is_polynomial() && c.num().terms().size() == 1;
      std::string piece;
      if (gens.empty()) {
        piece = simple ? cs : "(" + cs + ")";
      } else if (c.is_one()) {
        piece = gens;
      } else if (c == Scalar(-1)) {
        piece = "-" + gens;
      } else {
        piece = (simple ? cs : "(" + cs + ")") + "*" + gens;
      }
      if (!first) {
        if (!piece.empty() && piece[0] == '-') {
          out += " - " + piece.substr(1);
        } else {
          out += " + " + piece;
        }
      } else {
        out += piece;
      }
      first = false;
    }
    return out;
  }

  static std::string common_chart(const SuperFunction& a, const SuperFunction& b) {
    if (a.chart_.empty()) return b.chart_;
    if (b.chart_.empty() || a.chart_ == b.chart_) return a.chart_;
    throw ChartMismatch(a.chart_, b.chart_);
  }

  /// Add c * monomial(m) in place.
  void accumulate(ThetaMonomial m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  std::string chart_;
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const SuperFunction& f) {
  os << f.to_string();
  if (!f.chart().empty()) os << " [" << f.chart() << "]";
  return os;
}

/// Left derivative with respect to an odd generator.
inline SuperFunction partial_odd(const SuperFunction& f, OddGenerator g) {
  const int b = g.bit();
  const ThetaMonomial gm = mono::bit(b);
  SuperFunction r = SuperFunction().with_chart(f.chart());
  for (const auto& [m, c] : f.terms()) {
    if (!(m & gm)) continue;
    bool negative = mono::degree(m & mono::below(b)) & 1;
    r.accumulate(m & ~gm, negative ? -c : c);
  }
  return r;
}

/// Right derivative with respect to an odd generator.
inline SuperFunction partial_odd_right(const SuperFunction& f, OddGenerator g) {
  const int b = g.bit();
  const ThetaMonomial gm = mono::bit(b);
  SuperFunction r = SuperFunction().with_chart(f.chart());
  for (const auto& [m, c] : f.terms()) {
    if (!(m & gm)) continue;
    bool negative = mono::degree(m & ~mono::below(b + 1)) & 1;
    r.accumulate(m & ~gm, negative ? -c : c);
  }
  return r;
}

inline SuperFunction partial_even(const SuperFunction& f, Var v) {
  require_valid(v);
  SuperFunction r = SuperFunction().with_chart(f.chart());
  for (const auto& [m, c] : f.terms()) {
    if (!c.depends_on(v)) continue;
    r.accumulate(m, c.derivative(v));
  }
  return r;
}

/// Multiplicative inverse of an even element with nonzero body.
inline SuperFunction invert(const SuperFunction& f) {
  if (!f.is_even()) throw NotInvertible("invert: argument is not even");
  Scalar b = f.body();
  if (b.is_zero()) throw NotInvertible("invert: body is zero");
  Scalar binv = b.inverse();
  SuperFunction u = -(binv * f.nilpotent_part());
  SuperFunction result = SuperFunction(binv).with_chart(f.chart());
  SuperFunction power = SuperFunction(1).with_chart(f.chart());
  while (true) {
    power = power * u;
    if (power.is_zero()) break;
    result += binv * power;
  }
  return result;
}

/// Principal square root of an even element whose body is a perfect square.
inline SuperFunction sqrt_even(const SuperFunction& f) {
  if (!f.is_even()) throw NoExactSquareRoot("sqrt_even: argument is not even");
  Scalar b = f.body();
  if (b.is_zero()) throw NoExactSquareRoot("sqrt_even: body is zero");
  auto rb = b.sqrt();
  if (!rb) throw NoExactSquareRoot("sqrt_even: body " + b.to_string() + " is not a perfect square");
  SuperFunction u = b.inverse() * f.nilpotent_part();
  // sum_k binom(1/2, k) u^k
  SuperFunction series = SuperFunction(1).with_chart(f.chart());
  SuperFunction power = SuperFunction(1).with_chart(f.chart());
  Scalar binom(1);
  for (long k = 1;; ++k) {
    power = power * u;
    if (power.is_zero()) break;
    binom = binom * Scalar::rational(1, 2 * k) * Scalar(3 - 2 * k);
    series += binom * power;
  }
  return *rb * series;
}

/// exp(g) for g with zero body (finite series).
inline SuperFunction exp_nilpotent(const SuperFunction& g) {
  if (!g.body().is_zero()) throw DomainError("exp_nilpotent: body must be zero");
  if (!g.is_even()) throw ParityError("exp_nilpotent: argument must be even");
  SuperFunction result = SuperFunction(1).with_chart(g.chart());
  SuperFunction power = SuperFunction(1).with_chart(g.chart());
  Scalar inv_fact(1);
  for (long k = 1;; ++k) {
    power = power * g;
    if (power.is_zero()) break;
    inv_fact = inv_fact * Scalar::rational(1, k);
    result += inv_fact * power;
  }
  return result;
}

/// Images of even variables and odd generators for substitute().
struct Substitution {
  std::map<int, SuperFunction> even;  // by Var slot
  std::map<int, SuperFunction> odd;   // by generator bit
  std::string target_chart;

  Substitution& set(Var v, SuperFunction f) {
    require_valid(v);
    if (!f.is_even()) throw ParityError("image of " + v.name() + " is not even");
    even[v.slot()] = std::move(f);
    return *this;
  }
  Substitution& set(OddGenerator g, SuperFunction f) {
    if (!f.is_odd()) throw ParityError("image of " + g.name() + " is not odd");
    odd[g.bit()] = std::move(f);
    return *this;
  }
};

namespace detail {

inline SuperFunction evaluate_polynomial(const Polynomial& p, const Substitution& s, const std::string& chart) {
  return p.evaluate<SuperFunction>(
      [&](int slot) {
        auto it = s.even.find(slot);
        if (it != s.even.end()) return it->second;
        return SuperFunction::variable(Var::from_slot(slot), chart);
      },
      [&](const GaussianRational& c) { return SuperFunction(Scalar(c), chart); });
}

}  // namespace detail

/// Exact composition f(images). Unmapped generators and variables are kept.
inline SuperFunction substitute(const SuperFunction& f, const Substitution& s) {
  std::string chart = s.target_chart;
  for (const auto& [k, v] : s.even)
    if (chart.empty()) chart = v.chart();
  for (const auto& [k, v] : s.odd)
    if (chart.empty()) chart = v.chart();

  std::uint32_t mapped_slots = 0;
  for (const auto& [k, v] : s.even) mapped_slots |= (1u << k);

  std::map<std::pair<std::string, std::string>, SuperFunction> cache;
  SuperFunction result = SuperFunction().with_chart(chart);
  for (const auto& [m, c] : f.terms()) {
    SuperFunction value;
    if (!(c.support() & mapped_slots)) {
      value = SuperFunction(c, chart);
    } else {
      auto key = std::make_pair(c.num().to_string(), c.den().to_string());
      auto it = cache.find(key);
      if (it == cache.end()) {
        SuperFunction n = detail::evaluate_polynomial(c.num(), s, chart);
        SuperFunction d = detail::evaluate_polynomial(c.den(), s, chart);
        if (d.body().is_zero()) throw NotInvertible("substitute: denominator body vanishes after substitution");
        it = cache.emplace(key, n * invert(d)).first;
      }
      value = it->second;
    }
    ThetaMonomial rest = m;
    while (rest) {
      int b = std::countr_zero(rest);
      rest &= rest - 1;
      auto it = s.odd.find(b);
      value = value * (it != s.odd.end() ? it->second
                                         : SuperFunction::generator(OddGenerator::from_bit(b), chart));
    }
    result += value;
  }
  return result.with_chart(chart);
}

/// Berezin integral over `gens` (ascending order) with the normalization
/// integral(g_1 ... g_k) = 1, i.e. the left derivatives d_{g_k} ... d_{g_1}.
inline SuperFunction berezin_integral(const SuperFunction& f, const std::vector<OddGenerator>& gens) {
  SuperFunction r = f;
  for (const auto& g : gens) r = partial_odd(r, g);
  return r;
}

}  // namespace oddsym
