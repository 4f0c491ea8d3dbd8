#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oddsym/superfunction.hpp"

namespace oddsym::sampling {

/// All x-monomials in x^1..x^n of total degree <= max_degree.
inline std::vector<Polynomial> x_monomials(int n, int max_degree) {
  std::vector<Polynomial> out{Polynomial(1)};
  std::vector<Polynomial> frontier{Polynomial(1)};
  std::vector<int> last_var{0};
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<Polynomial> next;
    std::vector<int> next_last;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      for (int i = std::max(1, last_var[k]); i <= n; ++i) {
        next.push_back(frontier[k] * Polynomial::variable(Var::x(i)));
        next_last.push_back(i);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
    last_var = std::move(next_last);
  }
  return out;
}

/// All th-monomials in th_1..th_n.
inline std::vector<ThetaMonomial> theta_monomials(int n) {
  std::vector<ThetaMonomial> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    ThetaMonomial m = 0;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) m |= mono::of(OddGenerator::theta(i + 1));
    out.push_back(m);
  }
  return out;
}

/// Exhaustive basis: th-monomials times x-monomials of degree <= max_degree.
inline std::vector<SuperFunction> monomial_basis(int n, int max_degree) {
  std::vector<SuperFunction> out;
  for (auto m : theta_monomials(n))
    for (const auto& p : x_monomials(n, max_degree)) out.push_back(SuperFunction::monomial(m, Scalar(p)));
  return out;
}

/// Deterministic generator of small random superfunctions: integer
/// coefficients in [-3, 3], x-degree <= max_degree.
class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  long coefficient() {
    int c = 0;
    while (c == 0) c = uniform(-3, 3);
    return c;
  }

  Polynomial x_monomial(int n, int max_degree) {
    int d = uniform(0, max_degree);
    Polynomial p(1);
    for (int k = 0; k < d; ++k) p *= Polynomial::variable(Var::x(uniform(1, n)));
    return p;
  }

  ThetaMonomial theta_monomial(int n) {
    ThetaMonomial m = 0;
    for (int i = 1; i <= n; ++i)
      if (uniform(0, 1)) m |= mono::of(OddGenerator::theta(i));
    return m;
  }

  /// Random sum of up to `max_terms` terms.
  SuperFunction function(int n, int max_degree = 3, int max_terms = 4) {
    SuperFunction f;
    int terms = uniform(1, max_terms);
    for (int k = 0; k < terms; ++k)
      f += SuperFunction::monomial(theta_monomial(n), Scalar(x_monomial(n, max_degree) * Polynomial(coefficient())));
    return f;
  }

  /// Random function of the given parity.
  SuperFunction homogeneous(int n, int parity, int max_degree = 3, int max_terms = 4) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto parts = function(n, max_degree, max_terms).parity_split();
      SuperFunction f = parity ? parts.second : parts.first;
      if (!f.is_zero()) return f;
    }
    return parity ? SuperFunction::theta(1) : SuperFunction(1);
  }

  /// Random homogeneous function of random parity.
  SuperFunction random_parity(int n, int max_degree = 3) { return homogeneous(n, uniform(0, 1), max_degree); }

  /// Even function with nonzero constant body c + nilpotent part.
  SuperFunction even_invertible(int n, int max_degree = 2) {
    SuperFunction nil = homogeneous(n, 0, max_degree).nilpotent_part();
    return SuperFunction(coefficient()) + nil;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oddsym::sampling
