#include <gtest/gtest.h>

#include "oddsym/charts.hpp"
#include "oddsym/sampling.hpp"
#include "transitions.hpp"

using namespace oddsym;
using fixtures::C;
using fixtures::E;
using fixtures::T;
using fixtures::X;

namespace {

Scalar x(int i) { return Scalar::variable(Var::x(i)); }

Transition scaling() { return Transition("U", "V", 1, {C(2) * X(1), C(1, 2) * T(1)}); }

// Random even supermatrix with invertible diagonal bodies.
SuperMatrix random_supermatrix(sampling::Random& rng, int n) {
  SuperMatrix M(2 * n);
  for (int r = 0; r < 2 * n; ++r)
    for (int c = 0; c < 2 * n; ++c) {
      int parity = SuperMatrix::block_parity(r, c, n);
      SuperFunction e = rng.homogeneous(n, parity, 1, 2);
      if (parity == 0) e = e.nilpotent_part() + (r == c ? C(rng.coefficient()) : C(0));
      M(r, c) = e;
    }
  return M;
}

}  // namespace

TEST(Jacobian, IdentityAndScaling) {
  EXPECT_EQ(jacobian(Transition::identity(2)), SuperMatrix::identity(4));
  EXPECT_EQ(berezinian(Transition::identity(2)), C(1));
  auto J = jacobian(scaling());
  EXPECT_EQ(J(0, 0), C(2));
  EXPECT_EQ(J(1, 1), C(1, 2));
  EXPECT_EQ(berezinian(scaling()), C(4));
}

TEST(Jacobian, InducedPointTransformationIsBlockTriangular) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& P : fixtures::point_transitions(n)) {
      auto J = jacobian(P);
      SuperMatrix A(n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          EXPECT_TRUE(J(n + k, i).is_zero());  // d x / d th' = 0
          A(i, k) = partial_even(P.images[i], Var::x(k + 1));
        }
      // D block = (dx'/dx) expressed in x'
      SuperMatrix Ainv = inverse(A);
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) EXPECT_EQ(J(n + l, n + j), Ainv(l, j));
      SuperFunction det = determinant(A);
      EXPECT_EQ(berezinian(P), det * det);
    }
  }
}

TEST(Berezinian, Multiplicative) {
  sampling::Random rng(31);
  for (int n = 1; n <= 2; ++n)
    for (int k = 0; k < 10; ++k) {
      auto M1 = random_supermatrix(rng, n);
      auto M2 = random_supermatrix(rng, n);
      EXPECT_EQ(berezinian(M1 * M2), berezinian(M1) * berezinian(M2));
    }
}

TEST(Berezinian, ChainRuleForComposedTransitions) {
  for (int n = 1; n <= 2; ++n) {
    auto ts = fixtures::symplectic_transitions(n);
    for (std::size_t a = 0; a + 1 < ts.size(); ++a) {
      const auto& t1 = ts[a];
      const auto& t2 = ts[a + 1];
      auto composed = compose(t1, t2);
      SuperMatrix pulled(2 * n);
      auto J1 = jacobian(t1);
      for (int r = 0; r < 2 * n; ++r)
        for (int c = 0; c < 2 * n; ++c) pulled(r, c) = t2.pull(J1(r, c));
      EXPECT_EQ(jacobian(composed), jacobian(t2) * pulled);
      EXPECT_EQ(berezinian(composed), berezinian(t2) * t2.pull(berezinian(t1)));
    }
  }
}

TEST(Berezinian, SingularOddBlock) {
  Transition degenerate({}, {}, 1, {X(1), E(1) * X(1)});
  EXPECT_THROW(berezinian(degenerate), NotInvertible);
}

TEST(Symplectomorphism, Examples) {
  EXPECT_TRUE(is_symplectomorphism(scaling()).ok());
  EXPECT_FALSE(is_symplectomorphism(Transition({}, {}, 1, {C(2) * X(1), T(1)})).ok());
  std::vector<SuperFunction> closed = {X(2) * E(1), X(1) * E(1)};
  std::vector<SuperFunction> open = {X(2) * E(1), C(0)};
  EXPECT_TRUE(is_closed_one_form(closed));
  EXPECT_FALSE(is_closed_one_form(open));
  EXPECT_TRUE(is_symplectomorphism(shift_transition(2, closed)).ok());
  EXPECT_FALSE(is_symplectomorphism(shift_transition(2, open)).ok());
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : fixtures::symplectic_transitions(n)) EXPECT_TRUE(is_symplectomorphism(t).ok());
}

TEST(TransformDensity, Examples) {
  sampling::Random rng(2);
  auto f = rng.function(1).with_chart("U");
  auto d0 = transform_density(Density(f, 0, "U"), scaling());
  EXPECT_EQ(d0.coefficient, scaling().pull(f));
  EXPECT_EQ(d0.chart, "V");
  auto half = transform_density(Density(C(1), mpq_class(1, 2)), point_transition(1, {C(2) * X(1)}));
  EXPECT_EQ(half.coefficient, C(2));
  auto vol = transform_density(Density::volume(C(1)), scaling());
  EXPECT_EQ(vol.coefficient, C(4));
  EXPECT_THROW(transform_density(Density(f, 1, "W"), scaling()), ChartMismatch);
  EXPECT_THROW(transform_density(Density(C(1)), Transition({}, {}, 1, {X(1), X(1) * T(1)})), NoExactSquareRoot);
}

TEST(CanonicalDelta, ExamplesAndNilpotency) {
  EXPECT_EQ(canonical_delta(Density::semidensity(X(1) * T(1))).coefficient, C(1));
  sampling::Random rng(3);
  for (int k = 0; k < 30; ++k) {
    auto s = Density::semidensity(rng.function(3));
    EXPECT_TRUE(canonical_delta(canonical_delta(s)).coefficient.is_zero());
  }
  EXPECT_THROW(canonical_delta(Density::volume(C(1))), DomainError);
}

TEST(CanonicalDelta, EquivariantUnderSymplecticTransitions) {
  sampling::Random rng(4);
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : fixtures::symplectic_transitions(n))
      for (int k = 0; k < 3; ++k) {
        auto s = Density::semidensity(rng.function(n, 2));
        EXPECT_EQ(transform_density(canonical_delta(s), t), canonical_delta(transform_density(s, t)));
      }
}

TEST(CanonicalDelta, ConjugationThroughTransition) {
  // Delta_0 in old coordinates equals Delta_Ber in new ones.
  sampling::Random rng(5);
  for (int n = 1; n <= 2; ++n)
    for (const auto& t : fixtures::symplectic_transitions(n)) {
      VolumeForm ber(berezinian(t));
      for (int k = 0; k < 3; ++k) {
        auto f = rng.function(n, 2);
        EXPECT_EQ(t.pull(delta0(f)), delta_rho(ber, t.pull(f)));
      }
    }
}

TEST(BvIdentity, VanishesForSymplecticTransitions) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : fixtures::symplectic_transitions(n)) EXPECT_TRUE(bv_identity(t).is_zero());
  for (const auto& t : fixtures::shift_transitions(2)) EXPECT_EQ(berezinian(t), C(1));
}

TEST(Exponentiate, Examples) {
  auto id = exponentiate_hamiltonian(E(1) * T(1) * T(2), Scalar(0), 2);
  EXPECT_EQ(id.images, Transition::identity(2).images);
  auto Q = E(1) * T(1) * T(2);
  auto t = exponentiate_hamiltonian(Q, Scalar(1), 2);
  // second order vanishes
  EXPECT_EQ(t.images[0], X(1) - odd_bracket(Q, X(1)));
  EXPECT_EQ(t.images[1], X(2) - odd_bracket(Q, X(2)));
  EXPECT_EQ(t.images[2], T(1));
  EXPECT_TRUE(is_symplectomorphism(t).ok());
  // identical on th = 0
  Substitution th_zero;
  th_zero.set(OddGenerator::theta(1), SuperFunction()).set(OddGenerator::theta(2), SuperFunction());
  EXPECT_EQ(substitute(t.images[0], th_zero), X(1));
  EXPECT_THROW(exponentiate_hamiltonian(T(1), Scalar(1), 1), DomainError);
  EXPECT_THROW(exponentiate_hamiltonian(T(1) * T(2), Scalar(1), 2), ParityError);
}

TEST(Exponentiate, FlowGroupLaw) {
  std::vector<SuperFunction> hams = {E(1) * X(1) * T(1) * T(2), E(1) * (X(1) + X(2) * X(2)) * T(1) * T(2) + E(2) * X(1) * T(1) * T(2)};
  for (const auto& Q : hams) {
    auto a = exponentiate_hamiltonian(Q, Scalar(1), 2);
    auto b = exponentiate_hamiltonian(Q, Scalar(2), 2);
    auto ab = exponentiate_hamiltonian(Q, Scalar(3), 2);
    EXPECT_EQ(compose(a, b).images, ab.images);
    auto two = exponentiate_hamiltonian(Q, Scalar(2), 2);
    EXPECT_EQ(compose(a, a).images, two.images);
  }
  auto Q3 = X(1) * T(1) * T(2) * T(3);
  EXPECT_EQ(compose(exponentiate_hamiltonian(Q3, Scalar::rational(1, 2), 3),
                    exponentiate_hamiltonian(Q3, Scalar::rational(1, 2), 3)).images,
            exponentiate_hamiltonian(Q3, Scalar(1), 3).images);
}

TEST(DeltaQ, ExamplesAndCommutation) {
  auto Q = E(1) * T(1) * T(2);
  auto s = Density::semidensity(X(1));
  EXPECT_EQ(delta_Q_differential(Q, s).coefficient, -odd_bracket(Q, X(1)));
  EXPECT_TRUE(commutation_check(Q, s).holds());
  sampling::Random rng(6);
  for (int k = 0; k < 30; ++k) {
    auto q = rng.homogeneous(3, 1, 2);
    auto sd = Density::semidensity(rng.function(3, 2));
    EXPECT_TRUE(commutation_check(q, sd).holds());
  }
  // closed Q and closed s give a closed result
  auto closedQ = T(1) * T(2) * T(3);
  auto closedS = Density::semidensity(X(2) * T(1) + X(1) * X(3));
  EXPECT_TRUE(delta0(closedQ).is_zero());
  EXPECT_TRUE(delta0(closedS.coefficient).is_zero());
  EXPECT_TRUE(delta0(delta_Q_differential(closedQ, closedS).coefficient).is_zero());
}

TEST(DeltaQ, IsTheInfinitesimalPullback) {
  sampling::Random rng(7);
  for (int k = 0; k < 20; ++k) {
    auto q = rng.homogeneous(2, 1, 2);
    auto s = rng.function(2, 2);
    EXPECT_EQ(flow_lie_derivative(q, s, 2), delta_Q_differential(q, Density::semidensity(s)).coefficient);
  }
}

TEST(Commutator, Examples) {
  auto s = Density::semidensity(C(1));
  auto r = commutator_relation(s, C(3), 1);
  EXPECT_TRUE(r.lhs.is_zero());
  EXPECT_TRUE(r.holds());
  auto r2 = commutator_relation(s, X(1) * T(1), 1);
  EXPECT_EQ(r2.lhs, C(1));
  EXPECT_TRUE(r2.holds());
  sampling::Random rng(8);
  for (int k = 0; k < 40; ++k) {
    auto f = rng.function(2, 2);
    auto sd = Density::semidensity(rng.function(2, 2));
    auto rel = commutator_relation(sd, f, 2);
    EXPECT_TRUE(rel.holds());
    EXPECT_EQ(rel.lhs, lie_derivative(f, sd.coefficient));
  }
}

TEST(Normality, Examples) {
  auto one = is_normal(VolumeForm(), {Transition::identity(1)}, 1);
  EXPECT_TRUE(one.normal());
  EXPECT_TRUE(one.sqrt_closed.value_or(false));
  EXPECT_TRUE(one.delta_squared_zero);
  // rho = 4: normal after the inverse scaling x -> x/2, th -> 2 th (Ber 1/4)
  Transition inverse_scaling({}, {}, 1, {C(1, 2) * X(1), C(2) * T(1)});
  auto four = is_normal(VolumeForm(C(4)), {scaling(), inverse_scaling}, 1);
  EXPECT_FALSE(four.normal_in_candidate[0]);
  EXPECT_TRUE(four.normal_in_candidate[1]);
  EXPECT_TRUE(four.normal());
  // Delta sqrt(rho) = nu sqrt(rho) with odd constant nu = -eps1: not closed
  auto w = C(1) + E(1) * X(1) * T(1);
  auto nu = is_normal(VolumeForm(w * w), {}, 1);
  EXPECT_FALSE(nu.normal());
  EXPECT_FALSE(nu.sqrt_closed.value());
  EXPECT_TRUE(nu.delta_squared_zero);
}
