#include <gtest/gtest.h>

#include "oddsym/brackets.hpp"
#include "oddsym/sampling.hpp"

using namespace oddsym;

namespace {

SuperFunction X(int i) { return SuperFunction::x(i); }
SuperFunction T(int i) { return SuperFunction::theta(i); }
SuperFunction PE(int i) { return SuperFunction::variable(Var::pe(i)); }
SuperFunction PO(int i) { return SuperFunction::generator(OddGenerator::po(i)); }
SuperFunction C(long p, long q = 1) { return SuperFunction(Scalar::rational(p, q)); }

Coordinate cx(int i) { return Coordinate::even(Var::x(i)); }
Coordinate ct(int i) { return Coordinate::odd_gen(OddGenerator::theta(i)); }

}  // namespace

TEST(OddBracket, CanonicalPairs) {
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      EXPECT_EQ(odd_bracket(X(i), T(j)), C(i == j ? 1 : 0));
      EXPECT_EQ(odd_bracket(T(j), X(i)), C(i == j ? -1 : 0));
      EXPECT_TRUE(odd_bracket(X(i), X(j)).is_zero());
      EXPECT_TRUE(odd_bracket(T(i), T(j)).is_zero());
    }
  }
}

TEST(OddBracket, HandExpansion) {
  // x1 th1 is odd: th1 * x1 + (-1) * x1 * th1 = 0
  EXPECT_TRUE(odd_bracket(X(1) * T(1), X(1) * T(1)).is_zero());
  EXPECT_EQ(odd_bracket(X(1) * X(1), T(1)), C(2) * X(1));
  EXPECT_EQ(odd_bracket(X(1) * T(2), X(2) * T(1)), X(2) * T(2) - X(1) * T(1));
  // mixed parity argument is split
  auto f = X(1) + T(1);
  EXPECT_EQ(odd_bracket(f, X(1) * T(1)), X(1) - T(1));
}

TEST(OddBracket, ChartMismatch) {
  EXPECT_THROW(odd_bracket(SuperFunction::x(1, "U"), SuperFunction::theta(1, "V")), ChartMismatch);
}

TEST(OddBracket, HamiltonianField) {
  EXPECT_EQ(hamiltonian_apply(T(1), X(1)), C(-1));
  EXPECT_EQ(hamiltonian_apply(X(1), T(1)), C(1));
  EXPECT_TRUE(hamiltonian_apply(C(5), X(1) * T(1)).is_zero());
  sampling::Random rng(11);
  for (int k = 0; k < 50; ++k) {
    auto f = rng.random_parity(3);
    auto g = rng.function(3);
    EXPECT_EQ(hamiltonian_field(f, 3).apply(g), odd_bracket(f, g));
  }
}

TEST(OddBracket, GenericTableAgreesWithFormula) {
  auto P = PhaseSpace::odd_symplectic(3);
  sampling::Random rng(5);
  for (int k = 0; k < 100; ++k) {
    auto f = rng.function(3);
    auto g = rng.function(3);
    EXPECT_EQ(P.bracket(f, g), odd_bracket(f, g));
  }
}

TEST(EvenBracket, CanonicalPairs) {
  EXPECT_EQ(even_bracket(X(1), PE(1), 2), C(1));
  EXPECT_EQ(even_bracket(PE(1), X(1), 2), C(-1));
  EXPECT_EQ(even_bracket(T(1), PO(1), 2), C(1));
  EXPECT_EQ(even_bracket(PO(1), T(1), 2), C(1));
  EXPECT_TRUE(even_bracket(PE(1), PE(2), 2).is_zero());
  EXPECT_EQ(even_bracket(X(1) * X(1), PE(1), 2), C(2) * X(1));
  EXPECT_EQ(odd_fiber_bracket(X(1), PO(1), 2), C(1));
  EXPECT_EQ(odd_fiber_bracket(T(1), PE(1), 2), C(1));
  EXPECT_THROW(even_bracket(SuperFunction::xi(1), X(1), 1), DomainError);
}

TEST(Axioms, CanonicalBracketOnRandomSamples) {
  sampling::Random rng(3);
  std::vector<SuperFunction> samples;
  for (int k = 0; k < 8; ++k) samples.push_back(rng.function(2, 2));
  auto rep = check_axioms(Bracket::canonical_odd(), samples);
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.triples, 0u);
}

TEST(Axioms, EmptySamplesPassVacuously) {
  auto rep = check_axioms(Bracket::canonical_odd(), {});
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.triples, 0u);
}

TEST(Axioms, CanonicalBracketExhaustiveSmallBasis) {
  auto rep = check_axioms(Bracket::canonical_odd(), sampling::monomial_basis(2, 1));
  EXPECT_TRUE(rep.ok());
}

TEST(Axioms, EvenAndFiberBracketsSatisfyAxioms) {
  sampling::Random rng(8);
  std::vector<SuperFunction> samples;
  for (int k = 0; k < 5; ++k) {
    samples.push_back(rng.function(1, 2) * (C(1) + PE(1) + PO(1)));
  }
  EXPECT_TRUE(check_axioms(Bracket::of(PhaseSpace::cotangent(1)), samples).ok());
  EXPECT_TRUE(check_axioms(Bracket::of(PhaseSpace::parity_reversed_cotangent(1)), samples).ok());
}

TEST(Axioms, CorruptedTableIsDetected) {
  // {x1, th1} = x2 while {x2, th2} = 1: Jacobi fails on (th2, x1, th1).
  auto P = PhaseSpace::odd_symplectic(2);
  P.set_pair(cx(1), ct(1), X(2));
  auto br = Bracket::of(P);
  // {th2, {x1, th1}} = {th2, x2} = -1, while the other two terms vanish.
  EXPECT_EQ(br(T(2), br(X(1), T(1))), C(-1));
  EXPECT_TRUE(br(br(T(2), X(1)), T(1)).is_zero());
  EXPECT_TRUE(br(X(1), br(T(2), T(1))).is_zero());
  auto rep = check_axioms(br, {X(1), X(2), T(1), T(2)});
  EXPECT_TRUE(rep.failed("jacobi"));
  EXPECT_FALSE(rep.failed("leibniz"));
}

TEST(Axioms, RescaledEntryOnOneDimensionIsStillPoisson) {
  // {x1, th1} = x1 is the canonical bracket in the coordinate log(x1).
  auto P = PhaseSpace::odd_symplectic(1);
  P.set_pair(cx(1), ct(1), X(1));
  EXPECT_TRUE(check_axioms(Bracket::of(P), sampling::monomial_basis(1, 2)).ok());
}

TEST(DerivedBracket, ReproducesCanonicalOddBracket) {
  const int n = 2;
  SuperFunction S;
  for (int i = 1; i <= n; ++i) S += PE(i) * PO(i);
  MasterHamiltonian M(PhaseSpace::cotangent(n), S);
  EXPECT_FALSE(M.is_metric());
  EXPECT_EQ(M.derived_parity(), 1);
  EXPECT_TRUE(master_condition(M).is_zero());
  sampling::Random rng(21);
  for (int k = 0; k < 40; ++k) {
    auto f = rng.function(n, 2);
    auto g = rng.function(n, 2);
    EXPECT_EQ(derived_bracket(M, f, g), odd_bracket(f, g));
  }
  EXPECT_EQ(derived_bracket(M, X(1), T(1)), C(1));
}

TEST(DerivedBracket, ZeroHamiltonian) {
  MasterHamiltonian M(PhaseSpace::cotangent(1), SuperFunction());
  EXPECT_TRUE(derived_bracket(M, X(1), T(1)).is_zero());
  EXPECT_TRUE(master_condition(M).is_zero());
}

TEST(DerivedBracket, PoissonBivectorOnEvenBase) {
  // S = 1/2 pi^{ij} z*_j z*_i on Pi T*R^3, the bracket {x^i, x^j} = pi^{ij} up to sign.
  auto P = PhaseSpace::even_base_cotangent(3, true);
  MasterHamiltonian good(P, PO(1) * PO(2) + PO(2) * PO(3));
  EXPECT_TRUE(master_condition(good).is_zero());
  EXPECT_TRUE(check_axioms(derived(good), {X(1), X(2), X(3), X(1) * X(2)}).ok());
  // pi = d1^d2 + x2 d2^d3 has a nonvanishing Schouten square.
  MasterHamiltonian bad(P, PO(1) * PO(2) + X(2) * PO(2) * PO(3));
  EXPECT_FALSE(master_condition(bad).is_zero());
  EXPECT_TRUE(check_axioms(derived(bad), {X(1), X(2), X(3)}).failed("jacobi"));
}

TEST(DerivedBracket, MasterConditionDetectsJacobiFailure) {
  // Odd Hamiltonian on T*R^{2|2} with derived bracket {x1, th1} = x2.
  auto P = PhaseSpace::cotangent(2);
  MasterHamiltonian bad(P, X(2) * PE(1) * PO(1) + PE(2) * PO(2));
  EXPECT_EQ(derived_bracket(bad, X(1), T(1)), X(2));
  EXPECT_FALSE(master_condition(bad).is_zero());
  EXPECT_TRUE(check_axioms(derived(bad), {X(1), X(2), T(1), T(2)}).failed("jacobi"));

  MasterHamiltonian rescaled(P, X(1) * PE(1) * PO(1) + PE(2) * PO(2));
  EXPECT_TRUE(master_condition(rescaled).is_zero());
  EXPECT_TRUE(check_axioms(derived(rescaled), sampling::monomial_basis(2, 1)).ok());
}

TEST(DerivedBracket, ParityFlippedHamiltonianIsSymmetric) {
  auto P = PhaseSpace::cotangent(2);
  MasterHamiltonian metric(P, C(1, 2) * (PE(1) * PE(1) + X(1) * PE(2) * PE(2)) + T(1) * T(2) * PE(1) * PE(2));
  EXPECT_TRUE(metric.is_metric());
  EXPECT_EQ(metric.derived_parity(), 0);
  EXPECT_TRUE(master_condition(metric).is_zero());
  sampling::Random rng(4);
  for (int k = 0; k < 30; ++k) {
    auto f = rng.homogeneous(2, 0, 2);
    auto g = rng.homogeneous(2, 0, 2);
    EXPECT_EQ(derived_bracket(metric, f, g), derived_bracket(metric, g, f));
  }
  EXPECT_EQ(derived_bracket(metric, X(1), X(1)), C(-1));
}

TEST(MasterHamiltonian, RejectsWrongShape) {
  EXPECT_THROW(MasterHamiltonian(PhaseSpace::cotangent(1), PE(1) * PO(1) * PE(1)), DomainError);
  EXPECT_THROW(MasterHamiltonian(PhaseSpace::cotangent(1), PE(1) + PE(1) * PO(1)), ParityError);
  EXPECT_THROW(MasterHamiltonian(PhaseSpace::odd_symplectic(1), SuperFunction()), DomainError);
}

TEST(Parity, BracketShiftsParity) {
  sampling::Random rng(9);
  for (int k = 0; k < 100; ++k) {
    auto f = rng.random_parity(3);
    auto g = rng.random_parity(3);
    auto b = odd_bracket(f, g);
    if (b.is_zero()) continue;
    ASSERT_TRUE(b.parity());
    EXPECT_EQ(*b.parity(), (*f.parity() + *g.parity() + 1) % 2);
  }
}
