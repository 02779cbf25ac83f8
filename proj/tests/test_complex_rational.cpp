#include <gtest/gtest.h>

#include "ehf/complex_rational.hpp"
#include "ehf/limits.hpp"
#include "ehf/random_params.hpp"

using namespace ehf;

TEST(Jcr, LocusClosedForm) {
  ParamGen g(31);
  for (int i = 0; i < 3; ++i) {
    const CRParams p = g.cr_locus();
    HalfInt sn{};
    for (const auto& x : p.n) sn += x;
    const Complex want = static_cast<double>(parity_sign(sn.as_integer())) * f_product(p);
    EXPECT_LT(rel_diff(jcr(p).value, want), 1e-7) << i;
  }
}

TEST(Jcr, HalfIntegerShiftIsReduction) {
  // Moving eps into the labels leaves the lattice sum unchanged.
  ParamGen g(32);
  const CRParams p = g.cr_identity(false, true);
  EXPECT_EQ(p.reduced().eps, HalfInt(0));
  EXPECT_LT(rel_diff(jcr(p).value, jcr(p.reduced()).value), 1e-12);
}

TEST(Jcr, Validation) {
  ParamGen g(33);
  CRParams p = g.cr_locus();
  p.m[0] = p.m[0] + HalfInt(1);
  EXPECT_THROW(p.validate(), DomainError);
  p = g.cr_locus();
  p.s[0] += 0.1;
  EXPECT_THROW(p.validate(), DomainError);
  p = g.cr_locus();
  p.eps = HalfInt::half();
  EXPECT_THROW(p.validate(), DomainError);
}

TEST(Jcr, OffsetOutsideStrip) {
  ParamGen g(34);
  const CRParams p = g.cr_locus();
  CROptions o;
  o.offset = 5.0;
  EXPECT_THROW(jcr(p, o), PolePinch);
}

TEST(Ecr, HalfIntegerLattice) {
  ParamGen g(35);
  for (bool half : {false, true}) {
    const ECRParams p = g.ecr(half);
    CROptions o;
    o.tol = 1e-8;
    const Evaluation e = ecr(p, o);
    EXPECT_TRUE(is_finite(e.value));
    EXPECT_LT(e.abs_err, 1e-7 * std::abs(e.value));
    EXPECT_LT(e.terms_used, 2000);
  }
}

TEST(Ecr, LabelsOffLattice) {
  ParamGen g(36);
  ECRParams p = g.ecr(true);
  p.l[2] = HalfInt(1);
  EXPECT_THROW(ecr(p), DomainError);
}

TEST(Residuals, DifferenceEquations) {
  ParamGen g(37);
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT(std::abs(cr_residual(CREquation::difjmn, g.cr_difference())), 1e-7) << i;
    EXPECT_LT(std::abs(cr_residual(CREquation::difjmn2, g.cr_difference())), 1e-7) << i;
    EXPECT_LT(std::abs(cr_residual(CREquation::ecr_eq1, g.ecr(i == 1))), 1e-7) << i;
    EXPECT_LT(std::abs(cr_residual(CREquation::ecr_eq2, g.ecr(i == 1))), 1e-7) << i;
  }
  for (int i = 0; i < 5; ++i) EXPECT_LT(std::abs(cr_residual(CREquation::f_eq, g.cr_locus())), 1e-12) << i;
}

TEST(Identities, BothBranches) {
  ParamGen g(38);
  CROptions o;
  o.tol = 1e-8;
  for (bool ide_half : {false, true})
    for (bool je_half : {false, true}) {
      const CRParams p = g.cr_identity(ide_half, je_half);
      EXPECT_LT(check_cr_identity(CRIdentity::ide1i, p, o), 1e-6) << ide_half << je_half;
      EXPECT_LT(check_cr_identity(CRIdentity::JE, p, o), 1e-6) << ide_half << je_half;
    }
}

TEST(Eqdif, CubicIdentity) {
  ParamGen g(39);
  auto pt = [&] { return Complex(g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0)); };
  for (int i = 0; i < 200; ++i) {
    EXPECT_LT(eqdif_lhs(pt(), pt(), pt(), pt(), pt(), pt()).normalized(), 1e-12);
    EXPECT_LT(eqdif_lhs(pt(), pt(), pt(), pt(), pt(), pt(), true).normalized(), 1e-12);
  }
  const PolyValue v = eqdif_lhs(0.25, 1.5, -0.5, 0.125, 0.75, -1.25);
  EXPECT_GT(v.scale, 1.0);
  EXPECT_EQ(std::abs(v.value), 0.0);  // dyadic inputs: every product is exact
}

TEST(Complex6j, OddLabelsRejected) {
  SixJComplexParams p = LimitTarget::default_sixj();
  p.N[0] = 1;
  EXPECT_THROW(p.derived(), DomainError);
}

TEST(Complex6j, FiniteAtDefaultLabels) {
  const Evaluation e = complex_6j(LimitTarget::default_sixj());
  EXPECT_TRUE(is_finite(e.value));
  EXPECT_GT(std::abs(e.value), 0.0);
}
