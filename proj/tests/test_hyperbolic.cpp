#include <gtest/gtest.h>

#include "ehf/hyperbolic.hpp"
#include "ehf/limits.hpp"
#include "ehf/random_params.hpp"

using namespace ehf;

namespace {

// Six parameters summing to Q: E_h is then the hyperbolic beta integral,
// equal to prod_{j<k} gamma(u_j + u_k).
HypParams6 beta_point(QuasiPeriods w) {
  std::array<Complex, 6> u = {Complex(0.2, 0.05), Complex(0.25, -0.03), Complex(0.3, 0.02), Complex(0.22, 0.01),
                              Complex(0.28, -0.04), 0.0};
  Complex s{};
  for (int k = 0; k < 5; ++k) s += u[k];
  u[5] = w.Q() - s;
  return {u, w};
}

Complex beta_product(const HypParams6& p) {
  Complex v = 1.0;
  for (int j = 0; j < 6; ++j)
    for (int k = j + 1; k < 6; ++k) v *= hgamma(p.u[j] + p.u[k], p.w);
  return v;
}

}  // namespace

TEST(Eh, BetaIntegral) {
  for (const QuasiPeriods w : {QuasiPeriods(1.0, 1.0), QuasiPeriods(1.0, Complex(0.9, 0.2))}) {
    const HypParams6 p = beta_point(w);
    const Evaluation e = eh(p);
    EXPECT_LT(rel_diff(e.value, beta_product(p)), 1e-11);
    EXPECT_LT(e.abs_err, 1e-9 * std::abs(e.value));
  }
}

TEST(Eh, OffsetIndependence) {
  const HypParams6 p = beta_point(QuasiPeriods(1.0, 1.0));
  HypOptions o;
  o.offset = 0.05;
  EXPECT_LT(rel_diff(eh(p, o).value, beta_product(p)), 1e-10);
}

TEST(Eh, GrowingIntegrandRejected) {
  HypParams6 p = beta_point(QuasiPeriods(1.0, 1.0));
  for (auto& x : p.u) x += 0.6;  // sum u - 2Q now has positive real part
  EXPECT_GE(eh_decay_rate(p), 0.0);
  EXPECT_THROW(eh(p), DomainError);
}

TEST(Jh, LocusClosedForm) {
  ParamGen g(3);
  for (int i = 0; i < 4; ++i) {
    const MuNuParams p = g.jh_locus(g.periods());
    EXPECT_LT(rel_diff(jh(p).value, jh_closed_form(p)), 1e-9) << i;
  }
}

TEST(Jh, BalancingViolation) {
  const QuasiPeriods w(1.0, 1.0);
  EXPECT_THROW(MuNuParams({0.1, 0.1, 0.1, 0.1}, {0.1, 0.1, 0.1, 0.1}, w), DomainError);
}

TEST(Jh, IdentitiesHold) {
  ParamGen g(4);
  for (int i = 0; i < 3; ++i) {
    const MuNuParams p = g.identity_params(g.periods());
    EXPECT_LT(check_identity(HypIdentity::jheh, p), 1e-9) << i;
    EXPECT_LT(check_identity(HypIdentity::ide1b, p), 1e-9) << i;
  }
}

TEST(Residuals, ThreeTermEquations) {
  ParamGen g(5);
  for (int i = 0; i < 2; ++i) {
    const QuasiPeriods w = g.periods();
    EXPECT_LT(std::abs(hyp_residual(HypEquation::br, g.ih_params(w))), 1e-9) << i;
    EXPECT_LT(std::abs(hyp_residual(HypEquation::br2, g.ih_params(w))), 1e-9) << i;
    EXPECT_LT(std::abs(hyp_residual(HypEquation::difeh, g.eh_params(w))), 1e-9) << i;
    EXPECT_LT(std::abs(hyp_residual(HypEquation::secdif, g.jh_params(w))), 1e-9) << i;
  }
}

TEST(Residuals, WrongFamilyRejected) {
  ParamGen g(6);
  const QuasiPeriods w = g.periods();
  EXPECT_THROW(hyp_residual(HypEquation::secdif, g.ih_params(w)), DomainError);
}

TEST(Pt, NearUnitaryPointUsesCells) {
  // b = i + 0.05 makes omega2 nearly -omega1.
  const QuasiPeriods w = QuasiPeriods::from_b(Complex(0.05, 1.0));
  ASSERT_TRUE(detail::needs_cells(w));
  const PTParams pt = pt_params_at(LimitTarget::default_sixj(), 0.05);
  const PTResult r = pt_6j_full(pt);
  EXPECT_TRUE(is_finite(r.value.value));
  EXPECT_LT(r.jb.abs_err, 1e-6 * std::abs(r.jb.value));
}
