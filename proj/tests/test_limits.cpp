#include <gtest/gtest.h>

#include "ehf/limits.hpp"
#include "ehf/random_params.hpp"

using namespace ehf;

TEST(Names, RoundTrip) {
  for (auto id : {LimitId::elliptic_to_hyperbolic, LimitId::gamma_b_to_i, LimitId::jh_b_to_0,
                  LimitId::pt_to_complex6j})
    EXPECT_EQ(limit_from_string(to_string(id)), id);
  EXPECT_FALSE(limit_from_string("b_to_0").has_value());
}

TEST(Scan, RejectsBadDeltas) {
  EXPECT_THROW(limit_scan(LimitId::gamma_b_to_i, std::vector<double>{}), DomainError);
  EXPECT_THROW(limit_scan(LimitId::gamma_b_to_i, {1e-2, 1e-1}), DomainError);
  EXPECT_THROW(limit_scan(LimitId::gamma_b_to_i, std::vector<double>{0.5}), DomainError);
}

TEST(Scan, EllipticToHyperbolicLinear) {
  const LimitScan s = limit_scan(LimitId::elliptic_to_hyperbolic);
  EXPECT_TRUE(s.monotone());
  EXPECT_NEAR(s.order, 1.0, 0.2);
  EXPECT_LT(s.rows.back().deviation, 0.05);
}

TEST(Scan, GammaNearUnitary) {
  const LimitScan s = limit_scan(LimitId::gamma_b_to_i);
  EXPECT_TRUE(s.monotone());
  EXPECT_NEAR(s.order, 1.0, 0.3);
}

// J_h carries dz / (i sqrt(w1 w2)), so the scaled value grows like w1^{-1/2};
// the bare dz integral converges at second order.
TEST(Scan, JhToJrMeasure) {
  const LimitScan s = limit_scan(LimitId::jh_b_to_0, {0.2, 0.1, 0.05});
  EXPECT_LT(s.order, 0.0);
  ASSERT_TRUE(s.alt_order.has_value());
  EXPECT_NEAR(*s.alt_order, 2.0, 0.2);
  EXPECT_LT(*s.rows.back().alt_deviation, 1e-3);
}

TEST(PrefactorF, Values) {
  EXPECT_EQ(prefactor_F(LimitTarget::default_sixj()), 0);
  ParamGen g(41);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(prefactor_F(g.sixj()) % 2, 0);
}

TEST(UnitaryFactors, LinearInDelta) {
  ParamGen g(42);
  for (const SixJComplexParams& p : {LimitTarget::default_sixj(), g.sixj(1)})
    for (double delta : {1e-2, 1e-3})
      for (const FactorCheck& f : unitary_factor_check(p, delta)) EXPECT_LT(f.deviation, 20.0 * delta) << f.name;
}

// The ratio tends to (-1)^(M1 + 1): -1 from the orientation of z = i(-N - u delta),
// the parity of M1 from continuing |S_b(2 alpha_t)|^2 off the unitary line.
TEST(Scan, PtSignByParity) {
  ParamGen g(43);
  SixJComplexParams odd = g.sixj(1);
  while (odd.M[0] % 2 == 0) odd = g.sixj(1);
  for (const SixJComplexParams& p : {LimitTarget::default_sixj(), odd}) {
    LimitTarget t;
    t.sixj = p;
    const LimitScan s = limit_scan(LimitId::pt_to_complex6j, {0.04, 0.02}, t);
    ASSERT_TRUE(s.alt_order.has_value());
    const LimitRow& last = s.rows.back();
    EXPECT_LT(*last.alt_deviation, 0.1) << "M1 = " << p.M[0];
    EXPECT_LT(*last.alt_deviation, s.rows.front().alt_deviation.value());
  }
}
