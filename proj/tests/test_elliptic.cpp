#include <gtest/gtest.h>

#include "ehf/elliptic.hpp"
#include "ehf/random_params.hpp"

using namespace ehf;

namespace {

// t7 t8 = pq collapses V to the six-parameter elliptic beta integral,
// whose value is prod_{j<k<=6} Gamma(t_j t_k).
struct BetaCase {
  EllipticParams par;
  Complex closed;
};

BetaCase beta_case() {
  const Complex p = 0.2, q(0.0, 0.15);
  const EllipticBases b(p, q);
  std::array<Complex, 8> t = {Complex(0.5, 0.1), Complex(-0.4, 0.3), Complex(0.3, -0.5), Complex(0.6, 0.2),
                              Complex(-0.55, -0.1), 0.0, 0.5, 0.0};
  Complex prod = 1.0;
  for (int k = 0; k < 5; ++k) prod *= t[k];
  t[5] = p * q / prod;
  t[7] = p * q / t[6];
  Complex closed = 1.0;
  for (int j = 0; j < 6; ++j)
    for (int k = j + 1; k < 6; ++k) closed *= egamma(t[j] * t[k], b);
  return {EllipticParams(t, b), closed};
}

}  // namespace

TEST(VFunction, EllipticBetaIntegral) {
  const BetaCase c = beta_case();
  const Evaluation e = v_function(c.par);
  EXPECT_LT(rel_diff(e.value, c.closed), 1e-12);
  EXPECT_NEAR(c.closed.real(), 0.5462392035381786, 1e-13);
  EXPECT_NEAR(c.closed.imag(), 0.04624322873979497, 1e-13);
}

TEST(VFunction, RadiusIndependence) {
  const BetaCase c = beta_case();
  VOptions o;
  o.radius = 1.2;
  EXPECT_LT(rel_diff(v_function(c.par, o).value, c.closed), 1e-12);
}

TEST(VFunction, NoSeparatingCircle) {
  const BetaCase c = beta_case();
  VOptions o;
  o.radius = 0.5;  // below |t_6|
  EXPECT_THROW(v_function(c.par, o), PolePinch);
}

TEST(VFunction, BalancingViolation) {
  std::array<Complex, 8> t{};
  t.fill(0.5);
  EXPECT_THROW(EllipticParams(t, EllipticBases(0.2, 0.2)), DomainError);
  EXPECT_THROW(EllipticBases(1.0, 0.2), DomainError);
}

TEST(VFunction, PermutationSymmetric) {
  const BetaCase c = beta_case();
  auto t = c.par.t;
  std::swap(t[0], t[4]);
  std::swap(t[2], t[6]);
  EXPECT_LT(rel_diff(v_function(EllipticParams(t, c.par.bases)).value, c.closed), 1e-12);
}

TEST(EllipticEquation, RandomResiduals) {
  ParamGen g(11);
  for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(ehe_residual(g.elliptic())), 1e-8) << i;
}

