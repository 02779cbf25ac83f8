#include <gtest/gtest.h>

#include <random>

#include "ehf/gamma_core.hpp"

using namespace ehf;

namespace {

void expect_close(Complex got, Complex want, double tol) {
  EXPECT_LE(rel_diff(got, want), tol) << "got " << got << " want " << want;
}

}  // namespace

TEST(Lngamma, TrivialValues) {
  EXPECT_NEAR(std::abs(lngamma(1.0)), 0.0, 1e-15);
  expect_close(lngamma(0.5), std::log(std::sqrt(kPi)), 1e-14);
}

TEST(Lngamma, OracleValue) {
  expect_close(lngamma({3.0, 4.0}), {-1.7566267846037841105, 4.7426644380346579282}, 1e-14);
}

TEST(Lngamma, PoleAtNonpositiveInteger) {
  EXPECT_THROW(lngamma(-3.0), PoleError);
  EXPECT_THROW(lngamma(0.0), PoleError);
}

TEST(Lngamma, MatchesTgammaOnRealAxis) {
  for (double x : {0.1, 0.7, 1.5, 4.2, 17.3, 40.0, -0.3, -2.6}) {
    const Complex g = std::exp(lngamma(x));
    EXPECT_NEAR(g.real() / std::tgamma(x), 1.0, 1e-13) << x;
  }
}

TEST(Cgamma, TrivialValues) {
  expect_close(cgamma({0.0, -1.0}, 0), 1.0, 1e-14);
  expect_close(cgamma(0.0, 1), 2.0, 1e-14);
}

TEST(Cgamma, OracleValue) {
  expect_close(cgamma({0.7, 0.2}, 2), {0.94475218694988091396, -0.066809340347287469454}, 1e-13);
}

TEST(Cgamma, SignReflection) {
  expect_close(cgamma(0.7, 3), -cgamma(0.7, -3), 1e-13);
}

TEST(Cgamma, PoleAndZero) {
  // alpha = (n + ix)/2 = 0 at x = 0, n = 0.
  EXPECT_THROW(cgamma(0.0, 0), PoleError);
  // 1 + (n - ix)/2 = 0 at n = 0, x = -2i.
  EXPECT_EQ(cgamma({0.0, -2.0}, 0), Complex{});
}

TEST(Cgamma, ReflectionRandom) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> n(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const Complex x(u(rng), u(rng) / 3.0);
    const int k = n(rng);
    expect_close(cgamma(x, k) * cgamma(-x - Complex(0, 2), k), 1.0, 1e-12);
  }
}

TEST(Theta, TrivialValues) {
  EXPECT_EQ(theta_q(1.0, 0.3), Complex{});
  expect_close(theta_q(0.3, 0.0), 0.7, 1e-16);
}

TEST(Theta, OracleValue) {
  expect_close(theta_q(0.5, 0.1), 0.36950936185691925806, 1e-14);
}

TEST(Theta1, SeriesOracle) {
  expect_close(theta1({0.2, 0.1}, {0.5, 1.0}), {0.43209874183187274564, 0.43336621827850390798}, 1e-13);
  expect_close(theta1(0.3, {0.0, 1.0}), 0.73719716371868159764, 1e-13);
  EXPECT_LT(std::abs(theta1(0.0, {0.0, 1.0})), 1e-16);
}

TEST(Theta1, ProductForm) {
  const Complex u(0.2, 0.1), tau(0.5, 1.0);
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  const Complex prod = kI * std::exp(2.0 * kPi * kI * tau / 8.0) * std::exp(-kPi * kI * u) *
                       qpochhammer(q, q) * theta_q(std::exp(2.0 * kPi * kI * u), q);
  expect_close(theta1(u, tau), prod, 1e-12);
  EXPECT_THROW(theta1(u, {0.5, -1.0}), DomainError);
}

TEST(Egamma, TrivialAndOracle) {
  expect_close(egamma(std::sqrt(0.04), {0.2, 0.2}), 1.0, 1e-14);
  expect_close(egamma({0.5, 0.1}, {0.15, 0.25}), {2.2545502069927989580, 0.65611454652628440782}, 1e-13);
}

TEST(Egamma, ShiftAndSymmetry) {
  const EllipticBases b(0.2, 0.3);
  const Complex z = 0.4;
  expect_close(egamma(0.3 * z, b) / egamma(z, b), theta_q(z, 0.2), 1e-12);
  EXPECT_EQ(egamma({0.3, 0.2}, {0.2, {0.1, 0.25}}), egamma({0.3, 0.2}, {{0.1, 0.25}, 0.2}));
  EXPECT_THROW(egamma(1.0, b), PoleError);
  EXPECT_THROW(EllipticBases(1.0, 0.2), DomainError);
}

TEST(B22, Values) {
  expect_close(b22(1.0, {1.0, 1.0}), -1.0 / 6.0, 1e-15);
  expect_close(b22(0.0, {1.0, 1.0}), 5.0 / 6.0, 1e-15);
  expect_close(b22(0.3, {1.0, 2.0}), 307.0 / 600.0, 1e-15);
}

TEST(Hgamma, TrivialValues) {
  expect_close(hgamma(1.5, {1.0, 2.0}), 1.0, 1e-13);
  expect_close(hgamma(2.5, {1.0, 2.0}), std::sqrt(2.0), 1e-12);
}

TEST(Hgamma, Oracles) {
  expect_close(hgamma(0.4, {1.0, 1.0}), 0.72751111787628857910, 1e-12);
  const QuasiPeriods w(1.0, std::polar(1.0, kPi / 4));
  const Complex want(0.875141938374990229990, 0.00612082878907395708460);
  expect_close(hgamma({0.7, 0.3}, w, HgammaRoute::integral), want, 1e-12);
  expect_close(hgamma({0.7, 0.3}, w, HgammaRoute::product), want, 1e-12);
}
