#include <gtest/gtest.h>

#include <cmath>

#include "ehf/quadrature.hpp"

using namespace ehf;

TEST(Interval, SineHalfPeriod) {
  QuadOptions o;
  o.rel_tol = 1e-13;
  const Evaluation e = integrate_interval([](double t) { return Complex(std::sin(t)); }, 0.0, kPi, o);
  EXPECT_NEAR(e.value.real(), 2.0, 1e-13);
  EXPECT_LT(e.abs_err, 1e-11);
}

TEST(Contour, GaussianAlongImaginaryAxis) {
  ContourSpec c;
  c.direction = kI;
  const Evaluation e = integrate_contour([](Complex z) { return std::exp(z * z); }, c, 1e-13);
  EXPECT_LT(std::abs(e.value - kI * std::sqrt(kPi)), 1e-12);
}

TEST(Contour, EvenFoldMatchesFullLine) {
  ContourSpec c;
  c.direction = kI;
  auto f = [](Complex z) { return std::exp(z * z) * std::cos(z); };
  const Evaluation full = integrate_contour(f, c, 1e-13);
  c.even = true;
  const Evaluation half = integrate_contour(f, c, 1e-13);
  EXPECT_LT(rel_diff(full.value, half.value), 1e-12);
}

TEST(Contour, AlgebraicTail) {
  ContourSpec c;
  c.direction = 1.0;
  c.tail = TailDecay::algebraic;
  const Evaluation e = integrate_contour([](Complex z) { return 1.0 / (1.0 + z * z); }, c, 1e-12);
  EXPECT_NEAR(e.value.real(), kPi, 1e-10);
  EXPECT_NEAR(e.value.imag(), 0.0, 1e-12);
}

TEST(Contour, CircleResidues) {
  ContourSpec c;
  c.kind = ContourKind::circle;
  EXPECT_LT(std::abs(integrate_contour([](Complex z) { return 1.0 / z; }, c, 1e-13).value - 2.0 * kPi * kI), 1e-12);
  const Complex r = integrate_contour([](Complex z) { return std::exp(z) / (z * z); }, c, 1e-13).value;
  EXPECT_LT(std::abs(r - 2.0 * kPi * kI), 1e-12);
}

TEST(Contour, ShiftedLineAvoidsPole) {
  // The poles at z = +-2 stay outside the strip swept between the two lines.
  ContourSpec c;
  c.base = 0.5;
  c.direction = kI;
  c.tail = TailDecay::algebraic;
  auto f = [](Complex z) { return 1.0 / (z * z - 4.0); };
  const Complex a = integrate_contour(f, c, 1e-12).value;
  c.base = -0.5;
  const Complex b = integrate_contour(f, c, 1e-12).value;
  EXPECT_LT(std::abs(a - b), 1e-10);
}

TEST(Contour, PoleOnContourIsPinch) {
  ContourSpec c;
  c.direction = 1.0;
  c.tail = TailDecay::algebraic;
  EXPECT_THROW(integrate_contour([](Complex z) { return 1.0 / z; }, c, 1e-8), PolePinch);
}

TEST(Contour, BudgetExhaustion) {
  ContourSpec c;
  c.direction = 1.0;
  c.node_budget = 64;
  auto f = [](Complex z) { return std::exp(-z * z) * std::cos(40.0 * z); };
  EXPECT_THROW(integrate_contour(f, c, 1e-14), NonConvergence);
}

TEST(Contour, InvalidSpecs) {
  ContourSpec c;
  auto f = [](Complex z) { return std::exp(z * z); };
  EXPECT_THROW(integrate_contour(f, c, 0.0), DomainError);
  c.node_budget = 10;
  EXPECT_THROW(integrate_contour(f, c, 1e-8), DomainError);
  c.node_budget = 1000;
  c.truncation = -1.0;
  EXPECT_THROW(integrate_contour(f, c, 1e-8), DomainError);
}

TEST(Contour, Deterministic) {
  ContourSpec c;
  c.direction = kI;
  auto f = [](Complex z) { return std::exp(z * z + 0.3 * z); };
  const Evaluation a = integrate_contour(f, c, 1e-12), b = integrate_contour(f, c, 1e-12);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.nodes_used, b.nodes_used);
}

TEST(HurwitzZeta, Values) {
  EXPECT_NEAR(hurwitz_zeta(2.0, 1.0), kPi * kPi / 6.0, 1e-14);
  EXPECT_NEAR(hurwitz_zeta(3.0, 0.5), 8.4143983221171599978, 1e-13);
  EXPECT_NEAR(hurwitz_zeta(2.5, 0.3), 21.069239202247724917, 1e-12);
  EXPECT_THROW(hurwitz_zeta(1.0, 1.0), DomainError);
  const Complex z = hurwitz_zeta(Complex(2.5, -0.7), 3.25);
  EXPECT_LT(std::abs(z - Complex(0.052078720825861717156, 0.11932703081413912584)), 1e-13);
}

TEST(BilateralSum, IntegerLattice) {
  SumOptions o;
  o.rel_tol = 1e-12;
  o.power_exponent = 2.0;
  const SumResult r = bilateral_sum([](HalfInt n) { return Complex(1.0 / (1.0 + n.value() * n.value())); },
                                    HalfInt(0), o);
  EXPECT_NEAR(r.eval.value.real(), 3.1533480949371623483, 1e-11);
}

TEST(BilateralSum, HalfIntegerLattice) {
  SumOptions o;
  o.rel_tol = 1e-12;
  o.power_exponent = 2.0;
  const SumResult r = bilateral_sum([](HalfInt n) { return Complex(1.0 / (1.0 + n.value() * n.value())); },
                                    HalfInt::half(), o);
  EXPECT_NEAR(r.eval.value.real(), 3.1298810356317585653, 1e-11);
}

TEST(BilateralSum, NonIntegerExponent) {
  SumOptions o;
  o.rel_tol = 1e-11;
  o.power_exponent = 3.0;
  auto t = [](HalfInt n) { return Complex(std::pow(1.0 + n.value() * n.value(), -1.5)); };
  EXPECT_NEAR(bilateral_sum(t, HalfInt(0), o).eval.value.real(), 2.0248698431004061296, 1e-10);
}

TEST(BilateralSum, RotatingPowerTail) {
  // |N|^{-3 + 0.8i}: the phase winds in log N, which a real exponent cannot fit.
  SumOptions o;
  o.rel_tol = 1e-11;
  o.power_exponent = Complex(3.0, -0.8);
  const Complex s(1.5, -0.4);
  auto t = [&](HalfInt n) { return std::pow(2.0 + n.value() * n.value(), -s); };
  const SumResult r = bilateral_sum(t, HalfInt(0), o);
  EXPECT_LT(std::abs(r.eval.value - Complex(0.83077213011356608811, 0.46106681052132839946)), 1e-10);
  EXPECT_LT(r.eval.terms_used, 2000);
}

TEST(BilateralSum, GeometricTerms) {
  SumOptions o;
  o.rel_tol = 1e-13;
  const SumResult r = bilateral_sum([](HalfInt n) { return Complex(std::exp(-std::abs(n.value()))); }, HalfInt(0), o);
  EXPECT_NEAR(r.eval.value.real(), 2.1639534137386528488, 1e-12);
}

TEST(BilateralSum, SlowDecayRefused) {
  SumOptions o;
  o.power_exponent = 1.1;
  auto t = [](HalfInt n) { return Complex(1.0 / (1.0 + std::abs(n.value()))); };
  EXPECT_THROW(bilateral_sum(t, HalfInt(0), o), NonConvergence);
}

TEST(BilateralSum, InvalidShift) {
  SumOptions o;
  EXPECT_THROW(bilateral_sum([](HalfInt) { return Complex(1.0); }, HalfInt(1), o), DomainError);
}
