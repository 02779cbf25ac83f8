#pragma once

// The b -> 0 degenerations: Mellin-Barnes integrals J_r, J~_r and E_r of
// Euler gamma functions and their difference equations.

#include <array>
#include <cmath>
#include <optional>
#include <span>

#include "ehf/gamma_core.hpp"
#include "ehf/quadrature.hpp"

namespace ehf {

// beta_1..4, gamma_1..4 with sum (beta_k + gamma_k) = 2.
struct RationalParams {
  std::array<Complex, 4> beta{};
  std::array<Complex, 4> gamma{};

  RationalParams() = default;
  RationalParams(const std::array<Complex, 4>& b, const std::array<Complex, 4>& g) : beta(b), gamma(g) {
    validate();
  }
  void validate() const {
    Complex s{};
    for (int k = 0; k < 4; ++k) s += beta[k] + gamma[k];
    if (std::abs(s - 2.0) > 1e-12) throw DomainError("rational balancing condition violated");
  }
};

// alpha_1..6 for E_r; no balancing.
struct RationalParams6 {
  std::array<Complex, 6> alpha{};
};

struct RationalOptions {
  double tol = 1e-11;
  std::optional<double> offset;  // Re u of the contour; strip midline if unset
  long node_budget = 400000;
};

// J~_r evaluation with its decay diagnostics.
struct TildeEvaluation {
  Evaluation eval;
  double power_exponent = 0.0;  // fitted a in |f(+iT)| ~ T^{-a}
  double fast_ratio = 0.0;      // |f(-2iT)| / |f(-iT)|, about e^{-2 pi T}
  double fast_t = 0.0;          // T used for fast_ratio
};

namespace detail {

// 1 / Gamma(z) in log form; returns false at the zeros (poles of Gamma).
inline bool log_rgamma(Complex z, Complex& out) {
  if (near_nonpositive_integer(z)) return false;
  out = -lngamma(z);
  return true;
}

inline double rational_offset(std::span<const Complex> right, std::span<const Complex> left,
                              const std::optional<double>& offset) {
  double hi = std::numeric_limits<double>::infinity();
  double lo = -std::numeric_limits<double>::infinity();
  for (const auto& r : right) hi = std::min(hi, r.real());
  for (const auto& l : left) lo = std::max(lo, -l.real());
  if (!(lo < hi)) throw PolePinch("no vertical contour separates the gamma pole sequences");
  const double c = offset.value_or(0.5 * (lo + hi));
  if (!(c > lo && c < hi)) throw PolePinch("contour offset outside the admissible strip");
  return c;
}

inline ContourSpec rational_contour(double c, const RationalOptions& opt) {
  ContourSpec spec;
  spec.kind = ContourKind::line;
  spec.base = c;
  spec.direction = kI;
  spec.offset = c;
  spec.truncation = 4.0;
  spec.node_budget = opt.node_budget;
  spec.feature_scale = 0.5;
  spec.pinch_threshold = std::numeric_limits<double>::max();
  return spec;
}

inline Complex jr_integrand(const RationalParams& p, Complex u) {
  Complex l{};
  for (int i = 0; i < 4; ++i) l += lngamma(p.beta[i] - u);
  for (int i = 2; i < 4; ++i) l += lngamma(p.gamma[i] + u);
  for (int i = 0; i < 2; ++i) {
    Complex r;
    if (!log_rgamma(1.0 - p.gamma[i] - u, r)) return {};
    l += r;
  }
  return std::exp(l);
}

// Integrand of J~_r without the external gamma ratio.
inline Complex jr_tilde_integrand(const RationalParams& p, Complex u) {
  Complex l = kI * kPi * (p.beta[3] - u);
  for (int i : {0, 2, 3}) l += lngamma(p.beta[i] - u);
  for (int i = 2; i < 4; ++i) l += lngamma(p.gamma[i] + u);
  Complex r;
  if (!log_rgamma(1.0 - p.beta[1] + u, r)) return {};
  l += r;
  for (int i = 0; i < 2; ++i) {
    if (!log_rgamma(1.0 - p.gamma[i] - u, r)) return {};
    l += r;
  }
  return std::exp(l);
}

}  // namespace detail

// J_r(beta, gamma) = int_{-i inf}^{i inf} prod Gamma(beta_i - u) prod_{3,4} Gamma(gamma_i + u)
//                    / prod_{1,2} Gamma(1 - gamma_i - u) du.
inline Evaluation jr(const RationalParams& par, const RationalOptions& opt = {}) {
  par.validate();
  const std::array<Complex, 2> left = {par.gamma[2], par.gamma[3]};
  const double c = detail::rational_offset(par.beta, left, opt.offset);
  auto f = [&](Complex u) { return detail::jr_integrand(par, u); };
  Evaluation e = integrate_contour(f, detail::rational_contour(c, opt), opt.tol);
  return e;
}

// J~_r including the prefactor Gamma(1 - beta2 + beta4) / Gamma(beta3 - beta4).
// The integrand decays like |u|^{-2} towards +i inf; that side is closed with a
// reciprocal substitution.
inline TildeEvaluation jr_tilde(const RationalParams& par, const RationalOptions& opt = {}) {
  par.validate();
  const std::array<Complex, 3> right = {par.beta[0], par.beta[2], par.beta[3]};
  const std::array<Complex, 2> left = {par.gamma[2], par.gamma[3]};
  const double c = detail::rational_offset(right, left, opt.offset);
  auto f = [&](Complex u) { return detail::jr_tilde_integrand(par, u); };

  TildeEvaluation out;
  // Decay diagnostics along the contour.
  const double t1 = 64.0, t2 = 128.0;
  const double m1 = std::abs(f(c + kI * t1)), m2 = std::abs(f(c + kI * t2));
  out.power_exponent = (m1 > 0.0 && m2 > 0.0) ? std::log(m1 / m2) / std::log(t2 / t1) : 0.0;
  out.fast_t = 2.0;
  const double f1 = std::abs(f(c - kI * out.fast_t)), f2 = std::abs(f(c - 2.0 * kI * out.fast_t));
  out.fast_ratio = f1 > 0.0 ? f2 / f1 : 0.0;
  if (!(out.power_exponent > 1.2))
    throw NonConvergence("J~_r: integrand decays too slowly towards +i infinity (fitted exponent " +
                         std::to_string(out.power_exponent) + ")");

  ContourSpec spec = detail::rational_contour(c, opt);
  spec.tail = TailDecay::algebraic;
  spec.truncation = 8.0;
  Evaluation e = integrate_contour(f, spec, opt.tol);
  const Complex pre = std::exp(lngamma(1.0 - par.beta[1] + par.beta[3]) - lngamma(par.beta[2] - par.beta[3]));
  e.value *= pre;
  e.abs_err *= std::abs(pre);
  out.eval = e;
  return out;
}

// E_r(alpha) = int prod Gamma(alpha_i +- u) / Gamma(+-2u) du / (4 pi i).
inline Evaluation er(const RationalParams6& par, const RationalOptions& opt = {}) {
  const double c = detail::rational_offset(par.alpha, par.alpha, opt.offset);
  auto f = [&](Complex u) -> Complex {
    Complex l{};
    for (const auto& a : par.alpha) l += lngamma(a + u) + lngamma(a - u);
    // 1 / (Gamma(2u) Gamma(-2u)) = -2u sin(2 pi u) / pi.
    return -2.0 * u * std::sin(2.0 * kPi * u) / kPi * std::exp(l);
  };
  ContourSpec spec = detail::rational_contour(c, opt);
  spec.even = (c == 0.0);
  Evaluation e = integrate_contour(f, spec, opt.tol);
  const Complex pre = 1.0 / (4.0 * kPi * kI);
  e.value *= pre;
  e.abs_err *= std::abs(pre);
  return e;
}

enum class RationalEquation { jr_eq, jr_tilde_eq, er_eq };

namespace detail {

inline Complex nonzero(Complex x) {
  if (std::abs(x) < kProximityEps) throw ZeroError("vanishing denominator in a difference-equation potential");
  return x;
}

// D(beta, gamma).
inline Complex potential_d_rational(const std::array<Complex, 4>& b, const std::array<Complex, 4>& g) {
  Complex v = (b[1] - b[3] - 1.0) * (b[3] - b[1]) / (nonzero(b[1] - b[2]) * nonzero(b[2] - b[1] - 1.0));
  for (int k = 0; k < 4; ++k) v *= (b[2] + g[k] - 1.0) / nonzero(b[3] + g[k]);
  return v;
}

// C(alpha).
inline Complex potential_c(const std::array<Complex, 6>& a) {
  Complex s{};
  for (const auto& x : a) s += x;
  Complex num = 1.0;
  for (int k = 0; k < 4; ++k) num *= a[5] + a[k] - 1.0;
  return num / (nonzero(a[4] - a[5]) * nonzero(a[5] - a[4] - 1.0) * nonzero(a[5] + a[4] - 1.0) * nonzero(2.0 - s));
}

// J_r / (Gamma(beta2 - beta4) Gamma(beta3 - beta4)).
inline Complex jr_normalized(const RationalParams& p, const RationalOptions& opt) {
  const Complex l = lngamma(p.beta[1] - p.beta[3]) + lngamma(p.beta[2] - p.beta[3]);
  return jr(p, opt).value * std::exp(-l);
}

// Coefficient of (J~ - J) in the J~_r identity.
inline Complex tilde_coefficient(const std::array<Complex, 4>& b, const std::array<Complex, 4>& g) {
  auto s = [](Complex x) { return std::sin(kPi * x); };
  Complex v = std::exp(kI * kPi * (b[0] - b[1])) * s(b[3] - b[1]) / nonzero(s(b[1] - b[2]));
  v *= s(b[2] + g[0]) * s(b[2] + g[1]) / (nonzero(s(b[3] + g[2])) * nonzero(s(b[3] + g[3])));
  return v;
}

}  // namespace detail

// Normalized residual of the named equation:
//   jr_eq:       D(J(b2+1, b3-1) - J) + (b2 <-> b3) + J = 0, J = J_r / Gamma(b2-b4) Gamma(b3-b4)
//   jr_tilde_eq: c(b)(J~ - J) + (b2 <-> b3) + J = 0
inline Complex rational_residual(RationalEquation eq, const RationalParams& par, const RationalOptions& opt = {}) {
  RationalParams sw = par;
  std::swap(sw.beta[1], sw.beta[2]);
  const Complex j0 = detail::jr_normalized(par, opt);
  if (eq == RationalEquation::jr_eq) {
    const Complex d1 = detail::potential_d_rational(par.beta, par.gamma);
    const Complex d2 = detail::potential_d_rational(sw.beta, sw.gamma);
    RationalParams up = par, down = par;
    up.beta[1] += 1.0;
    up.beta[2] -= 1.0;
    down.beta[1] -= 1.0;
    down.beta[2] += 1.0;
    const Complex j1 = detail::jr_normalized(up, opt);
    const Complex j2 = detail::jr_normalized(down, opt);
    const Complex a = d1 * (j1 - j0), b = d2 * (j2 - j0);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(j0)});
    return (a + b + j0) / scale;
  }
  if (eq == RationalEquation::jr_tilde_eq) {
    const Complex c1 = detail::tilde_coefficient(par.beta, par.gamma);
    const Complex c2 = detail::tilde_coefficient(sw.beta, sw.gamma);
    const Complex t1 = jr_tilde(par, opt).eval.value;
    const Complex t2 = jr_tilde(sw, opt).eval.value;
    const Complex a = c1 * (t1 - j0), b = c2 * (t2 - j0);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(j0)});
    return (a + b + j0) / scale;
  }
  throw DomainError("rational_residual: er_eq needs six alpha parameters");
}

//   er_eq: C(alpha)(E_r(a5+1, a6-1) - E_r) + (a5 <-> a6) + E_r = 0
inline Complex rational_residual(RationalEquation eq, const RationalParams6& par, const RationalOptions& opt = {}) {
  if (eq != RationalEquation::er_eq) throw DomainError("rational_residual: equation needs beta/gamma parameters");
  RationalParams6 sw = par;
  std::swap(sw.alpha[4], sw.alpha[5]);
  const Complex c1 = detail::potential_c(par.alpha);
  const Complex c2 = detail::potential_c(sw.alpha);
  RationalParams6 up = par, down = par;
  up.alpha[4] += 1.0;
  up.alpha[5] -= 1.0;
  down.alpha[4] -= 1.0;
  down.alpha[5] += 1.0;
  const Complex e0 = er(par, opt).value;
  const Complex e1 = er(up, opt).value;
  const Complex e2 = er(down, opt).value;
  const Complex a = c1 * (e1 - e0), b = c2 * (e2 - e0);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(e0)});
  return (a + b + e0) / scale;
}

}  // namespace ehf
