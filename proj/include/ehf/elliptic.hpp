#pragma once

// The elliptic hypergeometric V-function and the residual of the elliptic
// hypergeometric equation.

#include <array>
#include <cmath>

#include "ehf/gamma_core.hpp"
#include "ehf/quadrature.hpp"

namespace ehf {

struct EllipticParams {
  std::array<Complex, 8> t{};
  EllipticBases bases;

  EllipticParams() = default;

  // Rejects parameter sets violating prod t_a = p^2 q^2.
  EllipticParams(const std::array<Complex, 8>& t_, EllipticBases b) : t(t_), bases(b) {
    const Complex prod = product();
    const Complex target = b.p * b.p * b.q * b.q;
    if (rel_diff(prod, target) > 1e-12) throw DomainError("elliptic balancing condition violated");
  }

  // Completes the set by solving the balancing condition for t8.
  static EllipticParams balanced(const std::array<Complex, 7>& first, EllipticBases b) {
    std::array<Complex, 8> t{};
    Complex prod = 1.0;
    for (int a = 0; a < 7; ++a) {
      t[a] = first[a];
      prod *= first[a];
    }
    if (prod == Complex{}) throw DomainError("elliptic parameters must be nonzero");
    t[7] = b.p * b.p * b.q * b.q / prod;
    return EllipticParams(t, b);
  }

  Complex product() const {
    Complex prod = 1.0;
    for (const auto& x : t) prod *= x;
    return prod;
  }

  double max_modulus() const {
    double m = 0.0;
    for (const auto& x : t) m = std::max(m, std::abs(x));
    return m;
  }
};

struct VOptions {
  double radius = 1.0;
  double tol = 1e-13;
  long node_budget = 1 << 16;
};

// V(t; p, q) on the circle |z| = radius.
inline Evaluation v_function(const EllipticParams& par, const VOptions& opt = {}) {
  const double tmax = par.max_modulus();
  if (!(tmax < opt.radius && opt.radius * tmax < 1.0))
    throw PolePinch("V-function: no circle of radius " + std::to_string(opt.radius) +
                    " separates the pole sequences (max |t_a| = " + std::to_string(tmax) + ")");
  const Complex p = par.bases.p, q = par.bases.q;
  // 1 / (Gamma(z^2) Gamma(z^-2)) = theta(z^2; p) theta(z^-2; q).
  auto integrand = [&](Complex z) -> Complex {
    Complex l{};
    for (const auto& ta : par.t) l += log_egamma(ta * z, par.bases) + log_egamma(ta / z, par.bases);
    const Complex z2 = z * z;
    return std::exp(l) * theta_q(z2, p) * theta_q(1.0 / z2, q) / z;
  };
  ContourSpec c;
  c.kind = ContourKind::circle;
  c.radius = opt.radius;
  c.node_budget = opt.node_budget;
  Evaluation e = integrate_contour(integrand, c, opt.tol);
  const Complex pre = qpochhammer(p, p) * qpochhammer(q, q) / (4.0 * kPi * kI);
  e.value *= pre;
  e.abs_err *= std::abs(pre);
  return e;
}

namespace detail {

// U = V / [Gamma(t6 t8^{+-1}) Gamma(t7 t8^{+-1})].
inline Complex u_function(const EllipticParams& par, const VOptions& opt) {
  const auto& t = par.t;
  const Complex v = v_function(par, opt).value;
  Complex l{};
  for (int a : {5, 6}) l += log_egamma(t[a] * t[7], par.bases) + log_egamma(t[a] / t[7], par.bases);
  return v * std::exp(-l);
}

inline Complex theta_checked(Complex z, Complex p) {
  const Complex th = theta_q(z, p);
  if (std::abs(th) < kProximityEps) throw ZeroError("theta factor vanishes in the difference operator");
  return th;
}

// Potential L(t) of the elliptic hypergeometric equation.
inline Complex ehe_potential(const std::array<Complex, 8>& t, Complex p, Complex q) {
  const Complex t6 = t[5], t7 = t[6], t8 = t[7];
  Complex num = theta_q(t6 / (q * t8), p) * theta_q(t6 * t8, p) * theta_q(t8 / t6, p);
  Complex den = theta_checked(t6 / t7, p) * theta_checked(t7 / (q * t6), p) * theta_checked(t7 * t6 / q, p);
  for (int k = 0; k < 5; ++k) {
    num *= theta_q(t7 * t[k] / q, p);
    den *= theta_checked(t8 * t[k], p);
  }
  return num / den;
}

}  // namespace detail

// Left side of L(t)(U(q t6, t7/q) - U(t)) + (t6 <-> t7) + U(t) = 0,
// normalized by the largest of the three terms.
inline Complex ehe_residual(const EllipticParams& par, const VOptions& opt = {}) {
  const Complex p = par.bases.p, q = par.bases.q;
  auto swapped = par.t;
  std::swap(swapped[5], swapped[6]);
  const Complex l1 = detail::ehe_potential(par.t, p, q);
  const Complex l2 = detail::ehe_potential(swapped, p, q);

  EllipticParams up = par, down = par;
  up.t[5] *= q;
  up.t[6] /= q;
  down.t[5] /= q;
  down.t[6] *= q;
  const Complex u0 = detail::u_function(par, opt);
  const Complex u1 = detail::u_function(up, opt);
  const Complex u2 = detail::u_function(down, opt);

  const Complex a = l1 * (u1 - u0);
  const Complex b = l2 * (u2 - u0);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(u0)});
  if (scale == 0.0) return {};
  return (a + b + u0) / scale;
}

}  // namespace ehf
