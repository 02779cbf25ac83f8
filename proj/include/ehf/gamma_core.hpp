#pragma once

// Gamma-type building blocks: log-gamma, the complex gamma function of
// SL(2,C), theta functions, the elliptic gamma function and the hyperbolic
// gamma function with its Bernoulli phase.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ehf/quadrature.hpp"
#include "ehf/types.hpp"

namespace ehf {

// ---------------------------------------------------------------------------
// Euler gamma

namespace detail {

inline bool near_nonpositive_integer(Complex z, double eps = kProximityEps) {
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z - Complex(r, 0.0)) < eps * std::max(1.0, std::abs(r));
}

inline Complex stirling_lngamma(Complex z) {
  // B_{2k} / (2k (2k-1)), k = 1..10.
  static constexpr std::array<double, 10> kCoef = {
      1.0 / 12.0,          -1.0 / 360.0,           1.0 / 1260.0,     -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,      1.0 / 156.0,      -3617.0 / 122400.0,
      43867.0 / 244188.0,  -174611.0 / 125400.0};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series{};
  Complex pw = inv;
  for (double c : kCoef) {
    series += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace detail

// log sin(pi z), stable for large |Im z|. The imaginary part is only defined
// modulo 2 pi.
inline Complex log_sin_pi(Complex z) {
  const double k = std::round(z.real());
  const Complex w = z - k;  // sin(pi z) = (-1)^k sin(pi w)
  const Complex sign_log = (static_cast<std::int64_t>(k) % 2 == 0) ? Complex{} : Complex(0.0, kPi);
  if (std::abs(w.imag()) < 1.0) {
    const Complex s = std::sin(kPi * w);
    if (s == Complex{}) throw ZeroError("log_sin_pi: sine vanishes");
    return std::log(s) + sign_log;
  }
  if (w.imag() > 0.0)
    return -kI * kPi * w - std::log(2.0) + kI * (kPi / 2) + std::log(1.0 - std::exp(2.0 * kI * kPi * w)) +
           sign_log;
  return kI * kPi * w - std::log(2.0) - kI * (kPi / 2) + std::log(1.0 - std::exp(-2.0 * kI * kPi * w)) +
         sign_log;
}

// Logarithm of the Euler gamma function. Principal (analytic loggamma) branch
// for Re z >= 1/2; in the reflected half-plane the imaginary part is fixed
// only modulo 2 pi.
inline Complex lngamma(Complex z) {
  if (!is_finite(z)) throw DomainError("lngamma: non-finite argument");
  if (detail::near_nonpositive_integer(z))
    throw PoleError("lngamma: pole at nonpositive integer " + std::to_string(z.real()));
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - lngamma(1.0 - z);
  if (std::abs(z) >= 10.0) return detail::stirling_lngamma(z);
  Complex acc{};
  Complex w = z;
  while (std::abs(w) < 10.0) {
    acc += std::log(w);
    w += 1.0;
  }
  return detail::stirling_lngamma(w) - acc;
}

// ---------------------------------------------------------------------------
// Complex gamma function Gamma(x, n) = Gamma((n+ix)/2) / Gamma(1 + (n-ix)/2)

struct DiscretePair {
  Complex x{};
  HalfInt n{};

  Complex alpha() const { return 0.5 * (n.value() + kI * x); }
  Complex alpha_prime() const { return 0.5 * (-n.value() + kI * x); }
};

// Product of factors accumulated in log space with an exact-zero flag.
class LogProduct {
 public:
  void mul_log(Complex l) { log_ += l; }
  void div_log(Complex l) { log_ -= l; }
  void set_zero() { zero_ = true; }
  bool is_zero() const { return zero_; }
  Complex log() const { return log_; }

  Complex value() const {
    if (zero_) return {};
    if (log_.real() > 709.0) throw OverflowGuard("product magnitude exceeds double range");
    if (log_.real() < -745.0) return {};
    return std::exp(log_);
  }

 private:
  Complex log_{};
  bool zero_ = false;
};

namespace detail {

// log Gamma(x, n) with the zero set reported through `zero`.
inline Complex log_cgamma_impl(Complex x, HalfInt n, bool& zero) {
  zero = false;
  Complex sign_log{};
  if (n.is_integer() && n.twice() < 0) {
    n = -n;
    if (parity_sign(n.as_integer()) < 0) sign_log = Complex(0.0, kPi);
  }
  const Complex a = 0.5 * (n.value() + kI * x);
  const Complex b = 1.0 + 0.5 * (n.value() - kI * x);
  if (near_nonpositive_integer(a))
    throw PoleError("cgamma: pole at x = (" + std::to_string(x.real()) + ", " + std::to_string(x.imag()) +
                    "), n = " + std::to_string(n.value()));
  if (near_nonpositive_integer(b)) {
    zero = true;
    return {};
  }
  return lngamma(a) - lngamma(b) + sign_log;
}

}  // namespace detail

// log Gamma(x, n); throws ZeroError on the zero set.
inline Complex log_cgamma(Complex x, HalfInt n) {
  bool zero = false;
  const Complex l = detail::log_cgamma_impl(x, n, zero);
  if (zero) throw ZeroError("cgamma vanishes at the requested point");
  return l;
}

inline Complex cgamma(Complex x, HalfInt n) {
  bool zero = false;
  const Complex l = detail::log_cgamma_impl(x, n, zero);
  if (zero) return {};
  if (l.real() > 709.0) throw OverflowGuard("cgamma overflows double precision");
  return std::exp(l);
}

inline Complex cgamma(const DiscretePair& a) { return cgamma(a.x, a.n); }

// Multiply `prod` by Gamma(x, n)^power, power = +-1.
inline void accumulate_cgamma(LogProduct& prod, Complex x, HalfInt n, int power = 1) {
  bool zero = false;
  const Complex l = detail::log_cgamma_impl(x, n, zero);
  if (zero) {
    if (power < 0) throw PoleError("division by a vanishing complex gamma factor");
    prod.set_zero();
    return;
  }
  if (power > 0)
    prod.mul_log(l);
  else
    prod.div_log(l);
}

// ---------------------------------------------------------------------------
// Theta functions and the elliptic gamma function

struct EllipticBases {
  Complex p{};
  Complex q{};

  EllipticBases() = default;
  EllipticBases(Complex p_, Complex q_) : p(p_), q(q_) { validate(); }

  void validate() const {
    if (!(std::abs(p) < 1.0) || !(std::abs(q) < 1.0))
      throw DomainError("elliptic bases must satisfy |p| < 1 and |q| < 1");
  }
};

// (z; q)_infinity, truncated once |z q^k| falls below roundoff.
inline Complex qpochhammer(Complex z, Complex q) {
  if (!(std::abs(q) < 1.0)) throw DomainError("qpochhammer requires |q| < 1");
  Complex prod = 1.0;
  Complex w = z;
  for (int k = 0; k < 100000; ++k) {
    prod *= 1.0 - w;
    if (std::abs(w) < 1e-18 && k > 0) break;
    w *= q;
    if (w == Complex{}) break;
  }
  return prod;
}

inline Evaluation theta_q_eval(Complex z, Complex q) {
  if (!(std::abs(q) < 1.0)) throw DomainError("theta_q requires |q| < 1");
  if (z == Complex{}) throw DomainError("theta_q requires z != 0");
  Complex prod = 1.0;
  Complex w1 = z;
  Complex w2 = q / z;
  long k = 0;
  while (true) {
    prod *= (1.0 - w1) * (1.0 - w2);
    ++k;
    w1 *= q;
    w2 *= q;
    const double m = std::max(std::abs(w1), std::abs(w2));
    if (m < 1e-18 || k > 100000) {
      Evaluation e;
      e.value = prod;
      e.abs_err = std::abs(prod) * 2.0 * m / std::max(1e-300, 1.0 - std::abs(q)) +
                  4.0 * k * std::numeric_limits<double>::epsilon() * std::abs(prod);
      e.terms_used = k;
      return e;
    }
  }
}

// Short theta function theta(z; q) = (z; q)(q/z; q).
inline Complex theta_q(Complex z, Complex q) { return theta_q_eval(z, q).value; }

// Jacobi theta_1 by its half-integer-index series.
inline Complex theta1(Complex u, Complex tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("theta1 requires Im(tau) > 0");
  detail::CompensatedSum s;
  for (int k = 0; k < 10000; ++k) {
    bool small = true;
    for (double l : {k + 0.5, -(k + 0.5)}) {
      const Complex term = std::exp(kI * kPi * tau * (l * l) + 2.0 * kI * kPi * l * (u + 0.5));
      s.add(term);
      if (std::abs(term) > 1e-18 * std::max(1.0, std::abs(s.value()))) small = false;
    }
    if (small && k > 2) break;
  }
  return -s.value();
}

namespace detail {

// Bases ordered canonically so that Gamma(z; p, q) = Gamma(z; q, p) holds bit for bit.
inline std::pair<Complex, Complex> canonical_bases(Complex p, Complex q) {
  auto key = [](Complex c) { return std::array<double, 3>{std::abs(c), c.real(), c.imag()}; };
  return key(p) >= key(q) ? std::pair{p, q} : std::pair{q, p};
}

}  // namespace detail

// log Gamma(z; p, q) modulo 2 pi i. Throws PoleError near z = p^{-j} q^{-k} and
// ZeroError near z = p^{j+1} q^{k+1}.
inline Complex log_egamma(Complex z, const EllipticBases& b) {
  b.validate();
  if (z == Complex{}) throw DomainError("egamma requires z != 0");
  const auto [p, q] = detail::canonical_bases(b.p, b.q);
  const Complex zi = 1.0 / z;
  detail::CompensatedSum acc;
  Complex pj = 1.0;  // p^j
  for (int j = 0; j < 20000; ++j) {
    Complex d = z * pj;         // z p^j q^k
    Complex n = zi * pj * p * q;  // z^{-1} p^{j+1} q^{k+1}
    double row_max = 0.0;
    for (int k = 0; k < 20000; ++k) {
      const Complex fd = 1.0 - d;
      const Complex fn = 1.0 - n;
      if (std::abs(fd) < kProximityEps) throw PoleError("egamma: argument at a pole z = p^-j q^-k");
      if (std::abs(fn) < kProximityEps) throw ZeroError("egamma: argument at a zero z = p^(j+1) q^(k+1)");
      acc.add(std::log(fn) - std::log(fd));
      const double m = std::max(std::abs(d), std::abs(n));
      row_max = std::max(row_max, m);
      if (m < 1e-18) break;
      d *= q;
      n *= q;
      if (d == Complex{} && n == Complex{}) break;
    }
    if (row_max < 1e-18) break;
    pj *= p;
    if (pj == Complex{}) break;
  }
  return acc.value();
}

inline Complex egamma(Complex z, const EllipticBases& b) {
  try {
    return std::exp(log_egamma(z, b));
  } catch (const ZeroError&) {
    return {};
  }
}

// ---------------------------------------------------------------------------
// Hyperbolic gamma function

struct QuasiPeriods {
  Complex w1{1.0, 0.0};
  Complex w2{1.0, 0.0};

  QuasiPeriods() = default;
  QuasiPeriods(Complex a, Complex b) : w1(a), w2(b) {
    if (a == Complex{} || b == Complex{}) throw DomainError("quasiperiods must be nonzero");
  }

  Complex Q() const { return w1 + w2; }
  QuasiPeriods swapped() const { return {w2, w1}; }

  // b = i + delta: omega = (b, 1/b).
  static QuasiPeriods from_b(Complex b) { return {b, 1.0 / b}; }
};

// Second order multiple Bernoulli polynomial B_{2,2}(u; omega).
inline Complex b22(Complex u, const QuasiPeriods& w) {
  const Complex c = u - 0.5 * w.Q();
  return (c * c - (w.w1 * w.w1 + w.w2 * w.w2) / 12.0) / (w.w1 * w.w2);
}

enum class HgammaRoute { automatic, integral, product };

namespace detail {

// (sinh z / z - 1) / z^2.
inline Complex sinhc_remainder(Complex z) {
  if (std::abs(z) < 2.0) {
    const Complex z2 = z * z;
    Complex term = 1.0 / 6.0;
    Complex sum = term;
    for (int k = 1; k < 30; ++k) {
      term *= z2 / static_cast<double>((2 * k + 2) * (2 * k + 3));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::sinh(z) / z - 1.0) / (z * z);
}

// ln gamma^(2)(y; 1, tau) for Re tau > 0 and |Re(y - Q/2)| < Re(Q)/2, from
// -int_0^inf [sinh(2vt) / (2 sinh t sinh(tau t)) - v / (tau t)] dt / t.
inline Complex log_hgamma_integral_window(Complex y, Complex tau) {
  const Complex w1 = 1.0;
  const Complex w2 = tau;
  const Complex Qv = 1.0 + tau;
  const Complex v = y - 0.5 * Qv;
  const double t0 = 1.0 / (1.0 + 2.0 * std::abs(v) + 1.0 + std::abs(tau));

  QuadOptions opt;
  opt.rel_tol = 2e-14;
  opt.abs_tol = 2e-15;
  opt.max_evals = 20000;

  auto near_zero = [&](double t) -> Complex {
    const Complex s1 = sinhc_remainder(w1 * t);
    const Complex s2 = sinhc_remainder(w2 * t);
    const Complex sv = sinhc_remainder(2.0 * v * t);
    const Complex b1 = 1.0 + w1 * w1 * t * t * s1;
    const Complex b2 = 1.0 + w2 * w2 * t * t * s2;
    const Complex num = 4.0 * v * v * sv - w1 * w1 * s1 - w2 * w2 * s2 - w1 * w1 * w2 * w2 * t * t * s1 * s2;
    return v / (w1 * w2) * num / (b1 * b2);
  };
  Evaluation inner = integrate_interval(near_zero, 0.0, t0, opt, 2);

  // Rays from t0 for the two exponential pieces.
  auto ray = [&](double sign) {
    const Complex lam = sign * 2.0 * v - Qv;
    double theta = kPi - std::arg(lam);
    if (theta > kPi) theta -= 2.0 * kPi;
    const double margin = 0.15;
    const double hi = std::min(kPi / 2 - std::arg(w1), kPi / 2 - std::arg(w2)) - margin;
    const double lo = std::max(-kPi / 2 - std::arg(w1), -kPi / 2 - std::arg(w2)) + margin;
    theta = std::clamp(theta, lo, hi);
    const Complex dir = std::polar(1.0, theta);
    const double rate = -(lam * dir).real();
    if (!(rate > 0.0)) throw NonConvergence("hgamma: integral representation outside its strip");
    const double len = 42.0 / rate;
    auto g = [&](double s) -> Complex {
      const Complex t = t0 + s * dir;
      return sign * std::exp(lam * t) / (t * (1.0 - std::exp(-2.0 * w1 * t)) * (1.0 - std::exp(-2.0 * w2 * t))) *
             dir;
    };
    QuadOptions o = opt;
    return integrate_interval(g, 0.0, len, o, 8);
  };
  const Evaluation hp = ray(1.0);
  const Evaluation hm = ray(-1.0);
  return -(inner.value + hp.value + hm.value - v / (w1 * w2 * t0));
}

// log(1 - e^d) modulo 2 pi i, accurate when e^d is large or small.
inline Complex log_one_minus_exp(Complex d) {
  if (d.real() > 0.0) return d + Complex(0.0, kPi) + std::log(1.0 - std::exp(-d));
  return std::log(1.0 - std::exp(d));
}

// ln gamma^(2)(u; wa, wb) by the q-product formula; requires Im(wa/wb) > 0.
inline Complex log_hgamma_product(Complex u, Complex wa, Complex wb) {
  const Complex lq = 2.0 * kPi * kI * wa / wb;     // log q
  const Complex lqt = -2.0 * kPi * kI * wb / wa;   // log q~
  const Complex lx = 2.0 * kPi * kI * u / wb;      // log e^{2 pi i u / wb}
  const Complex lxt = 2.0 * kPi * kI * u / wa + lqt;
  if (!(lq.real() < 0.0) || !(lqt.real() < 0.0)) throw DomainError("hgamma product formula needs |q|,|q~| < 1");
  CompensatedSum acc;
  // Only e^d enters, so imaginary parts may be reduced modulo 2 pi; for the
  // step this is exact for every integer multiple.
  auto wrap = [](Complex d) { return Complex(d.real(), std::remainder(d.imag(), 2.0 * kPi)); };
  auto run = [&](Complex l0, Complex step, int sign, bool numerator) {
    l0 = wrap(l0);
    step = wrap(step);
    const long kmax = static_cast<long>(std::max(0.0, (l0.real() + 42.0) / -step.real())) + 2;
    if (kmax > 50000000) throw NonConvergence("hgamma product: too many factors");
    // Factors with |e^d| < 1/2 are multiplied in blocks and logged once per
    // block; e^d follows by recurrence, refreshed every block.
    const Complex es = std::exp(step);
    Complex prod{1.0, 0.0};
    Complex e{};
    for (long k = 0; k <= kmax; ++k) {
      if (k % 32 == 0) {
        const Complex d = wrap(l0 + static_cast<double>(k) * step);
        if (d.real() > -0.7) {
          // Near the unit circle or outside it: exact log branch.
          const Complex ed = std::exp(d);
          if (std::abs(d.real()) < 1.0 && std::abs(1.0 - ed) < kProximityEps) {
            if (numerator) throw ZeroError("hgamma: argument at a zero");
            throw PoleError("hgamma: argument at a pole");
          }
          acc.add(static_cast<double>(sign) * log_one_minus_exp(d));
          e = ed * es;
          continue;
        }
        e = std::exp(d);
        acc.add(static_cast<double>(sign) * std::log(prod));
        prod = 1.0;
      } else if (std::abs(e) > 0.5) {
        const Complex d = wrap(l0 + static_cast<double>(k) * step);
        const Complex ed = std::exp(d);
        if (std::abs(d.real()) < 1.0 && std::abs(1.0 - ed) < kProximityEps) {
          if (numerator) throw ZeroError("hgamma: argument at a zero");
          throw PoleError("hgamma: argument at a pole");
        }
        acc.add(static_cast<double>(sign) * log_one_minus_exp(d));
        e = ed * es;
        continue;
      }
      prod *= 1.0 - e;
      e *= es;
    }
    acc.add(static_cast<double>(sign) * std::log(prod));
  };
  run(lxt, lqt, 1, true);
  run(lx, lq, -1, false);
  return acc.value() - kI * (kPi / 2) * b22(u, QuasiPeriods(wa, wb));
}

// Shift y toward the window |Re(y - Q/2)| <= 1/2 for quasiperiods (1, tau),
// accumulating log of the sine factors. Returns the accumulated log.
inline Complex reduce_to_window(Complex& y, Complex tau) {
  const Complex Qv = 1.0 + tau;
  Complex acc{};
  auto check = [&](Complex arg, bool pole) {
    const Complex r = arg / tau;
    if (std::abs(r - std::round(r.real())) < kProximityEps) {
      if (pole) throw PoleError("hgamma: argument at a pole");
      throw ZeroError("hgamma: argument at a zero");
    }
  };
  int guard = 0;
  while ((y - 0.5 * Qv).real() > 0.5) {
    // gamma(y) = 2 sin(pi (y-1)/tau) gamma(y-1)
    check(y - 1.0, false);
    acc += std::log(2.0) + log_sin_pi((y - 1.0) / tau);
    y -= 1.0;
    if (++guard > 1000000) throw NonConvergence("hgamma: shift reduction runaway");
  }
  while ((y - 0.5 * Qv).real() < -0.5) {
    // gamma(y) = gamma(y+1) / (2 sin(pi y / tau))
    check(y, true);
    acc -= std::log(2.0) + log_sin_pi(y / tau);
    y += 1.0;
    if (++guard > 1000000) throw NonConvergence("hgamma: shift reduction runaway");
  }
  return acc;
}

}  // namespace detail

// log gamma^(2)(u; omega) modulo 2 pi i.
inline Complex log_hgamma(Complex u, const QuasiPeriods& w, HgammaRoute route = HgammaRoute::automatic) {
  if (!is_finite(u)) throw DomainError("hgamma: non-finite argument");
  // Homogeneity: gamma(u; w1, w2) = gamma(u/w1; 1, w2/w1); normalize by the shorter period.
  Complex w1 = w.w1, w2 = w.w2;
  if (std::abs(w2) < std::abs(w1)) std::swap(w1, w2);
  const Complex tau = w2 / w1;
  if (std::abs(tau.imag()) < 1e-14 * std::abs(tau) && tau.real() < 0.0)
    throw DomainError("hgamma: quasiperiod ratio on the negative real axis");

  const bool integral_ok = tau.real() > 0.0;
  const double im = tau.imag();
  bool use_integral;
  if (route == HgammaRoute::integral) {
    if (!integral_ok) throw DomainError("hgamma: integral route requires Re(w2/w1) > 0");
    use_integral = true;
  } else if (route == HgammaRoute::product) {
    if (im == 0.0) throw DomainError("hgamma: product route requires non-real w2/w1");
    use_integral = false;
  } else {
    // |q| for the better-converging ordering.
    const double qmod = (im == 0.0) ? 1.0 : std::exp(-2.0 * kPi * std::abs(im) / std::max(1.0, std::norm(tau)));
    use_integral = integral_ok && (im == 0.0 || qmod > 0.2);
  }

  Complex y = u / w1;
  if (use_integral) {
    const Complex acc = detail::reduce_to_window(y, tau);
    return acc + detail::log_hgamma_integral_window(y, tau);
  }
  // Product formula in the ordering with Im(wa/wb) > 0, in normalized units.
  if (im > 0.0) return detail::log_hgamma_product(y, tau, 1.0);
  return detail::log_hgamma_product(y, 1.0, tau);
}

inline Complex hgamma(Complex u, const QuasiPeriods& w, HgammaRoute route = HgammaRoute::automatic) {
  const Complex l = log_hgamma(u, w, route);
  if (l.real() > 709.0) throw OverflowGuard("hgamma overflows double precision");
  return std::exp(l);
}

enum class AsymptoticCone { I, II };

// Phase e^{+-(pi i/2) B22(u)} with hgamma(u) * phase -> 1 as u -> infinity in
// the given cone. Cone I: max arg w < arg u < min arg w + pi; cone II:
// max arg w - pi < arg u < min arg w.
inline Complex hgamma_phase(Complex u, const QuasiPeriods& w, AsymptoticCone cone) {
  const double a1 = std::arg(w.w1), a2 = std::arg(w.w2);
  const double amax = std::max(a1, a2), amin = std::min(a1, a2);
  double a = std::arg(u);
  if (cone == AsymptoticCone::I) {
    if (a < amax - kPi / 2) a += 2.0 * kPi;
    if (!(a > amax && a < amin + kPi)) throw DomainError("hgamma_phase: argument outside cone I");
    return std::exp(kI * (kPi / 2) * b22(u, w));
  }
  if (a > amin + kPi / 2) a -= 2.0 * kPi;
  if (!(a > amax - kPi && a < amin)) throw DomainError("hgamma_phase: argument outside cone II");
  return std::exp(-kI * (kPi / 2) * b22(u, w));
}

// log of 1 / gamma^(2)(+-2z) = -4 sin(2 pi z / w1) sin(2 pi z / w2).
inline Complex log_inv_hgamma_pm2z(Complex z, const QuasiPeriods& w) {
  return std::log(4.0) + Complex(0.0, kPi) + log_sin_pi(2.0 * z / w.w1) + log_sin_pi(2.0 * z / w.w2);
}

// 2 sin(pi y / w) in log form.
inline Complex log_two_sin(Complex y, Complex w) { return std::log(2.0) + log_sin_pi(y / w); }

}  // namespace ehf
