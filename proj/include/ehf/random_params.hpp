#pragma once

// Seeded generators of admissible parameter sets for the property suites,
// the acceptance checks and the CLI selftest. Every generator retries until
// the sampled set satisfies the contour and balancing requirements of the
// function it feeds.

#include <array>
#include <cstdint>
#include <random>

#include "ehf/complex_rational.hpp"
#include "ehf/elliptic.hpp"
#include "ehf/hyperbolic.hpp"
#include "ehf/rational.hpp"

namespace ehf {

class ParamGen {
 public:
  explicit ParamGen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  Complex phase() { return std::polar(1.0, uniform(0.0, 2.0 * kPi)); }
  // centre + (+-dr) + i (+-di)
  Complex near(Complex centre, double dr, double di) {
    return centre + Complex(uniform(-dr, dr), uniform(-di, di));
  }

  // ---- elliptic -----------------------------------------------------------

  // |p|, |q| <= 0.3; t6, t7 small enough that their q-shifts stay inside the
  // unit circle.
  EllipticParams elliptic() {
    for (;;) {
      const Complex p = uniform(0.1, 0.3);
      const Complex q = uniform(0.1, 0.3) * phase();
      std::array<Complex, 7> f{};
      for (int a = 0; a < 5; ++a) f[a] = uniform(0.5, 0.7) * phase();
      f[5] = std::abs(q) * uniform(0.4, 0.8) * phase();
      f[6] = std::abs(q) * uniform(0.4, 0.8) * phase();
      const EllipticParams par = EllipticParams::balanced(f, EllipticBases(p, q));
      if (std::abs(par.t[7]) < 0.9) return par;
    }
  }

  // ---- hyperbolic ---------------------------------------------------------

  // w1 = 1, w2 in the right half plane at a moderate angle.
  QuasiPeriods periods() { return {1.0, uniform(0.8, 1.3) * std::polar(1.0, uniform(0.3, 0.7))}; }

  // Five parameters near 0.2, two beyond the larger period, u8 from balancing.
  HypParams8 ih_params(const QuasiPeriods& w) {
    const double big = std::max(w.w1.real(), w.w2.real());
    for (;;) {
      std::array<Complex, 8> u{};
      Complex s{};
      for (int a = 0; a < 7; ++a) {
        const double re = (a == 5 || a == 6) ? big + 0.25 + uniform(-0.1, 0.1) : 0.2 + uniform(-0.05, 0.05);
        u[a] = Complex(re, uniform(-0.3, 0.3));
        s += u[a];
      }
      u[7] = 2.0 * w.Q() - s;
      if (u[7].real() > 0.1) return HypParams8(u, w);
    }
  }

  // Two parameters beyond the larger period; redrawn until the integrand
  // decays at a healthy rate.
  HypParams6 eh_params(const QuasiPeriods& w) {
    const double big = std::max(w.w1.real(), w.w2.real());
    for (;;) {
      HypParams6 p;
      p.w = w;
      for (int a = 0; a < 6; ++a) {
        const double re = (a >= 4) ? big + 0.25 + uniform(-0.1, 0.1) : 0.3 + uniform(-0.1, 0.1);
        p.u[a] = Complex(re, uniform(-0.3, 0.3));
      }
      if (eh_decay_rate(p) < -0.2) return p;
    }
  }

  // mu2, mu3 beyond the larger period, the rest near 0.25, nu4 from balancing.
  MuNuParams jh_params(const QuasiPeriods& w) {
    const double big = std::max(w.w1.real(), w.w2.real());
    for (;;) {
      std::array<Complex, 4> mu{}, nu{};
      Complex s{};
      for (int a = 0; a < 4; ++a) {
        const double re = (a == 1 || a == 2) ? big + 0.25 + uniform(-0.1, 0.1) : 0.25 + uniform(-0.05, 0.05);
        mu[a] = Complex(re, uniform(-0.3, 0.3));
        s += mu[a];
      }
      for (int a = 0; a < 3; ++a) {
        nu[a] = Complex(0.25 + uniform(-0.05, 0.05), uniform(-0.3, 0.3));
        s += nu[a];
      }
      nu[3] = 2.0 * w.Q() - s;
      if (nu[3].real() > 0.05) return MuNuParams(mu, nu, w);
    }
  }

  // All mu, nu near Q/4, where every transformed set keeps a separating contour.
  MuNuParams identity_params(const QuasiPeriods& w) {
    const Complex q4 = w.Q() / 4.0;
    std::array<Complex, 4> mu{}, nu{};
    Complex s{};
    for (int a = 0; a < 4; ++a) {
      mu[a] = near(q4, 0.06, 0.05);
      s += mu[a];
    }
    for (int a = 0; a < 3; ++a) {
      nu[a] = near(q4, 0.06, 0.05);
      s += nu[a];
    }
    nu[3] = 2.0 * w.Q() - s;
    return MuNuParams(mu, nu, w);
  }

  // mu4 + nu4 = Q and sum_{a<=3}(mu_a + nu_a) = Q.
  MuNuParams jh_locus(const QuasiPeriods& w) {
    const Complex Q = w.Q();
    std::array<Complex, 4> mu{}, nu{};
    for (int a = 0; a < 3; ++a) mu[a] = Complex(uniform(0.15, 0.25), uniform(-0.1, 0.1));
    mu[3] = Complex(uniform(0.4, 0.6), uniform(-0.1, 0.1));
    nu[0] = Complex(uniform(0.25, 0.4), uniform(-0.1, 0.1));
    nu[1] = Complex(uniform(0.25, 0.4), uniform(-0.1, 0.1));
    nu[2] = Q - (mu[0] + mu[1] + mu[2] + nu[0] + nu[1]);
    nu[3] = Q - mu[3];
    return MuNuParams(mu, nu, w);
  }

  // ---- rational -----------------------------------------------------------

  // The contour must still separate the poles after beta2, beta3 move by -1.
  RationalParams rational() {
    while (true) {
      std::array<Complex, 4> b = {near(0.3, 0.03, 0.05), near(1.2, 0.05, 0.05), near(1.2, 0.05, 0.05),
                                  near(0.3, 0.03, 0.05)};
      std::array<Complex, 4> g = {near(-0.4, 0.03, 0.05), near(-0.4, 0.03, 0.05), near(-0.1, 0.02, 0.05),
                                  near(-0.1, 0.02, 0.05)};
      Complex s{};
      for (int k = 0; k < 4; ++k) s += b[k] + g[k];
      g[3] += 2.0 - s;
      const double right = std::min({b[0].real(), b[3].real(), b[1].real() - 1.0, b[2].real() - 1.0});
      if (right - std::max(-g[2].real(), -g[3].real()) > 0.1) return RationalParams(b, g);
    }
  }

  RationalParams6 rational6() {
    RationalParams6 a;
    for (int k = 0; k < 6; ++k) a.alpha[k] = k >= 4 ? near(1.3, 0.05, 0.05) : near(0.3, 0.05, 0.05);
    return a;
  }

  // ---- complex rational ---------------------------------------------------

  std::array<HalfInt, 4> labels(int lo, int hi) {
    std::array<HalfInt, 4> n{};
    for (auto& x : n) x = HalfInt(integer(lo, hi));
    return n;
  }

  // n4 + m4 = 0, s4 + t4 = -2i, sum_{a<=3}(n_a + m_a) = 0, sum_{a<=3}(s_a + t_a) = -2i.
  CRParams cr_locus() {
    std::array<Complex, 4> s{}, t{};
    for (int a = 0; a < 3; ++a) s[a] = near(Complex(0.0, -0.33), 0.4, 0.04);
    s[3] = near(Complex(0.0, -0.9), 0.4, 0.05);
    t[0] = near(Complex(0.0, -0.33), 0.4, 0.04);
    t[1] = near(Complex(0.0, -0.33), 0.4, 0.04);
    t[2] = -2.0 * kI - (s[0] + s[1] + s[2] + t[0] + t[1]);
    t[3] = -2.0 * kI - s[3];
    std::array<HalfInt, 4> n = labels(-2, 2), m = labels(-2, 2);
    m[2] = HalfInt(0) - (n[0] + n[1] + n[2] + m[0] + m[1]);
    m[3] = -n[3];
    return CRParams(s, n, t, m);
  }

  // Im s2,3 ~ -1.25, Im s1,4 ~ -0.4, Im t ~ -0.17, t4 from balancing.
  CRParams cr_difference() {
    std::array<Complex, 4> s = {near(Complex(0.0, -0.41), 0.4, 0.02), near(Complex(0.0, -1.24), 0.4, 0.02),
                                near(Complex(0.0, -1.24), 0.4, 0.02), near(Complex(0.0, -0.41), 0.4, 0.02)};
    std::array<Complex, 4> t = {near(Complex(0.0, -0.17), 0.4, 0.01), near(Complex(0.0, -0.17), 0.4, 0.01),
                                near(Complex(0.0, -0.17), 0.4, 0.01), 0.0};
    Complex sum{};
    for (int a = 0; a < 4; ++a) sum += s[a] + t[a];
    t[3] = -4.0 * kI - sum;
    std::array<HalfInt, 4> n = labels(-2, 2), m = labels(-1, 1);
    HalfInt hs{};
    for (int a = 0; a < 4; ++a) hs += n[a] + m[a];
    m[3] = m[3] - hs;
    return CRParams(s, n, t, m);
  }

  // Im p_1..4 ~ -0.1, Im p_5,6 ~ -1.16; labels in Z + eps.
  ECRParams ecr(bool half) {
    ECRParams e;
    e.eps = half ? HalfInt::half() : HalfInt(0);
    for (int k = 0; k < 6; ++k) {
      e.p[k] = k >= 4 ? near(Complex(0.0, -1.16), 0.3, 0.02) : near(Complex(0.0, -0.1), 0.3, 0.02);
      e.l[k] = HalfInt(integer(-2, 2)) + e.eps;
    }
    e.validate();
    return e;
  }

  // All Im ~ -0.5. The parities of n1 + n2 + m1 + m2 and n1 + n2 + n3 + m4
  // select the lambda branches of ide1i and JE; both are set explicitly.
  CRParams cr_identity(bool ide_half, bool je_half) {
    std::array<Complex, 4> s{}, t{};
    for (int a = 0; a < 4; ++a) s[a] = near(Complex(0.0, -0.5), 0.4, 0.05);
    for (int a = 0; a < 3; ++a) t[a] = near(Complex(0.0, -0.5), 0.4, 0.05);
    Complex sum{};
    for (int a = 0; a < 4; ++a) sum += s[a] + t[a];
    t[3] = -4.0 * kI - sum;
    const std::array<HalfInt, 4> n = labels(-2, 2);
    auto odd = [](HalfInt x) { return x.as_integer() % 2 != 0; };
    std::array<HalfInt, 4> m{};
    m[1] = HalfInt(odd(n[0] + n[1]) != ide_half ? 1 : 0);
    // n1 + n2 + n3 + m4 = -(n4 + m1 + m2 + m3)
    m[2] = HalfInt(odd(n[3] + m[1]) != je_half ? 1 : 0);
    m[3] = HalfInt(0) - (n[0] + n[1] + n[2] + n[3] + m[0] + m[1] + m[2]);
    return CRParams(s, n, t, m);
  }

  // Labels with every derived combination integral, sigma and rho real.
  SixJComplexParams sixj(int range = 2) {
    for (;;) {
      SixJComplexParams p;
      for (int k = 0; k < 4; ++k) {
        p.N[k] = integer(-range, range);
        p.sigma[k] = uniform(-0.4, 0.4);
      }
      for (int k = 0; k < 2; ++k) {
        p.M[k] = integer(-range, range);
        p.rho[k] = uniform(-0.4, 0.4);
      }
      try {
        p.derived();
        return p;
      } catch (const DomainError&) {
      }
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ehf
