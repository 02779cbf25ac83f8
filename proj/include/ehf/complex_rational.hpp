#pragma once

// The b -> i degenerations: the complex-rational integrals J_cr and E_cr,
// the SL(2,C) 6j-symbol, their difference equations and symmetry
// transformations, and the closed form on the degenerate locus.
//
// Every integral is a bilateral sum over N of a line integral in y along
// Im y = c, where c is the midline of the strip left free by the pole lattice
// of the complex gamma factors. Gamma(x, n) has its poles at x = i j with
// j >= |n|, j = n mod 2, so Gamma(s - y, .) confines c from below by Im s and
// Gamma(t + y, .) from above by -Im t, uniformly in N.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "ehf/gamma_core.hpp"
#include "ehf/quadrature.hpp"
#include "ehf/rational.hpp"

namespace ehf {

struct CROptions {
  double tol = 1e-9;
  std::optional<double> offset;  // Im y of the contour
  long node_budget = 200000;     // per line integral
  long max_terms = 100000;
};

// s_a, n_a; t_a, m_a with n_a, m_a in Z + eps.
struct CRParams {
  std::array<Complex, 4> s{};
  std::array<HalfInt, 4> n{};
  std::array<Complex, 4> t{};
  std::array<HalfInt, 4> m{};
  HalfInt eps{};

  CRParams() = default;
  CRParams(const std::array<Complex, 4>& s_, const std::array<HalfInt, 4>& n_, const std::array<Complex, 4>& t_,
           const std::array<HalfInt, 4>& m_, HalfInt eps_ = HalfInt(0))
      : s(s_), n(n_), t(t_), m(m_), eps(eps_) {
    validate();
  }

  void validate() const {
    if (!(eps == HalfInt(0) || eps == HalfInt::half())) throw DomainError("J_cr: eps must be 0 or 1/2");
    Complex cs{};
    HalfInt cn{};
    for (int a = 0; a < 4; ++a) {
      cs += s[a] + t[a];
      cn += n[a] + m[a];
      if (!(n[a] - eps).is_integer() || !(m[a] - eps).is_integer())
        throw DomainError("J_cr: discrete labels must lie in Z + eps");
    }
    if (std::abs(cs + 4.0 * kI) > 1e-12) throw DomainError("J_cr: sum (s_a + t_a) must equal -4i");
    if (!(cn == HalfInt(0))) throw DomainError("J_cr: sum (n_a + m_a) must vanish");
  }

  // Equivalent integer-label set: N -> N + eps absorbed into n_a, m_a.
  CRParams reduced() const {
    CRParams r = *this;
    for (int a = 0; a < 4; ++a) {
      r.n[a] = n[a] - eps;
      r.m[a] = m[a] + eps;
    }
    r.eps = HalfInt(0);
    return r;
  }

  // beta_k = (i s_k -+ n_k)/2, gamma_k = (i t_k -+ m_k)/2; `plus` selects the second sign.
  std::array<Complex, 4> beta(bool plus = false) const {
    std::array<Complex, 4> b{};
    for (int k = 0; k < 4; ++k) b[k] = 0.5 * (kI * s[k] + (plus ? 1.0 : -1.0) * n[k].value());
    return b;
  }
  std::array<Complex, 4> gamma(bool plus = false) const {
    std::array<Complex, 4> g{};
    for (int k = 0; k < 4; ++k) g[k] = 0.5 * (kI * t[k] + (plus ? 1.0 : -1.0) * m[k].value());
    return g;
  }
};

// p_k, l_k with l_k in Z + eps; eps is not removable here.
struct ECRParams {
  std::array<Complex, 6> p{};
  std::array<HalfInt, 6> l{};
  HalfInt eps{};

  void validate() const {
    if (!(eps == HalfInt(0) || eps == HalfInt::half())) throw DomainError("E_cr: eps must be 0 or 1/2");
    for (const auto& x : l)
      if (!(x - eps).is_integer()) throw DomainError("E_cr: discrete labels must lie in Z + eps");
  }

  // alpha_k = (-+ l_k + i p_k)/2.
  std::array<Complex, 6> alpha(bool plus = false) const {
    std::array<Complex, 6> a{};
    for (int k = 0; k < 6; ++k) a[k] = 0.5 * ((plus ? 1.0 : -1.0) * l[k].value() + kI * p[k]);
    return a;
  }
};

// Labels of the SL(2,C) 6j-symbol and the derived R, S, U, T, A.
struct SixJComplexParams {
  std::array<Complex, 4> sigma{};
  std::array<int, 4> N{};
  std::array<Complex, 2> rho{};
  std::array<int, 2> M{};

  struct Derived {
    std::array<Complex, 4> R{}, U{};
    std::array<std::int64_t, 4> S{}, T{}, A{};
  };

  Derived derived() const {
    auto half = [](std::int64_t twice, const char* what) {
      if (twice % 2 != 0) throw DomainError(std::string("complex 6j: label ") + what + " is not an integer");
      return twice / 2;
    };
    const auto& s = sigma;
    const Complex r1 = rho[0], r2 = rho[1];
    const std::int64_t N1 = N[0], N2 = N[1], N3 = N[2], N4 = N[3], M1 = M[0], M2 = M[1];
    Derived d;
    d.R = {-s[0] + s[1] - r2 - kI, s[0] + s[1] - r2 - kI, -s[2] - s[3] - r2 - kI, s[2] - s[3] - r2 - kI};
    d.U = {-r1 - s[1] + s[3] + r2, r1 - s[1] + s[3] + r2, 0.0, 2.0 * r2};
    d.S = {half(-N1 + N2 - M2, "S1"), half(N1 + N2 - M2, "S2"), half(-(N3 + N4 + M2), "S3"),
           half(N3 - N4 - M2, "S4")};
    d.T = {half(-M1 - N2 + N4 + M2, "T1"), half(M1 - N2 + N4 + M2, "T2"), 0, M2};
    d.A = {half(N1 - N2 + M2, "A1"), half(N2 - N3 + M1, "A2"), half(-N3 - N4 + M2, "A3"),
           half(N1 + N4 + M1, "A4")};
    Complex bal{};
    std::int64_t dbal = 0;
    for (int a = 0; a < 4; ++a) {
      bal += d.R[a] + d.U[a];
      dbal += d.S[a] + d.T[a];
    }
    if (std::abs(bal + 4.0 * kI) > 1e-12 || dbal != 0 || d.A[0] + d.A[1] != d.A[2] + d.A[3])
      throw DomainError("complex 6j: derived labels violate the balancing conditions");
    return d;
  }
};

namespace detail {

inline double cr_strip_offset(std::span<const Complex> lower, std::span<const Complex> upper,
                              const std::optional<double>& offset) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& x : lower) lo = std::max(lo, x.imag());
  for (const auto& x : upper) hi = std::min(hi, -x.imag());
  if (!(lo < hi)) throw PolePinch("no horizontal contour separates the complex gamma pole lattices");
  const double c = offset.value_or(0.5 * (lo + hi));
  if (!(c > lo && c < hi))
    throw PolePinch("contour offset outside the admissible strip (" + std::to_string(lo) + ", " +
                    std::to_string(hi) + ")");
  return c;
}

// Sum over N in Z of the y-integral of f(y, N) along Im y = c, with a
// power-law tail |N|^{-decay}, decay complex.
template <class F>
Evaluation lattice_integral(const F& f, double c, Complex decay, const CROptions& opt) {
  double quad_err = 0.0;
  double largest = 0.0;  // absolute floor for terms that nearly cancel
  long nodes = 0;
  auto term = [&](HalfInt N) {
    ContourSpec spec;
    spec.kind = ContourKind::line;
    spec.base = Complex(0.0, c);
    spec.direction = 1.0;
    spec.offset = c;
    spec.tail = TailDecay::algebraic;
    spec.truncation = 4.0 + std::abs(N.value());
    spec.feature_scale = 1.0;
    spec.node_budget = opt.node_budget;
    spec.pinch_threshold = std::numeric_limits<double>::max();
    spec.abs_tol = 0.01 * opt.tol * largest;
    const Evaluation e = integrate_contour([&](Complex y) { return f(y, N); }, spec, 0.05 * opt.tol);
    largest = std::max(largest, std::abs(e.value));
    quad_err += e.abs_err;
    nodes += e.nodes_used;
    return e.value;
  };
  SumOptions so;
  so.rel_tol = opt.tol;
  so.max_terms = opt.max_terms;
  so.power_exponent = decay;
  SumResult r = bilateral_sum(term, HalfInt(0), so);
  r.eval.abs_err += quad_err;
  r.eval.nodes_used = nodes;
  return r.eval;
}

// prod_a Gamma(s_a - y, n_a - N) Gamma(t_a + y, m_a + N) for integer labels.
inline Complex jcr_integrand(const CRParams& p, Complex y, HalfInt N) {
  LogProduct prod;
  for (int a = 0; a < 4; ++a) {
    accumulate_cgamma(prod, p.s[a] - y, p.n[a] - N);
    accumulate_cgamma(prod, p.t[a] + y, p.m[a] + N);
  }
  return prod.value();
}

}  // namespace detail

// J_cr = (1/4 pi) sum_{N in Z+eps} int prod_a Gamma(s_a - y, n_a - N) Gamma(t_a + y, m_a + N) dy.
inline Evaluation jcr(const CRParams& par, const CROptions& opt = {}) {
  par.validate();
  const CRParams p = par.reduced();
  const double c = detail::cr_strip_offset(p.s, p.t, opt.offset);
  Complex im{};
  for (int a = 0; a < 4; ++a) im += p.s[a] + p.t[a];
  // Gamma(x, n) ~ (|n|/2)^{-1 + ix}, so the N-th term goes like |N|^{-7 + i sum}; |.| ~ |N|^{-3}.
  const Complex decay = 7.0 - kI * im;
  Evaluation e = detail::lattice_integral([&](Complex y, HalfInt N) { return detail::jcr_integrand(p, y, N); }, c,
                                          decay, opt);
  e.value /= 4.0 * kPi;
  e.abs_err /= 4.0 * kPi;
  return e;
}

// E_cr = (1/8 pi) sum_{N in Z+eps} int (y^2 + N^2) prod_k Gamma(p_k +- y, l_k +- N) dy.
inline Evaluation ecr(const ECRParams& par, const CROptions& opt = {}) {
  par.validate();
  const double c = detail::cr_strip_offset(par.p, par.p, opt.offset);
  Complex sum_p{};
  for (const auto& x : par.p) sum_p += x;
  const Complex decay = 9.0 - 2.0 * kI * sum_p;
  const HalfInt eps = par.eps;
  // Summation runs over integer K with N = K + eps.
  auto f = [&](Complex y, HalfInt K) -> Complex {
    const HalfInt N = K + eps;
    LogProduct prod;
    for (int k = 0; k < 6; ++k) {
      accumulate_cgamma(prod, par.p[k] + y, par.l[k] + N);
      accumulate_cgamma(prod, par.p[k] - y, par.l[k] - N);
    }
    const double nv = N.value();
    return (y * y + nv * nv) * prod.value();
  };
  if (!(decay.real() > 1.2))
    throw NonConvergence("E_cr: summand decays like |N|^-" + std::to_string(decay.real()) + ", too slow to sum");
  Evaluation e = detail::lattice_integral(f, c, decay, opt);
  e.value /= 8.0 * kPi;
  e.abs_err /= 8.0 * kPi;
  return e;
}

// The SL(2,C) 6j-symbol in complex gamma form.
inline Evaluation complex_6j(const SixJComplexParams& par, const CROptions& opt = {}) {
  const auto d = par.derived();
  const auto& s = par.sigma;
  const Complex r1 = par.rho[0], r2 = par.rho[1];
  LogProduct pre;
  accumulate_cgamma(pre, s[0] - s[1] + r2 - kI, HalfInt(static_cast<int>(d.A[0])));
  accumulate_cgamma(pre, s[1] - s[2] + r1 - kI, HalfInt(static_cast<int>(d.A[1])));
  accumulate_cgamma(pre, -s[2] - s[3] + r2 - kI, HalfInt(static_cast<int>(d.A[2])), -1);
  accumulate_cgamma(pre, s[0] + s[3] + r1 - kI, HalfInt(static_cast<int>(d.A[3])), -1);
  std::array<HalfInt, 4> S{}, T{};
  for (int a = 0; a < 4; ++a) {
    S[a] = HalfInt(static_cast<int>(d.S[a]));
    T[a] = HalfInt(static_cast<int>(d.T[a]));
  }
  const CRParams cr(d.R, S, d.U, T);
  Evaluation e = jcr(cr, opt);
  const double sign = parity_sign(par.M[1] - par.N[1] + par.N[3]);
  // The lattice sum equals 4 pi J_cr.
  const Complex factor = sign * kPi * kPi / 4.0 * 4.0 * kPi * pre.value();
  e.value *= factor;
  e.abs_err *= std::abs(factor);
  return e;
}

// F = prod_{a,b <= 3} Gamma(s_a + t_b, n_a + m_b) on the degenerate locus.
inline Complex f_product(const CRParams& par) {
  const CRParams p = par.reduced();
  Complex s3{};
  HalfInt n3{};
  for (int a = 0; a < 3; ++a) {
    s3 += p.s[a] + p.t[a];
    n3 += p.n[a] + p.m[a];
  }
  if (!(p.n[3] + p.m[3] == HalfInt(0)) || !(n3 == HalfInt(0)) || std::abs(p.s[3] + p.t[3] + 2.0 * kI) > 1e-12 ||
      std::abs(s3 + 2.0 * kI) > 1e-12)
    throw DomainError("f_product: parameters off the degenerate locus");
  LogProduct prod;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) accumulate_cgamma(prod, p.s[a] + p.t[b], p.n[a] + p.m[b]);
  return prod.value();
}

// ---------------------------------------------------------------------------
// Difference equations

enum class CREquation { difjmn, difjmn2, ecr_eq1, ecr_eq2, f_eq };

namespace detail {

// J_cr / [Gamma(s2 - s4, n2 - n4) Gamma(s3 - s4, n3 - n4)].
inline Complex u_cr(const CRParams& p, const CROptions& opt) {
  LogProduct den;
  accumulate_cgamma(den, p.s[1] - p.s[3], p.n[1] - p.n[3], -1);
  accumulate_cgamma(den, p.s[2] - p.s[3], p.n[2] - p.n[3], -1);
  return jcr(p, opt).value * den.value();
}

inline CRParams shift23(CRParams p, HalfInt dn2) {
  p.s[1] -= kI;
  p.s[2] += kI;
  p.n[1] += dn2;
  p.n[2] -= dn2;
  return p;
}

inline ECRParams shift56(ECRParams p, HalfInt dl5) {
  p.p[4] -= kI;
  p.p[5] += kI;
  p.l[4] += dl5;
  p.l[5] -= dl5;
  return p;
}

// V = prod_{k<=3} (beta3 + gamma_k - 1) / [(beta3 - beta2 - 1)(beta2 - beta3)].
inline Complex potential_v(const std::array<Complex, 4>& b, const std::array<Complex, 4>& g) {
  Complex num = 1.0;
  for (int k = 0; k < 3; ++k) num *= b[2] + g[k] - 1.0;
  return num / (nonzero(b[2] - b[1] - 1.0) * nonzero(b[1] - b[2]));
}

}  // namespace detail

// difjmn:  D(beta, gamma)(U(s2-i, n2-1, s3+i, n3+1) - U) + (2 <-> 3) + U = 0, beta = (i s - n)/2
// difjmn2: the same with (s2-i, n2+1, s3+i, n3-1), beta = (i s + n)/2
// f_eq:    V (F(s2-i, n2-1, s3+i, n3+1) - F) + (2 <-> 3) + F = 0 on the degenerate locus
inline Complex cr_residual(CREquation eq, const CRParams& par, const CROptions& opt = {}) {
  par.validate();
  CRParams sw = par;
  std::swap(sw.s[1], sw.s[2]);
  std::swap(sw.n[1], sw.n[2]);
  if (eq == CREquation::difjmn || eq == CREquation::difjmn2) {
    const bool plus = eq == CREquation::difjmn2;
    const HalfInt dn = plus ? HalfInt(1) : HalfInt(-1);
    const Complex d1 = detail::potential_d_rational(par.beta(plus), par.gamma(plus));
    const Complex d2 = detail::potential_d_rational(sw.beta(plus), sw.gamma(plus));
    const Complex u0 = detail::u_cr(par, opt);
    const Complex u1 = detail::u_cr(detail::shift23(par, dn), opt);
    const Complex u2 = detail::u_cr(detail::shift23(sw, dn), opt);
    const Complex a = d1 * (u1 - u0), b = d2 * (u2 - u0);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(u0)});
    return (a + b + u0) / scale;
  }
  if (eq == CREquation::f_eq) {
    const Complex v1 = detail::potential_v(par.beta(), par.gamma());
    const Complex v2 = detail::potential_v(sw.beta(), sw.gamma());
    const Complex f0 = f_product(par);
    const Complex f1 = f_product(detail::shift23(par, HalfInt(-1)));
    const Complex f2 = f_product(detail::shift23(sw, HalfInt(-1)));
    const Complex a = v1 * (f1 - f0), b = v2 * (f2 - f0);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(f0)});
    return (a + b + f0) / scale;
  }
  throw DomainError("cr_residual: equation needs E_cr parameters");
}

// ecr_eq1: C(alpha)(E(p5-i, l5-1, p6+i, l6+1) - E) + (5 <-> 6) + E = 0, alpha = (-l + i p)/2
// ecr_eq2: the same with (p5-i, l5+1, p6+i, l6-1), alpha = (l + i p)/2
inline Complex cr_residual(CREquation eq, const ECRParams& par, const CROptions& opt = {}) {
  if (eq != CREquation::ecr_eq1 && eq != CREquation::ecr_eq2)
    throw DomainError("cr_residual: equation needs J_cr parameters");
  const bool plus = eq == CREquation::ecr_eq2;
  const HalfInt dl = plus ? HalfInt(1) : HalfInt(-1);
  ECRParams sw = par;
  std::swap(sw.p[4], sw.p[5]);
  std::swap(sw.l[4], sw.l[5]);
  const Complex c1 = detail::potential_c(par.alpha(plus));
  const Complex c2 = detail::potential_c(sw.alpha(plus));
  const Complex e0 = ecr(par, opt).value;
  const Complex e1 = ecr(detail::shift56(par, dl), opt).value;
  const Complex e2 = ecr(detail::shift56(sw, dl), opt).value;
  const Complex a = c1 * (e1 - e0), b = c2 * (e2 - e0);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(e0)});
  return (a + b + e0) / scale;
}

// ---------------------------------------------------------------------------
// Symmetry transformations

enum class CRIdentity { ide1i, JE };

struct CRIdentityResult {
  Complex lhs{};
  Complex rhs{};
  double deviation = 0.0;
  HalfInt lambda{};  // summation branch on the right-hand side
  std::int64_t sign_exponent = 0;
};

inline CRIdentityResult check_cr_identity_full(CRIdentity id, const CRParams& par, const CROptions& opt = {}) {
  par.validate();
  const CRParams p = par.reduced();
  const auto& s = p.s;
  const auto& n = p.n;
  const auto& t = p.t;
  const auto& m = p.m;
  HalfInt sum_n{}, sum_m{};
  for (int a = 0; a < 4; ++a) {
    sum_n += n[a];
    sum_m += m[a];
  }
  CRIdentityResult r;
  r.lhs = jcr(p, opt).value;
  LogProduct pre;
  if (id == CRIdentity::ide1i) {
    // K = -(n1 + n2 + m1 + m2)/2, Y = -(s1 + s2 + t1 + t2 + 2i)/2.
    const HalfInt twoK = -(n[0] + n[1] + m[0] + m[1]);
    if (twoK.twice() % 2 != 0) throw DomainError("ide1i: K must be an integer or half-integer");
    const HalfInt Kh = HalfInt::from_twice(twoK.twice() / 2);
    const Complex Y = -0.5 * (s[0] + s[1] + t[0] + t[1] + 2.0 * kI);
    r.lambda = Kh.is_integer() ? HalfInt(0) : HalfInt::half();
    // A = (n1+n2)(m1+m2) + (n3+n4)(m3+m4) + 2 lambda (1 + sum m).
    const std::int64_t a4 = (n[0] + n[1]).twice() * (m[0] + m[1]).twice() +
                            (n[2] + n[3]).twice() * (m[2] + m[3]).twice() +
                            2 * r.lambda.twice() * (HalfInt(1) + sum_m).twice();
    if (a4 % 4 != 0) throw DomainError("ide1i: sign exponent A is not an integer");
    r.sign_exponent = a4 / 4;
    for (int j : {0, 1})
      for (int k : {0, 1}) accumulate_cgamma(pre, s[j] + t[k], n[j] + m[k]);
    for (int j : {2, 3})
      for (int k : {2, 3}) accumulate_cgamma(pre, s[j] + t[k], n[j] + m[k]);
    CRParams q = p;
    for (int a = 0; a < 4; ++a) {
      const double sg = a < 2 ? 1.0 : -1.0;
      q.s[a] = s[a] + sg * Y;
      q.t[a] = t[a] + sg * Y;
      q.n[a] = a < 2 ? n[a] + Kh : n[a] - Kh;
      q.m[a] = a < 2 ? m[a] + Kh : m[a] - Kh;
    }
    q.eps = r.lambda;
    q.validate();
    const bool fixed = Kh == HalfInt(0) && Y == Complex{};
    r.rhs = static_cast<double>(parity_sign(r.sign_exponent)) * pre.value() * (fixed ? r.lhs : jcr(q, opt).value);
  } else {
    // L = -(m4 + sum_{a<=3} n_a)/2, Z = -(t4 + 2i + sum_{a<=3} s_a)/2.
    const HalfInt twoL = -(m[3] + n[0] + n[1] + n[2]);
    if (twoL.twice() % 2 != 0) throw DomainError("JE: L must be an integer or half-integer");
    const HalfInt L = HalfInt::from_twice(twoL.twice() / 2);
    const Complex Z = -0.5 * (t[3] + 2.0 * kI + s[0] + s[1] + s[2]);
    r.lambda = L.is_integer() ? HalfInt(0) : HalfInt::half();
    // 4A = 8 L^2 - 4 sum n - 8 n4 m4 - 4 lambda.
    const std::int64_t a4 = 2 * L.twice() * L.twice() - 2 * sum_n.twice() - 2 * n[3].twice() * m[3].twice() -
                            2 * r.lambda.twice();
    if (a4 % 4 != 0) throw DomainError("JE: sign exponent A is not an integer");
    r.sign_exponent = a4 / 4;
    for (int a = 0; a < 3; ++a) {
      accumulate_cgamma(pre, s[a] + t[3], n[a] + m[3]);
      accumulate_cgamma(pre, t[a] + s[3], m[a] + n[3]);
    }
    ECRParams e;
    for (int a = 0; a < 3; ++a) {
      e.p[a] = s[a] + Z;
      e.l[a] = n[a] + L;
      e.p[3 + a] = t[a] - Z;
      e.l[3 + a] = m[a] - L;
    }
    e.eps = r.lambda;
    // The lattice sum on the right is E_cr itself, 1/(8 pi) included.
    r.rhs = static_cast<double>(parity_sign(r.sign_exponent)) * pre.value() * ecr(e, opt).value;
  }
  r.deviation = rel_diff(r.lhs, r.rhs);
  return r;
}

inline double check_cr_identity(CRIdentity id, const CRParams& par, const CROptions& opt = {}) {
  return check_cr_identity_full(id, par, opt).deviation;
}

// ---------------------------------------------------------------------------
// The algebraic identity behind the degenerate-locus equation

struct PolyValue {
  Complex value{};
  double scale = 0.0;  // sum of the moduli of the expanded products
  double normalized() const { return scale == 0.0 ? 0.0 : std::abs(value) / scale; }
};

// Left side of the cubic identity in beta2, beta3, beta4, gamma1..3; with
// `beta4_limit` the leading coefficient as beta4 -> infinity.
inline PolyValue eqdif_lhs(Complex b2, Complex b3, Complex b4, Complex g1, Complex g2, Complex g3,
                           bool beta4_limit = false) {
  auto p3 = [&](Complex b) { return (b + g1) * (b + g2) * (b + g3); };
  PolyValue out;
  auto add = [&](Complex term) {
    out.value += term;
    out.scale += std::abs(term);
  };
  if (!beta4_limit) {
    const Complex c1 = (b2 - b4 - 1.0) * (b3 - b4) * (b3 - b2 + 1.0);
    add(c1 * p3(b2) * (b3 - b4 - 1.0));
    add(c1 * p3(b3 - 1.0) * (b4 - b2));
    const Complex c2 = (b3 - b4 - 1.0) * (b2 - b4) * (b3 - b2 - 1.0);
    add(c2 * p3(b3) * (b2 - b4 - 1.0));
    add(c2 * p3(b2 - 1.0) * (b4 - b3));
    add(-(b2 - b3) * (b3 - b2 + 1.0) * (b3 - b2 - 1.0) * p3(b4));
    return out;
  }
  add((b3 - b2 + 1.0) * p3(b2));
  add(-(b3 - b2 + 1.0) * p3(b3 - 1.0));
  add((b3 - b2 - 1.0) * p3(b3));
  add(-(b3 - b2 - 1.0) * p3(b2 - 1.0));
  add((b3 - b2 + 1.0) * (b3 - b2 - 1.0) * (b2 - b3));
  return out;
}

}  // namespace ehf
