#pragma once

// Degeneration limits: elliptic -> hyperbolic (v -> 0), hyperbolic -> rational
// (omega1 -> 0) and hyperbolic -> complex rational (b -> i).
//
// A scan evaluates both sides at each small parameter, records the relative
// deviation and fits the slope of log deviation against log delta.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ehf/complex_rational.hpp"
#include "ehf/gamma_core.hpp"
#include "ehf/hyperbolic.hpp"
#include "ehf/rational.hpp"

namespace ehf {

enum class LimitId { elliptic_to_hyperbolic, gamma_b_to_i, jh_b_to_0, pt_to_complex6j };

inline std::string to_string(LimitId id) {
  switch (id) {
    case LimitId::elliptic_to_hyperbolic: return "elliptic_to_hyperbolic";
    case LimitId::gamma_b_to_i: return "gamma_b_to_i";
    case LimitId::jh_b_to_0: return "jh_b_to_0";
    case LimitId::pt_to_complex6j: return "pt_to_complex6j";
  }
  return "?";
}

inline std::optional<LimitId> limit_from_string(const std::string& s) {
  for (auto id : {LimitId::elliptic_to_hyperbolic, LimitId::gamma_b_to_i, LimitId::jh_b_to_0,
                  LimitId::pt_to_complex6j})
    if (to_string(id) == s) return id;
  return std::nullopt;
}

// Target-side parameters, one group per limit. Only the group matching the
// scanned limit is read.
struct LimitTarget {
  // elliptic_to_hyperbolic
  Complex y{0.6, 0.0};
  QuasiPeriods w{1.0, 1.0};
  // gamma_b_to_i
  double x = 0.7;
  int n = 1;
  // jh_b_to_0, with omega2 fixed
  RationalParams rational = default_rational();
  double w2 = 1.0;
  // pt_to_complex6j
  SixJComplexParams sixj = default_sixj();

  static RationalParams default_rational() {
    RationalParams p;
    p.beta = {Complex(0.4, 0.1), Complex(0.45, -0.05), Complex(0.35, 0.02), Complex(0.4, -0.07)};
    p.gamma = {Complex(0.3, 0.03), Complex(0.3, -0.04), Complex(-0.1, 0.05), Complex(-0.1, -0.04)};
    return p;
  }
  static SixJComplexParams default_sixj() {
    SixJComplexParams p;
    p.sigma = {0.3, -0.2, 0.15, 0.1};
    p.rho = {0.25, -0.1};
    return p;
  }
};

struct LimitRow {
  double delta = 0.0;
  Complex lhs{};  // small-parameter side, scaled
  Complex rhs{};  // limit side
  double deviation = 0.0;
  std::optional<double> alt_deviation;

  Complex ratio() const { return lhs / rhs; }
};

struct LimitScan {
  LimitId id{};
  std::vector<LimitRow> rows;
  double order = 0.0;                 // fitted slope of log deviation vs log delta
  std::optional<double> alt_order;    // same for alt_deviation
  std::string alt_label;              // meaning of alt_deviation, empty if absent
  std::optional<std::int64_t> F;      // pt_to_complex6j only

  // Deviations decrease over the last `tail` steps.
  bool monotone(std::size_t tail = 2) const {
    if (rows.size() < 2) return true;
    const std::size_t from = rows.size() > tail ? rows.size() - tail - 1 : 0;
    for (std::size_t i = from + 1; i < rows.size(); ++i)
      if (!(rows[i].deviation < rows[i - 1].deviation)) return false;
    return true;
  }
};

struct LimitOptions {
  double tol = 1e-7;  // quadrature tolerance for integral limits
};

// Validated ranges of the small parameter.
inline std::pair<double, double> limit_range(LimitId id) {
  if (id == LimitId::gamma_b_to_i || id == LimitId::pt_to_complex6j) return {1e-3, 1e-1};
  return {0.02, 0.3};
}

inline std::vector<double> default_deltas(LimitId id) {
  switch (id) {
    case LimitId::elliptic_to_hyperbolic: return {0.2, 0.1, 0.05};
    case LimitId::gamma_b_to_i: return {1e-1, 1e-2, 1e-3};
    case LimitId::jh_b_to_0: return {0.3, 0.2, 0.1, 0.05};
    case LimitId::pt_to_complex6j: return {0.1, 0.05, 0.02, 0.01};
  }
  return {};
}

// F = A1^2 - A2^2 - A3^2 + A4^2 + sum (S_a^2 + T_a^2) + 2 (A4 - A2), required even.
inline std::int64_t prefactor_F(const SixJComplexParams& par) {
  const auto d = par.derived();
  const auto& A = d.A;
  std::int64_t F = A[0] * A[0] - A[1] * A[1] - A[2] * A[2] + A[3] * A[3] + 2 * (A[3] - A[1]);
  for (int a = 0; a < 4; ++a) F += d.S[a] * d.S[a] + d.T[a] * d.T[a];
  if (F % 2 != 0) throw DomainError("prefactor F = " + std::to_string(F) + " is odd");
  return F;
}

// PT parameters at b = i + delta for the given SL(2,C) labels.
inline PTParams pt_params_at(const SixJComplexParams& par, double delta) {
  PTParams p;
  p.b = Complex(delta, 1.0);
  for (int k = 0; k < 4; ++k) p.a[k] = kI * (0.5 * par.N[k] + par.sigma[k] * delta);
  p.at = kI * (0.5 * par.M[0] + par.rho[0] * delta);
  p.as = kI * (0.5 * par.M[1] + par.rho[1] * delta);
  return p;
}

namespace detail {

inline double fitted_order(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

inline double rel_dev(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

inline LimitRow elliptic_row(const LimitTarget& t, double v) {
  const QuasiPeriods& w = t.w;
  const EllipticBases b{std::exp(-2.0 * kPi * v * w.w1), std::exp(-2.0 * kPi * v * w.w2)};
  const Complex l = log_egamma(std::exp(-2.0 * kPi * v * t.y), b) +
                    kPi * (2.0 * t.y - w.w1 - w.w2) / (12.0 * v * w.w1 * w.w2);
  LimitRow r;
  r.delta = v;
  r.lhs = std::exp(l);
  r.rhs = hgamma(t.y, w);
  r.deviation = rel_dev(r.lhs, r.rhs);
  return r;
}

inline LimitRow gamma_row(const LimitTarget& t, double delta) {
  const QuasiPeriods w = QuasiPeriods::from_b(Complex(delta, 1.0));
  const Complex s = std::sqrt(w.w1 * w.w2);
  LimitRow r;
  r.delta = delta;
  r.lhs = hgamma(kI * s * (t.n + t.x * delta), w);
  r.rhs = std::exp(kI * kPi * static_cast<double>(t.n * t.n) / 2.0) *
          std::exp((kI * t.x - 1.0) * std::log(4.0 * kPi * delta)) * cgamma(Complex(t.x), HalfInt(t.n));
  r.deviation = rel_dev(r.lhs, r.rhs);
  return r;
}

// mu = w1 beta, nu_{3,4} = w1 gamma_{3,4}, nu_{1,2} = w1 gamma_{1,2} + w2.
inline LimitRow jh_b0_row(const LimitTarget& t, double w1, Complex jr_value, const LimitOptions& opt) {
  const QuasiPeriods w(w1, t.w2);
  std::array<Complex, 4> mu{}, nu{};
  for (int k = 0; k < 4; ++k) {
    mu[k] = w1 * t.rational.beta[k];
    nu[k] = w1 * t.rational.gamma[k];
  }
  nu[0] += t.w2;
  nu[1] += t.w2;
  HypOptions ho;
  ho.tol = opt.tol;
  const Complex j = jh(MuNuParams(mu, nu, w), ho).value;
  LimitRow r;
  r.delta = w1;
  r.lhs = j * std::pow(2.0 * kPi, 4) * w1 / (t.w2 * t.w2);
  r.rhs = jr_value;
  r.deviation = rel_dev(r.lhs, r.rhs);
  // The same comparison for the bare integral over dz, i.e. with the J_h
  // measure 1 / (i sqrt(w1 w2)) removed.
  r.alt_deviation = rel_dev(r.lhs * kI * std::sqrt(Complex(w1 * t.w2)), r.rhs);
  return r;
}

inline LimitRow pt_row(const LimitTarget& t, double delta, std::int64_t F, Complex sixj, const LimitOptions& opt) {
  HypOptions ho;
  ho.tol = opt.tol;
  const double m1 = t.sixj.M[0];
  const Complex r1 = t.sixj.rho[0];
  LimitRow r;
  r.delta = delta;
  r.lhs = pt_6j(pt_params_at(t.sixj, delta), ho).value;
  const double sign = (F / 2) % 2 == 0 ? 1.0 : -1.0;  // e^{pi i F / 2}, F even
  r.rhs = sign * (m1 * m1 + 4.0 * r1 * r1) / (16.0 * std::pow(kPi, 4) * kI * delta) * sixj;
  r.deviation = rel_dev(r.lhs, r.rhs);
  // Observed limit of the ratio: (-1)^(M1 + 1) rather than 1.
  r.alt_deviation = std::abs(r.ratio() - (t.sixj.M[0] % 2 == 0 ? -1.0 : 1.0));
  return r;
}

}  // namespace detail

inline LimitScan limit_scan(LimitId id, const std::vector<double>& deltas, const LimitTarget& target = {},
                            const LimitOptions& opt = {}) {
  if (deltas.empty()) throw DomainError("limit_scan: no deltas");
  const auto [lo, hi] = limit_range(id);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] >= lo && deltas[i] <= hi))
      throw DomainError("limit_scan: delta " + std::to_string(deltas[i]) + " outside the validated range [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw DomainError("limit_scan: deltas must strictly decrease");
  }

  LimitScan scan;
  scan.id = id;
  switch (id) {
    case LimitId::elliptic_to_hyperbolic:
      for (double d : deltas) scan.rows.push_back(detail::elliptic_row(target, d));
      break;
    case LimitId::gamma_b_to_i:
      for (double d : deltas) scan.rows.push_back(detail::gamma_row(target, d));
      break;
    case LimitId::jh_b_to_0: {
      RationalOptions ro;
      const Complex j = jr(target.rational, ro).value;
      for (double d : deltas) scan.rows.push_back(detail::jh_b0_row(target, d, j, opt));
      scan.alt_label = "deviation of the bare dz integral (J_h times i sqrt(w1 w2))";
      break;
    }
    case LimitId::pt_to_complex6j: {
      scan.F = prefactor_F(target.sixj);
      CROptions co;
      co.tol = 1e-8;
      const Complex s = complex_6j(target.sixj, co).value;
      for (double d : deltas) scan.rows.push_back(detail::pt_row(target, d, *scan.F, s, opt));
      scan.alt_label = "|ratio - (-1)^(M1 + 1)|";
      break;
    }
  }

  std::vector<double> xs, ys, ya;
  for (const auto& r : scan.rows) {
    if (!std::isfinite(r.deviation)) throw NonConvergence("limit_scan: non-finite deviation");
    xs.push_back(r.delta);
    ys.push_back(std::max(r.deviation, 1e-300));
    if (r.alt_deviation) ya.push_back(std::max(*r.alt_deviation, 1e-300));
  }
  scan.order = detail::fitted_order(xs, ys);
  if (ya.size() == xs.size()) scan.alt_order = detail::fitted_order(xs, ya);
  return scan;
}

inline LimitScan limit_scan(LimitId id, const LimitTarget& target = {}, const LimitOptions& opt = {}) {
  return limit_scan(id, default_deltas(id), target, opt);
}

// ---------------------------------------------------------------------------
// Individual S_{i+delta} estimates behind the b -> i limit of the 6j-symbol.

struct FactorCheck {
  std::string name;
  double deviation = 0.0;  // largest relative deviation within the family
};

// Seven families: the integrand factors S(mu_a - z), S(nu_a + z) at
// z = i(-N - u delta), the four prefactor ratios and |S(2 alpha_t)|^2.
inline std::array<FactorCheck, 7> unitary_factor_check(const SixJComplexParams& par, double delta, int N = 1,
                                                   double u = 0.3) {
  const auto d = par.derived();
  const PTParams pt = pt_params_at(par, delta);
  const QuasiPeriods w = pt.periods();
  const MuNuParams mn = pt.mu_nu();
  const auto [a1, a2, a3, a4, as, at] = pt.unprimed();
  const Complex ld = std::log(4.0 * kPi * delta);
  auto G = [](Complex x, std::int64_t n) { return cgamma(x, HalfInt(static_cast<int>(n))); };
  auto ph = [](std::int64_t n) { return std::exp(kI * kPi / 2.0 * static_cast<double>(n * n)); };
  auto pw = [&](Complex e) { return std::exp(e * ld); };
  auto sgn = [](std::int64_t n) { return n % 2 == 0 ? 1.0 : -1.0; };
  auto sb = [&](Complex x) { return hgamma(x, w); };
  auto dev = [](Complex a, Complex b) { return std::abs(a / b - 1.0); };

  const Complex z = kI * (-static_cast<double>(N) - u * delta);
  double dmu = 0.0, dnu = 0.0;
  for (int a = 0; a < 4; ++a) {
    dmu = std::max(dmu, dev(sb(mn.mu[a] - z), ph(d.T[a] + N) * pw(kI * (d.U[a] + u) - 1.0) * G(d.U[a] + u, d.T[a] + N)));
    dnu = std::max(dnu, dev(sb(mn.nu[a] + z), ph(d.S[a] - N) * pw(kI * (d.R[a] - u) - 1.0) * G(d.R[a] - u, d.S[a] - N)));
  }
  const auto& s = par.sigma;
  const Complex r1 = par.rho[0], r2 = par.rho[1];
  const auto& A = d.A;
  std::array<FactorCheck, 7> out;
  out[0] = {"S(mu_a - z)", dmu};
  out[1] = {"S(nu_a + z)", dnu};
  out[2] = {"S(alpha_s + alpha_2 - alpha_1)",
            dev(sb(as + a2 - a1), ph(A[0]) * pw(kI * (s[0] - s[1] + r2)) * G(s[0] - s[1] + r2 - kI, A[0]))};
  out[3] = {"S(alpha_1 + alpha_t - alpha_4)",
            dev(sb(a1 + at - a4), ph(A[3]) * pw(kI * (-s[0] - s[3] - r1)) * sgn(A[3]) / G(s[0] + s[3] + r1 - kI, A[3]))};
  out[4] = {"S(alpha_2 + alpha_t - alpha_3)",
            dev(sb(a2 + at - a3), ph(A[1]) * pw(kI * (-s[1] + s[2] - r1)) * sgn(A[1]) / G(s[1] - s[2] + r1 - kI, A[1]))};
  out[5] = {"S(alpha_3 + alpha_s - alpha_4)",
            dev(sb(a3 + as - a4), ph(A[2]) * pw(kI * (-s[2] - s[3] + r2)) * G(-s[2] - s[3] + r2 - kI, A[2]))};
  const double m1 = par.M[0];
  out[6] = {"|S(2 alpha_t)|^2", dev(sb(2.0 * at) * sb(2.0 * w.Q() - 2.0 * at),
                                    std::pow(4.0 * kPi * delta, 2) * (m1 * m1 + 4.0 * r1 * r1) / 4.0)};
  return out;
}

}  // namespace ehf
