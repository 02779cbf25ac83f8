#pragma once

// Hyperbolic hypergeometric integrals I_h, E_h, J_h, their difference
// equations and symmetry transformations, and the Ponsot-Teschner 6j-symbol.
//
// All integrals run along a vertical line Re z = c separating the pole
// sequences of gamma^(2)(a - z) (to the right) from those of
// gamma^(2)(b + z) (to the left). The default c is the midline of the
// admissible strip.

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "ehf/gamma_core.hpp"
#include "ehf/quadrature.hpp"

namespace ehf {

struct HypOptions {
  double tol = 1e-10;
  std::optional<double> offset;  // Re z of the contour; midline of the strip if unset
  long node_budget = 2000000;
  HgammaRoute route = HgammaRoute::automatic;
};

namespace detail {

inline void check_balance(Complex sum, Complex target, const char* what) {
  if (std::abs(sum - target) > 1e-12 * std::max(1.0, std::abs(target)))
    throw DomainError(std::string(what) + ": balancing condition violated");
}

inline Complex sqrt_w1w2(const QuasiPeriods& w) { return std::sqrt(w.w1 * w.w2); }

// Strip of admissible Re z for integrands gamma(right_a - z) gamma(left_b + z).
inline double contour_offset(std::span<const Complex> right, std::span<const Complex> left,
                             const HypOptions& opt) {
  double hi = std::numeric_limits<double>::infinity();
  double lo = -std::numeric_limits<double>::infinity();
  for (const auto& r : right) hi = std::min(hi, r.real());
  for (const auto& l : left) lo = std::max(lo, -l.real());
  if (!(lo < hi)) throw PolePinch("no vertical contour separates the pole sequences");
  const double c = opt.offset.value_or(0.5 * (lo + hi));
  const double margin = kProximityEps * std::max(1.0, hi - lo);
  if (!(c > lo + margin && c < hi - margin))
    throw PolePinch("requested contour offset lies outside the admissible strip (" + std::to_string(lo) + ", " +
                    std::to_string(hi) + ")");
  return c;
}

inline ContourSpec vertical_contour(double c, const QuasiPeriods& w, const HypOptions& opt, double scale) {
  ContourSpec spec;
  spec.kind = ContourKind::line;
  spec.base = c;
  spec.direction = kI;
  spec.offset = c;
  spec.truncation = std::max(4.0, 2.0 * scale);
  spec.node_budget = opt.node_budget;
  spec.feature_scale = std::clamp(0.5 * std::min(w.w1.real(), w.w2.real()), 1e-4, 0.5);
  spec.pinch_threshold = std::numeric_limits<double>::max();
  return spec;
}

inline double param_scale(std::span<const Complex> xs) {
  double s = 1.0;
  for (const auto& x : xs) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace detail

struct HypParams8 {
  std::array<Complex, 8> u{};
  QuasiPeriods w;

  HypParams8() = default;
  HypParams8(const std::array<Complex, 8>& u_, QuasiPeriods w_) : u(u_), w(w_) { validate(); }
  void validate() const {
    Complex s{};
    for (const auto& x : u) s += x;
    detail::check_balance(s, 2.0 * w.Q(), "I_h");
  }
};

struct HypParams6 {
  std::array<Complex, 6> u{};
  QuasiPeriods w;
};

struct MuNuParams {
  std::array<Complex, 4> mu{};
  std::array<Complex, 4> nu{};
  QuasiPeriods w;

  MuNuParams() = default;
  MuNuParams(const std::array<Complex, 4>& m, const std::array<Complex, 4>& n, QuasiPeriods w_)
      : mu(m), nu(n), w(w_) {
    validate();
  }
  void validate() const {
    Complex s{};
    for (int a = 0; a < 4; ++a) s += mu[a] + nu[a];
    detail::check_balance(s, 2.0 * w.Q(), "J_h");
  }
};

namespace detail {

// Integral of prod_a gamma(u_a +- z) / gamma(+-2z) dz / (2 i sqrt(w1 w2)).
template <std::size_t K>
Evaluation symmetric_integral(const std::array<Complex, K>& u, const QuasiPeriods& w, const HypOptions& opt) {
  const double c = contour_offset(u, u, opt);
  auto f = [&](Complex z) -> Complex {
    if (z == Complex{}) return {};
    Complex l{};
    for (const auto& ua : u) l += log_hgamma(ua + z, w, opt.route) + log_hgamma(ua - z, w, opt.route);
    // 1 / gamma(+-2z) = -4 sin(2 pi z / w1) sin(2 pi z / w2), kept in log form
    // because each sine alone overflows far up the contour.
    l += log_two_sin(2.0 * z, w.w1) + log_two_sin(2.0 * z, w.w2);
    return -std::exp(l);
  };
  ContourSpec spec = vertical_contour(c, w, opt, param_scale(u));
  spec.even = (c == 0.0);
  Evaluation e = integrate_contour(f, spec, opt.tol);
  const Complex pre = 1.0 / (2.0 * kI * sqrt_w1w2(w));
  e.value *= pre;
  e.abs_err *= std::abs(pre);
  return e;
}

// Near w2 = -w1 (b -> i) the integrand along Re z = c has peaks of width ~|Q|
// at z = c + k w1 for integer k, decaying only like exp(-2 pi |Q k|). The line
// is cut into cells of height |Im w1| centred on the peaks and the cells are
// summed outward until the remainder estimate |k| |cell| drops below tol.
inline bool needs_cells(const QuasiPeriods& w) {
  const double a = std::min(std::abs(w.w1), std::abs(w.w2));
  return std::abs(w.Q()) < 0.5 * a && std::abs(w.w1.real()) < 0.2 * std::abs(w.w1);
}

template <class F>
Evaluation cell_line_integral(const F& f, double c, const QuasiPeriods& w, const HypOptions& opt) {
  const double h = std::abs(w.w1.imag());
  const double width = std::clamp(8.0 * std::abs(w.Q()), 1e-6 * h, 0.25 * h);
  long nodes = 0;
  double err = 0.0;
  CompensatedSum total;
  auto cell = [&](long k, double abs_tol) {
    const double t0 = k * h;
    auto g = [&](double t) { return f(Complex(c, t)); };
    const std::vector<QuadSegment> segs = {{QuadSegment::Map::identity, t0 - 0.5 * h, t0 - width, 1.0},
                                           {QuadSegment::Map::identity, t0 - width, t0, 1.0},
                                           {QuadSegment::Map::identity, t0, t0 + width, 1.0},
                                           {QuadSegment::Map::identity, t0 + width, t0 + 0.5 * h, 1.0}};
    QuadOptions q;
    q.rel_tol = 0.1 * opt.tol;
    q.abs_tol = abs_tol;
    q.max_evals = std::max(1000L, opt.node_budget - nodes);
    Evaluation e = integrate_segments(g, segs, q, 2);
    nodes += e.nodes_used;
    err += e.abs_err;
    if (nodes > opt.node_budget) throw NonConvergence("J_h: cell summation exceeded the node budget");
    return e.value * kI;  // dz = i dt
  };
  total.add(cell(0, 0.0));
  for (const int dir : {1, -1}) {
    int quiet = 0;
    for (long k = 1;; ++k) {
      const double scale = std::abs(total.value());
      const Complex v = cell(dir * k, 1e-3 * opt.tol * scale);
      total.add(v);
      quiet = (static_cast<double>(k) * std::abs(v) < opt.tol * std::abs(total.value())) ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  Evaluation out;
  out.value = total.value();
  out.abs_err = err;
  out.nodes_used = nodes;
  return out;
}

}  // namespace detail

// I_h(u) with sum u_a = 2Q.
inline Evaluation ih(const HypParams8& par, const HypOptions& opt = {}) {
  par.validate();
  return detail::symmetric_integral(par.u, par.w, opt);
}

// log|integrand| / (2 pi |Im z|) for large |Im z|; E_h converges iff this is negative.
inline double eh_decay_rate(const HypParams6& par) {
  Complex s{};
  for (const auto& x : par.u) s += x;
  return ((s - 2.0 * par.w.Q()) / (par.w.w1 * par.w.w2)).real();
}

// E_h(u), six parameters, no balancing.
inline Evaluation eh(const HypParams6& par, const HypOptions& opt = {}) {
  if (!(eh_decay_rate(par) < 0.0))
    throw DomainError("E_h: integrand does not decay along the contour, Re[(sum u - 2Q)/(w1 w2)] = " +
                      std::to_string(eh_decay_rate(par)));
  return detail::symmetric_integral(par.u, par.w, opt);
}

// J_h(mu, nu) = int prod gamma(mu_a - z) gamma(nu_a + z) dz / (i sqrt(w1 w2)).
inline Evaluation jh(const MuNuParams& par, const HypOptions& opt = {}) {
  par.validate();
  const auto& w = par.w;
  const double c = detail::contour_offset(par.mu, par.nu, opt);
  auto f = [&](Complex z) -> Complex {
    Complex l{};
    for (int a = 0; a < 4; ++a)
      l += log_hgamma(par.mu[a] - z, w, opt.route) + log_hgamma(par.nu[a] + z, w, opt.route);
    return std::exp(l);
  };
  std::array<Complex, 8> all{};
  for (int a = 0; a < 4; ++a) {
    all[a] = par.mu[a];
    all[4 + a] = par.nu[a];
  }
  Evaluation e = detail::needs_cells(w)
                     ? detail::cell_line_integral(f, c, w, opt)
                     : integrate_contour(f, detail::vertical_contour(c, w, opt, detail::param_scale(all)), opt.tol);
  const Complex pre = 1.0 / (kI * detail::sqrt_w1w2(w));
  e.value *= pre;
  e.abs_err *= std::abs(pre);
  return e;
}

// prod_{a,b=1..3} gamma(mu_a + nu_b) on the locus mu4 + nu4 = Q, sum_{a<=3}(mu_a + nu_a) = Q.
inline Complex jh_closed_form(const MuNuParams& par) {
  const Complex Q = par.w.Q();
  Complex s3{};
  for (int a = 0; a < 3; ++a) s3 += par.mu[a] + par.nu[a];
  const double tol = 1e-10 * std::max(1.0, std::abs(Q));
  if (std::abs(par.mu[3] + par.nu[3] - Q) > tol || std::abs(s3 - Q) > tol)
    throw DomainError("jh_closed_form: parameters off the degenerate locus");
  Complex l{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) l += log_hgamma(par.mu[a] + par.nu[b], par.w);
  return std::exp(l);
}

// ---------------------------------------------------------------------------
// Difference equations

enum class HypEquation { br, br2, difeh, difeh2, secdif, secdif2 };

namespace detail {

// sin(pi x / w), rejecting exact zeros of denominators.
inline Complex sin_over(Complex x, Complex w) { return std::sin(kPi * x / w); }

inline Complex sin_den(Complex x, Complex w) {
  const Complex s = std::sin(kPi * x / w);
  if (std::abs(s) < kProximityEps) throw ZeroError("vanishing sine in a difference-equation potential");
  return s;
}

inline Complex normalized_three_terms(Complex a, Complex b, Complex c) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return {};
  return (a + b + c) / scale;
}

// Potential A(u; wa, wb) of the I_h equation.
inline Complex potential_a(const std::array<Complex, 8>& u, Complex wa, Complex wb) {
  const Complex u6 = u[5], u7 = u[6], u8 = u[7];
  Complex num = sin_over(u6 - u8 - wb, wa) * sin_over(u6 + u8, wa) * sin_over(u8 - u6, wa);
  Complex den = sin_den(u6 - u7, wa) * sin_den(u7 - u6 - wb, wa) * sin_den(u7 + u6 - wb, wa);
  for (int k = 0; k < 5; ++k) {
    num *= sin_over(u7 + u[k] - wb, wa);
    den *= sin_den(u8 + u[k], wa);
  }
  return num / den;
}

// Potential B(u; wa, wb) of the E_h equation.
inline Complex potential_b(const std::array<Complex, 6>& u, Complex wa, Complex wb, Complex Q) {
  const Complex u5 = u[4], u6 = u[5];
  Complex sum{};
  for (const auto& x : u) sum += x;
  Complex num = 1.0;
  for (int k = 0; k < 4; ++k) num *= sin_over(u6 + u[k] - wb, wa);
  const Complex den = sin_den(u5 - u6, wa) * sin_den(u6 - u5 - wb, wa) * sin_den(u6 + u5 - wb, wa) *
                      sin_den(2.0 * Q - sum, wa);
  return num / den;
}

// Potential D(mu, nu; wa, wb) of the J_h equation.
inline Complex potential_d(const std::array<Complex, 4>& mu, const std::array<Complex, 4>& nu, Complex wa,
                           Complex wb) {
  Complex num = sin_over(mu[1] - mu[3] - wb, wa) * sin_over(mu[3] - mu[1], wa);
  Complex den = sin_den(mu[1] - mu[2], wa) * sin_den(mu[2] - mu[1] - wb, wa);
  for (int k = 0; k < 4; ++k) {
    num *= sin_over(mu[2] + nu[k] - wb, wa);
    den *= sin_den(mu[3] + nu[k], wa);
  }
  return num / den;
}

inline Complex y_function(const HypParams8& par, const HypOptions& opt) {
  const auto& u = par.u;
  Complex l{};
  for (int a : {5, 6}) l += log_hgamma(u[a] + u[7], par.w) + log_hgamma(u[a] - u[7], par.w);
  return ih(par, opt).value * std::exp(-l);
}

inline Complex u_function(const MuNuParams& par, const HypOptions& opt) {
  const Complex l = log_hgamma(par.mu[1] - par.mu[3], par.w) + log_hgamma(par.mu[2] - par.mu[3], par.w);
  return jh(par, opt).value * std::exp(-l);
}

}  // namespace detail

// br / br2: A(u)(Y(u6 + wb, u7 - wb) - Y(u)) + (u6 <-> u7) + Y(u) = 0, with
// (wa, wb) = (w1, w2) for br and (w2, w1) for br2.
inline Complex hyp_residual(HypEquation eq, const HypParams8& par, const HypOptions& opt = {}) {
  if (eq != HypEquation::br && eq != HypEquation::br2) throw DomainError("hyp_residual: equation needs I_h parameters");
  const Complex wa = eq == HypEquation::br ? par.w.w1 : par.w.w2;
  const Complex wb = eq == HypEquation::br ? par.w.w2 : par.w.w1;
  auto sw = par.u;
  std::swap(sw[5], sw[6]);
  const Complex a1 = detail::potential_a(par.u, wa, wb);
  const Complex a2 = detail::potential_a(sw, wa, wb);
  HypParams8 up = par, down = par;
  up.u[5] += wb;
  up.u[6] -= wb;
  down.u[5] -= wb;
  down.u[6] += wb;
  const Complex y0 = detail::y_function(par, opt);
  const Complex y1 = detail::y_function(up, opt);
  const Complex y2 = detail::y_function(down, opt);
  return detail::normalized_three_terms(a1 * (y1 - y0), a2 * (y2 - y0), y0);
}

// difeh / difeh2: B(u)(E_h(u5 + wb, u6 - wb) - E_h(u)) + (u5 <-> u6) + E_h(u) = 0.
inline Complex hyp_residual(HypEquation eq, const HypParams6& par, const HypOptions& opt = {}) {
  if (eq != HypEquation::difeh && eq != HypEquation::difeh2)
    throw DomainError("hyp_residual: equation needs E_h parameters");
  const Complex wa = eq == HypEquation::difeh ? par.w.w1 : par.w.w2;
  const Complex wb = eq == HypEquation::difeh ? par.w.w2 : par.w.w1;
  auto sw = par.u;
  std::swap(sw[4], sw[5]);
  const Complex b1 = detail::potential_b(par.u, wa, wb, par.w.Q());
  const Complex b2 = detail::potential_b(sw, wa, wb, par.w.Q());
  HypParams6 up = par, down = par;
  up.u[4] += wb;
  up.u[5] -= wb;
  down.u[4] -= wb;
  down.u[5] += wb;
  const Complex e0 = eh(par, opt).value;
  const Complex e1 = eh(up, opt).value;
  const Complex e2 = eh(down, opt).value;
  return detail::normalized_three_terms(b1 * (e1 - e0), b2 * (e2 - e0), e0);
}

// secdif / secdif2: D(mu, nu)(U(mu2 + wb, mu3 - wb) - U) + (mu2 <-> mu3) + U = 0,
// U = J_h / gamma(mu2 - mu4, mu3 - mu4).
inline Complex hyp_residual(HypEquation eq, const MuNuParams& par, const HypOptions& opt = {}) {
  if (eq != HypEquation::secdif && eq != HypEquation::secdif2)
    throw DomainError("hyp_residual: equation needs J_h parameters");
  const Complex wa = eq == HypEquation::secdif ? par.w.w1 : par.w.w2;
  const Complex wb = eq == HypEquation::secdif ? par.w.w2 : par.w.w1;
  auto sw = par.mu;
  std::swap(sw[1], sw[2]);
  const Complex d1 = detail::potential_d(par.mu, par.nu, wa, wb);
  const Complex d2 = detail::potential_d(sw, par.nu, wa, wb);
  MuNuParams up = par, down = par;
  up.mu[1] += wb;
  up.mu[2] -= wb;
  down.mu[1] -= wb;
  down.mu[2] += wb;
  const Complex u0 = detail::u_function(par, opt);
  const Complex u1 = detail::u_function(up, opt);
  const Complex u2 = detail::u_function(down, opt);
  return detail::normalized_three_terms(d1 * (u1 - u0), d2 * (u2 - u0), u0);
}

// ---------------------------------------------------------------------------
// Symmetry transformations

enum class HypIdentity { jheh, ide1b };

struct IdentityResult {
  Complex lhs{};
  Complex rhs{};
  double deviation = 0.0;
};

inline IdentityResult check_identity_full(HypIdentity id, const MuNuParams& par, const HypOptions& opt = {}) {
  const auto& mu = par.mu;
  const auto& nu = par.nu;
  const auto& w = par.w;
  const Complex Q = w.Q();
  IdentityResult r;
  if (id == HypIdentity::jheh) {
    const Complex eta = 0.5 * (Q - nu[3] - mu[0] - mu[1] - mu[2]);
    Complex l{};
    for (int a = 0; a < 3; ++a) l += log_hgamma(mu[a] + nu[3], w) + log_hgamma(nu[a] + mu[3], w);
    HypParams6 e{{mu[0] + eta, mu[1] + eta, mu[2] + eta, nu[0] - eta, nu[1] - eta, nu[2] - eta}, w};
    r.lhs = jh(par, opt).value;
    r.rhs = std::exp(l) * eh(e, opt).value;
  } else {
    const Complex eta = 0.5 * (Q - mu[0] - mu[1] - nu[0] - nu[1]);
    Complex l{};
    for (int j : {0, 1})
      for (int k : {0, 1}) l += log_hgamma(mu[j] + nu[k], w);
    for (int j : {2, 3})
      for (int k : {2, 3}) l += log_hgamma(mu[j] + nu[k], w);
    const MuNuParams shifted({mu[0] + eta, mu[1] + eta, mu[2] - eta, mu[3] - eta},
                             {nu[0] + eta, nu[1] + eta, nu[2] - eta, nu[3] - eta}, w);
    r.lhs = jh(par, opt).value;
    // At eta = 0 both integrals are literally the same.
    r.rhs = std::exp(l) * (eta == Complex{} ? r.lhs : jh(shifted, opt).value);
  }
  r.deviation = rel_diff(r.lhs, r.rhs);
  return r;
}

inline double check_identity(HypIdentity id, const MuNuParams& par, const HypOptions& opt = {}) {
  return check_identity_full(id, par, opt).deviation;
}

// ---------------------------------------------------------------------------
// Ponsot-Teschner 6j-symbol

// Parameters in the primed variables: alpha_s = alpha_s' + Q/2,
// alpha_t = -alpha_t' + Q/2, alpha_{1,2,3} = -alpha' + Q/2, alpha_4 = alpha_4' + Q/2.
struct PTParams {
  std::array<Complex, 4> a{};  // alpha_1' .. alpha_4'
  Complex as{};                // alpha_s'
  Complex at{};                // alpha_t'
  Complex b{1.0, 0.0};

  QuasiPeriods periods() const {
    if (b.imag() == 0.0 && b.real() <= 0.0) throw DomainError("pt_6j: b on the nonpositive real axis");
    return QuasiPeriods::from_b(b);
  }

  // Unprimed alpha_1..4, alpha_s, alpha_t.
  std::array<Complex, 6> unprimed() const {
    const Complex h = 0.5 * periods().Q();
    return {-a[0] + h, -a[1] + h, -a[2] + h, a[3] + h, as + h, -at + h};
  }

  MuNuParams mu_nu() const {
    const QuasiPeriods w = periods();
    const Complex h = 0.5 * w.Q();
    const std::array<Complex, 4> nu = {h - as - a[0] + a[1], h - as + a[0] + a[1], h - as - a[2] - a[3],
                                       h - as + a[2] - a[3]};
    const std::array<Complex, 4> mu = {as - at + a[3] - a[1], as + at + a[3] - a[1], 0.0, 2.0 * as};
    return MuNuParams(mu, nu, w);
  }
};

struct PTResult {
  Evaluation value;     // the full 6j-symbol
  Evaluation jb;        // J_b(mu, nu) = int prod S_b(mu - z) S_b(nu + z) dz
  Complex prefactor{};  // S_b ratio times |S_b(2 alpha_t)|^2
};

inline PTResult pt_6j_full(const PTParams& par, const HypOptions& opt = {}) {
  const QuasiPeriods w = par.periods();
  const auto [a1, a2, a3, a4, as, at] = par.unprimed();
  const Complex Q = w.Q();
  Complex l = log_hgamma(as + a2 - a1, w) + log_hgamma(a1 + at - a4, w) - log_hgamma(at + a2 - a3, w) -
              log_hgamma(a3 + as - a4, w);
  // |S_b(2 alpha_t)|^2 continued analytically off the unitary line.
  l += log_hgamma(2.0 * at, w) + log_hgamma(2.0 * Q - 2.0 * at, w);
  PTResult r;
  r.prefactor = std::exp(l);
  // J_b has measure dz; J_h has dz / (i sqrt(w1 w2)) with sqrt(w1 w2) = 1.
  const Evaluation j = jh(par.mu_nu(), opt);
  r.jb.value = kI * j.value;
  r.jb.abs_err = j.abs_err;
  r.jb.nodes_used = j.nodes_used;
  r.value = r.jb;
  r.value.value *= r.prefactor;
  r.value.abs_err *= std::abs(r.prefactor);
  return r;
}

inline Evaluation pt_6j(const PTParams& par, const HypOptions& opt = {}) { return pt_6j_full(par, opt).value; }

}  // namespace ehf
