#pragma once

// Contour quadrature and bilateral summation.
//
// Line integrals run an adaptive Gauss-Kronrod (10/21) scheme with a global
// panel pool: the panel with the largest embedded error is bisected until the
// total error meets the tolerance. Unbounded lines are either truncated where
// an exponentially decaying integrand has become negligible, or closed with the
// reciprocal substitution t = R/s, which keeps algebraically decaying tails
// smooth near s = 0. Closed circles use the trapezoidal rule, which converges
// geometrically for the periodic analytic integrands met here.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ehf/types.hpp"

namespace ehf {

namespace detail {

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex x) {
    add_part(re_, cre_, x.real());
    add_part(im_, cim_, x.imag());
  }
  Complex value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

struct PanelResult {
  Complex kronrod{};
  double err = 0.0;
};

template <class F>
PanelResult gk21(const F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Complex, 10> f1{}, f2{};
  const Complex fc = f(centre);
  Complex resk = fc * kWgk[10];
  Complex resg{};
  double resabs = std::abs(fc) * kWgk[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  // QUADPACK error scaling against the mean deviation resasc.
  const Complex mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (err < floor) err = floor;
  return {resk, err};
}

}  // namespace detail

// Interval [a, b] of a real parameter with an attached substitution.
struct QuadSegment {
  enum class Map { identity, tail_plus, tail_minus };
  Map map = Map::identity;
  double a = 0.0;
  double b = 1.0;
  double scale = 1.0;  // R of the reciprocal substitution t = +-R/s
};

struct QuadOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  long max_evals = 400000;
  bool throw_on_budget = true;
};

// Adaptive quadrature of g(t) over a union of segments, all sharing one panel
// pool. `initial_panels` splits every segment into equal parts before adapting.
template <class G>
Evaluation integrate_segments(const G& g, const std::vector<QuadSegment>& segments,
                              const QuadOptions& opt, int initial_panels = 1) {
  struct Panel {
    std::size_t seg;
    double a, b;
    Complex value;
    double err;
  };
  long evals = 0;
  auto eval_panel = [&](std::size_t seg_index, double a, double b) {
    const QuadSegment& seg = segments[seg_index];
    detail::PanelResult r;
    switch (seg.map) {
      case QuadSegment::Map::identity:
        r = detail::gk21([&](double t) { return g(t); }, a, b);
        break;
      case QuadSegment::Map::tail_plus:
        r = detail::gk21([&](double s) { return g(seg.scale / s) * (seg.scale / (s * s)); }, a, b);
        break;
      case QuadSegment::Map::tail_minus:
        r = detail::gk21([&](double s) { return g(-seg.scale / s) * (seg.scale / (s * s)); }, a, b);
        break;
    }
    evals += 21;
    return Panel{seg_index, a, b, r.kronrod, r.err};
  };

  std::vector<Panel> panels;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const int parts = std::max(1, initial_panels);
    const double w = (segments[i].b - segments[i].a) / parts;
    for (int k = 0; k < parts; ++k) {
      const double a = segments[i].a + k * w;
      const double b = (k + 1 == parts) ? segments[i].b : a + w;
      panels.push_back(eval_panel(i, a, b));
    }
  }

  auto totals = [&]() {
    detail::CompensatedSum s;
    double e = 0.0;
    for (const auto& p : panels) {
      s.add(p.value);
      e += p.err;
    }
    return std::pair{s.value(), e};
  };

  auto [value, err] = totals();
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (err <= target) break;
    if (evals >= opt.max_evals) {
      if (opt.throw_on_budget)
        throw NonConvergence("quadrature budget exhausted: error " + detail::sci(err) + " above target " +
                             detail::sci(target));
      break;
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.err < y.err; });
    const Panel p = *worst;
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > std::min(p.a, p.b) && mid < std::max(p.a, p.b))) {
      if (opt.throw_on_budget) throw NonConvergence("quadrature panel underflow");
      break;
    }
    *worst = eval_panel(p.seg, p.a, mid);
    panels.push_back(eval_panel(p.seg, mid, p.b));
    std::tie(value, err) = totals();
  }
  // Fixed canonical order for the final reduction.
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
    return x.seg != y.seg ? x.seg < y.seg : x.a < y.a;
  });
  std::tie(value, err) = totals();
  Evaluation out;
  out.value = value;
  out.abs_err = err;
  out.nodes_used = evals;
  return out;
}

// Adaptive integral of g over the finite interval [a, b].
template <class G>
Evaluation integrate_interval(const G& g, double a, double b, const QuadOptions& opt,
                              int initial_panels = 1) {
  return integrate_segments(g, {QuadSegment{QuadSegment::Map::identity, a, b, 1.0}}, opt,
                            initial_panels);
}

enum class ContourKind { line, circle };
enum class TailDecay { exponential, algebraic };

// Straight line z(t) = base + direction * t, t in R, or the circle
// |z - base| = radius traversed counterclockwise.
struct ContourSpec {
  ContourKind kind = ContourKind::line;
  Complex base{};
  Complex direction{0.0, 1.0};
  double truncation = 8.0;  // inner region |t| <= R
  double offset = 0.0;      // strip offset recorded for diagnostics
  double radius = 1.0;      // circle only
  TailDecay tail = TailDecay::exponential;
  long node_budget = 400000;
  double feature_scale = 1.0;  // initial panel width on the inner region
  double pinch_threshold = 1.0 / kProximityEps;
  double abs_tol = 0.0;
  bool even = false;  // integrand even in t: integrate t >= 0 and double

  void validate() const {
    if (!(truncation > 0.0)) throw DomainError("contour truncation radius must be positive");
    if (node_budget < 64) throw DomainError("contour node budget must be at least 64");
    if (kind == ContourKind::circle && !(radius > 0.0)) throw DomainError("circle radius must be positive");
  }
};

namespace detail {

template <class F>
Complex checked_value(const F& f, Complex z, double pinch) {
  const Complex v = f(z);
  if (!is_finite(v) || std::abs(v) > pinch)
    throw PolePinch("integrand magnitude exceeds the pinch threshold near z = (" +
                    std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  return v;
}

}  // namespace detail

// Integral of f(z) dz along the contour described by `c`.
template <class F>
Evaluation integrate_contour(const F& f, const ContourSpec& c, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  c.validate();

  if (c.kind == ContourKind::circle) {
    // Trapezoidal rule with doubling; dz = i r e^{i phi} dphi.
    auto g = [&](double phi) {
      const Complex e = std::polar(1.0, phi);
      const Complex z = c.base + c.radius * e;
      return detail::checked_value(f, z, c.pinch_threshold) * (kI * c.radius * e);
    };
    long m = 32;
    detail::CompensatedSum s0;
    for (long k = 0; k < m; ++k) s0.add(g(2.0 * kPi * k / m));
    Complex prev = s0.value() * (2.0 * kPi / m);
    long nodes = m;
    while (true) {
      detail::CompensatedSum s;
      for (long k = 0; k < m; ++k) s.add(g(2.0 * kPi * (k + 0.5) / m));
      nodes += m;
      const Complex cur = 0.5 * prev + s.value() * (kPi / m);
      m *= 2;
      const double diff = std::abs(cur - prev);
      if (diff <= std::max(c.abs_tol, tol * std::abs(cur)) && m >= 128) {
        return Evaluation{cur, diff, nodes, 0};
      }
      if (nodes >= c.node_budget)
        throw NonConvergence("circle quadrature did not converge within the node budget");
      prev = cur;
    }
  }

  const Complex dir = c.direction / std::abs(c.direction);
  auto g = [&](double t) { return detail::checked_value(f, c.base + dir * t, c.pinch_threshold) * dir; };

  QuadOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = c.abs_tol;
  opt.max_evals = c.node_budget;

  const double r = c.truncation;
  std::vector<QuadSegment> segs;
  if (c.tail == TailDecay::algebraic) {
    if (c.even) throw DomainError("even contours are supported for exponential tails only");
    segs.push_back({QuadSegment::Map::tail_minus, 0.0, 1.0, r});
    segs.push_back({QuadSegment::Map::identity, -r, r, 1.0});
    segs.push_back({QuadSegment::Map::tail_plus, 0.0, 1.0, r});
    const int parts = static_cast<int>(std::clamp(2.0 * r / c.feature_scale, 1.0, 64.0));
    // Inner panels get the requested resolution; tails start as single panels.
    Evaluation inner = integrate_segments(g, {segs[1]}, opt, parts);
    Evaluation tails = integrate_segments(g, {segs[0], segs[2]}, [&] {
      QuadOptions o = opt;
      o.abs_tol = std::max(opt.abs_tol, 0.25 * tol * std::abs(inner.value));
      return o;
    }(), 2);
    Evaluation out;
    out.value = inner.value + tails.value;
    out.abs_err = inner.abs_err + tails.abs_err;
    out.nodes_used = inner.nodes_used + tails.nodes_used;
    return out;
  }

  // Exponential decay: extend each side until the integrand is negligible
  // relative to the largest sampled value.
  double peak = 0.0;
  for (int k = c.even ? 0 : -32; k <= 32; ++k) peak = std::max(peak, std::abs(g(r * k / 32.0)));
  long probes = 65;
  auto extent = [&](double sign) {
    double t = r;
    int quiet = 0;
    while (t < 1e6) {
      const double mag = std::abs(g(sign * t)) * std::max(1.0, t);
      ++probes;
      if (mag <= 1e-3 * tol * std::max(peak, c.abs_tol / std::max(1.0, t)) || mag == 0.0) {
        if (++quiet == 2) return t;
      } else {
        quiet = 0;
        peak = std::max(peak, mag / std::max(1.0, t));
      }
      t *= 1.25;
    }
    throw NonConvergence("integrand does not decay along the contour");
  };
  const double lo = c.even ? 0.0 : extent(-1.0);
  const double hi = extent(1.0);
  const int parts = static_cast<int>(std::clamp((hi + lo) / (4.0 * c.feature_scale), 1.0, 256.0));
  Evaluation out = integrate_segments(g, {QuadSegment{QuadSegment::Map::identity, -lo, hi, 1.0}}, opt, parts);
  out.nodes_used += probes;
  if (c.even) {
    out.value *= 2.0;
    out.abs_err *= 2.0;
  }
  return out;
}

// Hurwitz zeta sum_{k>=0} (k + q)^{-s}, real s > 1, q > 0.
namespace detail {

template <class T>
T hurwitz_zeta_impl(T s, double q) {
  constexpr int kDirect = 12;
  T sum{};
  for (int k = 0; k < kDirect; ++k) sum += std::pow(k + q, -s);
  const double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  // Euler-Maclaurin corrections B_{2j}/(2j)! * s(s+1)...(s+2j-2) a^{-s-2j+1}.
  static constexpr std::array<double, 7> kB = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
                                               -691.0 / 2730, 7.0 / 6};
  T rising = s;  // s (s+1) ... (s + 2j - 2)
  double fact = 2.0;  // (2j)!
  T apow = std::pow(a, -s - 1.0);
  for (int j = 1; j <= 7; ++j) {
    sum += kB[j - 1] / fact * rising * apow;
    rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
    fact *= (2 * j + 1) * (2 * j + 2);
    apow /= a * a;
  }
  return sum;
}

}  // namespace detail

inline double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw DomainError("hurwitz_zeta requires s > 1 and q > 0");
  return detail::hurwitz_zeta_impl(s, q);
}

// Complex s with Re s > 1; accurate once q is well above |s|.
inline Complex hurwitz_zeta(Complex s, double q) {
  if (!(s.real() > 1.0) || !(q > 0.0)) throw DomainError("hurwitz_zeta requires Re s > 1 and q > 0");
  return detail::hurwitz_zeta_impl(s, q);
}

// Bilateral summation over N in Z + eps, eps in {0, 1/2}.
struct SumOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  long max_terms = 100000;
  // Terms decay like N^{-s}: enables extrapolation of the two tails by a
  // fitted inverse-power expansion with leading exponent s (Re s > 1).
  std::optional<Complex> power_exponent;
  long initial_terms = 24;
};

struct SumResult {
  Evaluation eval;
  double decay_exponent = 0.0;  // fitted (or supplied) tail exponent
};

namespace detail {

// Tail sum over N = first, first + 1, ... of a fitted expansion
// sum_j c_j N^{-(a+j)} matched at the given points.
inline std::optional<Complex> fitted_tail(const std::vector<double>& xs, const std::vector<Complex>& ys,
                                          Complex a, int order, double first) {
  const int n = order;
  if (static_cast<int>(xs.size()) < n) return std::nullopt;
  // Use n points spread over the upper half of the sampled range.
  std::vector<double> px;
  std::vector<Complex> py;
  const std::size_t last = xs.size() - 1;
  const double xmax = xs[last];
  for (int i = 0; i < n; ++i) {
    const double target = xmax * (1.0 - 0.5 * i / std::max(1, n - 1));
    std::size_t best = last;
    for (std::size_t k = 0; k <= last; ++k)
      if (std::abs(xs[k] - target) < std::abs(xs[best] - target)) best = k;
    if (std::find(px.begin(), px.end(), xs[best]) != px.end()) return std::nullopt;
    px.push_back(xs[best]);
    py.push_back(ys[best]);
  }
  // Solve the n x n system in the scaled variable x / xmax.
  std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n + 1));
  for (int i = 0; i < n; ++i) {
    const double u = px[i] / xmax;
    for (int j = 0; j < n; ++j) m[i][j] = std::pow(u, -(a + double(j)));
    m[i][n] = py[i];
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    if (std::abs(m[col][col]) == 0.0) return std::nullopt;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex fct = m[r][col] / m[col][col];
      for (int k = col; k <= n; ++k) m[r][k] -= fct * m[col][k];
    }
  }
  Complex tail{};
  for (int j = 0; j < n; ++j) {
    const Complex cj = m[j][n] / m[j][j];  // coefficient of (x/xmax)^{-(a+j)}
    tail += cj * std::pow(xmax, a + double(j)) * hurwitz_zeta(a + double(j), first);
  }
  return tail;
}

}  // namespace detail

template <class Term>
SumResult bilateral_sum(const Term& term, HalfInt eps, const SumOptions& opt) {
  if (!(eps == HalfInt(0) || eps == HalfInt::half()))
    throw DomainError("bilateral_sum: eps must be 0 or 1/2");
  if (!(opt.rel_tol > 0.0)) throw DomainError("tolerance must be positive");
  const bool half = !eps.is_integer();

  // Index k >= 0 on each side: N = +-(k + eps), with N = 0 counted once.
  std::vector<Complex> plus, minus;
  std::vector<double> xs;  // |N|
  Complex centre{};
  if (!half) centre = term(HalfInt(0));
  auto side_index = [&](std::size_t k) { return half ? HalfInt::from_twice(2 * static_cast<std::int64_t>(k) + 1)
                                                      : HalfInt(static_cast<int>(k + 1)); };
  auto extend_to = [&](std::size_t count) {
    while (plus.size() < count) {
      const HalfInt n = side_index(plus.size());
      xs.push_back(n.value());
      plus.push_back(term(n));
      minus.push_back(term(-n));
    }
  };

  long count = std::max<long>(opt.initial_terms, 16);
  SumResult res;
  while (true) {
    extend_to(static_cast<std::size_t>(count));
    detail::CompensatedSum s;
    s.add(centre);
    for (std::size_t k = 0; k < plus.size(); ++k) {
      s.add(plus[k]);
      s.add(minus[k]);
    }
    Complex total = s.value();
    const long terms_used = static_cast<long>(2 * plus.size() + (half ? 0 : 1));
    const double first_next = xs.back() + 1.0;

    // Decay exponent of |term| over the last doubling of |N|.
    auto fit_exponent = [&](const std::vector<Complex>& side) {
      const std::size_t last = side.size() - 1;
      const std::size_t mid = last / 2;
      const double m1 = std::abs(side[mid]) + std::abs(side[mid > 0 ? mid - 1 : mid]);
      const double m2 = std::abs(side[last]) + std::abs(side[last - 1]);
      if (m2 == 0.0) return std::numeric_limits<double>::infinity();
      if (m1 == 0.0) return 0.0;
      return std::log(m1 / m2) / std::log(xs[last] / xs[mid]);
    };
    const double a_fit = std::min(fit_exponent(plus), fit_exponent(minus));

    double err = 0.0;
    if (opt.power_exponent) {
      const Complex a = *opt.power_exponent;
      res.decay_exponent = a.real();
      if (a.real() <= 1.2) throw NonConvergence("bilateral sum: tail exponent <= 1.2");
      auto t4p = detail::fitted_tail(xs, plus, a, 4, first_next);
      auto t3p = detail::fitted_tail(xs, plus, a, 3, first_next);
      auto t4m = detail::fitted_tail(xs, minus, a, 4, first_next);
      auto t3m = detail::fitted_tail(xs, minus, a, 3, first_next);
      if (!(t4p && t3p && t4m && t3m)) throw NonConvergence("bilateral sum: tail fit failed");
      total += *t4p + *t4m;
      err = std::abs(*t4p - *t3p) + std::abs(*t4m - *t3m);
    } else {
      res.decay_exponent = a_fit;
      // Classic stopping rule: 8 consecutive small terms plus a power-law tail bound.
      bool small = plus.size() >= 8;
      for (std::size_t k = plus.size() >= 8 ? plus.size() - 8 : 0; k < plus.size(); ++k)
        small = small && std::abs(plus[k]) <= opt.rel_tol * std::abs(total) + opt.abs_tol &&
                std::abs(minus[k]) <= opt.rel_tol * std::abs(total) + opt.abs_tol;
      if (std::isfinite(a_fit)) {
        if (a_fit <= 1.2) {
          if (count >= opt.max_terms) throw NonConvergence("bilateral sum: decay exponent <= 1.2");
          small = false;
          err = std::numeric_limits<double>::infinity();
        } else {
          const double c = (std::abs(plus.back()) + std::abs(minus.back())) * std::pow(xs.back(), a_fit);
          err = c * std::pow(xs.back(), 1.0 - a_fit) / (a_fit - 1.0);
        }
      }
      if (!small) err = std::max(err, std::abs(plus.back()) + std::abs(minus.back()));
    }
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    res.eval.value = total;
    res.eval.abs_err = err;
    res.eval.terms_used = terms_used;
    if (err <= target) return res;
    if (count >= opt.max_terms)
      throw NonConvergence("bilateral sum did not converge within " + std::to_string(opt.max_terms) +
                           " terms (error " + detail::sci(err) + ")");
    count = std::min<long>(opt.max_terms, count + std::max<long>(8, count / 2));
  }
}

}  // namespace ehf
