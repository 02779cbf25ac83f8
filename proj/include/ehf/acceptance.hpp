#pragma once

// The seven acceptance criteria as executable checks. Each criterion runs a
// list of sub-checks; a criterion passes when every sub-check meets its
// threshold and the wall time stays inside the budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ehf/complex_rational.hpp"
#include "ehf/elliptic.hpp"
#include "ehf/gamma_core.hpp"
#include "ehf/hyperbolic.hpp"
#include "ehf/limits.hpp"
#include "ehf/random_params.hpp"
#include "ehf/rational.hpp"

namespace ehf {

struct SubCheck {
  std::string name;
  double value = 0.0;      // worst observed quantity
  double threshold = 0.0;  // pass if value < threshold (or the custom verdict)
  bool pass = false;
  std::string note;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<SubCheck> checks;
  double seconds = 0.0;
  double budget = 0.0;  // seconds; 0 means unbounded
  bool pass = false;

  std::string line() const {
    std::ostringstream os;
    os << "criterion " << number << " " << (pass ? "PASS" : "FAIL") << "  " << title << "  [" << std::fixed;
    os.precision(1);
    os << seconds << " s";
    if (budget > 0) os << " / " << budget << " s";
    os << "]";
    os.unsetf(std::ios::fixed);
    os.precision(2);
    for (const auto& c : checks) {
      os << "\n    " << (c.pass ? "ok  " : "FAIL") << " " << c.name << ": " << std::scientific << c.value;
      if (c.threshold > 0) os << " (< " << c.threshold << ")";
      if (!c.note.empty()) os << "  " << c.note;
    }
    return os.str();
  }
};

namespace detail {

class CriterionRun {
 public:
  CriterionRun(int number, std::string title, double budget) {
    r_.number = number;
    r_.title = std::move(title);
    r_.budget = budget;
    start_ = std::chrono::steady_clock::now();
  }

  // Runs `body`, which returns the worst value; exceptions become failures.
  void check(const std::string& name, double threshold, const std::function<double()>& body,
             const std::string& note = {}) {
    SubCheck c;
    c.name = name;
    c.threshold = threshold;
    c.note = note;
    try {
      c.value = body();
      c.pass = std::isfinite(c.value) && c.value < threshold;
    } catch (const std::exception& e) {
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.note = std::string("error: ") + e.what();
      c.pass = false;
    }
    r_.checks.push_back(c);
  }

  // A check with a boolean verdict and a free-form note.
  void verdict(const std::string& name, double value, bool pass, const std::string& note) {
    SubCheck c;
    c.name = name;
    c.value = value;
    c.pass = pass;
    c.note = note;
    r_.checks.push_back(c);
  }

  void fail(const std::string& name, const std::exception& e) {
    SubCheck c;
    c.name = name;
    c.value = std::numeric_limits<double>::quiet_NaN();
    c.note = std::string("error: ") + e.what();
    r_.checks.push_back(c);
  }

  CriterionResult finish() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    r_.pass = !r_.checks.empty() && (r_.budget <= 0 || r_.seconds < r_.budget);
    for (const auto& c : r_.checks) r_.pass = r_.pass && c.pass;
    return r_;
  }

 private:
  CriterionResult r_;
  std::chrono::steady_clock::time_point start_;
};

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Gamma(alpha|alpha') = Gamma(alpha) / Gamma(1 - alpha') straight from lngamma.
inline Complex cgamma_pair(Complex alpha, Complex alpha_p) {
  return std::exp(lngamma(alpha) - lngamma(1.0 - alpha_p));
}

}  // namespace detail

// 1. Gamma-layer identities, 100 random cases each.
inline CriterionResult acceptance_gamma_layer(std::uint64_t seed) {
  detail::CriterionRun run(1, "gamma-layer identities", 30.0);
  ParamGen g(seed);
  const int n = 100;

  auto random_x = [&] { return Complex(g.uniform(-3.0, 3.0), g.uniform(-1.0, 1.0)); };
  run.check("Gamma(x,-n) = (-1)^n Gamma(x,n)", 1e-12, [&] {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const Complex x = random_x();
      const int k = g.integer(-6, 6);
      // Gamma(alpha'|alpha) with alpha' = (-n + ix)/2, alpha = (n + ix)/2.
      const Complex direct = detail::cgamma_pair(0.5 * (-double(k) + kI * x), 0.5 * (double(k) + kI * x));
      worst = std::max(worst, rel_diff(direct, static_cast<double>(parity_sign(k)) * cgamma(x, k)));
    }
    return worst;
  });
  run.check("Gamma(a|a') Gamma(1-a|1-a') = (-1)^(a-a')", 1e-12, [&] {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const Complex x = random_x();
      const int k = g.integer(-6, 6);
      const Complex a = 0.5 * (double(k) + kI * x), ap = 0.5 * (-double(k) + kI * x);
      const Complex prod = detail::cgamma_pair(a, ap) * detail::cgamma_pair(1.0 - a, 1.0 - ap);
      worst = std::max(worst, rel_diff(prod, static_cast<double>(parity_sign(k))));
    }
    return worst;
  });
  run.check("Gamma(x,n) Gamma(-x-2i,n) = 1", 1e-12, [&] {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const Complex x = random_x();
      const int k = g.integer(-6, 6);
      worst = std::max(worst, std::abs(cgamma(x, k) * cgamma(-x - 2.0 * kI, k) - 1.0));
    }
    return worst;
  });
  run.check("a(alpha) = 1/Gamma(sigma,N) = Gamma(-sigma-2i,N)", 1e-12, [&] {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const Complex s = random_x();
      const int N = g.integer(-6, 6);
      const Complex alpha = 0.5 * (double(N) + kI * s), alpha_p = 0.5 * (-double(N) + kI * s);
      const Complex a = std::exp(lngamma(1.0 - alpha_p) - lngamma(alpha));
      worst = std::max({worst, rel_diff(a, 1.0 / cgamma(s, N)), rel_diff(a, cgamma(-s - 2.0 * kI, N))});
    }
    return worst;
  });

  auto random_periods = [&](int i) {
    // Alternate real ratios (integral route) and complex ratios (product route).
    return i % 2 == 0 ? QuasiPeriods(1.0, g.uniform(0.6, 1.8)) : g.periods();
  };
  run.check("hgamma shift equations", 1e-10, [&] {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const QuasiPeriods w = random_periods(i);
      const Complex y(g.uniform(-1.5, 2.5), g.uniform(-1.5, 1.5));
      const Complex h = hgamma(y, w);
      worst = std::max(worst, rel_diff(hgamma(y + w.w1, w), h * 2.0 * std::sin(kPi * y / w.w2)));
      worst = std::max(worst, rel_diff(hgamma(y + w.w2, w), h * 2.0 * std::sin(kPi * y / w.w1)));
    }
    return worst;
  });
  run.check("hgamma reflection gamma(x) gamma(Q-x) = 1", 1e-10, [&] {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const QuasiPeriods w = random_periods(i);
      const Complex y(g.uniform(-1.5, 2.5), g.uniform(-1.5, 1.5));
      worst = std::max(worst, std::abs(hgamma(y, w) * hgamma(w.Q() - y, w) - 1.0));
    }
    return worst;
  });
  run.check("elliptic gamma shifts, reflection, p<->q symmetry", 1e-10, [&] {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      const Complex p = g.uniform(0.05, 0.4) * g.phase(), q = g.uniform(0.05, 0.4) * g.phase();
      const EllipticBases b(p, q), bs(q, p);
      const Complex z = g.uniform(0.5, 1.5) * g.phase();
      const Complex e = egamma(z, b);
      worst = std::max(worst, rel_diff(egamma(q * z, b), theta_q(z, p) * e));
      worst = std::max(worst, rel_diff(egamma(p * z, b), theta_q(z, q) * e));
      worst = std::max(worst, std::abs(e * egamma(p * q / z, b) - 1.0));
      worst = std::max(worst, rel_diff(egamma(z, bs), e));
    }
    return worst;
  });
  return run.finish();
}

// 2. Independent evaluations agree.
inline CriterionResult acceptance_oracles(std::uint64_t seed) {
  detail::CriterionRun run(2, "oracle equivalence", 180.0);
  ParamGen g(seed);
  run.check("hgamma integral vs shift-reduced / product (50 points)", 1e-10, [&] {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      if (i % 2 == 0) {
        // Real ratio: y inside the strip versus y + w1 reduced back by the shift equation.
        const QuasiPeriods w(1.0, g.uniform(0.6, 1.8));
        const Complex y(g.uniform(0.1, w.Q().real() - 0.1), g.uniform(-1.0, 1.0));
        const Complex direct = hgamma(y, w, HgammaRoute::integral);
        const Complex shifted = hgamma(y + w.w1, w, HgammaRoute::integral) / (2.0 * std::sin(kPi * y / w.w2));
        worst = std::max(worst, rel_diff(direct, shifted));
      } else {
        const QuasiPeriods w = g.periods();
        const Complex y(g.uniform(-1.0, 2.0), g.uniform(-1.0, 1.0));
        worst = std::max(worst, rel_diff(hgamma(y, w, HgammaRoute::integral), hgamma(y, w, HgammaRoute::product)));
      }
    }
    return worst;
  });
  run.check("J_h = nine-gamma product on the locus (10 points)", 1e-8, [&] {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const MuNuParams p = g.jh_locus(i % 2 ? g.periods() : QuasiPeriods(1.0, g.uniform(0.8, 1.5)));
      worst = std::max(worst, rel_diff(jh(p).value, jh_closed_form(p)));
    }
    return worst;
  });
  run.check("J_cr = (-1)^(sum n) F on the locus (10 points)", 1e-6, [&] {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const CRParams p = g.cr_locus();
      HalfInt sn{};
      for (const auto& x : p.n) sn += x;
      const Complex want = static_cast<double>(parity_sign(sn.as_integer())) * f_product(p);
      worst = std::max(worst, rel_diff(jcr(p).value, want));
    }
    return worst;
  });
  return run.finish();
}

// 3. Difference-equation residuals.
inline CriterionResult acceptance_residuals(std::uint64_t seed) {
  detail::CriterionRun run(3, "difference-equation residuals", 480.0);
  ParamGen g(seed);
  run.check("elliptic equation (20 cases)", 1e-8, [&] {
    double worst = 0;
    for (int i = 0; i < 20; ++i) worst = std::max(worst, std::abs(ehe_residual(g.elliptic())));
    return worst;
  });
  auto periods = [&](int i) { return i % 3 == 0 ? QuasiPeriods(1.0, g.uniform(0.8, 1.5)) : g.periods(); };
  for (auto eq : {HypEquation::br, HypEquation::br2}) {
    run.check(eq == HypEquation::br ? "br (10 cases)" : "br2 (10 cases)", 1e-7, [&] {
      double worst = 0;
      for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(hyp_residual(eq, g.ih_params(periods(i)))));
      return worst;
    });
  }
  for (auto eq : {HypEquation::difeh, HypEquation::difeh2}) {
    run.check(eq == HypEquation::difeh ? "difeh (10 cases)" : "difeh2 (10 cases)", 1e-7, [&] {
      double worst = 0;
      for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(hyp_residual(eq, g.eh_params(periods(i)))));
      return worst;
    });
  }
  for (auto eq : {HypEquation::secdif, HypEquation::secdif2}) {
    run.check(eq == HypEquation::secdif ? "secdif (10 cases)" : "secdif2 (10 cases)", 1e-7, [&] {
      double worst = 0;
      for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(hyp_residual(eq, g.jh_params(periods(i)))));
      return worst;
    });
  }
  run.check("J_r equation (10 cases)", 1e-7, [&] {
    double worst = 0;
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst, std::abs(rational_residual(RationalEquation::jr_eq, g.rational())));
    return worst;
  });
  run.check("J~_r equation (10 cases)", 1e-7, [&] {
    double worst = 0;
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst, std::abs(rational_residual(RationalEquation::jr_tilde_eq, g.rational())));
    return worst;
  });
  run.check("E_r equation (10 cases)", 1e-7, [&] {
    double worst = 0;
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst, std::abs(rational_residual(RationalEquation::er_eq, g.rational6())));
    return worst;
  });
  for (auto eq : {CREquation::difjmn, CREquation::difjmn2}) {
    run.check(eq == CREquation::difjmn ? "difjmn (5 cases)" : "difjmn2 (5 cases)", 1e-6, [&] {
      double worst = 0;
      for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(cr_residual(eq, g.cr_difference())));
      return worst;
    });
  }
  for (auto eq : {CREquation::ecr_eq1, CREquation::ecr_eq2}) {
    run.check(eq == CREquation::ecr_eq1 ? "E_cr equation 1 (6 cases, both eps)" : "E_cr equation 2 (6 cases, both eps)", 1e-6,
              [&] {
                double worst = 0;
                for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(cr_residual(eq, g.ecr(i % 2 == 1))));
                return worst;
              });
  }
  run.check("F difference equation (20 locus points)", 1e-12, [&] {
    double worst = 0;
    for (int i = 0; i < 20; ++i) worst = std::max(worst, std::abs(cr_residual(CREquation::f_eq, g.cr_locus())));
    return worst;
  });
  return run.finish();
}

// 4. Symmetry transformations.
inline CriterionResult acceptance_symmetries(std::uint64_t seed) {
  detail::CriterionRun run(4, "symmetry transformations", 120.0);
  ParamGen g(seed);
  for (auto id : {HypIdentity::jheh, HypIdentity::ide1b}) {
    run.check(id == HypIdentity::jheh ? "jheh (5 cases)" : "ide1b (5 cases)", 1e-7, [&] {
      double worst = 0;
      for (int i = 0; i < 5; ++i) {
        const QuasiPeriods w = i % 2 ? g.periods() : QuasiPeriods(1.0, g.uniform(0.8, 1.5));
        worst = std::max(worst, check_identity(id, g.identity_params(w)));
      }
      return worst;
    });
  }
  CROptions opt;
  opt.tol = 1e-8;
  for (auto id : {CRIdentity::ide1i, CRIdentity::JE}) {
    const std::string name = id == CRIdentity::ide1i ? "ide1i" : "JE";
    double worst = 0;
    bool seen0 = false, seen_half = false;
    try {
      for (bool ide_half : {false, true})
        for (bool je_half : {false, true}) {
          const CRIdentityResult r = check_cr_identity_full(id, g.cr_identity(ide_half, je_half), opt);
          worst = std::max(worst, r.deviation);
          (r.lambda == HalfInt(0) ? seen0 : seen_half) = true;
        }
      run.verdict(name + " (4 cases)", worst, worst < 1e-6 && seen0 && seen_half,
                  std::string("(< 1e-06)") + (seen0 && seen_half ? "  lambda = 0 and 1/2 exercised"
                                                                 : "  a lambda branch was not exercised"));
    } catch (const std::exception& e) {
      run.fail(name, e);
    }
  }
  return run.finish();
}

// 5. Degeneration limits.
inline CriterionResult acceptance_limits(std::uint64_t seed) {
  detail::CriterionRun run(5, "limit cascades", 240.0);
  ParamGen g(seed);
  try {
    const LimitScan s = limit_scan(LimitId::elliptic_to_hyperbolic);
    run.verdict("elliptic -> hyperbolic, v = 0.2, 0.1, 0.05", s.rows.back().deviation, s.monotone(s.rows.size() - 1),
                "monotone decrease, order " + detail::fmt(s.order));
  } catch (const std::exception& e) {
    run.fail("elliptic -> hyperbolic", e);
  }
  try {
    const LimitScan s = limit_scan(LimitId::gamma_b_to_i);
    run.verdict("complex gamma at b -> i, fitted order", s.order, std::abs(s.order - 1.0) <= 0.3, "(1 +- 0.3)");
  } catch (const std::exception& e) {
    run.fail("complex gamma at b -> i", e);
  }
  try {
    const LimitScan s = limit_scan(LimitId::jh_b_to_0);
    double lo = 1e300, hi = 0;
    for (const auto& r : s.rows) {
      lo = std::min(lo, r.deviation / r.delta);
      hi = std::max(hi, r.deviation / r.delta);
    }
    run.verdict("J_h -> J_r, deviation / w1 spread", hi / lo, hi / lo <= 2.0 && s.monotone(s.rows.size() - 1),
                "(<= 2); order " + detail::fmt(s.order) + ", last deviation " + detail::fmt(s.rows.back().deviation) +
                    "; without the J_h measure factor: order " + detail::fmt(s.alt_order.value_or(0)) +
                    ", last " + detail::fmt(s.rows.back().alt_deviation.value_or(0)));
  } catch (const std::exception& e) {
    run.fail("J_h -> J_r", e);
  }
  std::vector<SixJComplexParams> sets = {LimitTarget::default_sixj(), g.sixj(1)};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string name = "PT 6j / SL(2,C) 6j ratio, label set " + std::to_string(i + 1);
    try {
      LimitTarget t;
      t.sixj = sets[i];
      const LimitScan s = limit_scan(LimitId::pt_to_complex6j, t);
      const Complex q = s.rows.back().ratio();
      const bool even = s.F && *s.F % 2 == 0;
      run.verdict(name, s.rows.back().deviation, even && s.monotone() && s.rows.back().deviation < 0.05,
                  "|ratio - 1| (< 0.05, decreasing); M1 = " + std::to_string(sets[i].M[0]) +
                      ", F = " + std::to_string(s.F.value_or(-1)) + " (even: " +
                      (even ? "yes" : "no") + "); ratio at delta " + detail::fmt(s.rows.back().delta) + " = " +
                      detail::fmt(q.real()) + (q.imag() < 0 ? " - " : " + ") + detail::fmt(std::abs(q.imag())) +
                      "i; |ratio - (-1)^(M1+1)| = " + detail::fmt(s.rows.back().alt_deviation.value_or(0)) +
                      ", order " + detail::fmt(s.alt_order.value_or(0)));
    } catch (const std::exception& e) {
      run.fail(name, e);
    }
  }
  return run.finish();
}

// 6. The algebraic identity behind the degenerate-locus equation.
inline CriterionResult acceptance_eqdif(std::uint64_t seed) {
  detail::CriterionRun run(6, "algebraic identity eqdif", 1.0);
  ParamGen g(seed);
  auto pt = [&] { return Complex(g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0)); };
  for (bool limit : {false, true}) {
    run.check(limit ? "beta4 -> infinity form (1000 points)" : "eqdif (1000 points)", 1e-10, [&] {
      double worst = 0;
      for (int i = 0; i < 1000; ++i) worst = std::max(worst, eqdif_lhs(pt(), pt(), pt(), pt(), pt(), pt(), limit).normalized());
      return worst;
    });
  }
  return run.finish();
}

// 7. Contour independence: two admissible offsets per case agree within the
// combined error estimates (plus a roundoff floor of 1e-13 |value|).
inline CriterionResult acceptance_contours(std::uint64_t seed) {
  detail::CriterionRun run(7, "contour robustness", 0.0);
  ParamGen g(seed);
  auto compare = [](const Evaluation& a, const Evaluation& b) {
    return std::abs(a.value - b.value) / (a.abs_err + b.abs_err + 1e-13 * std::abs(a.value));
  };
  auto lower = [](auto&& xs, auto proj) {
    double m = 1e300;
    for (const auto& x : xs) m = std::min(m, proj(x));
    return m;
  };
  auto re = [](Complex z) { return z.real(); };
  auto neg_re = [](Complex z) { return -z.real(); };
  auto im = [](Complex z) { return z.imag(); };
  auto neg_im = [](Complex z) { return -z.imag(); };
  const double limit = 1.0;  // ratio of the discrepancy to the combined error

  run.check("V-function, radius 1 vs inside the annulus", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const EllipticParams p = g.elliptic();
      VOptions o;
      const Evaluation a = v_function(p, o);
      o.radius = 1.0 + 0.4 * (1.0 / p.max_modulus() - 1.0);
      worst = std::max(worst, compare(a, v_function(p, o)));
    }
    return worst;
  });
  run.check("I_h", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const HypParams8 p = g.ih_params(g.periods());
      HypOptions o;
      const Evaluation a = ih(p, o);
      o.offset = 0.5 * lower(p.u, re);
      worst = std::max(worst, compare(a, ih(p, o)));
    }
    return worst;
  });
  run.check("E_h", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const HypParams6 p = g.eh_params(g.periods());
      HypOptions o;
      const Evaluation a = eh(p, o);
      o.offset = -0.5 * lower(p.u, re);
      worst = std::max(worst, compare(a, eh(p, o)));
    }
    return worst;
  });
  run.check("J_h", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const MuNuParams p = g.jh_params(g.periods());
      const double hi = lower(p.mu, re), lo = -lower(p.nu, re);
      HypOptions o;
      o.offset = lo + 0.3 * (hi - lo);
      const Evaluation a = jh(p, o);
      o.offset = lo + 0.7 * (hi - lo);
      worst = std::max(worst, compare(a, jh(p, o)));
    }
    return worst;
  });
  run.check("J_r", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const RationalParams p = g.rational();
      const double hi = lower(p.beta, re), lo = std::max(-p.gamma[2].real(), -p.gamma[3].real());
      RationalOptions o;
      o.offset = lo + 0.3 * (hi - lo);
      const Evaluation a = jr(p, o);
      o.offset = lo + 0.7 * (hi - lo);
      worst = std::max(worst, compare(a, jr(p, o)));
    }
    return worst;
  });
  run.check("J~_r", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const RationalParams p = g.rational();
      const std::array<Complex, 3> right = {p.beta[0], p.beta[2], p.beta[3]};
      const double hi = lower(right, re), lo = std::max(-p.gamma[2].real(), -p.gamma[3].real());
      RationalOptions o;
      o.offset = lo + 0.3 * (hi - lo);
      const Evaluation a = jr_tilde(p, o).eval;
      o.offset = lo + 0.7 * (hi - lo);
      worst = std::max(worst, compare(a, jr_tilde(p, o).eval));
    }
    return worst;
  });
  run.check("E_r", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const RationalParams6 p = g.rational6();
      RationalOptions o;
      const Evaluation a = er(p, o);
      o.offset = 0.5 * lower(p.alpha, re);
      worst = std::max(worst, compare(a, er(p, o)));
    }
    return worst;
  });
  run.check("J_cr", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const CRParams p = g.cr_locus();
      double lo = -1e300;
      for (const auto& x : p.s) lo = std::max(lo, im(x));
      const double hi = lower(p.t, neg_im);
      CROptions o;
      o.offset = lo + 0.3 * (hi - lo);
      const Evaluation a = jcr(p, o);
      o.offset = lo + 0.7 * (hi - lo);
      worst = std::max(worst, compare(a, jcr(p, o)));
    }
    return worst;
  });
  run.check("E_cr", limit, [&] {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const ECRParams p = g.ecr(i % 2 == 1);
      double lo = -1e300;
      for (const auto& x : p.p) lo = std::max(lo, im(x));
      const double hi = lower(p.p, neg_im);
      CROptions o;
      o.offset = lo + 0.3 * (hi - lo);
      const Evaluation a = ecr(p, o);
      o.offset = lo + 0.7 * (hi - lo);
      worst = std::max(worst, compare(a, ecr(p, o)));
    }
    return worst;
  });
  (void)neg_re;
  return run.finish();
}

inline CriterionResult run_criterion(int number, std::uint64_t seed) {
  switch (number) {
    case 1: return acceptance_gamma_layer(seed);
    case 2: return acceptance_oracles(seed);
    case 3: return acceptance_residuals(seed);
    case 4: return acceptance_symmetries(seed);
    case 5: return acceptance_limits(seed);
    case 6: return acceptance_eqdif(seed);
    case 7: return acceptance_contours(seed);
  }
  throw DomainError("no acceptance criterion " + std::to_string(number));
}

}  // namespace ehf
