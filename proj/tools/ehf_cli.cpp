// ehf: evaluate functions, run residual and identity checks, limit scans and
// the acceptance self-test.
//
// Exit codes: 0 success, 1 check failed, 2 non-convergence, 3 domain error
// (balancing, parity, pole, zero, pinch), 4 parse error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ehf/acceptance.hpp"
#include "json.hpp"

using ehf::Complex;
using ehf::HalfInt;
using json = nlohmann::ordered_json;

namespace {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- parameter files --------------------------------------------------------

json read_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ParseError(path + ": top level must be an object");
    return j;
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

// Field accessors. Every function documents the accepted keys; anything else
// in the file is rejected.
class Fields {
 public:
  explicit Fields(const json& j) : j_(j) {}

  void allow(std::initializer_list<const char*> keys) {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) throw ParseError("field '" + it.key() + "': not part of this schema");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& at(const char* key) const {
    if (!j_.contains(key)) throw ParseError("field '" + std::string(key) + "': missing");
    return j_.at(key);
  }

  static Complex complex(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    throw ParseError(where + ": expected a number or [re, im]");
  }
  static int integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<int>();
  }
  // An integer, or a string "k/2".
  static HalfInt half(const json& v, const std::string& where) {
    if (v.is_number_integer()) return HalfInt(v.get<int>());
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      const auto slash = s.find('/');
      try {
        std::size_t used = 0;
        const long k = std::stol(s.substr(0, slash), &used);
        if (used == slash && s.substr(slash) == "/2") return HalfInt::from_twice(k);
      } catch (const std::exception&) {
      }
    }
    throw ParseError(where + ": expected an integer or a string \"k/2\"");
  }

  Complex c(const char* key) const { return complex(at(key), field(key)); }
  Complex c(const char* key, Complex fallback) const { return has(key) ? c(key) : fallback; }
  double real(const char* key) const {
    const Complex z = c(key);
    if (z.imag() != 0.0) throw ParseError(field(key) + ": expected a real number");
    return z.real();
  }
  int i(const char* key) const { return integer(at(key), field(key)); }

  template <std::size_t N>
  std::array<Complex, N> cs(const char* key) const {
    const json& v = list(key, N);
    std::array<Complex, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = complex(v[k], field(key, k));
    return out;
  }
  template <std::size_t N>
  std::array<HalfInt, N> hs(const char* key) const {
    const json& v = list(key, N);
    std::array<HalfInt, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = half(v[k], field(key, k));
    return out;
  }
  template <std::size_t N>
  std::array<int, N> is(const char* key) const {
    const json& v = list(key, N);
    std::array<int, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = integer(v[k], field(key, k));
    return out;
  }

 private:
  static std::string field(const char* key) { return "field '" + std::string(key) + "'"; }
  static std::string field(const char* key, std::size_t k) {
    return "field '" + std::string(key) + "[" + std::to_string(k) + "]'";
  }
  const json& list(const char* key, std::size_t n) const {
    const json& v = at(key);
    if (!v.is_array() || v.size() != n)
      throw ParseError(field(key) + ": expected a list of " + std::to_string(n) + " entries");
    return v;
  }

  const json& j_;
};

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

ehf::QuasiPeriods periods(const Fields& f) {
  return {f.c("w1", 1.0), f.c("w2", 1.0)};
}

ehf::EllipticParams elliptic_params(Fields f) {
  f.allow({"t", "p", "q", "radius"});
  return ehf::EllipticParams(f.cs<8>("t"), ehf::EllipticBases(f.c("p"), f.c("q")));
}
ehf::HypParams8 ih_params(Fields f) {
  f.allow({"u", "w1", "w2", "offset"});
  return ehf::HypParams8(f.cs<8>("u"), periods(f));
}
ehf::HypParams6 eh_params(Fields f) {
  f.allow({"u", "w1", "w2", "offset"});
  ehf::HypParams6 p;
  p.u = f.cs<6>("u");
  p.w = periods(f);
  return p;
}
ehf::MuNuParams munu_params(Fields f) {
  f.allow({"mu", "nu", "w1", "w2", "offset"});
  return ehf::MuNuParams(f.cs<4>("mu"), f.cs<4>("nu"), periods(f));
}
ehf::RationalParams rational_params(Fields f) {
  f.allow({"beta", "gamma", "offset"});
  return ehf::RationalParams(f.cs<4>("beta"), f.cs<4>("gamma"));
}
ehf::RationalParams6 rational6_params(Fields f) {
  f.allow({"alpha", "offset"});
  ehf::RationalParams6 p;
  p.alpha = f.cs<6>("alpha");
  return p;
}
ehf::CRParams cr_params(Fields f) {
  f.allow({"s", "n", "t", "m", "eps", "offset"});
  const HalfInt eps = f.has("eps") ? Fields::half(f.at("eps"), "field 'eps'") : HalfInt(0);
  return ehf::CRParams(f.cs<4>("s"), f.hs<4>("n"), f.cs<4>("t"), f.hs<4>("m"), eps);
}
ehf::ECRParams ecr_params(Fields f) {
  f.allow({"p", "l", "eps", "offset"});
  ehf::ECRParams e;
  e.p = f.cs<6>("p");
  e.l = f.hs<6>("l");
  e.eps = f.has("eps") ? Fields::half(f.at("eps"), "field 'eps'") : HalfInt(0);
  e.validate();
  return e;
}
// Callers restrict the keys; the labels are validated by derived().
ehf::SixJComplexParams sixj_params(const Fields& f) {
  ehf::SixJComplexParams p;
  p.sigma = f.cs<4>("sigma");
  p.N = f.is<4>("N");
  p.rho = f.cs<2>("rho");
  p.M = f.is<2>("M");
  p.derived();
  return p;
}
ehf::PTParams pt_params(Fields f) {
  f.allow({"a", "as", "at", "b", "offset"});
  ehf::PTParams p;
  p.a = f.cs<4>("a");
  p.as = f.c("as");
  p.at = f.c("at");
  p.b = f.c("b");
  return p;
}

// ---- numerical knobs ---------------------------------------------------------

struct Knobs {
  std::optional<double> tol;
  std::optional<long> budget;
  std::optional<double> offset;
};

template <class Opt>
Opt options(const Knobs& k) {
  Opt o;
  if (k.tol) o.tol = *k.tol;
  if (k.budget) o.node_budget = *k.budget;
  if constexpr (requires { o.offset; }) {
    if (k.offset) o.offset = *k.offset;
  }
  return o;
}

// ---- eval ------------------------------------------------------------------------

struct EvalEntry {
  const char* schema;
  std::function<ehf::Evaluation(const json&, const Knobs&)> run;
};

ehf::Evaluation plain(Complex z) { return {z, 0.0, 0, 0}; }

const std::map<std::string, EvalEntry>& eval_table() {
  static const std::map<std::string, EvalEntry> t = {
      {"lngamma", {"z", [](const json& j, const Knobs&) {
         Fields f(j);
         f.allow({"z"});
         return plain(ehf::lngamma(f.c("z")));
       }}},
      {"cgamma", {"x, n", [](const json& j, const Knobs&) {
         Fields f(j);
         f.allow({"x", "n"});
         return plain(ehf::cgamma(f.c("x"), Fields::half(f.at("n"), "field 'n'")));
       }}},
      {"theta", {"z, q", [](const json& j, const Knobs&) {
         Fields f(j);
         f.allow({"z", "q"});
         return ehf::theta_q_eval(f.c("z"), f.c("q"));
       }}},
      {"egamma", {"z, p, q", [](const json& j, const Knobs&) {
         Fields f(j);
         f.allow({"z", "p", "q"});
         return plain(ehf::egamma(f.c("z"), ehf::EllipticBases(f.c("p"), f.c("q"))));
       }}},
      {"hgamma", {"u, w1, w2", [](const json& j, const Knobs&) {
         Fields f(j);
         f.allow({"u", "w1", "w2"});
         return plain(ehf::hgamma(f.c("u"), periods(f)));
       }}},
      {"v", {"t[8], p, q, radius", [](const json& j, const Knobs& k) {
         auto o = options<ehf::VOptions>(k);
         Fields f(j);
         if (f.has("radius")) o.radius = f.real("radius");
         return ehf::v_function(elliptic_params(f), o);
       }}},
      {"ih", {"u[8], w1, w2", [](const json& j, const Knobs& k) {
         return ehf::ih(ih_params(Fields(j)), options<ehf::HypOptions>(k));
       }}},
      {"eh", {"u[6], w1, w2", [](const json& j, const Knobs& k) {
         return ehf::eh(eh_params(Fields(j)), options<ehf::HypOptions>(k));
       }}},
      {"jh", {"mu[4], nu[4], w1, w2", [](const json& j, const Knobs& k) {
         return ehf::jh(munu_params(Fields(j)), options<ehf::HypOptions>(k));
       }}},
      {"jh_closed_form", {"mu[4], nu[4], w1, w2 (on the degenerate locus)", [](const json& j, const Knobs&) {
         return plain(ehf::jh_closed_form(munu_params(Fields(j))));
       }}},
      {"jr", {"beta[4], gamma[4]", [](const json& j, const Knobs& k) {
         return ehf::jr(rational_params(Fields(j)), options<ehf::RationalOptions>(k));
       }}},
      {"jr_tilde", {"beta[4], gamma[4]", [](const json& j, const Knobs& k) {
         return ehf::jr_tilde(rational_params(Fields(j)), options<ehf::RationalOptions>(k)).eval;
       }}},
      {"er", {"alpha[6]", [](const json& j, const Knobs& k) {
         return ehf::er(rational6_params(Fields(j)), options<ehf::RationalOptions>(k));
       }}},
      {"jcr", {"s[4], n[4], t[4], m[4], eps", [](const json& j, const Knobs& k) {
         return ehf::jcr(cr_params(Fields(j)), options<ehf::CROptions>(k));
       }}},
      {"f_product", {"s[4], n[4], t[4], m[4], eps (on the degenerate locus)", [](const json& j, const Knobs&) {
         return plain(ehf::f_product(cr_params(Fields(j))));
       }}},
      {"ecr", {"p[6], l[6], eps", [](const json& j, const Knobs& k) {
         return ehf::ecr(ecr_params(Fields(j)), options<ehf::CROptions>(k));
       }}},
      {"complex_6j", {"sigma[4], N[4], rho[2], M[2]", [](const json& j, const Knobs& k) {
         Fields f(j);
         f.allow({"sigma", "N", "rho", "M", "offset"});
         return ehf::complex_6j(sixj_params(f), options<ehf::CROptions>(k));
       }}},
      {"pt_6j", {"a[4], as, at, b", [](const json& j, const Knobs& k) {
         return ehf::pt_6j(pt_params(Fields(j)), options<ehf::HypOptions>(k));
       }}},
  };
  return t;
}

// ---- check -------------------------------------------------------------------

struct CheckEntry {
  double default_tol;
  const char* schema;
  // Parameters from the file when given, otherwise drawn from the generator.
  std::function<double(const std::optional<json>&, ehf::ParamGen&, const Knobs&)> run;
};

template <class P, class Parse, class Draw, class Eval>
std::function<double(const std::optional<json>&, ehf::ParamGen&, const Knobs&)> checker(Parse parse, Draw draw,
                                                                                         Eval eval) {
  return [=](const std::optional<json>& j, ehf::ParamGen& g, const Knobs& k) -> double {
    const P p = j ? parse(Fields(*j)) : draw(g);
    return eval(p, k);
  };
}

const std::map<std::string, CheckEntry>& check_table() {
  using namespace ehf;
  auto hyp8 = [](HypEquation eq) {
    return checker<HypParams8>(ih_params, [](ParamGen& g) { return g.ih_params(g.periods()); },
                               [eq](const HypParams8& p, const Knobs& k) {
                                 return std::abs(hyp_residual(eq, p, options<HypOptions>(k)));
                               });
  };
  auto hyp6 = [](HypEquation eq) {
    return checker<HypParams6>(eh_params, [](ParamGen& g) { return g.eh_params(g.periods()); },
                               [eq](const HypParams6& p, const Knobs& k) {
                                 return std::abs(hyp_residual(eq, p, options<HypOptions>(k)));
                               });
  };
  auto munu = [](HypEquation eq) {
    return checker<MuNuParams>(munu_params, [](ParamGen& g) { return g.jh_params(g.periods()); },
                               [eq](const MuNuParams& p, const Knobs& k) {
                                 return std::abs(hyp_residual(eq, p, options<HypOptions>(k)));
                               });
  };
  auto ident = [](HypIdentity id) {
    return checker<MuNuParams>(munu_params, [](ParamGen& g) { return g.identity_params(g.periods()); },
                               [id](const MuNuParams& p, const Knobs& k) {
                                 return check_identity(id, p, options<HypOptions>(k));
                               });
  };
  auto rat = [](RationalEquation eq) {
    return checker<RationalParams>(rational_params, [](ParamGen& g) { return g.rational(); },
                                   [eq](const RationalParams& p, const Knobs& k) {
                                     return std::abs(rational_residual(eq, p, options<RationalOptions>(k)));
                                   });
  };
  auto crd = [](CREquation eq) {
    return checker<CRParams>(cr_params, [](ParamGen& g) { return g.cr_difference(); },
                             [eq](const CRParams& p, const Knobs& k) {
                               return std::abs(cr_residual(eq, p, options<CROptions>(k)));
                             });
  };
  auto ecr_eq = [](CREquation eq) {
    return checker<ECRParams>(ecr_params, [](ParamGen& g) { return g.ecr(false); },
                              [eq](const ECRParams& p, const Knobs& k) {
                                return std::abs(cr_residual(eq, p, options<CROptions>(k)));
                              });
  };
  auto cri = [](CRIdentity id) {
    return checker<CRParams>(cr_params, [](ParamGen& g) { return g.cr_identity(false, false); },
                             [id](const CRParams& p, const Knobs& k) {
                               auto o = options<CROptions>(k);
                               if (!k.tol) o.tol = 1e-8;
                               return check_cr_identity(id, p, o);
                             });
  };
  auto eqdif = [](bool limit) {
    using Points = std::array<Complex, 6>;
    return checker<Points>(
        [](Fields f) {
          f.allow({"b2", "b3", "b4", "g1", "g2", "g3"});
          return Points{f.c("b2"), f.c("b3"), f.c("b4", 0.0), f.c("g1"), f.c("g2"), f.c("g3")};
        },
        [](ParamGen& g) {
          Points p{};
          for (auto& z : p) z = Complex(g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0));
          return p;
        },
        [limit](const Points& p, const Knobs&) {
          return eqdif_lhs(p[0], p[1], p[2], p[3], p[4], p[5], limit).normalized();
        });
  };

  static const std::map<std::string, CheckEntry> t = {
      {"ehe", {1e-8, "t[8], p, q",
               checker<EllipticParams>(elliptic_params, [](ParamGen& g) { return g.elliptic(); },
                                       [](const EllipticParams& p, const Knobs& k) {
                                         return std::abs(ehe_residual(p, options<VOptions>(k)));
                                       })}},
      {"br", {1e-7, "u[8], w1, w2", hyp8(HypEquation::br)}},
      {"br2", {1e-7, "u[8], w1, w2", hyp8(HypEquation::br2)}},
      {"difeh", {1e-7, "u[6], w1, w2", hyp6(HypEquation::difeh)}},
      {"difeh2", {1e-7, "u[6], w1, w2", hyp6(HypEquation::difeh2)}},
      {"secdif", {1e-7, "mu[4], nu[4], w1, w2", munu(HypEquation::secdif)}},
      {"secdif2", {1e-7, "mu[4], nu[4], w1, w2", munu(HypEquation::secdif2)}},
      {"jheh", {1e-7, "mu[4], nu[4], w1, w2", ident(HypIdentity::jheh)}},
      {"ide1b", {1e-7, "mu[4], nu[4], w1, w2", ident(HypIdentity::ide1b)}},
      {"jh_locus", {1e-8, "mu[4], nu[4], w1, w2 (degenerate locus)",
                    checker<MuNuParams>(munu_params, [](ParamGen& g) { return g.jh_locus(g.periods()); },
                                        [](const MuNuParams& p, const Knobs& k) {
                                          return rel_diff(jh(p, options<HypOptions>(k)).value, jh_closed_form(p));
                                        })}},
      {"jr_eq", {1e-7, "beta[4], gamma[4]", rat(RationalEquation::jr_eq)}},
      {"jr_tilde_eq", {1e-7, "beta[4], gamma[4]", rat(RationalEquation::jr_tilde_eq)}},
      {"er_eq", {1e-7, "alpha[6]",
                 checker<RationalParams6>(rational6_params, [](ParamGen& g) { return g.rational6(); },
                                          [](const RationalParams6& p, const Knobs& k) {
                                            return std::abs(rational_residual(RationalEquation::er_eq, p,
                                                                              options<RationalOptions>(k)));
                                          })}},
      {"difjmn", {1e-6, "s[4], n[4], t[4], m[4], eps", crd(CREquation::difjmn)}},
      {"difjmn2", {1e-6, "s[4], n[4], t[4], m[4], eps", crd(CREquation::difjmn2)}},
      {"ecr1", {1e-6, "p[6], l[6], eps", ecr_eq(CREquation::ecr_eq1)}},
      {"ecr2", {1e-6, "p[6], l[6], eps", ecr_eq(CREquation::ecr_eq2)}},
      {"f_eq", {1e-12, "s[4], n[4], t[4], m[4] (degenerate locus)",
                checker<CRParams>(cr_params, [](ParamGen& g) { return g.cr_locus(); },
                                  [](const CRParams& p, const Knobs& k) {
                                    return std::abs(cr_residual(CREquation::f_eq, p, options<CROptions>(k)));
                                  })}},
      {"jcr_locus", {1e-6, "s[4], n[4], t[4], m[4] (degenerate locus)",
                     checker<CRParams>(cr_params, [](ParamGen& g) { return g.cr_locus(); },
                                       [](const CRParams& p, const Knobs& k) {
                                         HalfInt sn{};
                                         for (const auto& x : p.n) sn += x;
                                         const Complex want = static_cast<double>(parity_sign(sn.as_integer())) *
                                                              f_product(p);
                                         return rel_diff(jcr(p, options<CROptions>(k)).value, want);
                                       })}},
      {"ide1i", {1e-6, "s[4], n[4], t[4], m[4]", cri(CRIdentity::ide1i)}},
      {"JE", {1e-6, "s[4], n[4], t[4], m[4]", cri(CRIdentity::JE)}},
      {"eqdif", {1e-10, "b2, b3, b4, g1, g2, g3", eqdif(false)}},
      {"eqdif_limit", {1e-10, "b2, b3, g1, g2, g3", eqdif(true)}},
  };
  return t;
}

// ---- output ------------------------------------------------------------------

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // csv: a header row and one row per record; complex values split in two columns.
  const json rows = j.contains("rows") ? j["rows"] : json::array({j});
  std::vector<std::string> header;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
    if (it->is_array() && it->size() == 2) {
      header.push_back(it.key() + "_re");
      header.push_back(it.key() + "_im");
    } else {
      header.push_back(it.key());
    }
  }
  auto cell = [](const json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
  std::cout << "\n";
  for (const auto& r : rows) {
    bool first = true;
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it->is_array() && it->size() == 2) {
        std::cout << (first ? "" : ",") << cell((*it)[0]) << "," << cell((*it)[1]);
      } else {
        std::cout << (first ? "" : ",") << cell(*it);
      }
      first = false;
    }
    std::cout << "\n";
  }
  if (j.contains("summary")) {
    std::cout << "# ";
    bool first = true;
    for (auto it = j["summary"].begin(); it != j["summary"].end(); ++it) {
      std::cout << (first ? "" : ",") << it.key() << "=" << cell(*it);
      first = false;
    }
    std::cout << "\n";
  }
}

json evaluation_json(const std::string& id, const ehf::Evaluation& e) {
  json j;
  j["fn"] = id;
  j["value"] = to_json(e.value);
  j["abs_err"] = e.abs_err;
  j["nodes_used"] = e.nodes_used;
  j["terms_used"] = e.terms_used;
  return j;
}

std::vector<double> parse_deltas(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParseError("--deltas: '" + item + "' is not a number");
    out.push_back(d);
  }
  if (out.empty()) throw ParseError("--deltas: empty list");
  return out;
}

ehf::LimitTarget limit_target(ehf::LimitId id, const json& j) {
  ehf::LimitTarget t;
  Fields f(j);
  switch (id) {
    case ehf::LimitId::elliptic_to_hyperbolic:
      f.allow({"y", "w1", "w2"});
      t.y = f.c("y", t.y);
      t.w = {f.c("w1", t.w.w1), f.c("w2", t.w.w2)};
      break;
    case ehf::LimitId::gamma_b_to_i:
      f.allow({"x", "n"});
      if (f.has("x")) t.x = f.real("x");
      if (f.has("n")) t.n = f.i("n");
      break;
    case ehf::LimitId::jh_b_to_0:
      f.allow({"beta", "gamma", "w2"});
      t.rational = ehf::RationalParams(f.cs<4>("beta"), f.cs<4>("gamma"));
      if (f.has("w2")) t.w2 = f.real("w2");
      break;
    case ehf::LimitId::pt_to_complex6j:
      f.allow({"sigma", "N", "rho", "M"});
      t.sixj = sixj_params(f);
      break;
  }
  return t;
}

json scan_json(const ehf::LimitScan& s) {
  json j;
  j["id"] = ehf::to_string(s.id);
  j["rows"] = json::array();
  for (const auto& r : s.rows) {
    json row;
    row["delta"] = r.delta;
    row["lhs"] = to_json(r.lhs);
    row["rhs"] = to_json(r.rhs);
    row["ratio"] = to_json(r.ratio());
    row["deviation"] = r.deviation;
    row["alt_deviation"] = r.alt_deviation ? json(*r.alt_deviation) : json(nullptr);
    j["rows"].push_back(row);
  }
  json sum;
  sum["order"] = s.order;
  sum["monotone"] = s.monotone();
  sum["alt_order"] = s.alt_order ? json(*s.alt_order) : json(nullptr);
  sum["alt_label"] = s.alt_label;
  sum["F"] = s.F ? json(*s.F) : json(nullptr);
  j["summary"] = sum;
  return j;
}

json criterion_json(const ehf::CriterionResult& r) {
  json j;
  j["criterion"] = r.number;
  j["title"] = r.title;
  j["pass"] = r.pass;
  j["seconds"] = r.seconds;
  j["budget_seconds"] = r.budget;
  j["rows"] = json::array();
  for (const auto& c : r.checks) {
    json row;
    row["check"] = c.name;
    row["value"] = std::isfinite(c.value) ? json(c.value) : json(nullptr);
    row["threshold"] = c.threshold > 0 ? json(c.threshold) : json(nullptr);
    row["pass"] = c.pass;
    row["note"] = c.note;
    j["rows"].push_back(row);
  }
  return j;
}

template <class Body>
int guarded(Body body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const ehf::NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 2;
  } catch (const ehf::OverflowGuard& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 2;
  } catch (const ehf::Error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic hypergeometric degeneration cascade: evaluation and verification"};
  app.require_subcommand(1);

  std::string id, params_path, format = "json", deltas, criteria;
  std::optional<double> tol;
  std::optional<long> budget;
  std::uint64_t seed = 20261016;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--params", params_path, "JSON parameter file")->check(CLI::ExistingFile);
    sub->add_option("--tol", tol, "quadrature tolerance (eval, scan) or pass threshold (check)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--budget", budget, "node budget per integral (overrides EHF_NODE_BUDGET)")
        ->check(CLI::Range(64L, 1L << 40));
  };
  auto* eval = app.add_subcommand("eval", "evaluate a function");
  eval->add_option("--fn,--id", id, "function id")->required();
  common(eval);
  auto* check = app.add_subcommand("check", "run a residual or identity check");
  check->add_option("--id,--fn", id, "check id")->required();
  check->add_option("--seed", seed, "seed for random parameters when --params is absent");
  common(check);
  auto* scan = app.add_subcommand("scan", "run a limit scan");
  scan->add_option("--id,--fn", id, "limit id")->required();
  scan->add_option("--deltas", deltas, "comma-separated small parameters");
  common(scan);
  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_option("--seed", seed, "seed for the random suites");
  self->add_option("--criteria", criteria, "comma-separated subset, default 1-7");
  self->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  auto* list = app.add_subcommand("list", "list function, check and limit ids with their parameter keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  if (!budget) {
    if (const char* env = std::getenv("EHF_NODE_BUDGET")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 64) {
        std::cerr << "parse error: EHF_NODE_BUDGET must be an integer >= 64\n";
        return 4;
      }
      budget = v;
    }
  }
  Knobs knobs{tol, budget, std::nullopt};

  auto load = [&]() -> std::optional<json> {
    if (params_path.empty()) return std::nullopt;
    json j = read_params(params_path);
    if (j.contains("offset")) knobs.offset = Fields(j).real("offset");
    return j;
  };

  if (*list) {
    std::cout << "eval:\n";
    for (const auto& [k, v] : eval_table()) std::cout << "  " << k << "  {" << v.schema << "}\n";
    std::cout << "check:\n";
    for (const auto& [k, v] : check_table())
      std::cout << "  " << k << "  {" << v.schema << "}  default tol " << v.default_tol << "\n";
    std::cout << "scan:\n";
    for (auto l : {ehf::LimitId::elliptic_to_hyperbolic, ehf::LimitId::gamma_b_to_i, ehf::LimitId::jh_b_to_0,
                   ehf::LimitId::pt_to_complex6j})
      std::cout << "  " << ehf::to_string(l) << "\n";
    return 0;
  }

  if (*eval) {
    return guarded([&] {
      const auto it = eval_table().find(id);
      if (it == eval_table().end()) throw ParseError("unknown function id '" + id + "'");
      const auto j = load();
      if (!j) throw ParseError("eval needs --params");
      emit(evaluation_json(id, it->second.run(*j, knobs)), format);
      return 0;
    });
  }

  if (*check) {
    return guarded([&] {
      const auto it = check_table().find(id);
      if (it == check_table().end()) throw ParseError("unknown check id '" + id + "'");
      const auto j = load();
      const double threshold = tol.value_or(it->second.default_tol);
      // --tol is the pass threshold here; quadrature runs at the library defaults.
      Knobs k = knobs;
      k.tol.reset();
      ehf::ParamGen g(seed);
      const double residual = it->second.run(j, g, k);
      const bool pass = std::isfinite(residual) && residual < threshold;
      json out;
      out["id"] = id;
      out["residual"] = residual;
      out["tol"] = threshold;
      out["params"] = j ? params_path : "random, seed " + std::to_string(seed);
      out["pass"] = pass;
      emit(out, format);
      return pass ? 0 : 1;
    });
  }

  if (*scan) {
    return guarded([&] {
      const auto lid = ehf::limit_from_string(id);
      if (!lid) throw ParseError("unknown limit id '" + id + "'");
      const auto j = load();
      const ehf::LimitTarget target = j ? limit_target(*lid, *j) : ehf::LimitTarget{};
      ehf::LimitOptions opt;
      if (tol) opt.tol = *tol;
      const auto list = scan->count("--deltas") ? parse_deltas(deltas) : ehf::default_deltas(*lid);
      emit(scan_json(ehf::limit_scan(*lid, list, target, opt)), format);
      return 0;
    });
  }

  // selftest
  if (!self->count("--format")) format = "text";
  std::vector<int> which;
  if (criteria.empty()) {
    which = {1, 2, 3, 4, 5, 6, 7};
  } else {
    std::stringstream ss(criteria);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        which.push_back(std::stoi(item));
      } catch (const std::exception&) {
        std::cerr << "parse error: --criteria: '" << item << "' is not an integer\n";
        return 4;
      }
      if (which.back() < 1 || which.back() > 7) {
        std::cerr << "parse error: --criteria: no criterion " << item << "\n";
        return 4;
      }
    }
  }
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  int passed = 0;
  json all = json::array();
  for (int c : which) {
    const ehf::CriterionResult r = ehf::run_criterion(c, seed);
    passed += r.pass;
    if (format == "json") {
      all.push_back(criterion_json(r));
    } else {
      std::printf("%s\n", r.line().c_str());
    }
  }
  if (format == "json") std::cout << all.dump(2) << "\n";
  else std::printf("selftest: %d of %zu criteria passed (seed %llu)\n", passed, which.size(),
                   static_cast<unsigned long long>(seed));
  return passed == static_cast<int>(which.size()) ? 0 : 1;
}
