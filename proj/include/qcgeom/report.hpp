#pragma once

// Verification campaigns: every suite draws a seeded random grid, evaluates
// its identity residuals, and emits rows {suite, check, point, value,
// tolerance, pass, anchor}. A row passes iff |value| <= tolerance; the point
// field records where the worst value occurred. Reports serialize to JSON
// ({meta, rows}), CSV with the same columns, and a Markdown summary with
// per-suite worst residuals and the anchor of every failing check. Given the
// same config, the JSON is byte-identical across runs except for the
// timestamp in meta.
//
// The anchor field is the stable identifier of the identity in the project's
// check catalog; tolerance overrides are keyed by check name.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "autos.hpp"
#include "calculus.hpp"
#include "cayley.hpp"
#include "decomp.hpp"
#include "einstein.hpp"
#include "field.hpp"
#include "fueter.hpp"
#include "heisenberg.hpp"
#include "hypersurface.hpp"
#include "poly.hpp"
#include "quaternion.hpp"

namespace qcg {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSamplingNote =
    "points uniform in [-2,2]^dim; sphere checks use normalized Gaussians on "
    "the unit sphere";

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s = {"algebra", "einstein",     "fueter",
                                             "cayley",  "hypersurface", "autos"};
  return s;
}

struct CampaignConfig {
  int n = 1;
  std::uint64_t seed = 1;
  int points = 200;
  std::vector<std::string> suites;           // empty = all
  std::map<std::string, double> tolerances;  // overrides keyed by check name
  double inject = 0.0;  // strength of the solution-family perturbation (negative control)
};

struct ReportRow {
  std::string suite;
  std::string check;
  std::string point;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string anchor;
};

inline void to_json(nlohmann::json& j, const ReportRow& r) {
  j = nlohmann::json{{"suite", r.suite},         {"check", r.check}, {"point", r.point},
                     {"value", r.value},         {"tolerance", r.tolerance},
                     {"pass", r.pass},           {"anchor", r.anchor}};
}

namespace detail {

inline std::uint64_t suite_seed(std::uint64_t base, std::uint64_t idx) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string point_str(const std::vector<double>& p) {
  std::string s = "[";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", p[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s + "]";
}

inline std::vector<double> box_point(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::vector<double> p(dim);
  for (auto& c : p) c = U(rng);
  return p;
}

inline std::vector<std::vector<double>> box_grid(int dim, int count, std::mt19937_64& rng) {
  std::vector<std::vector<double>> g;
  g.reserve(count);
  for (int i = 0; i < count; ++i) g.push_back(box_point(dim, rng));
  return g;
}

// Tracks the largest magnitude seen and where it occurred.
struct WorstTracker {
  double value = 0.0;
  std::string point = "-";
  void offer(double v, const std::string& pt) {
    if (std::abs(v) > value) {
      value = std::abs(v);
      point = pt;
    }
  }
  void offer(double v, const std::vector<double>& pt) {
    if (std::abs(v) > value) {
      value = std::abs(v);
      point = point_str(pt);
    }
  }
};

struct Campaign {
  const CampaignConfig& cfg;
  std::vector<ReportRow> rows;

  double tol_of(const std::string& check, double dflt) const {
    auto it = cfg.tolerances.find(check);
    return it == cfg.tolerances.end() ? dflt : it->second;
  }
  void add(const std::string& suite, const std::string& check, const std::string& anchor,
           const std::string& point, double value, double default_tol) {
    const double tol = tol_of(check, default_tol);
    rows.push_back(ReportRow{suite, check, point, value, tol, std::abs(value) <= tol, anchor});
  }
  void add(const std::string& suite, const std::string& check, const std::string& anchor,
           const WorstTracker& w, double default_tol) {
    add(suite, check, anchor, w.point, w.value, default_tol);
  }
};

inline double max_abs_coeff(const Poly& f) {
  double m = 0.0;
  for (const auto& [e, c] : f.terms) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------- algebra

inline void run_algebra(Campaign& C) {
  const int n = C.cfg.n, d = 4 * n + 3;
  std::mt19937_64 rng(suite_seed(C.cfg.seed, 0));

  // Frame commutator table against the constant structure matrices,
  // coefficient-exact: [e_a, e_b] = -2 sum_s I_s(b,a) xi_s for horizontal
  // a, b; vertical fields commute with everything.
  {
    const auto fr = frame(n);
    std::vector<VectorFieldPoly> xi;
    for (int s = 0; s < 3; ++s) {
      VectorFieldPoly v(d);
      v.coeff[4 * n + s] = Poly::constant(d, 2.0);
      xi.push_back(std::move(v));
    }
    std::array<Eigen::MatrixXd, 3> Is = {complex_structure(n, 1), complex_structure(n, 2),
                                         complex_structure(n, 3)};
    double worst = 0.0;
    for (int a = 0; a < 4 * n; ++a)
      for (int b = 0; b < 4 * n; ++b) {
        VectorFieldPoly br = lie_bracket(fr[a], fr[b]);
        for (int c = 0; c < d; ++c) {
          Poly expect = Poly::constant(d, c >= 4 * n ? -4.0 * Is[c - 4 * n](b, a) : 0.0);
          worst = std::max(worst, max_abs_coeff(br.coeff[c] - expect));
        }
      }
    for (int a = 0; a < 4 * n; ++a)
      for (int s = 0; s < 3; ++s) {
        VectorFieldPoly br = lie_bracket(fr[a], xi[s]);
        for (const auto& f : br.coeff) worst = std::max(worst, max_abs_coeff(f));
      }
    for (int s = 0; s < 3; ++s)
      for (int t = 0; t < 3; ++t) {
        VectorFieldPoly br = lie_bracket(xi[s], xi[t]);
        for (const auto& f : br.coeff) worst = std::max(worst, max_abs_coeff(f));
      }
    C.add("algebra", "commutators", "e:commutators", "-", worst, 0.0);
  }

  // Quaternionic packaging of the contact triple: for every tangent v,
  // 2(i T1 + j T2 + k T3)(v) = dv_vert(v) + 2 Im(sum_a vq_a conj(q_a)).
  {
    const auto rows = contact_form_rows(n);
    WorstTracker w;
    for (int k = 0; k < std::min(C.cfg.points, 64); ++k) {
      const auto p = box_point(d, rng), v = box_point(d, rng);
      Quaternion rhs{0.0, v[4 * n], v[4 * n + 1], v[4 * n + 2]};
      for (int a = 0; a < n; ++a) {
        Quaternion vq{v[4 * a], v[4 * a + 1], v[4 * a + 2], v[4 * a + 3]};
        Quaternion q{p[4 * a], p[4 * a + 1], p[4 * a + 2], p[4 * a + 3]};
        Quaternion x = vq * conj(q);
        rhs = rhs + (x - conj(x));
      }
      for (int s = 0; s < 3; ++s)
        w.offer(2.0 * contact_form_value(rows[s], p, v) - rhs.comp(s + 1), p);
    }
    C.add("algebra", "contact-packaging", "e:Heisenbegr ctct forms", w, 1e-12);
  }

  // Differentials of the contact forms: the constant matrices are
  // antisymmetric, equal 2 I_s^T on the horizontal block, and vanish on and
  // against the vertical block. Exact.
  {
    double worst = 0.0;
    for (int s = 0; s < 3; ++s) {
      const auto A = dtheta_matrix(n, s);
      const Eigen::MatrixXd I = complex_structure(n, s + 1);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          worst = std::max(worst, std::abs(A[a][b] + A[b][a]));
          const double want = (a < 4 * n && b < 4 * n) ? 2.0 * I(b, a) : 0.0;
          worst = std::max(worst, std::abs(A[a][b] - want));
        }
    }
    C.add("algebra", "dtheta-structure", "e:Heisenbegr ctct forms", "-", worst, 0.0);
  }

  // Random-tensor algebra of the averaging operator and its projections.
  std::normal_distribution<double> N(0.0, 1.0);
  auto rand_tensor = [&] {
    Eigen::MatrixXd M(4 * n, 4 * n);
    for (int r = 0; r < 4 * n; ++r)
      for (int c = 0; c < 4 * n; ++c) M(r, c) = N(rng);
    return M;
  };
  const int tensors = std::min(C.cfg.points, 100);
  WorstTracker quad, idem, four, eig, n1;
  for (int k = 0; k < tensors; ++k) {
    Eigen::MatrixXd M = rand_tensor();
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    const std::string tag = "tensor " + std::to_string(k);
    // dagger^2 = 3 Id + 2 dagger, so the spectrum is {3, -1}.
    Eigen::MatrixXd dM = casimir(n, M);
    quad.offer((casimir(n, dM) - 2.0 * dM - 3.0 * M).cwiseAbs().maxCoeff() / scale, tag);
    // Eigenprojections: idempotent, complementary, orthogonal.
    Eigen::MatrixXd P3 = project_3(n, M), Pm = project_minus1(n, M);
    idem.offer((project_3(n, P3) - P3).cwiseAbs().maxCoeff() / scale, tag);
    idem.offer((project_minus1(n, Pm) - Pm).cwiseAbs().maxCoeff() / scale, tag);
    idem.offer((P3 + Pm - M).cwiseAbs().maxCoeff() / scale, tag);
    idem.offer(project_minus1(n, P3).cwiseAbs().maxCoeff() / scale, tag);
    // Four-fold signature under conjugation by each structure.
    FourPart fp = four_part(n, M);
    const std::array<const Eigen::MatrixXd*, 4> parts = {&fp.ppp, &fp.pmm, &fp.mpm, &fp.mmp};
    const double sgn[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    for (int q = 0; q < 4; ++q)
      for (int s = 1; s <= 3; ++s) {
        const Eigen::MatrixXd I = complex_structure(n, s);
        four.offer((I.transpose() * (*parts[q]) * I - sgn[q][s - 1] * (*parts[q]))
                       .cwiseAbs()
                       .maxCoeff() /
                       scale,
                   tag);
      }
    four.offer((fp.ppp + fp.pmm + fp.mpm + fp.mmp - M).cwiseAbs().maxCoeff() / scale, tag);
    // The invariant part carries eigenvalue 3, each sign-mixed part -1.
    eig.offer((casimir(n, fp.ppp) - 3.0 * fp.ppp).cwiseAbs().maxCoeff() / scale, tag);
    for (int q = 1; q < 4; ++q)
      eig.offer((casimir(n, *parts[q]) + *parts[q]).cwiseAbs().maxCoeff() / scale, tag);
    if (n == 1) {
      // One slot: the invariant part of a symmetric tensor is scalar.
      Eigen::MatrixXd S = 0.5 * (M + M.transpose());
      Eigen::MatrixXd P = project_3(1, S);
      n1.offer((P - (P.trace() / 4.0) * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() /
                   scale,
               tag);
    }
  }
  C.add("algebra", "casimir-quadratic", "e:cross", quad, 1e-12);
  C.add("algebra", "projector-idempotence", "New21", idem, 1e-12);
  C.add("algebra", "four-part-signature", "e:cross", four, 1e-12);
  C.add("algebra", "casimir-eigenvalues", "e:cross", eig, 1e-12);
  if (n == 1) C.add("algebra", "invariant-part-scalar", "New21", n1, 1e-12);
}

// ---------------------------------------------------------------- einstein

inline void run_einstein(Campaign& C) {
  const int n = C.cfg.n, d = 4 * n + 3;
  std::mt19937_64 rng(suite_seed(C.cfg.seed, 1));
  std::uniform_real_distribution<double> Upar(0.2, 2.0);

  WorstTracker con01, con03, hess, vert, ric, spread, scalval, yam;
  const int kInstances = 3;
  for (int inst = 0; inst < kInstances; ++inst) {
    const double c = Upar(rng), nu = Upar(rng);
    GroupPoint g0(n);
    g0.c = box_point(d, rng);
    Poly h = pullback_left_translate(g0, solution_h(n, c, nu));
    if (C.cfg.inject != 0.0) h = h + C.cfg.inject * Poly::var(d, 0);
    const CompiledSecondOrder cso(h);
    const ScalarField uf = field_pow(2.0 * field_from_poly(h), -(n + 1.0));
    const double scal_expect = 128.0 * n * (n + 2.0) * c * nu;
    const double mu0 = c * nu * nu;

    double smin = std::numeric_limits<double>::infinity(), smax = -smin;
    for (int k = 0; k < C.cfg.points; ++k) {
      const auto p = box_point(d, rng);
      const std::string tag = "case " + std::to_string(inst) + " @ " + point_str(p);
      const SecondOrderData s = cso.at(p);
      const double scale = einstein_scale(s);
      con01.offer(residual_con01(s).cwiseAbs().maxCoeff() / scale, tag);
      if (n >= 2) con03.offer(residual_con03(s).max_abs() / scale, tag);
      hess.offer(hessian_relations(s) / scale, tag);
      const VerticalHessian vh = vertical_hessian(s);
      vert.offer(std::max({vh.max_spread, vh.max_mixed, std::abs(vh.common - 8.0 * mu0)}) / scale,
                 tag);
      ric.offer(conformal_ricci_traceless(s).ric0.max_abs() / scale, tag);
      const double sc = conformal_scal(s);
      smin = std::min(smin, sc);
      smax = std::max(smax, sc);
      scalval.offer((sc - scal_expect) / scal_expect, tag);
      const SecondOrderData su = second_order(uf, p);
      yam.offer(yamabe_residual(su, scal_expect) / einstein_scale(su), tag);
    }
    spread.offer((smax - smin) / scal_expect, "case " + std::to_string(inst));
  }
  C.add("einstein", "con01", "con01", con01, 1e-8);
  if (n >= 2) C.add("einstein", "con03", "con03", con03, 1e-8);
  C.add("einstein", "hessian-relations", "e:hHessian of h", hess, 1e-8);
  C.add("einstein", "vertical-hessian", "vcomHH", vert, 1e-8);
  C.add("einstein", "ricci-traceless", "trric", ric, 1e-8);
  C.add("einstein", "scal-constant", "e:conf change scalar curv", spread, 1e-8);
  C.add("einstein", "scal-value", "e:conf change scalar curv", scalval, 1e-8);
  C.add("einstein", "yamabe", "Yamabe", yam, 1e-7);

  // The normalization c nu = 1/8 pins the constant curvature at 16 n (n+2).
  {
    Poly h = solution_h(n, 0.5, 0.25);
    const auto p = box_point(d, rng);
    const double sc = conformal_scal(field_from_poly(h), p);
    const double want = 16.0 * n * (n + 2.0);
    C.add("einstein", "three-sasakian-scal", "3sas", point_str(p), (sc - want) / want, 1e-8);
  }
}

// ---------------------------------------------------------------- fueter

inline void run_fueter(Campaign& C) {
  const int n = C.cfg.n;
  std::mt19937_64 rng(suite_seed(C.cfg.seed, 2));
  const int flat_deg = (n == 1) ? 3 : 2;

  const QPoly W = anti_regular_witness(n, flat_deg, rng(), Domain::Flat);
  const QuaternionField F = qfield_from_qpoly(W);
  const ScalarField f = field_from_poly(W.c[0]);
  const auto pts = box_grid(4 * n, std::min(C.cfg.points, 100), rng);

  WorstTracker member, pluri, dd, compl_res;
  for (const auto& p : pts)
    for (int a = 0; a < n; ++a) member.offer(dirac(F, a, p, Domain::Flat).max_abs(), p);
  C.add("fueter", "anti-regular-witness", "d:anti-regular functions", member, 1e-10);

  // Only the dirac(dirac_bar .) order annihilates real parts of anti-regular
  // functions; the reversed order characterises the regular class instead.
  for (const auto& p : pts)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        pluri.offer(pluriharmonic_residual(f, a, b, p, PluriKind::Q).max_abs(), p);
  C.add("fueter", "pluriharmonic-components", "antiplu", pluri, 1e-10);

  for (const auto& p : pts)
    for (int i = 1; i <= 3; ++i) dd.offer(dd_matrix(f, i, p).cwiseAbs().maxCoeff(), p);
  C.add("fueter", "dd-vanishing", "DD1", dd, 1e-10);

  // Verdict agreement of the two second-order criteria: the witness real
  // part is a member; random cubics are not.
  {
    std::vector<Exponents> mons;
    {
      Exponents acc(4 * n, 0);
      for (int g = 0; g <= 3; ++g) detail::enumerate_exponents(4 * n, g, 0, acc, mons);
    }
    std::normal_distribution<double> N(0.0, 1.0);
    const auto sample = box_grid(4 * n, 12, rng);
    int disagreements = 0;
    for (int trial = 0; trial < 9; ++trial) {
      ScalarField g;
      if (trial == 0) {
        g = f;
      } else {
        Poly gp(4 * n);
        for (const auto& e : mons) gp.add_term(e, N(rng));
        g = field_from_poly(gp);
      }
      double worst_dd = 0.0, worst_pl = 0.0;
      for (const auto& p : sample) {
        for (int i = 1; i <= 3; ++i)
          worst_dd = std::max(worst_dd, dd_matrix(g, i, p).cwiseAbs().maxCoeff());
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            worst_pl =
                std::max(worst_pl, pluriharmonic_residual(g, a, b, p, PluriKind::Q).max_abs());
      }
      if ((worst_dd <= 1e-10) != (worst_pl <= 1e-10)) ++disagreements;
    }
    C.add("fueter", "dd-crossval", "antiplu", "9 polynomials", double(disagreements), 0.0);
  }

  {
    const QuaternionField F2 = complete_to_antiregular(f);
    for (const auto& p : pts)
      for (int a = 0; a < n; ++a) compl_res.offer(dirac(F2, a, p, Domain::Flat).max_abs(), p);
    C.add("fueter", "completion", "pluriharmonic", compl_res, 1e-8);
  }

  // Group-level witness: the first-order system and its Hessian identity.
  {
    const QPoly Wg = anti_regular_witness(n, 2, rng(), Domain::Group);
    const QuaternionField Fg = qfield_from_qpoly(Wg);
    const auto gpts = box_grid(4 * n + 3, std::min(C.cfg.points, 60), rng);
    WorstTracker crf, hessid;
    for (const auto& p : gpts) {
      for (int a = 0; a < n; ++a) crf.offer(anti_crf_residual(Fg, a, p).max_abs(), p);
      hessid.offer(crf_identities(Fg, p).residual.cwiseAbs().maxCoeff(), p);
    }
    C.add("fueter", "anti-crf-witness", "crf1", crf, 1e-10);
    C.add("fueter", "anti-crf-hessian", "crfth13h", hessid, 1e-8);
  }
}

// ---------------------------------------------------------------- cayley

inline void run_cayley(Campaign& C) {
  const int n = C.cfg.n;
  std::mt19937_64 rng(suite_seed(C.cfg.seed, 3));

  WorstTracker round, constraint, conf, tang, conf_inv;
  for (int k = 0; k < C.cfg.points; ++k) {
    SpherePoint s = random_sphere_point(n, rng);
    while (norm_sq(Quaternion(1.0) + s.p) < 1e-3) s = random_sphere_point(n, rng);
    const auto v1 = random_sphere_tangent(s, rng);
    const auto v2 = random_sphere_tangent(s, rng);
    const auto amb = s.ambient();

    const SiegelPoint z = cayley(s);
    constraint.offer(z.constraint_residual(), amb);
    const SpherePoint s2 = inverse_cayley(z);
    const auto amb2 = s2.ambient();
    double rt = 0.0;
    for (std::size_t i = 0; i < amb.size(); ++i) rt = std::max(rt, std::abs(amb[i] - amb2[i]));
    round.offer(rt, amb);

    tang.offer(sphere_tangency_residual(s, v1), amb);
    tang.offer(std::abs(re(sphere_contact_form(s, v1))), amb);
    conf.offer(conformality_residual(s, v1, v2), amb);
  }
  C.add("cayley", "roundtrip", "e:Cayley transf ctct form", round, 1e-12);
  C.add("cayley", "siegel-constraint", "e:Cayley transf ctct form", constraint, 1e-12);
  C.add("cayley", "sphere-form-tangency", "e:stand cont form on S", tang, 1e-12);
  C.add("cayley", "conformality", "e:Cayley transf ctct form", conf, 1e-10);

  for (int k = 0; k < std::min(C.cfg.points, 200); ++k) {
    GroupPoint g(n);
    g.c = box_point(4 * n + 3, rng);
    const auto w = box_point(4 * n + 3, rng);
    conf_inv.offer(conformality_residual_siegel(group_to_siegel(g), w), g.c);
  }
  C.add("cayley", "conformality-inverse", "e:Cayley transf ctct form", conf_inv, 1e-10);
}

// ---------------------------------------------------------------- hypersurface

inline void run_hypersurface(Campaign& C) {
  const int n = C.cfg.n;
  const int amb = 4 * (n + 1);
  std::mt19937_64 rng(suite_seed(C.cfg.seed, 4));
  std::normal_distribution<double> N(0.0, 1.0);

  auto grid_on = [&](const Hypersurface& h, int count) {
    std::vector<std::vector<double>> g;
    int guard = 0;
    while (static_cast<int>(g.size()) < count && guard < 20 * count) {
      ++guard;
      auto p = box_point(amb, rng);
      try {
        p = project_to_surface(h, p);
      } catch (const std::domain_error&) {
        continue;
      }
      g.push_back(std::move(p));
    }
    return g;
  };

  std::vector<double> ba(n + 1), bb(n + 1);
  for (int a = 0; a <= n; ++a) {
    ba[a] = 1.0 + 0.7 * a;
    bb[a] = 0.6 + 0.45 * a;
  }
  struct Surface {
    std::string name;
    Hypersurface h;
    QcVerdict expect;
  };
  const std::vector<Surface> surfaces = {
      {"sphere", surface_sphere(n), QcVerdict::QC},
      {"ellipsoid-a", surface_ellipsoid(ba), QcVerdict::QC},
      {"ellipsoid-b", surface_ellipsoid(bb), QcVerdict::QC},
      {"deformed-sphere", surface_deformed_sphere(n, 0.5), QcVerdict::NotQC},
  };

  WorstTracker relation;
  const int per_surface = std::min(C.cfg.points, 48);
  for (const auto& S : surfaces) {
    const auto grid = grid_on(S.h, per_surface);
    const QcCheckResult r1 = qc_check(S.h, grid);
    const QcCheckResult r2 = qc_check_hessian(S.h, grid);
    C.add("hypersurface", S.name + "-verdict", "d:QRhypersurface", to_string(r1.verdict),
          r1.verdict == S.expect ? 0.0 : 1.0, 0.0);
    C.add("hypersurface", S.name + "-criteria-agree", "p:QRhypersurface",
          std::string(to_string(r1.verdict)) + " / " + to_string(r2.verdict),
          r1.verdict == r2.verdict ? 0.0 : 1.0, 0.0);
    if (S.expect == QcVerdict::QC)
      C.add("hypersurface", S.name + "-invariance", "d:QRhypersurface",
            "worst over " + std::to_string(grid.size()) + " points", r1.worst_invariance, 1e-8);

    for (std::size_t k = 0; k < grid.size() && k < 10; ++k) {
      const auto& p = grid[k];
      const SurfaceFrame fr = surface_frame(S.h, p);
      Eigen::VectorXd cx(4 * n), cy(4 * n);
      for (int i = 0; i < 4 * n; ++i) {
        cx(i) = N(rng);
        cy(i) = N(rng);
      }
      const Eigen::VectorXd X = fr.horizontal * cx, Y = fr.horizontal * cy;
      for (int j = 1; j <= 3; ++j) relation.offer(dtheta_ii_residual(S.h, p, j, X, Y), p);
    }
  }
  C.add("hypersurface", "dtheta-ii-relation", "p:QRhypersurface", relation, 1e-8);

  {
    const auto grid = grid_on(surface_plane(n), std::min(C.cfg.points, 16));
    const QcCheckResult r = qc_check(surface_plane(n), grid);
    C.add("hypersurface", "plane-degenerate", "d:QRhypersurface", to_string(r.verdict),
          r.verdict == QcVerdict::Inconclusive ? 0.0 : 1.0, 0.0);
  }
}

// ---------------------------------------------------------------- autos

inline void run_autos(Campaign& C) {
  const int n = C.cfg.n, d = 4 * n + 3;
  std::mt19937_64 rng(suite_seed(C.cfg.seed, 5));
  std::normal_distribution<double> N(0.0, 1.0);

  const auto pts = box_grid(d, std::min(C.cfg.points, 100), rng);

  Quaternion sigma{0.0, N(rng), N(rng), N(rng)};
  sigma = (1.0 / norm(sigma)) * sigma;
  std::vector<double> dir(d);
  for (auto& c : dir) c = N(rng);

  struct Gen {
    std::string name;
    VectorFieldOnGroup Q;
    double nu_expect;
    Eigen::Matrix3d O_expect;
  };
  std::vector<Gen> gens;
  gens.push_back({"dilation", dilation_field(n), 2.0, Eigen::Matrix3d::Zero()});
  {
    // L of the form triple under the structure rotation is the commutator
    // with sigma on imaginary quaternions: L Theta_j = sum_i [sigma, u_i]_j
    // Theta_i, so column i of the fitted matrix holds [sigma, u_i].
    Eigen::Matrix3d O;
    const Quaternion units[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    for (int i = 0; i < 3; ++i) {
      const Quaternion c = sigma * units[i] - units[i] * sigma;
      for (int j = 0; j < 3; ++j) O(j, i) = c.comp(j + 1);
    }
    gens.push_back({"rotation", rotation_generator(n, sigma), 0.0, O});
  }
  gens.push_back({"left-translation", left_translation_generator(n, dir), 0.0,
                  Eigen::Matrix3d::Zero()});
  gens.push_back({"right-multiplication", right_multiplication_generator(n, sigma), 0.0,
                  Eigen::Matrix3d::Zero()});

  for (const auto& G : gens) {
    const QcFieldCheck chk = qc_field_check(G.Q, pts);
    WorstTracker fit, nuerr, oerr;
    for (std::size_t k = 0; k < chk.points.size(); ++k) {
      const auto& pr = chk.points[k];
      fit.offer(std::max(pr.fit_residual, pr.skew_residual), pts[k]);
      nuerr.offer(pr.nu - G.nu_expect, pts[k]);
      oerr.offer((pr.O - G.O_expect).cwiseAbs().maxCoeff(), pts[k]);
    }
    C.add("autos", G.name + "-span-fit", "lieaut13c", fit, 1e-10);
    C.add("autos", G.name + "-nu", "autvf", nuerr, 1e-9);
    C.add("autos", G.name + "-rotation-part", "autvf", oerr, 1e-9);
  }

  // Independent flow transport agrees with the exact Cartan evaluation.
  {
    WorstTracker flow;
    for (std::size_t k = 0; k < pts.size() && k < 8; ++k) {
      std::vector<double> w(d);
      for (auto& c : w) c = N(rng);
      for (const auto* Q : {&gens[0].Q, &gens[1].Q}) {
        const auto a = lie_derivative_eta(*Q, pts[k], w);
        const auto b = lie_derivative_flow(*Q, pts[k], w, 5e-5);
        for (int s = 0; s < 3; ++s) flow.offer(a[s] - b[s], pts[k]);
      }
    }
    C.add("autos", "flow-crosscheck", "lieaut13c", flow, 1e-6);
  }

  // Triple -> field -> triple closes, and the triples are compatible.
  {
    WorstTracker rec, compat;
    for (const auto& G : gens) {
      const auto f = triple_of(G.Q);
      const VectorFieldOnGroup Qrec = qc_field_from_triple(n, f);
      for (std::size_t k = 0; k < pts.size() && k < 30; ++k) {
        const auto a = G.Q.value(pts[k]), b = Qrec.value(pts[k]);
        for (int i = 0; i < d; ++i) rec.offer(a[i] - b[i], pts[k]);
        const TripleCompatibility tc = triple_compatibility(n, f, pts[k]);
        compat.offer(std::max({tc.diag, tc.offdiag, tc.gradient}), pts[k]);
      }
    }
    C.add("autos", "reconstruction", "e:form of Q", rec, 1e-10);
    C.add("autos", "triple-compatibility", "qaut1", compat, 1e-10);
  }

  // Negative control: a field outside the span must be rejected.
  {
    std::vector<Poly> comp(d, Poly::constant(d, 0.0));
    Exponents e(d, 0);
    e[0] = 1;
    Poly t1(d);
    t1.add_term(e, 2.0);
    comp[4 * n] = t1;
    const QcFieldCheck chk =
        qc_field_check(field_from_poly_components(n, comp), box_grid(d, 8, rng));
    C.add("autos", "fit-discriminates", "autvf", "-", chk.pass ? 1.0 : 0.0, 0.0);
  }
}

}  // namespace detail

struct Report {
  CampaignConfig config;
  std::vector<ReportRow> rows;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  nlohmann::json to_json(bool with_timestamp = true) const {
    nlohmann::json meta{{"n", config.n},
                        {"seed", config.seed},
                        {"points", config.points},
                        {"version", kVersion},
                        {"sampling", kSamplingNote}};
    if (with_timestamp) {
      char buf[32];
      const std::time_t now = std::time(nullptr);
      std::tm tm{};
      gmtime_r(&now, &tm);
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      meta["timestamp"] = buf;
    }
    return nlohmann::json{{"meta", meta}, {"rows", rows}};
  }

  std::string to_csv() const {
    auto quote = [](const std::string& s) {
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + "\"";
    };
    std::string out = "suite,check,point,value,tolerance,pass,anchor\n";
    for (const auto& r : rows) {
      out += quote(r.suite) + "," + quote(r.check) + "," + quote(r.point) + "," +
             detail::fmt_double(r.value) + "," + detail::fmt_double(r.tolerance) + "," +
             (r.pass ? "true" : "false") + "," + quote(r.anchor) + "\n";
    }
    return out;
  }

  std::string to_markdown() const {
    std::string out = "# Verification report\n\n";
    out += "- n = " + std::to_string(config.n) + ", seed = " + std::to_string(config.seed) +
           ", points = " + std::to_string(config.points) + ", version = " + kVersion + "\n";
    out += std::string("- sampling: ") + kSamplingNote + "\n\n";
    out += "| suite | checks | failed | worst value | worst check |\n";
    out += "|---|---:|---:|---:|---|\n";
    for (const auto& suite : known_suites()) {
      int total = 0, failed = 0;
      double worst = -1.0;
      std::string worst_check = "-";
      for (const auto& r : rows) {
        if (r.suite != suite) continue;
        ++total;
        if (!r.pass) ++failed;
        if (std::abs(r.value) > worst) {
          worst = std::abs(r.value);
          worst_check = r.check;
        }
      }
      if (total == 0) continue;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", worst);
      out += "| " + suite + " | " + std::to_string(total) + " | " + std::to_string(failed) +
             " | " + buf + " | " + worst_check + " |\n";
    }
    out += "\n## Failing checks\n\n";
    bool any = false;
    for (const auto& r : rows) {
      if (r.pass) continue;
      any = true;
      char buf[64];
      std::snprintf(buf, sizeof buf, "value %.6e vs tolerance %.1e", r.value, r.tolerance);
      out += "- " + r.suite + "/" + r.check + " (anchor: " + r.anchor + "): " + buf + "\n";
    }
    if (!any) out += "none\n";
    return out;
  }
};

inline void validate_config(const CampaignConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("dimension parameter must be at least 1");
  if (cfg.points < 1) throw std::invalid_argument("point count must be at least 1");
  for (const auto& s : cfg.suites) {
    const auto& known = known_suites();
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw std::invalid_argument("unknown suite: " + s);
  }
  for (const auto& [k, v] : cfg.tolerances)
    if (!(v >= 0.0)) throw std::invalid_argument("tolerance override must be nonnegative: " + k);
  if (cfg.inject < 0.0) throw std::invalid_argument("perturbation strength must be nonnegative");
}

inline Report run_campaign(const CampaignConfig& cfg) {
  validate_config(cfg);
  detail::Campaign C{cfg, {}};
  auto want = [&](const char* s) {
    return cfg.suites.empty() ||
           std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end();
  };
  if (want("algebra")) detail::run_algebra(C);
  if (want("einstein")) detail::run_einstein(C);
  if (want("fueter")) detail::run_fueter(C);
  if (want("cayley")) detail::run_cayley(C);
  if (want("hypersurface")) detail::run_hypersurface(C);
  if (want("autos")) detail::run_autos(C);
  return Report{cfg, std::move(C.rows)};
}

}  // namespace qcg
