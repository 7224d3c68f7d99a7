#include "bubblekit/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bubblekit/blowup_predictor.hpp"
#include "bubblekit/constants.hpp"
#include "bubblekit/shipped_scenarios.hpp"
#include "bubblekit/vortex.hpp"

namespace bubblekit {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

struct Suite {
  std::vector<VerifyCheck> checks;

  // pass when measured <= bound
  void upper(int criterion, const std::string& name, double measured, double bound) {
    checks.push_back({criterion, name, measured <= bound, measured, bound});
  }
  // pass when measured >= bound
  void lower(int criterion, const std::string& name, double measured, double bound) {
    checks.push_back({criterion, name, measured >= bound, measured, bound});
  }
};

double gamma_fn(double x) { return std::tgamma(x); }

// Beta-reduction references for the rational radial integrands. These are an
// independent route kept out of the library API on purpose: quadrature is the
// shipped path, the closed forms only referee it.
struct ClosedForms {
  double c2, c3, c4, c5, c6;
};

ClosedForms closed_forms(int n) {
  const double nd = n;
  const double c0p = std::pow(nd * (nd - 2.0), nd / 2.0);
  const double area = 2.0 * std::pow(kPi, nd / 2.0) / gamma_fn(nd / 2.0);
  const double moment = std::pow(kPi, (nd - 1.0) / 2.0) / gamma_fn((nd + 1.0) / 2.0);
  ClosedForms f{};
  f.c2 = c0p * std::pow(kPi, nd / 2.0) / gamma_fn(nd / 2.0 + 1.0);
  const double i3 =
      std::pow(gamma_fn((nd + 1.0) / 2.0), 2.0) / ((nd - 1.0) * gamma_fn(nd + 1.0));
  f.c3 = (nd - 2.0) * c0p * moment * i3;
  const double i4 =
      nd / (nd - 2.0) * std::pow(gamma_fn(nd / 2.0), 2.0) / gamma_fn(nd + 1.0);
  f.c4 = (nd - 2.0) / (2.0 * nd) * c0p * area * i4;
  const double i5 = std::pow(gamma_fn(nd / 2.0), 2.0) / (2.0 * gamma_fn(nd + 1.0));
  f.c5 = (nd - 2.0) * (nd - 2.0) / 8.0 * c0p * area * i5;
  const double i6 =
      nd / 4.0 * std::pow(gamma_fn(nd / 2.0), 2.0) / gamma_fn(nd + 1.0);
  f.c6 = (nd - 2.0) / (2.0 * nd) * c0p * area * i6;
  return f;
}

void constants_suite(Suite& s) {
  for (int n = 5; n <= 10; ++n) {
    const ConstantsTable t = compute_constants(n);
    const ConstantsTable t2 = compute_constants(n, 1e-10, 16);  // node doubling
    const ClosedForms f = closed_forms(n);
    const std::string tag = "n=" + std::to_string(n) + " ";
    s.upper(1, tag + "c2 vs closed form (rel)", std::abs(t.c2 - f.c2) / std::abs(f.c2),
            1e-8);
    s.upper(1, tag + "c3 vs closed form (rel)", std::abs(t.c3 - f.c3) / std::abs(f.c3),
            1e-8);
    s.upper(1, tag + "c4 vs closed form (rel)", std::abs(t.c4 - f.c4) / std::abs(f.c4),
            1e-8);
    s.upper(1, tag + "c6 vs closed form (rel)", std::abs(t.c6 - f.c6) / std::abs(f.c6),
            1e-8);
    s.upper(1, tag + "c5 node-doubling stability (rel)",
            std::abs(t.c5 - t2.c5) / std::abs(t.c5), 1e-8);
    s.lower(1, tag + "kappa1 positive", t.kappa1, 1e-300);
    s.lower(1, tag + "kappa2 positive", t.kappa2, 1e-300);
    s.lower(1, tag + "kappa3 positive", t.kappa3, 1e-300);
    // c3's integrand changes sign; its numerical sign must survive refinement
    s.upper(1, tag + "c3 sign stable under refinement",
            (t.c3 > 0) == (t2.c3 > 0) ? 0.0 : 1.0, 0.5);
    // kappa refinement consistency at a tighter tolerance
    const ConstantsTable t3 = compute_constants(n, 1e-12);
    const double dk = std::max({std::abs(t.kappa1 - t3.kappa1),
                                std::abs(t.kappa2 - t3.kappa2),
                                std::abs(t.kappa3 - t3.kappa3)});
    s.upper(1, tag + "kappa stability tol 1e-10 -> 1e-12", dk, 1e-8);
  }
}

double vortex_fd_gradient_error(const Eigen::MatrixXd& Q, int n,
                                const std::vector<Eigen::VectorXd>& xi) {
  VortexConfiguration c{n, Q, xi};
  const std::vector<Eigen::VectorXd> g = gradient(c);
  const double h = 1e-6;
  double worst = 0.0;
  for (size_t i = 0; i < xi.size(); ++i)
    for (long k = 0; k < xi[i].size(); ++k) {
      VortexConfiguration cp = c, cm = c;
      cp.xi[i][k] += h;
      cm.xi[i][k] -= h;
      const double fd = (energy(cp) - energy(cm)) / (2.0 * h);
      const double an = g[i][k];
      worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
    }
  return worst;
}

double vortex_fd_hessian_error(const Eigen::MatrixXd& Q, int n,
                               const std::vector<Eigen::VectorXd>& xi) {
  VortexConfiguration c{n, Q, xi};
  const Eigen::MatrixXd h = hessian(c);
  const int d = n - 1;
  const double step = 1e-6;
  double worst = 0.0;
  for (size_t i = 0; i < xi.size(); ++i)
    for (long k = 0; k < d; ++k) {
      VortexConfiguration cp = c, cm = c;
      cp.xi[i][k] += step;
      cm.xi[i][k] -= step;
      const std::vector<Eigen::VectorXd> gp = gradient(cp);
      const std::vector<Eigen::VectorXd> gm = gradient(cm);
      for (size_t j = 0; j < xi.size(); ++j)
        for (long l = 0; l < d; ++l) {
          const double fd = (gp[j][l] - gm[j][l]) / (2.0 * step);
          const double an = h(long(j) * d + l, long(i) * d + k);
          worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }
    }
  return worst;
}

void vortex_suite(Suite& s, std::uint64_t seed) {
  const int n = 5;
  const Eigen::MatrixXd id4 = Eigen::MatrixXd::Identity(4, 4);

  // m = 2 isotropic pair: |b|^n = (n-2)/(2^{n-1} sigma)
  {
    VortexSearchResult r = find_critical_points(id4, 2, n, 200, seed);
    s.lower(2, "m=2 isotropic: pair found", double(r.points.size()), 1.0);
    double derr = 1e300, vmax = 0.0;
    for (const auto& p : r.points) {
      derr = std::min(derr, std::abs(std::pow(p.config.xi[0].norm(), n) - 3.0 / 16.0));
      vmax = std::max(vmax, std::abs(p.virial));
    }
    s.upper(2, "m=2 isotropic: |b|^5 - 3/16", derr, 1e-10);
    s.upper(2, "m=2 isotropic: virial at reported points", vmax, 1e-9);
  }

  // m = 3 collinear solution: gamma^n = (n-2)(1+2^{1-n})/sigma
  {
    VortexSearchResult r = find_critical_points(id4, 3, n, 200, seed + 1);
    const double gamma_n = 51.0 / 16.0;
    double best = 1e300, vmax = 0.0;
    for (const auto& p : r.points) {
      vmax = std::max(vmax, std::abs(p.virial));
      // collinear candidates: middle point at the origin
      double mid = 1e300;
      for (const auto& xi : p.config.xi) mid = std::min(mid, xi.norm());
      if (mid > 1e-6) continue;
      double outer = 0.0;
      for (const auto& xi : p.config.xi) outer = std::max(outer, xi.norm());
      best = std::min(best, std::abs(std::pow(outer, n) - gamma_n));
    }
    s.upper(2, "m=3 collinear: gamma^5 - 51/16", best, 1e-10);
    s.upper(2, "m=3: virial at reported points", vmax, 1e-9);
  }

  // derivative checks at random admissible configurations
  {
    Rng rng(seed ^ 0xfeed5eed);
    double gworst = 0.0, hworst = 0.0, symworst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Eigen::VectorXd> xi;
      for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd v(4);
        for (int k = 0; k < 4; ++k) v[k] = rng.gaussian();
        xi.push_back(0.5 * v + Eigen::VectorXd::Constant(4, 0.3 * i));
      }
      VortexConfiguration c{n, id4, xi};
      if (interaction_part(c) > 1e6) continue;  // nearly coincident draw
      gworst = std::max(gworst, vortex_fd_gradient_error(id4, n, xi));
      hworst = std::max(hworst, vortex_fd_hessian_error(id4, n, xi));
      const Eigen::MatrixXd h = hessian(c);
      symworst = std::max(symworst, (h - h.transpose()).cwiseAbs().maxCoeff());
    }
    s.upper(2, "gradient vs finite differences (rel)", gworst, 1e-6);
    s.upper(2, "hessian vs finite differences (rel)", hworst, 1e-6);
    s.upper(2, "hessian symmetry", symworst, 1e-12);
  }

  // local quadratic convergence on the collinear solution, anisotropic Q
  {
    Eigen::VectorXd diag(4);
    diag << 1.0, 1.5, 2.0, 2.5;
    const Eigen::MatrixXd q = diag.asDiagonal();
    const double gamma = std::pow(51.0 / 16.0, 0.2);
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
    e1[0] = 1.0;
    std::vector<Eigen::VectorXd> xi = {
        1.3 * gamma * e1 + 0.15 * Eigen::VectorXd::Ones(4),
        0.07 * Eigen::VectorXd::Ones(4),
        -0.8 * gamma * e1 - 0.05 * Eigen::VectorXd::Ones(4)};
    NewtonTrace trace;
    const bool ok = newton_run(q, n, xi, &trace);
    double worst_c = ok ? 0.0 : 1e300;
    if (ok) {
      std::vector<double> errs;
      for (const auto& it : trace.iterates) {
        double e = 0.0;
        for (size_t i = 0; i < xi.size(); ++i)
          e = std::max(e, (it[i] - xi[i]).norm());
        if (e > 1e-13 && e < 0.05) errs.push_back(e);
      }
      const size_t cnt = errs.size();
      for (size_t k = cnt >= 4 ? cnt - 4 : 0; k + 1 < cnt; ++k)
        worst_c = std::max(worst_c, errs[k + 1] / (errs[k] * errs[k]));
    }
    s.upper(2, "Newton quadratic convergence constant", worst_c, 10.0);
  }
}

void nonexistence_suite(Suite& s, std::uint64_t seed) {
  const int n = 5;
  Rng rng(seed ^ 0xabcd1234);
  int found = 0;
  bool all_obstructed = true;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd b(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b(i, j) = rng.gaussian();
    const Eigen::MatrixXd q =
        -(b * b.transpose()) - 0.1 * Eigen::MatrixXd::Identity(4, 4);
    for (int m : {2, 3, 4}) {
      VortexSearchResult r =
          find_critical_points(q, m, n, 100, seed + std::uint64_t(trial * 3 + m));
      found += int(r.points.size());
      all_obstructed = all_obstructed && r.diag.obstructed;
      // certificate: the quadratic part cannot be positive while the
      // interaction part is
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
      all_obstructed = all_obstructed && es.eigenvalues().maxCoeff() <= 0.0;
    }
  }
  s.upper(3, "negative-definite Q: critical points found", double(found), 0.0);
  s.upper(3, "negative-definite Q: obstruction certified", all_obstructed ? 0.0 : 1.0,
          0.5);
}

void residual_decay_suite(Suite& s) {
  const ConstantsTable table = compute_constants(5);
  const double kNoiseFloor = 1e-12;
  struct Case {
    const char* name;
    BlowupScenario scenario;
  };
  std::vector<Case> cases;
  cases.push_back({"interior", shipped_interior_scenario()});
  cases.push_back({"boundary-simple", shipped_boundary_scenario()});
  cases.push_back({"cluster-m3", shipped_cluster_scenario()});
  const std::vector<double> sweep = {1e-2, 1e-3, 1e-4, 1e-5};
  for (const Case& c : cases) {
    std::vector<double> ratios;
    for (double eps : sweep) {
      const Prediction p = predict(c.scenario, eps, table);
      const ResidualReport r = balancing_residual(c.scenario, p, table);
      double worst = 0.0;
      for (const auto& row : r.rows) worst = std::max(worst, row.defining_ratio);
      ratios.push_back(worst);
    }
    double worst_step = 0.0;
    for (size_t k = 0; k + 1 < ratios.size(); ++k) {
      if (ratios[k + 1] <= kNoiseFloor) continue;  // exact cancellation regime
      worst_step = std::max(worst_step, ratios[k + 1] / std::max(ratios[k], 1e-300));
    }
    s.upper(4, std::string(c.name) + ": residual ratio decay per decade", worst_step,
            0.5);
    // and the ratio itself must head to zero
    s.upper(4, std::string(c.name) + ": final ratio", ratios.back(),
            std::max(kNoiseFloor, 0.2 * ratios.front()));
  }
  // cluster pairing stays bounded by the remainder scale
  {
    const BlowupScenario sc = shipped_cluster_scenario();
    double worst = 0.0;
    for (double eps : sweep) {
      const Prediction p = predict(sc, eps, table);
      const ResidualReport r = balancing_residual(sc, p, table);
      for (const auto& row : r.rows)
        if (row.pairing_scale > 0.0)
          worst = std::max(worst, row.pairing / row.pairing_scale);
    }
    s.upper(4, "cluster barycentric pairing / remainder scale", worst, 10.0);
  }
}

void cluster_geometry_suite(Suite& s) {
  const ConstantsTable table = compute_constants(5);
  const BlowupScenario sc = shipped_cluster_scenario();
  const ClusterSpec& cl = sc.clusters[0];
  const std::vector<double> sweep = {1e-3, 1e-4, 1e-5};
  const double power = (5.0 - 2.0) / 5.0;

  // pairwise distances scale like eps^{(n-2)/n}
  std::vector<std::vector<double>> scaled;  // per eps, per pair
  for (double eps : sweep) {
    const std::vector<SpherePoint> pts = predict_cluster_positions(cl, eps, table);
    std::vector<double> row;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        row.push_back(geodesic_distance(pts[i], pts[j]) / std::pow(eps, power));
    scaled.push_back(row);
  }
  double worst_var = 0.0;
  for (size_t pair = 0; pair < scaled.front().size(); ++pair) {
    double lo = 1e300, hi = 0.0;
    for (const auto& row : scaled) {
      lo = std::min(lo, row[pair]);
      hi = std::max(hi, row[pair]);
    }
    worst_var = std::max(worst_var, hi / lo - 1.0);
  }
  s.upper(5, "pairwise distance / eps^{3/5} constancy", worst_var, 1e-3);

  // round trip: the forward map returns bbar exactly once the chart factor
  // sin|v|/|v| is unwound; the tracked correction scales like eps^{6/5}
  double worst_exact = 0.0;
  std::vector<double> corr_scaled;
  for (double eps : sweep) {
    const double scale = cluster_rescale(table, cl.z.value, cl.z.normal_derivative, eps);
    const std::vector<SpherePoint> pts = predict_cluster_positions(cl, eps, table);
    double corr_max = 0.0;
    for (int i = 0; i < cl.m; ++i) {
      const Vec v = cl.z.frame * (cl.bbar[size_t(i)] / scale);
      const Vec tangent = tangent_project(pts[size_t(i)], cl.z.location).vec;
      const Vec b_back = scale * (cl.z.frame.transpose() * tangent);
      corr_max = std::max(corr_max, (b_back - cl.bbar[size_t(i)]).norm());
      const double r = v.norm();
      const double chart = r > 0.0 ? r / std::sin(r) : 1.0;
      worst_exact = std::max(
          worst_exact, (chart * b_back - cl.bbar[size_t(i)]).norm());
    }
    corr_scaled.push_back(corr_max / std::pow(eps, 2.0 * power));
  }
  s.upper(5, "round trip after chart factor", worst_exact, 1e-10);
  double lo = 1e300, hi = 0.0;
  for (double c : corr_scaled) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  s.upper(5, "chart correction ~ eps^{6/5} (spread)", hi / lo - 1.0, 1.0);

  // predicted points stay on the boundary and separated
  {
    const double eps = 1e-4;
    const Prediction p = predict(sc, eps, table);
    double height = 0.0, minsep = 1e300, minb = 1e300;
    for (const auto& b : p.bubbles) height = std::max(height, std::abs(b.param.a.height()));
    for (size_t i = 0; i < p.bubbles.size(); ++i)
      for (size_t j = i + 1; j < p.bubbles.size(); ++j)
        minsep = std::min(minsep, geodesic_distance(p.bubbles[i].param.a,
                                                    p.bubbles[j].param.a));
    for (int i = 0; i < cl.m; ++i)
      for (int j = i + 1; j < cl.m; ++j)
        minb = std::min(minb, (cl.bbar[size_t(i)] - cl.bbar[size_t(j)]).norm());
    const double scale = cluster_rescale(table, cl.z.value, cl.z.normal_derivative, eps);
    s.upper(5, "cluster points on boundary", height, 1e-10);
    s.lower(5, "cluster separation vs limit spacing", minsep, 0.5 * minb / scale);
  }
}

void appendix_suite(Suite& s) {
  const int n = 5;
  const BlowupScenario sc = shipped_cluster_scenario();
  const CurvatureField& field = sc.field;
  const SpherePoint z = sc.clusters[0].z.location;
  const Mat fr = boundary_tangent_frame(z);

  // antisymmetry defect of the weighted boundary gradient is O(|a-h|^2)
  {
    std::vector<double> ratios;
    for (double h : {1e-1, 1e-2, 1e-3}) {
      Vec dir = fr.col(0) + 0.3 * fr.col(1);
      dir /= dir.norm();
      const SpherePoint a = exp_map(z, (h / 2) * dir);
      const SpherePoint b = exp_map(z, (-h / 2) * dir);
      const double d = (a.coords() - b.coords()).norm();
      ratios.push_back(gradK1_symmetry_defect(field, a, b) / (d * d));
    }
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    s.upper(6, "gradK1 symmetry defect ratio stability", hi / lo, 1.5);
  }
  // transport to the limiting Hessian is O(|a-z|^2)
  {
    Vec edir = fr.col(0) - 0.7 * fr.col(2);
    edir /= edir.norm();
    const SpherePoint e = exp_map(z, 1.0 * edir);
    std::vector<double> ratios;
    for (double h : {1e-1, 1e-2, 1e-3}) {
      Vec dir = fr.col(0) + 0.3 * fr.col(1);
      dir /= dir.norm();
      const SpherePoint a = exp_map(z, h * dir);
      const double d = (a.coords() - z.coords()).norm();
      ratios.push_back(gradK1_transport_defect(field, a, z, e) / (d * d));
    }
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    s.upper(6, "gradK1 transport defect ratio stability", hi / lo, 1.5);
  }
  // barycentric pairing positivity over the declared grid
  {
    double min_ratio = 1e300;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        for (int k = 0; k < 10; ++k) {
          const double ratio_l = 0.5 + 1.5 * i / 9.0;
          const double base = 100.0;
          const double d1 = 0.01 + 0.09 * j / 9.0;
          const double d2 = 0.01 + 0.09 * k / 9.0;
          const Vec u = fr.col(0);
          const Vec v = (fr.col(0) * 0.2 + fr.col(1)).normalized();
          const BubbleParam p1 = make_bubble(exp_map(z, d1 * u), base * ratio_l);
          const BubbleParam p2 = make_bubble(exp_map(z, -d2 * v), base);
          min_ratio = std::min(min_ratio,
                               barycentric_pairing(n, p1, p2, z) /
                                   interaction_eps(n, p1, p2));
        }
    s.lower(6, "barycentric pairing e_ij/eps_ij grid minimum", min_ratio, 1e-12);
  }
  // subcritical expansion defect is O(eps^2 log)
  {
    const SpherePoint x = exp_map(z, 0.7 * fr.col(1));
    const double lambda = 50.0;
    const double cosd = std::cos(geodesic_distance(z, x));
    const double logd = std::log(2.0 + (lambda * lambda - 1.0) * (1.0 - cosd));
    const double limit = std::pow(double(n - 2) / 2.0 * logd, 2.0) / 2.0;
    double worst = 0.0, at_small = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const double q = subcritical_expansion_check(n, z, lambda, eps, x) / (eps * eps);
      worst = std::max(worst, q / limit);
      at_small = q;
    }
    s.upper(6, "subcritical defect / eps^2 bounded", worst, 2.0);
    s.upper(6, "subcritical defect limit agreement", std::abs(at_small / limit - 1.0),
            0.05);
  }
}

void interaction_suite(Suite& s, std::uint64_t seed) {
  const int n = 5;
  Rng rng(seed ^ 0x1234abcd5678ef90ull);
  auto random_boundary_point = [&]() {
    Vec x(n + 1);
    for (int k = 0; k < n; ++k) x[k] = rng.gaussian();
    x[n] = 0.0;
    x /= x.norm();
    return SpherePoint(x);
  };

  double sym_worst = 0.0;
  double sign_sum_worst = 0.0;
  double sign_dom_worst = 1e300;
  bool dlam_sign_ok = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const double l1 = std::exp(rng.uniform(std::log(10.0), std::log(1e6)));
    const double l2 = std::exp(rng.uniform(std::log(10.0), std::log(1e6)));
    const BubbleParam p1 = make_bubble(random_boundary_point(), l1);
    const BubbleParam p2 = make_bubble(random_boundary_point(), l2);
    const double e12 = interaction_eps(n, p1, p2);
    const double e21 = interaction_eps(n, p2, p1);
    sym_worst = std::max(sym_worst, std::abs(e12 - e21));
    const double d1 = d_eps_d_loglambda(n, p1, p2);
    const double d2 = d_eps_d_loglambda(n, p2, p1);
    sign_sum_worst = std::max(sign_sum_worst, d1 + d2);  // must be <= 0
    if (l1 >= 2.0 * l2) sign_dom_worst = std::min(sign_dom_worst, -d1 / e12);
    if (l1 >= l2 && d1 > 0.0) dlam_sign_ok = false;
  }
  s.upper(7, "eps_ij symmetry (exact)", sym_worst, 0.0);
  s.upper(7, "sum of log-lambda derivatives <= 0", sign_sum_worst, 0.0);
  s.lower(7, "-dlam/eps >= 0.1 when lambda_i >= 2 lambda_j", sign_dom_worst, 0.1);
  s.upper(7, "dlam <= 0 when lambda_i >= lambda_j", dlam_sign_ok ? 0.0 : 1.0, 0.5);

  // far-field ratio within 1% of 1 once (min lambda) * d >= 1e3
  {
    const SpherePoint base = random_boundary_point();
    const Mat fr = boundary_tangent_frame(base);
    double worst = 0.0;
    for (double d : {1e-3, 1e-2, 5e-2}) {
      for (double lam_scale : {1.0, 2.5}) {
        const double lam = lam_scale * 1.8e3 / d;
        const BubbleParam p1 = make_bubble(base, lam);
        const BubbleParam p2 = make_bubble(exp_map(base, d * fr.col(0)), lam / 1.7);
        worst = std::max(worst,
                         std::abs(interaction_eps(n, p1, p2) /
                                      far_field_reference(n, p1, p2) -
                                  1.0));
      }
    }
    s.upper(7, "far-field ratio within 1% of 1", worst, 1e-2);
  }

  // scaling law: eps_ij depends only on (li/lj, li lj (1 - cos d)). Rescaling
  // by powers of two keeps the rate ratio and the distance product exact; the
  // grid keeps 1 - cos d away from the cancellation regime.
  {
    const SpherePoint base = random_boundary_point();
    const Mat fr = boundary_tangent_frame(base);
    double worst = 0.0;
    for (double l1 : {50.0, 120.0})
      for (double ratio : {0.7, 1.3})
        for (double d : {0.1, 0.2, 0.3})
          for (double scale : {2.0, 4.0, 8.0}) {
            const BubbleParam p1 = make_bubble(base, l1);
            const BubbleParam p2 =
                make_bubble(exp_map(base, d * fr.col(1)), l1 * ratio);
            const double product =
                l1 * (l1 * ratio) *
                (1.0 - std::cos(geodesic_distance(p1.a, p2.a)));
            const double l1b = l1 * scale;
            const double l2b = l1 * ratio * scale;
            const double db = std::acos(1.0 - product / (l1b * l2b));
            const BubbleParam q1 = make_bubble(base, l1b);
            const BubbleParam q2 = make_bubble(exp_map(base, db * fr.col(1)), l2b);
            worst = std::max(worst, std::abs(interaction_eps(n, p1, p2) -
                                             interaction_eps(n, q1, q2)));
          }
    s.upper(7, "scaling law invariance", worst, 1e-12);
  }
}

}  // namespace

std::vector<VerifyCheck> run_verification(const VerifyOptions& opt) {
  Suite s;
  constants_suite(s);
  vortex_suite(s, opt.seed);
  nonexistence_suite(s, opt.seed);
  residual_decay_suite(s);
  cluster_geometry_suite(s);
  appendix_suite(s);
  interaction_suite(s, opt.seed);
  return s.checks;
}

int count_failures(const std::vector<VerifyCheck>& checks) {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

}  // namespace bubblekit
