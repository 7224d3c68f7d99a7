#include "bubblekit/blowup_predictor.hpp"

#include <algorithm>
#include <cmath>

#include "bubblekit/vortex.hpp"

namespace bubblekit {

void validate_scenario(const BlowupScenario& s) {
  for (const auto& rec : s.interior_points) {
    if (rec.kind != CriticalPointRecord::Kind::interior)
      throw DomainError("scenario: interior entry is not an interior record");
    if (!(rec.laplacian < 0.0))
      throw DomainError("scenario: interior point needs negative Laplacian");
    if (rec.grad_norm >= 1e-9 || rec.min_singular_value <= 1e-8)
      throw DomainError("scenario: interior record fails nondegeneracy");
  }
  for (const auto& rec : s.simple_boundary_points) {
    if (rec.kind != CriticalPointRecord::Kind::boundary)
      throw DomainError("scenario: boundary entry is not a boundary record");
    if (!(rec.normal_derivative > 0.0))
      throw DomainError("scenario: boundary point needs positive normal derivative");
    if (rec.grad_norm >= 1e-9 || rec.min_singular_value <= 1e-8)
      throw DomainError("scenario: boundary record fails nondegeneracy");
  }
  const int n = s.field.n();
  for (const auto& cl : s.clusters) {
    if (cl.m < 2) throw DomainError("scenario: cluster needs m >= 2");
    if (int(cl.bbar.size()) != cl.m)
      throw DomainError("scenario: cluster bbar size mismatch");
    if (cl.z.kind != CriticalPointRecord::Kind::boundary)
      throw DomainError("scenario: cluster center is not a boundary record");
    if (!(cl.z.normal_derivative > 0.0))
      throw DomainError("scenario: cluster center needs positive normal derivative");
    VortexConfiguration cfg{n, cl.z.hessian_tangential, cl.bbar};
    double g2 = 0.0;
    for (const auto& gi : gradient(cfg)) g2 += gi.squaredNorm();
    if (std::sqrt(g2) >= 1e-10)
      throw DomainError("scenario: cluster bbar is not a vortex critical point");
  }
}

double predict_interior_lambda(const CriticalPointRecord& rec, double eps,
                               double kappa1) {
  if (!(eps > 0.0)) throw DomainError("predict_interior_lambda: eps must be > 0");
  if (!(rec.laplacian < 0.0))
    throw DomainError("predict_interior_lambda: needs negative Laplacian");
  return std::sqrt(-kappa1 * rec.laplacian / (rec.value * eps));
}

double predict_boundary_lambda(const CriticalPointRecord& rec, double eps,
                               double kappa2) {
  if (!(eps > 0.0)) throw DomainError("predict_boundary_lambda: eps must be > 0");
  if (!(rec.normal_derivative > 0.0))
    throw DomainError("predict_boundary_lambda: needs positive normal derivative");
  return kappa2 * rec.normal_derivative / (rec.value * eps);
}

double cluster_rescale(const ConstantsTable& table, double K_at_z,
                       double normal_derivative, double eps) {
  const double n = double(table.n);
  // The scale that closes the grouped position balance is the reciprocal of
  // the tabulated kappa3 combination: matching the interaction force against
  // the quadratic restoring force at lambda = kappa2 dK/dnu / (K eps) yields
  //   scale^n = 2^{3-n} (c6/c2) lambda^{n-2} / K,
  // i.e. scale = (1/kappa3) (dK/dnu)^{(n-2)/n} K^{-(n-1)/n} eps^{-(n-2)/n}.
  return (1.0 / table.kappa3) * std::pow(normal_derivative, (n - 2.0) / n) *
         std::pow(K_at_z, -(n - 1.0) / n) * std::pow(eps, -(n - 2.0) / n);
}

std::vector<SpherePoint> predict_cluster_positions(const ClusterSpec& cluster,
                                                   double eps,
                                                   const ConstantsTable& table) {
  if (!(eps > 0.0)) throw DomainError("predict_cluster_positions: eps must be > 0");
  const double scale =
      cluster_rescale(table, cluster.z.value, cluster.z.normal_derivative, eps);
  std::vector<SpherePoint> out;
  out.reserve(size_t(cluster.m));
  for (const auto& b : cluster.bbar) {
    const Vec v = cluster.z.frame * (b / scale);
    if (v.norm() >= M_PI)
      throw DomainError("predict_cluster_positions: offset leaves the normal chart");
    out.push_back(exp_map(cluster.z.location, v));
  }
  return out;
}

double predict_alpha(double lambda, double K_at_a, double eps, int n) {
  const double p = eps * double(n - 2) / 2.0;
  return std::pow(std::pow(lambda, p) / K_at_a, double(n - 2) / 4.0);
}

Prediction predict(const BlowupScenario& s, double eps, const ConstantsTable& table) {
  validate_scenario(s);
  if (!(eps > 0.0)) throw DomainError("predict: eps must be > 0");
  const int n = s.field.n();
  Prediction out;
  out.eps = eps;

  auto push = [&](SpherePoint a, double lambda, BubbleType type, int cluster_id,
                  double chart_corr) {
    const double K = s.field.eval(a);
    const double alpha = predict_alpha(lambda, K, eps, n);
    PredictedBubble b{make_bubble(std::move(a), lambda, alpha), type, cluster_id, 0.0,
                      chart_corr};
    b.mu = b.param.boundary_flag ? lambda : lambda * lambda;
    out.bubbles.push_back(std::move(b));
  };

  for (const auto& rec : s.interior_points)
    push(rec.location, predict_interior_lambda(rec, eps, table.kappa1),
         BubbleType::interior, -1, 0.0);
  for (const auto& rec : s.simple_boundary_points)
    push(rec.location, predict_boundary_lambda(rec, eps, table.kappa2),
         BubbleType::boundary_simple, -1, 0.0);

  for (size_t ci = 0; ci < s.clusters.size(); ++ci) {
    const ClusterSpec& cl = s.clusters[ci];
    const double lambda = predict_boundary_lambda(cl.z, eps, table.kappa2);
    const double scale = cluster_rescale(table, cl.z.value, cl.z.normal_derivative, eps);
    std::vector<SpherePoint> pts = predict_cluster_positions(cl, eps, table);
    std::vector<Vec> offsets;
    for (int i = 0; i < cl.m; ++i) {
      const Vec v = cl.z.frame * (cl.bbar[size_t(i)] / scale);
      offsets.push_back(v);
      // recompute b through the forward map; the mismatch is the chart
      // (exp-map vs flat tangent) correction, tracked per bubble
      const Vec tangent_at_z = tangent_project(pts[size_t(i)], cl.z.location).vec;
      const Vec b_back = scale * (cl.z.frame.transpose() * tangent_at_z);
      const double corr = (b_back - cl.bbar[size_t(i)]).norm();
      push(pts[size_t(i)], lambda, BubbleType::cluster, int(ci), corr);
    }
    out.cluster_offsets.push_back(std::move(offsets));
  }

  // neighborhood-at-infinity conditions at the default smallness tau = 0.1:
  // rates above 1/tau, interactions below tau, eps ln(lambda) below tau
  const double tau = 0.1;
  std::vector<BubbleParam> params;
  for (const auto& b : out.bubbles) params.push_back(b.param);
  const RegimeReport regime = check_bubble_regime(n, params, tau);
  if (!regime.ok)
    throw DomainError(
        "predict: outside the bubble regime at this eps (min lambda " +
        std::to_string(regime.min_lambda) + ", max interaction " +
        std::to_string(regime.max_eps) + ")");
  for (const auto& b : out.bubbles)
    if (eps * std::log(b.param.lambda) > tau)
      throw DomainError("predict: eps ln(lambda) exceeds the regime smallness");
  return out;
}

MuPartition mu_partition(const std::vector<PredictedBubble>& bubbles,
                         double ratio_threshold) {
  if (bubbles.empty()) throw DomainError("mu_partition: no bubbles");
  MuPartition out;
  const int count = int(bubbles.size());
  out.order.resize(size_t(count));
  for (int i = 0; i < count; ++i) {
    out.order[size_t(i)] = i;
    if (bubbles[size_t(i)].param.boundary_flag)
      out.boundary_set.push_back(i);
    else
      out.interior_set.push_back(i);
  }
  std::sort(out.order.begin(), out.order.end(),
            [&](int a, int b) { return bubbles[size_t(a)].mu < bubbles[size_t(b)].mu; });
  for (int i : out.order) out.mu.push_back(bubbles[size_t(i)].mu);
  // chain the sorted speeds into comparability classes
  std::vector<int> current{out.order.front()};
  for (int k = 1; k < count; ++k) {
    const double prev = out.mu[size_t(k - 1)];
    const double cur = out.mu[size_t(k)];
    if (cur / prev > ratio_threshold) {
      out.classes.push_back(current);
      current.clear();
    }
    current.push_back(out.order[size_t(k)]);
  }
  out.classes.push_back(current);
  return out;
}

namespace {

// remainder scale R(eps, a, lambda) of the infinite-dimensional part
double remainder_R(int n, double eps, const CurvatureField& field,
                   const std::vector<PredictedBubble>& bubbles, const Mat& eps_mat) {
  double r = eps;
  const int count = int(bubbles.size());
  for (int i = 0; i < count; ++i) {
    const auto& b = bubbles[size_t(i)];
    const double gradK = b.param.boundary_flag
                             ? field.grad_K1(b.param.a).vec.norm()
                             : field.grad(b.param.a).vec.norm();
    r += gradK / b.param.lambda + 1.0 / (b.param.lambda * b.param.lambda);
  }
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      const double e = eps_mat(i, j);
      if (e <= 0.0) continue;
      if (n >= 6)
        r += std::pow(e, double(n + 2) / (2.0 * double(n - 2))) *
             std::pow(std::log(1.0 / e), double(n + 2) / (2.0 * double(n)));
      else
        r += e * std::pow(std::log(1.0 / e), 3.0 / 5.0);
    }
  for (int i = 0; i < count; ++i) {
    const auto& b = bubbles[size_t(i)];
    if (b.param.boundary_flag) continue;
    const double ld = b.param.lambda * b.param.a.boundary_distance();
    if (n >= 6)
      r += std::log(ld) / std::pow(ld, double(n + 2) / 2.0);
    else
      r += 1.0 / (ld * ld * ld);
  }
  return r;
}

}  // namespace

ResidualReport balancing_residual(const BlowupScenario& s, const Prediction& p,
                                  const ConstantsTable& table) {
  const int n = s.field.n();
  const int count = int(p.bubbles.size());
  std::vector<BubbleParam> params;
  params.reserve(size_t(count));
  for (const auto& b : p.bubbles) params.push_back(b.param);
  const InteractionMatrix inter = assemble_interactions(n, params);

  const double R = remainder_R(n, p.eps, s.field, p.bubbles, inter.eps);
  double R1 = R * R;
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      const double e = inter.eps(i, j);
      if (e > 0.0)
        R1 += std::pow(e, double(n) / double(n - 2)) * std::log(1.0 / e);
    }
  double R2 = R1;
  for (const auto& b : p.bubbles) {
    if (b.param.boundary_flag) continue;
    const double ld = b.param.lambda * b.param.a.boundary_distance();
    R2 += std::log(ld) / std::pow(ld, double(n));
  }

  ResidualReport report;
  report.eps = p.eps;

  for (int i = 0; i < count; ++i) {
    const PredictedBubble& bi = p.bubbles[size_t(i)];
    const double Ki = s.field.eval(bi.param.a);
    IndexResidual row;
    row.index = i;
    row.type = bi.type;
    row.lambda = bi.param.lambda;

    double leading = 0.0;
    auto track = [&leading](double term) {
      leading = std::max(leading, std::abs(term));
      return term;
    };

    if (bi.param.boundary_flag) {
      // rate balance for boundary bubbles
      double E = 0.0;
      for (int j = 0; j < count; ++j) {
        if (j == i || !p.bubbles[size_t(j)].param.boundary_flag) continue;
        E += track(-table.c2 / 2.0 * p.bubbles[size_t(j)].param.alpha * inter.dlam(i, j));
      }
      E += track(-bi.param.alpha / Ki *
                 (table.c3 / bi.param.lambda * s.field.normal_derivative(bi.param.a)));
      E += track(bi.param.alpha / Ki * (table.c5 * Ki * p.eps));
      row.residual_E = std::abs(E);

      // position balance
      Vec F = Vec::Zero(n + 1);
      double f_leading = 0.0;
      for (int j = 0; j < count; ++j) {
        if (j == i || !p.bubbles[size_t(j)].param.boundary_flag) continue;
        const Vec term = -table.c2 / 2.0 * p.bubbles[size_t(j)].param.alpha *
                         inter.da[size_t(i)][size_t(j)];
        f_leading = std::max(f_leading, term.norm());
        F += term;
      }
      {
        const Vec term = -bi.param.alpha / Ki * table.c6 / bi.param.lambda *
                         s.field.grad_K1(bi.param.a).vec;
        f_leading = std::max(f_leading, term.norm());
        F += term;
      }
      row.residual_F = F.norm();
      leading = std::max(leading, f_leading);
      row.theoretical_remainder =
          1.0 / (bi.param.lambda * bi.param.lambda) + R1;
      for (int j = 0; j < count; ++j)
        if (j != i && !p.bubbles[size_t(j)].param.boundary_flag)
          row.theoretical_remainder += inter.eps(i, j);
    } else {
      // interior rate balance, including the Green self-interaction term
      double E = 0.0;
      for (int j = 0; j < count; ++j) {
        if (j == i) continue;
        E += track(-table.c2 * p.bubbles[size_t(j)].param.alpha * inter.dlam(i, j));
      }
      for (int j = 0; j < count; ++j) {
        const PredictedBubble& bj = p.bubbles[size_t(j)];
        if (bj.param.boundary_flag) continue;
        const double H = green_regular_part(n, bi.param.a, bj.param.a);
        E += track(table.c2 * double(n - 2) / 2.0 * bj.param.alpha * H /
                   std::pow(bi.param.lambda * bj.param.lambda, double(n - 2) / 2.0));
      }
      E += track(bi.param.alpha * table.c4 * s.field.laplace_beltrami(bi.param.a) /
                 (bi.param.lambda * bi.param.lambda * Ki));
      E += track(bi.param.alpha * 2.0 * table.c5 * p.eps);
      row.residual_E = std::abs(E);
      // the position statement for interior bubbles is the gradient bound
      row.residual_F = s.field.grad(bi.param.a).vec.norm() / bi.param.lambda;
      row.theoretical_remainder = R2;
    }

    row.leading = leading;
    row.ratio_E = leading > 0.0 ? row.residual_E / leading : 0.0;
    row.ratio_F = leading > 0.0 ? row.residual_F / leading : 0.0;
    row.defining_ratio = row.ratio_E;  // overwritten below for cluster members
    report.rows.push_back(row);
  }

  // grouped position balance and barycentric combination per cluster
  for (size_t ci = 0; ci < s.clusters.size(); ++ci) {
    std::vector<int> members;
    for (int i = 0; i < count; ++i)
      if (p.bubbles[size_t(i)].cluster_id == int(ci)) members.push_back(i);

    // barycenter of the cluster points
    std::vector<SpherePoint> pts;
    for (int i : members) pts.push_back(p.bubbles[size_t(i)].param.a);
    const SpherePoint abar = cluster_barycenter(pts);

    double eps_max = 0.0;
    for (int i : members)
      for (int j : members)
        if (i != j) eps_max = std::max(eps_max, inter.eps(i, j));

    double pairing = 0.0;
    double pairing_scale = 0.0;
    for (int i : members) {
      const PredictedBubble& bi = p.bubbles[size_t(i)];
      const double Ki = s.field.eval(bi.param.a);

      // grouped (within-cluster) position balance, scaled by lambda_i
      Vec F = Vec::Zero(n + 1);
      double leading = 0.0;
      for (int j : members) {
        if (j == i) continue;
        const Vec term = -table.c2 / 2.0 * p.bubbles[size_t(j)].param.alpha *
                         bi.param.lambda * inter.da[size_t(i)][size_t(j)];
        leading = std::max(leading, term.norm());
        F += term;
      }
      {
        const Vec term = -table.c6 * bi.param.alpha / Ki *
                         s.field.grad_K1(bi.param.a).vec;
        leading = std::max(leading, term.norm());
        F += term;
      }
      IndexResidual& row = report.rows[size_t(i)];
      row.defining_ratio = leading > 0.0 ? F.norm() / leading : 0.0;

      // barycentric combination sum_i alpha_i lambda_i <F_i, abar-projection>
      const Vec proj = tangent_project(abar, bi.param.a).vec;
      Vec Fi = Vec::Zero(n + 1);
      for (int j : members) {
        if (j == i) continue;
        Fi += -table.c2 / 2.0 * p.bubbles[size_t(j)].param.alpha *
              inter.da[size_t(i)][size_t(j)];
      }
      Fi += -bi.param.alpha / Ki * table.c6 / bi.param.lambda *
            s.field.grad_K1(bi.param.a).vec;
      pairing += bi.param.alpha * bi.param.lambda * Fi.dot(proj);

      const double dist = geodesic_distance(abar, bi.param.a);
      pairing_scale += dist / bi.param.lambda + dist * dist;
      if (eps_max > 0.0)
        pairing_scale += bi.param.lambda * dist *
                         std::pow(eps_max, double(n - 1) / double(n - 2));
    }
    for (int i : members) {
      report.rows[size_t(i)].pairing = std::abs(pairing);
      report.rows[size_t(i)].pairing_scale = pairing_scale;
    }
  }
  return report;
}

}  // namespace bubblekit
