#include "bubblekit/bubbles_interactions.hpp"

#include <cmath>

namespace bubblekit {

BubbleParam make_bubble(SpherePoint a, double lambda, double alpha) {
  if (lambda <= 0.0) throw DomainError("BubbleParam: lambda must be > 0");
  if (alpha <= 0.0) throw DomainError("BubbleParam: alpha must be > 0");
  const bool boundary = a.on_boundary();
  return BubbleParam{std::move(a), lambda, alpha, boundary};
}

double bubble_c0(int n) {
  return std::pow(double(n) * double(n - 2), double(n - 2) / 4.0);
}

double bubble_value(int n, const SpherePoint& a, double lambda, const SpherePoint& x) {
  if (lambda <= 0.0) throw DomainError("bubble_value: lambda must be > 0");
  const double c = std::cos(geodesic_distance(a, x));
  const double den = lambda * lambda + 1.0 + (1.0 - lambda * lambda) * c;
  return bubble_c0(n) * std::pow(lambda, double(n - 2) / 2.0) /
         std::pow(den, double(n - 2) / 2.0);
}

namespace {

// the bracket li/lj + lj/li + 1/2 li lj (1 - cos d)
double eps_bracket(const BubbleParam& pi, const BubbleParam& pj) {
  const double a = pi.lambda / pj.lambda;
  const double b = pj.lambda / pi.lambda;
  const double c = std::cos(geodesic_distance(pi.a, pj.a));
  return a + b + 0.5 * pi.lambda * pj.lambda * (1.0 - c);
}

}  // namespace

double interaction_eps(int n, const BubbleParam& pi, const BubbleParam& pj) {
  return std::pow(eps_bracket(pi, pj), (2.0 - n) / 2.0);
}

double d_eps_d_loglambda(int n, const BubbleParam& pi, const BubbleParam& pj) {
  const double g = eps_bracket(pi, pj);
  const double c = std::cos(geodesic_distance(pi.a, pj.a));
  // lambda_i d/dlambda_i of the bracket
  const double dg = pi.lambda / pj.lambda - pj.lambda / pi.lambda +
                    0.5 * pi.lambda * pj.lambda * (1.0 - c);
  return (2.0 - n) / 2.0 * std::pow(g, -double(n) / 2.0) * dg;
}

TangentVector d_eps_d_a(int n, const BubbleParam& pi, const BubbleParam& pj) {
  const double g = eps_bracket(pi, pj);
  // ambient gradient of the bracket in a_i is -1/2 li lj a_j
  Vec amb = -0.5 * pi.lambda * pj.lambda * pj.a.coords();
  Vec tang = project_orthogonal(amb, pi.a.coords());
  tang *= (2.0 - n) / 2.0 * std::pow(g, -double(n) / 2.0);
  return TangentVector{pi.a, tang};
}

double far_field_reference(int n, const BubbleParam& pi, const BubbleParam& pj) {
  const double d = geodesic_distance(pi.a, pj.a);
  return std::pow(0.25 * pi.lambda * pj.lambda * d * d, (2.0 - n) / 2.0);
}

double barycentric_pairing(int n, const BubbleParam& pi, const BubbleParam& pj,
                           const SpherePoint& h) {
  const double ti = d_eps_d_a(n, pi, pj).vec.dot(tangent_project(h, pi.a).vec);
  const double tj = d_eps_d_a(n, pj, pi).vec.dot(tangent_project(h, pj.a).vec);
  return ti + tj;
}

double green_regular_part(int n, const SpherePoint& a, const SpherePoint& b) {
  if (a.on_boundary() || b.on_boundary())
    throw DomainError("green_regular_part: arguments must be interior points");
  Vec mirror = a.coords();
  mirror[mirror.size() - 1] = -mirror[mirror.size() - 1];
  const double dist = (b.coords() - mirror).norm();
  return std::pow(2.0, double(n - 2) / 2.0) * std::pow(dist, 2.0 - n);
}

BubbleEnvelope projected_bubble_envelope(int n, const SpherePoint& a, double lambda,
                                         const SpherePoint& x) {
  BubbleEnvelope env;
  env.lower = bubble_value(n, a, lambda, x);
  if (a.on_boundary()) {
    env.upper = env.lower;
    env.approx = env.lower;
    return env;
  }
  env.upper = 2.0 * env.lower;
  env.approx = env.lower + bubble_c0(n) * green_regular_part(n, a, x) /
                               std::pow(lambda, double(n - 2) / 2.0);
  return env;
}

double subcritical_expansion_check(int n, const SpherePoint& a, double lambda,
                                   double eps, const SpherePoint& x) {
  if (eps < 0.0) throw DomainError("subcritical_expansion_check: eps must be >= 0");
  if (eps * std::log(lambda) >= 0.1)
    throw DomainError("subcritical_expansion_check: requires eps ln(lambda) < 0.1");
  const double c = std::cos(geodesic_distance(a, x));
  const double logterm = std::log(2.0 + (lambda * lambda - 1.0) * (1.0 - c));
  const double delta = bubble_value(n, a, lambda, x);
  const double lhs = std::pow(delta, -eps);
  const double rhs = std::pow(bubble_c0(n), -eps) *
                     std::pow(lambda, -eps * double(n - 2) / 2.0) *
                     (1.0 + 0.5 * double(n - 2) * eps * logterm);
  return std::abs(lhs - rhs);
}

RegimeReport check_bubble_regime(int n, const std::vector<BubbleParam>& bubbles,
                                 double tau) {
  if (tau <= 0.0) throw DomainError("check_bubble_regime: tau must be > 0");
  RegimeReport r;
  r.min_lambda = std::numeric_limits<double>::infinity();
  for (const auto& b : bubbles) r.min_lambda = std::min(r.min_lambda, b.lambda);
  for (size_t i = 0; i < bubbles.size(); ++i)
    for (size_t j = i + 1; j < bubbles.size(); ++j)
      r.max_eps = std::max(r.max_eps, interaction_eps(n, bubbles[i], bubbles[j]));
  r.ok = r.min_lambda > 1.0 / tau && r.max_eps < tau;
  return r;
}

InteractionMatrix assemble_interactions(int n, const std::vector<BubbleParam>& bubbles) {
  const int count = int(bubbles.size());
  InteractionMatrix m;
  m.eps = Mat::Zero(count, count);
  m.dlam = Mat::Zero(count, count);
  m.da.assign(size_t(count), std::vector<Vec>(size_t(count)));
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      if (i == j) {
        m.da[size_t(i)][size_t(j)] = Vec::Zero(bubbles[size_t(i)].a.ambient_dim());
        continue;
      }
      m.eps(i, j) = interaction_eps(n, bubbles[size_t(i)], bubbles[size_t(j)]);
      m.dlam(i, j) = d_eps_d_loglambda(n, bubbles[size_t(i)], bubbles[size_t(j)]);
      m.da[size_t(i)][size_t(j)] =
          d_eps_d_a(n, bubbles[size_t(i)], bubbles[size_t(j)]).vec /
          bubbles[size_t(i)].lambda;
    }
  return m;
}

}  // namespace bubblekit
