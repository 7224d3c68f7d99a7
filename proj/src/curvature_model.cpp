#include "bubblekit/curvature_model.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace bubblekit {

CurvatureField::CurvatureField(int n, std::vector<FieldTerm> terms,
                               double positivity_floor)
    : n_(n), terms_(std::move(terms)), positivity_floor_(positivity_floor) {
  if (n_ < 5) throw DomainError("CurvatureField: dimension n must be >= 5");
  if (positivity_floor_ <= 0.0)
    throw DomainError("CurvatureField: positivity_floor must be > 0");
  if (terms_.empty()) throw DomainError("CurvatureField: no terms");
  for (const auto& t : terms_) {
    if (int(t.powers.size()) != n_ + 1)
      throw DomainError("CurvatureField: multi-index length must be n+1");
    for (int p : t.powers)
      if (p < 0) throw DomainError("CurvatureField: negative exponent");
  }
}

namespace {

double monomial(const Vec& x, const std::vector<int>& powers) {
  double v = 1.0;
  for (size_t k = 0; k < powers.size(); ++k)
    for (int p = 0; p < powers[k]; ++p) v *= x[long(k)];
  return v;
}

}  // namespace

double CurvatureField::eval_ambient(const Vec& x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.coeff * monomial(x, t.powers);
  return v;
}

Vec CurvatureField::grad_ambient(const Vec& x) const {
  Vec g = Vec::Zero(n_ + 1);
  for (const auto& t : terms_) {
    for (int k = 0; k <= n_; ++k) {
      const int p = t.powers[k];
      if (p == 0) continue;
      auto pw = t.powers;
      pw[k] = p - 1;
      g[k] += t.coeff * p * monomial(x, pw);
    }
  }
  return g;
}

Mat CurvatureField::hess_ambient(const Vec& x) const {
  Mat h = Mat::Zero(n_ + 1, n_ + 1);
  for (const auto& t : terms_) {
    for (int k = 0; k <= n_; ++k) {
      const int pk = t.powers[k];
      if (pk == 0) continue;
      for (int l = k; l <= n_; ++l) {
        auto pw = t.powers;
        double c;
        if (l == k) {
          if (pk < 2) continue;
          c = t.coeff * pk * (pk - 1);
          pw[k] = pk - 2;
        } else {
          const int pl = t.powers[l];
          if (pl == 0) continue;
          c = t.coeff * pk * pl;
          pw[k] = pk - 1;
          pw[l] = pl - 1;
        }
        const double v = c * monomial(x, pw);
        h(k, l) += v;
        if (l != k) h(l, k) += v;
      }
    }
  }
  return h;
}

TangentVector CurvatureField::grad(const SpherePoint& x) const {
  return TangentVector{x, project_orthogonal(grad_ambient(x.coords()), x.coords())};
}

Mat CurvatureField::hess(const SpherePoint& x) const {
  const Vec& p = x.coords();
  const Vec g = grad_ambient(p);
  const int d = n_ + 1;
  Mat proj = Mat::Identity(d, d) - p * p.transpose();
  Mat h = hess_ambient(p) - g.dot(p) * Mat::Identity(d, d);
  return proj * h * proj;
}

double CurvatureField::laplace_beltrami(const SpherePoint& x) const {
  const Vec& p = x.coords();
  const Mat h = hess_ambient(p);
  const Vec g = grad_ambient(p);
  return h.trace() - p.dot(h * p) - double(n_) * g.dot(p);
}

double CurvatureField::normal_derivative(const SpherePoint& z) const {
  if (!z.on_boundary())
    throw DomainError("normal_derivative: point is not on the boundary");
  return grad_ambient(z.coords())[n_];
}

TangentVector CurvatureField::grad_K1(const SpherePoint& z) const {
  if (!z.on_boundary()) throw DomainError("grad_K1: point is not on the boundary");
  Vec g = project_orthogonal(grad_ambient(z.coords()), z.coords());
  g[n_] = 0.0;  // remove the normal component; z has zero last coordinate
  return TangentVector{z, g};
}

Mat CurvatureField::hess_K1(const SpherePoint& z) const {
  if (!z.on_boundary()) throw DomainError("hess_K1: point is not on the boundary");
  const Vec& p = z.coords();
  const int d = n_ + 1;
  const Vec g = grad_ambient(p);
  Mat proj = Mat::Identity(d, d) - p * p.transpose();
  proj.row(n_).setZero();
  proj.col(n_).setZero();
  Mat h = hess_ambient(p) - g.dot(p) * Mat::Identity(d, d);
  return proj * h * proj;
}

Mat CurvatureField::hess_in_frame(const Mat& ambient_form, const Mat& frame) const {
  return frame.transpose() * ambient_form * frame;
}

void validate_field(const CurvatureField& field, int samples) {
  const int n = field.n();
  Rng rng(0x5eedC0de);
  double min_val = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Vec x(n + 1);
    for (int k = 0; k <= n; ++k) x[k] = rng.gaussian();
    x[n] = std::abs(x[n]);
    x /= x.norm();
    min_val = std::min(min_val, field.eval_ambient(x));
  }
  if (min_val < field.positivity_floor())
    throw DomainError("curvature field violates its positivity floor: min sample " +
                      std::to_string(min_val) + " < " +
                      std::to_string(field.positivity_floor()));

  // derivative spot checks against central differences
  const double step = 1e-5;
  for (int s = 0; s < 5; ++s) {
    Vec x(n + 1);
    for (int k = 0; k <= n; ++k) x[k] = rng.gaussian();
    x[n] = std::abs(x[n]) + 0.1;
    x /= x.norm();
    SpherePoint p(x);
    const Mat frame = sphere_tangent_frame(p);
    const Vec dir = frame.col(int(rng.next_u64() % std::uint64_t(n)));
    const double fd = (field.eval(exp_map(p, step * dir)) -
                       field.eval(exp_map(p, -step * dir))) /
                      (2 * step);
    const double an = field.grad(p).vec.dot(dir);
    if (std::abs(fd - an) > 1e-5 * std::max(1.0, std::abs(an)))
      throw DomainError("curvature field failed its gradient spot check");
  }
}

namespace {

struct IntrinsicProblem {
  const CurvatureField& field;
  CriticalPointRecord::Kind kind;

  Mat frame(const SpherePoint& x) const {
    return kind == CriticalPointRecord::Kind::boundary ? boundary_tangent_frame(x)
                                                       : sphere_tangent_frame(x);
  }
  Vec grad_frame(const SpherePoint& x, const Mat& fr) const {
    const Vec g = kind == CriticalPointRecord::Kind::boundary
                      ? field.grad_K1(x).vec
                      : field.grad(x).vec;
    return fr.transpose() * g;
  }
  Mat hess_frame(const SpherePoint& x, const Mat& fr) const {
    const Mat h = kind == CriticalPointRecord::Kind::boundary ? field.hess_K1(x)
                                                              : field.hess(x);
    return fr.transpose() * h * fr;
  }
};

// Retraction that clamps iterates to the closed half-sphere.
SpherePoint retract(const SpherePoint& x, const Vec& ambient_step) {
  Vec out = x.coords() + ambient_step;
  const long last = out.size() - 1;
  if (out[last] < 0.0) out[last] = 0.0;
  out /= out.norm();
  return SpherePoint(out);
}

// Newton iteration with a step clamp; returns true on |grad| convergence.
bool newton_to_critical(const IntrinsicProblem& prob, SpherePoint& x) {
  for (int it = 0; it < 120; ++it) {
    const Mat fr = prob.frame(x);
    const Vec g = prob.grad_frame(x, fr);
    if (g.norm() < 1e-12) return true;
    Mat h = prob.hess_frame(x, fr);
    Eigen::FullPivLU<Mat> lu(h);
    Vec step;
    if (lu.isInvertible()) {
      step = lu.solve(-g);
    } else {
      step = -g;  // gradient fallback near singular Hessians
    }
    double len = step.norm();
    if (len > 0.5) step *= 0.5 / len;
    x = retract(x, fr * step);
  }
  const Mat fr = prob.frame(x);
  return prob.grad_frame(x, fr).norm() < 1e-12;
}

CriticalPointRecord make_record(const CurvatureField& field,
                                CriticalPointRecord::Kind kind,
                                const SpherePoint& x) {
  CriticalPointRecord rec{x, kind, 0, 0, 0, Mat(), Mat(), 0, 0};
  rec.value = field.eval(x);
  const Mat fr = kind == CriticalPointRecord::Kind::boundary
                     ? boundary_tangent_frame(x)
                     : sphere_tangent_frame(x);
  rec.frame = fr;
  const Mat h = kind == CriticalPointRecord::Kind::boundary ? field.hess_K1(x)
                                                            : field.hess(x);
  rec.hessian_tangential = fr.transpose() * h * fr;
  rec.laplacian = field.laplace_beltrami(x);
  rec.normal_derivative =
      kind == CriticalPointRecord::Kind::boundary ? field.normal_derivative(x) : 0.0;
  rec.grad_norm = kind == CriticalPointRecord::Kind::boundary
                      ? field.grad_K1(x).vec.norm()
                      : field.grad(x).vec.norm();
  Eigen::SelfAdjointEigenSolver<Mat> es(rec.hessian_tangential);
  rec.min_singular_value = es.eigenvalues().cwiseAbs().minCoeff();
  return rec;
}

}  // namespace

CriticalPointSearch find_critical_points(const CurvatureField& field,
                                         CriticalPointRecord::Kind kind,
                                         int starts, std::uint64_t seed) {
  const int n = field.n();
  Rng rng(seed ^ 0xb0b1cafe12345678ull);
  std::vector<SpherePoint> start_points;
  start_points.reserve(size_t(starts));
  for (int s = 0; s < starts; ++s) {
    Vec x(n + 1);
    for (int k = 0; k <= n; ++k) x[k] = rng.gaussian();
    if (kind == CriticalPointRecord::Kind::boundary) {
      x[n] = 0.0;
    } else {
      x[n] = std::abs(x[n]);
    }
    if (x.norm() < 1e-8) {
      --s;
      continue;
    }
    x /= x.norm();
    start_points.emplace_back(x);
  }

  IntrinsicProblem prob{field, kind};
  std::vector<int> status(size_t(starts), 0);  // 0 diverged, 1 converged
  std::vector<Vec> limits{size_t(starts), Vec()};
  parallel_for(0, starts, [&](int i) {
    SpherePoint x = start_points[size_t(i)];
    if (newton_to_critical(prob, x)) {
      status[size_t(i)] = 1;
      limits[size_t(i)] = x.coords();
    }
  });

  CriticalPointSearch out;
  std::vector<SpherePoint> found;
  for (int i = 0; i < starts; ++i) {
    if (!status[size_t(i)]) {
      out.diverged++;
      continue;
    }
    SpherePoint x{limits[size_t(i)]};
    if (kind == CriticalPointRecord::Kind::interior && x.height() < 1e-6) {
      out.out_of_region++;  // tangential zero sits on/near the boundary
      continue;
    }
    bool dup = false;
    for (const auto& y : found)
      if (geodesic_distance(x, y) < 1e-6) {
        dup = true;
        break;
      }
    if (dup) continue;
    found.push_back(x);
  }
  // tolerant lexicographic order: coordinates are compared at a resolution
  // coarser than the Newton noise so the ordering is seed independent
  std::sort(found.begin(), found.end(), [](const SpherePoint& a, const SpherePoint& b) {
    for (long k = 0; k < a.coords().size(); ++k) {
      if (std::abs(a.coords()[k] - b.coords()[k]) > 1e-7)
        return a.coords()[k] < b.coords()[k];
    }
    return false;
  });
  for (const auto& x : found) {
    CriticalPointRecord rec = make_record(field, kind, x);
    if (rec.grad_norm < 1e-9 && rec.min_singular_value > 1e-8)
      out.accepted.push_back(std::move(rec));
    else
      out.degenerate.push_back(x);
  }
  return out;
}

CriticalPointRecord refine_critical_point(const CurvatureField& field,
                                          CriticalPointRecord::Kind kind,
                                          const SpherePoint& start) {
  if (kind == CriticalPointRecord::Kind::boundary && !start.on_boundary())
    throw DomainError("refine_critical_point: boundary refinement needs a boundary start");
  IntrinsicProblem prob{field, kind};
  SpherePoint x = start;
  if (!newton_to_critical(prob, x))
    throw NumericError("refine_critical_point: Newton did not converge");
  CriticalPointRecord rec = make_record(field, kind, x);
  if (rec.grad_norm >= 1e-9)
    throw NumericError("refine_critical_point: gradient norm above tolerance");
  if (rec.min_singular_value <= 1e-8)
    throw NumericError("refine_critical_point: degenerate critical point");
  return rec;
}

double gradK1_symmetry_defect(const CurvatureField& field, const SpherePoint& a,
                              const SpherePoint& h) {
  const double n = field.n();
  const double ka = std::pow(field.eval(a), -n / 2.0);
  const double kh = std::pow(field.eval(h), -n / 2.0);
  const double term_a = field.grad_K1(a).vec.dot(tangent_project(h, a).vec);
  const double term_h = field.grad_K1(h).vec.dot(tangent_project(a, h).vec);
  return std::abs(ka * term_a + kh * term_h);
}

double gradK1_transport_defect(const CurvatureField& field, const SpherePoint& a,
                               const SpherePoint& z, const SpherePoint& e) {
  const double lhs =
      field.grad_K1(a).vec.dot(tangent_project(e, a).vec) / field.eval(a);
  const Vec ta = tangent_project(a, z).vec;
  const Vec te = tangent_project(e, z).vec;
  const double rhs = ta.dot(field.hess_K1(z) * te) / field.eval(z);
  return std::abs(lhs - rhs);
}

}  // namespace bubblekit
