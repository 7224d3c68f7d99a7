#include "bubblekit/vortex.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace bubblekit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kMinSeparation = 1e-10;     // energy/gradient domain guard
constexpr double kStepSeparation = 1e-8;     // Newton step guard
constexpr double kAcceptGrad = 1e-10;
constexpr double kAcceptSeparation = 1e-6;
constexpr double kVirialFilter = 1e-6;
constexpr double kDedupTol = 1e-6;

double min_separation(const std::vector<VectorXd>& xi) {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < xi.size(); ++i)
    for (size_t j = i + 1; j < xi.size(); ++j)
      m = std::min(m, (xi[i] - xi[j]).norm());
  return m;
}

// label-independent summation: accumulate in sorted order so relabeling the
// points cannot change the rounding
double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

double grad_norm(const std::vector<VectorXd>& g) {
  double s = 0.0;
  for (const auto& v : g) s += v.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

void check_configuration(const VortexConfiguration& c) {
  if (c.n < 5) throw DomainError("VortexConfiguration: n must be >= 5");
  const int d = c.n - 1;
  if (c.Q.rows() != d || c.Q.cols() != d)
    throw DomainError("VortexConfiguration: Q must be (n-1) x (n-1)");
  if ((c.Q - c.Q.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("VortexConfiguration: Q is not symmetric");
  if (c.xi.empty()) throw DomainError("VortexConfiguration: no points");
  for (const auto& v : c.xi)
    if (v.size() != d) throw DomainError("VortexConfiguration: point of wrong dimension");
  if (c.xi.size() > 1 && min_separation(c.xi) < kMinSeparation)
    throw DomainError("VortexConfiguration: coincident points");
}

double energy(const VortexConfiguration& c) {
  check_configuration(c);
  std::vector<double> terms;
  for (const auto& v : c.xi) terms.push_back(0.5 * v.dot(c.Q * v));
  for (size_t i = 0; i < c.xi.size(); ++i)
    for (size_t j = i + 1; j < c.xi.size(); ++j)
      terms.push_back(std::pow((c.xi[i] - c.xi[j]).norm(), 2.0 - c.n));
  return sorted_sum(terms);
}

std::vector<VectorXd> gradient(const VortexConfiguration& c) {
  check_configuration(c);
  const int m = int(c.xi.size());
  const int d = c.n - 1;
  std::vector<VectorXd> g{size_t(m), VectorXd()};
  std::vector<double> terms;
  for (int i = 0; i < m; ++i) {
    VectorXd gi(d);
    for (int k = 0; k < d; ++k) {
      terms.clear();
      terms.push_back(c.xi[size_t(i)].dot(c.Q.row(k)));
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        const VectorXd diff = c.xi[size_t(i)] - c.xi[size_t(j)];
        terms.push_back(-double(c.n - 2) * diff[k] / std::pow(diff.norm(), double(c.n)));
      }
      gi[k] = sorted_sum(terms);
    }
    g[size_t(i)] = gi;
  }
  return g;
}

MatrixXd hessian(const VortexConfiguration& c) {
  check_configuration(c);
  const int m = int(c.xi.size());
  const int d = c.n - 1;
  MatrixXd h = MatrixXd::Zero(m * d, m * d);
  const MatrixXd eye = MatrixXd::Identity(d, d);
  for (int i = 0; i < m; ++i) h.block(i * d, i * d, d, d) = c.Q;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const VectorXd diff = c.xi[size_t(i)] - c.xi[size_t(j)];
      const double r = diff.norm();
      const MatrixXd block =
          double(c.n - 2) *
          (eye / std::pow(r, double(c.n)) -
           double(c.n) * diff * diff.transpose() / std::pow(r, double(c.n + 2)));
      h.block(i * d, i * d, d, d) -= block;
      h.block(i * d, j * d, d, d) += block;
    }
  return h;
}

double quadratic_part(const VortexConfiguration& c) {
  std::vector<double> terms;
  for (const auto& v : c.xi) terms.push_back(v.dot(c.Q * v));
  return sorted_sum(terms);
}

double interaction_part(const VortexConfiguration& c) {
  std::vector<double> terms;
  for (size_t i = 0; i < c.xi.size(); ++i)
    for (size_t j = i + 1; j < c.xi.size(); ++j)
      terms.push_back(std::pow((c.xi[i] - c.xi[j]).norm(), 2.0 - c.n));
  return sorted_sum(terms);
}

double virial_residual(const VortexConfiguration& c) {
  check_configuration(c);
  return quadratic_part(c) - double(c.n - 2) * interaction_part(c);
}

bool newton_run(const MatrixXd& Q, int n, std::vector<VectorXd>& xi, NewtonTrace* trace) {
  const int m = int(xi.size());
  const int d = n - 1;
  VortexConfiguration cfg{n, Q, xi};
  for (int it = 0; it < 200; ++it) {
    if (trace) trace->iterates.push_back(cfg.xi);
    if (min_separation(cfg.xi) < kStepSeparation && m > 1) return false;
    std::vector<VectorXd> g = gradient(cfg);
    const double gn = grad_norm(g);
    if (gn < kAcceptGrad) {
      xi = cfg.xi;
      return true;
    }
    MatrixXd h = hessian(cfg);
    VectorXd rhs(m * d);
    for (int i = 0; i < m; ++i) rhs.segment(i * d, d) = -g[size_t(i)];
    Eigen::FullPivLU<MatrixXd> lu(h);
    VectorXd step;
    if (lu.isInvertible())
      step = lu.solve(rhs);
    else
      step = rhs;  // steepest descent fallback
    // backtracking on |grad F| with a separation guard
    double t = 1.0;
    bool moved = false;
    while (t >= 1e-12) {
      VortexConfiguration next = cfg;
      for (int i = 0; i < m; ++i) next.xi[size_t(i)] += t * step.segment(i * d, d);
      if (m == 1 || min_separation(next.xi) > kStepSeparation) {
        const double gn_next = grad_norm(gradient(next));
        if (gn_next < gn) {
          cfg = next;
          moved = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!moved) return false;
  }
  std::vector<VectorXd> g = gradient(cfg);
  if (grad_norm(g) < kAcceptGrad) {
    xi = cfg.xi;
    return true;
  }
  return false;
}

namespace {

// best-permutation match; optionally modulo orthogonal maps commuting with Q
bool configs_equivalent(const std::vector<VectorXd>& a, const std::vector<VectorXd>& b,
                        const MatrixXd& Q, double tol) {
  const int m = int(a.size());
  if (int(b.size()) != m) return false;
  std::vector<int> perm(size_t(m), 0);
  std::iota(perm.begin(), perm.end(), 0);
  const int d = int(a.front().size());
  do {
    double direct = 0.0;
    for (int i = 0; i < m; ++i)
      direct = std::max(direct, (a[size_t(i)] - b[size_t(perm[size_t(i)])]).norm());
    if (direct <= tol) return true;
    // orthogonal Procrustes between the matched tuples
    MatrixXd cross = MatrixXd::Zero(d, d);
    for (int i = 0; i < m; ++i)
      cross += b[size_t(perm[size_t(i)])] * a[size_t(i)].transpose();
    Eigen::JacobiSVD<MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    MatrixXd rot = svd.matrixU() * svd.matrixV().transpose();
    if ((Q * rot - rot * Q).cwiseAbs().maxCoeff() >= 1e-10) continue;
    double rotated = 0.0;
    for (int i = 0; i < m; ++i)
      rotated = std::max(rotated, (rot * a[size_t(i)] - b[size_t(perm[size_t(i)])]).norm());
    if (rotated <= tol) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

VortexSearchResult find_critical_points(const MatrixXd& Q, int m, int n, int starts,
                                        std::uint64_t seed) {
  if (m < 1) throw DomainError("find_critical_points: m must be >= 1");
  if (m > 8) throw DomainError("find_critical_points: m > 8 is not supported");
  const int d = n - 1;
  if (Q.rows() != d || Q.cols() != d)
    throw DomainError("find_critical_points: Q must be (n-1) x (n-1)");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("find_critical_points: Q is not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Q);
  const double qnorm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (qnorm < 1e-14) throw DomainError("find_critical_points: degenerate Q");

  VortexSearchResult out;
  out.diag.obstructed = es.eigenvalues().maxCoeff() <= 0.0 && m >= 2;

  // virial length scale
  const double rho = std::pow(double(m) * double(n - 2) / qnorm, 1.0 / double(n));

  Rng rng(seed ^ 0x7f3e9a1bc4d5e6f7ull);
  std::vector<std::vector<VectorXd>> start_configs;
  start_configs.resize(size_t(starts));
  for (int s = 0; s < starts; ++s) {
    std::vector<VectorXd>& cfg = start_configs[size_t(s)];
    cfg.resize(size_t(m));
    do {
      for (int i = 0; i < m; ++i) {
        VectorXd v(d);
        for (int k = 0; k < d; ++k) v[k] = rng.gaussian();
        const double nrm = v.norm();
        if (nrm < 1e-12) {
          v.setZero();
          v[0] = 1.0;
        } else {
          v /= nrm;
        }
        cfg[size_t(i)] = rng.uniform(0.3 * rho, 3.0 * rho) * v;
      }
    } while (m > 1 && min_separation(cfg) < 1e-3 * rho);
  }

  std::vector<int> status(size_t(starts), 0);
  std::vector<std::vector<VectorXd>> limits;
  limits.resize(size_t(starts));
  parallel_for(0, starts, [&](int s) {
    std::vector<VectorXd> xi = start_configs[size_t(s)];
    if (newton_run(Q, n, xi, nullptr)) {
      status[size_t(s)] = 1;
      limits[size_t(s)] = std::move(xi);
    }
  });

  std::vector<std::vector<VectorXd>> kept;
  for (int s = 0; s < starts; ++s) {
    if (!status[size_t(s)]) {
      out.diag.diverged++;
      continue;
    }
    out.diag.converged++;
    const std::vector<VectorXd>& xi = limits[size_t(s)];
    if (m > 1 && min_separation(xi) <= kAcceptSeparation) {
      out.diag.separation_rejected++;
      continue;
    }
    VortexConfiguration cfg{n, Q, xi};
    if (std::abs(virial_residual(cfg)) > kVirialFilter) {
      out.diag.virial_rejected++;
      continue;
    }
    bool dup = false;
    for (const auto& other : kept)
      if (configs_equivalent(xi, other, Q, kDedupTol)) {
        dup = true;
        break;
      }
    if (dup) {
      out.diag.duplicates++;
      continue;
    }
    kept.push_back(xi);
  }

  // deterministic order: sort by energy, then lexicographically
  std::vector<VortexCriticalPoint> pts;
  for (const auto& xi : kept) {
    VortexCriticalPoint p;
    p.config = VortexConfiguration{n, Q, xi};
    p.energy = energy(p.config);
    p.virial = virial_residual(p.config);
    Eigen::SelfAdjointEigenSolver<MatrixXd> hes(hessian(p.config));
    p.hessian_eigenvalues = hes.eigenvalues();
    p.morse_index = int((hes.eigenvalues().array() < 0.0).count());
    pts.push_back(std::move(p));
  }
  std::sort(pts.begin(), pts.end(),
            [](const VortexCriticalPoint& a, const VortexCriticalPoint& b) {
              if (std::abs(a.energy - b.energy) > 1e-9) return a.energy < b.energy;
              for (size_t i = 0; i < a.config.xi.size(); ++i) {
                const auto& u = a.config.xi[i];
                const auto& v = b.config.xi[i];
                for (long k = 0; k < u.size(); ++k)
                  if (std::abs(u[k] - v[k]) > 1e-5) return u[k] < v[k];
              }
              return false;
            });
  out.points = std::move(pts);
  return out;
}

}  // namespace bubblekit
