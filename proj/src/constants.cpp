#include "bubblekit/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "bubblekit/common.hpp"

namespace bubblekit {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double sphere_area(int dim) {  // |S^{dim-1}|, the surface measure of R^dim
  return 2.0 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
}

// integral of the last-coordinate moment over the upper unit hemisphere of
// R^dim; equals the volume of the unit ball of R^{dim-1}
double hemisphere_moment(int dim) {
  return std::pow(kPi, (dim - 1) / 2.0) / std::tgamma((dim + 1) / 2.0);
}

struct Radial {
  QuadratureResult q;
  double prefactor;
};

ConstantsTable compute_uncached(int n, double tol, int initial_panels) {
  if (n < 5) throw DomainError("compute_constants: n must be >= 5");
  QuadratureOptions opt;
  opt.abs_tol = tol;
  opt.initial_panels = initial_panels;

  const double nd = double(n);
  const double c0 = std::pow(nd * (nd - 2.0), (nd - 2.0) / 4.0);
  const double c0_pow = std::pow(nd * (nd - 2.0), nd / 2.0);  // c0^{2n/(n-2)}
  const double area = sphere_area(n);
  const double moment = hemisphere_moment(n);

  // radial integrands after r = tan t; all smooth on [0, pi/2]
  auto f2 = [nd](double t) {
    return std::pow(std::sin(t), nd - 1.0) * std::cos(t);
  };
  auto f3 = [nd](double t) {
    const double s = std::sin(t), c = std::cos(t);
    return std::pow(s, nd) * std::pow(c, nd - 2.0) * (s * s - c * c);
  };
  auto f4 = [nd](double t) {
    const double s = std::sin(t), c = std::cos(t);
    return std::pow(s, nd + 1.0) * std::pow(c, nd - 3.0) * (s * s - c * c);
  };
  auto f5 = [nd](double t) {
    const double s = std::sin(t), c = std::cos(t);
    if (c <= 0.0) return 0.0;
    return std::pow(s, nd - 1.0) * std::pow(c, nd - 1.0) * (s * s - c * c) *
           (-2.0 * std::log(c));
  };
  auto f6 = [nd](double t) {
    const double s = std::sin(t), c = std::cos(t);
    return std::pow(s, nd + 1.0) * std::pow(c, nd - 1.0);
  };

  const double half = kPi / 2.0;
  Radial r2{integrate(f2, 0.0, half, opt), c0_pow * area};
  Radial r3{integrate(f3, 0.0, half, opt), (nd - 2.0) * c0_pow * moment};
  Radial r4{integrate(f4, 0.0, half, opt), (nd - 2.0) / (2.0 * nd) * c0_pow * area};
  Radial r5{integrate(f5, 0.0, half, opt),
            (nd - 2.0) * (nd - 2.0) / 4.0 * c0_pow * area / 2.0};
  Radial r6{integrate(f6, 0.0, half, opt), (nd - 2.0) / nd * c0_pow * area / 2.0};

  ConstantsTable t;
  t.n = n;
  t.c0 = c0;
  t.c2 = r2.prefactor * r2.q.value;
  t.c3 = r3.prefactor * r3.q.value;
  t.c4 = r4.prefactor * r4.q.value;
  t.c5 = r5.prefactor * r5.q.value;
  t.c6 = r6.prefactor * r6.q.value;
  t.err_c2 = std::abs(r2.prefactor) * r2.q.error_estimate;
  t.err_c3 = std::abs(r3.prefactor) * r3.q.error_estimate;
  t.err_c4 = std::abs(r4.prefactor) * r4.q.error_estimate;
  t.err_c5 = std::abs(r5.prefactor) * r5.q.error_estimate;
  t.err_c6 = std::abs(r6.prefactor) * r6.q.error_estimate;
  t.converged = r2.q.converged && r3.q.converged && r4.q.converged &&
                r5.q.converged && r6.q.converged;

  const KappaTable k = kappa_table(t);
  t.kappa1 = k.kappa1;
  t.kappa2 = k.kappa2;
  t.kappa3 = k.kappa3;
  return t;
}

}  // namespace

ConstantsTable compute_constants(int n, double tol, int initial_panels) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, int>, ConstantsTable> cache;
  const auto key = std::make_tuple(n, tol, initial_panels);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  ConstantsTable t = compute_uncached(n, tol, initial_panels);
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(key, t);
  return t;
}

KappaTable kappa_table(const ConstantsTable& t) {
  KappaTable k;
  k.kappa1 = t.c4 / (2.0 * t.c5);
  k.kappa2 = t.c3 / t.c5;
  const double nd = double(t.n);
  k.kappa3 = std::pow(2.0, (nd - 3.0) / nd) * std::pow(t.c2 / t.c6, 1.0 / nd) *
             std::pow(t.c5 / t.c3, (nd - 2.0) / nd);
  if (!(k.kappa1 > 0.0) || !(k.kappa2 > 0.0) || !(k.kappa3 > 0.0))
    throw NumericError(
        "kappa_table: a kappa came out non-positive; quadrature or sign bug");
  return k;
}

}  // namespace bubblekit
