#include "bubblekit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace bubblekit {

namespace {

// Kronrod-15 abscissae on [-1,1] (symmetric) and weights; the odd-indexed
// abscissae form the embedded Gauss-7 rule.
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fv[i] + fv[14 - i]);
  kron += kWgk[7] * fv[7];
  for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss += kWg[3] * fv[7];
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kron * h;
  p.err = std::abs((kron - gauss) * h);
  return p;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opt) {
  std::priority_queue<Panel> queue;
  const int n0 = std::max(1, opt.initial_panels);
  double total_err = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double pa = a + (b - a) * double(i) / n0;
    const double pb = a + (b - a) * double(i + 1) / n0;
    Panel p = evaluate_panel(f, pa, pb);
    total_err += p.err;
    queue.push(p);
  }
  int panels = n0;
  while (total_err > opt.abs_tol && panels < opt.max_panels) {
    Panel worst = queue.top();
    queue.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total_err += left.err + right.err;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  QuadratureResult out;
  out.panels = panels;
  out.error_estimate = total_err;
  out.converged = total_err <= opt.abs_tol;
  double sum = 0.0;
  std::vector<Panel> all;
  all.reserve(panels);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  // deterministic summation order: sort by interval position
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : all) sum += p.value;
  out.value = sum;
  return out;
}

}  // namespace bubblekit
