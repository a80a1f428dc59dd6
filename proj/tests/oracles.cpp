#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

double kendall_tau_a(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long long con = 0, dis = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 || dy == 0.0) continue;
      if ((dx < 0.0) == (dy < 0.0))
        ++con;
      else
        ++dis;
    }
  const long long n0 =
      static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
  return static_cast<double>(con - dis) / static_cast<double>(n0);
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long long con = 0, dis = 0, tx = 0, ty = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0) ++tx;
      if (dy == 0.0) ++ty;
      if (dx == 0.0 || dy == 0.0) continue;
      if ((dx < 0.0) == (dy < 0.0))
        ++con;
      else
        ++dis;
    }
  const long long n0 =
      static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
  const double denom = std::sqrt(static_cast<double>(n0 - tx) *
                                 static_cast<double>(n0 - ty));
  return denom == 0.0 ? 0.0 : static_cast<double>(con - dis) / denom;
}

double entropy_bits(std::span<const double> probs) {
  long double h = 0.0L;
  for (double p : probs)
    if (p > 0.0) h -= static_cast<long double>(p) * std::log2l(p);
  return static_cast<double>(h);
}

namespace {

// Exact projection of v onto {0 <= a <= c, sum_i y_i a_i = 0} by bisection
// on the constraint multiplier.
std::vector<double> project(const std::vector<double>& v,
                            const std::vector<double>& y, double c) {
  const std::size_t n = v.size();
  auto clipped = [&](double lambda, std::vector<double>* out) {
    double balance = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::clamp(v[i] - lambda * y[i], 0.0, c);
      if (out) (*out)[i] = a;
      balance += y[i] * a;
    }
    return balance;
  };
  double m = c + 1.0;
  for (double t : v) m = std::max(m, std::abs(t) + c + 1.0);
  double lo = -m, hi = m;
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2.0;
    if (clipped(mid, nullptr) > 0.0)
      lo = mid;  // balance decreases with lambda
    else
      hi = mid;
  }
  std::vector<double> out(n);
  clipped((lo + hi) / 2.0, &out);
  return out;
}

}  // namespace

SvmReference solve_svm(std::span<const revana::FeatureVector> xs,
                       std::span<const int> ys, double c, long max_iters,
                       double target_gap) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n)
    throw std::invalid_argument("solve_svm: bad input");
  const std::size_t d = xs[0].size();

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = ys[i];

  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double dotv = 0.0;
      for (std::size_t k = 0; k < d; ++k) dotv += xs[i][k] * xs[j][k];
      q[i * n + j] = q[j * n + i] = y[i] * y[j] * dotv;
    }

  double lip = 1e-12;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(q[i * n + j]);
    lip = std::max(lip, row);
  }
  const double step = 1.0 / lip;

  auto grad_at = [&](const std::vector<double>& a, std::vector<double>* g) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = -1.0;
      for (std::size_t j = 0; j < n; ++j) s += q[i * n + j] * a[j];
      (*g)[i] = s;
    }
  };
  auto dual_value = [&](const std::vector<double>& a) {
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lin += a[i];
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += q[i * n + j] * a[j];
      quad += a[i] * s;
    }
    return lin - 0.5 * quad;
  };

  auto evaluate = [&](const std::vector<double>& a, SvmReference* out) {
    std::vector<double> w(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double coef = a[i] * y[i];
      for (std::size_t k = 0; k < d; ++k) w[k] += coef * xs[i][k];
    }
    // exact bias: the primal is piecewise linear in b with breakpoints
    // b_i = y_i - w.x_i, so a minimum sits on one of them
    double best_b = 0.0, best_primal = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double b;
      if (i == n) {
        b = 0.0;  // fallback candidate
      } else {
        double dotv = 0.0;
        for (std::size_t k = 0; k < d; ++k) dotv += w[k] * xs[i][k];
        b = y[i] - dotv;
      }
      const double primal = revana::hinge_objective(xs, ys, w, b, c);
      if (i == 0 || primal < best_primal) {
        best_primal = primal;
        best_b = b;
      }
    }
    out->weights = std::move(w);
    out->bias = best_b;
    out->primal = best_primal;
    out->dual = dual_value(a);
    out->gap = out->primal - out->dual;
  };

  // FISTA with adaptive restart
  std::vector<double> a(n, 0.0), a_prev(n, 0.0), z(n, 0.0), g(n);
  double t = 1.0;
  double last_dual = 0.0;
  SvmReference best;
  evaluate(a, &best);
  for (long iter = 1; iter <= max_iters; ++iter) {
    grad_at(z, &g);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = z[i] - step * g[i];
    a_prev = a;
    a = project(v, y, c);
    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    const double mom = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < n; ++i)
      z[i] = a[i] + mom * (a[i] - a_prev[i]);
    t = t_next;

    if (iter % 40 == 0) {
      const double dv = dual_value(a);
      if (dv < last_dual) {  // restart the momentum when progress stalls
        z = a;
        t = 1.0;
      }
      last_dual = dv;
      SvmReference cand;
      evaluate(a, &cand);
      if (cand.gap < best.gap) best = cand;
      if (best.gap < target_gap) break;
    }
  }
  return best;
}

}  // namespace oracle
