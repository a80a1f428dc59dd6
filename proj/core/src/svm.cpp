#include "revana/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "revana/errors.hpp"

namespace revana {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double decision_value(std::span<const double> weights, double bias,
                      const FeatureVector& x) {
  if (weights.size() != x.size())
    throw DimensionMismatchError(weights.size(), x.size());
  return dot(weights, x) + bias;
}

double hinge_objective(std::span<const FeatureVector> xs,
                       std::span<const int> ys, std::span<const double> w,
                       double b, double c) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("xs and ys differ in length");
  double obj = 0.5 * dot(w, w);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != w.size())
      throw DimensionMismatchError(w.size(), xs[i].size());
    const double margin = ys[i] * (dot(w, xs[i]) + b);
    obj += c * std::max(0.0, 1.0 - margin);
  }
  return obj;
}

SvmSolution train_svm(std::span<const FeatureVector> xs,
                      std::span<const int> ys, const SvmOptions& opt) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("xs and ys differ in length");
  if (xs.empty()) throw EmptyTrainingSetError();
  if (!(opt.c > 0.0)) throw std::invalid_argument("c must be positive");

  const std::size_t dim = xs[0].size();
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != dim) throw DimensionMismatchError(dim, xs[i].size());
    if (ys[i] == 1)
      has_pos = true;
    else if (ys[i] == -1)
      has_neg = true;
    else
      throw std::invalid_argument("labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) throw SingleClassTrainingSetError();

  // collapse duplicates; a pair seen m times gets the box [0, m*C]
  std::vector<FeatureVector> ux;
  std::vector<double> uy, upper;
  {
    std::map<std::pair<FeatureVector, int>, std::size_t> index;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto [it, inserted] =
          index.try_emplace({xs[i], ys[i]}, ux.size());
      if (inserted) {
        ux.push_back(xs[i]);
        uy.push_back(static_cast<double>(ys[i]));
        upper.push_back(opt.c);
      } else {
        upper[it->second] += opt.c;
      }
    }
  }
  const std::size_t m = ux.size();

  // full linear-kernel cache below the memory cutoff, rows on demand above it
  const bool cached = m <= 2048;
  std::vector<double> kernel;
  if (cached) {
    kernel.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j)
        kernel[i * m + j] = kernel[j * m + i] = dot(ux[i], ux[j]);
  }
  std::vector<double> diag(m), row_i_buf, row_j_buf;
  for (std::size_t t = 0; t < m; ++t) diag[t] = dot(ux[t], ux[t]);
  auto krow = [&](std::size_t r, std::vector<double>& buf) -> const double* {
    if (cached) return kernel.data() + r * m;
    buf.resize(m);
    for (std::size_t t = 0; t < m; ++t) buf[t] = dot(ux[r], ux[t]);
    return buf.data();
  };

  std::vector<double> alpha(m, 0.0);
  std::vector<double> grad(m, -1.0);  // gradient of 1/2 a'Qa - e'a at a = 0

  bool converged = false;

  for (long long iter = 0;; ++iter) {
    // first index: maximal violator on the up side
    std::size_t i = m;
    double gmax = -kInf, gmin = kInf;
    for (std::size_t t = 0; t < m; ++t) {
      const double v = -uy[t] * grad[t];
      const bool up = uy[t] > 0 ? alpha[t] < upper[t] : alpha[t] > 0.0;
      const bool low = uy[t] > 0 ? alpha[t] > 0.0 : alpha[t] < upper[t];
      if (up && v > gmax) {
        gmax = v;
        i = t;
      }
      if (low && v < gmin) gmin = v;
    }
    if (i == m || !std::isfinite(gmin) || gmax - gmin < opt.kkt_tol) {
      converged = true;
      break;
    }
    if (iter >= opt.max_iter) {
      converged = false;
      break;
    }

    // second index: largest second-order gain against i (LIBSVM-style)
    const double* row_i = krow(i, row_i_buf);
    const double kii = diag[i];
    std::size_t j = m;
    double best_gain = -kInf;
    for (std::size_t t = 0; t < m; ++t) {
      const bool low = uy[t] > 0 ? alpha[t] > 0.0 : alpha[t] < upper[t];
      if (!low) continue;
      const double b = gmax + uy[t] * grad[t];  // gmax - v_t
      if (b <= 0.0) continue;
      double a = kii + diag[t] - 2.0 * row_i[t];
      if (a <= 0.0) a = 1e-12;
      const double gain = b * b / a;
      if (gain > best_gain) {
        best_gain = gain;
        j = t;
      }
    }
    if (j == m) {  // unreachable while the gap test above fails
      converged = true;
      break;
    }
    const double* row_j = krow(j, row_j_buf);

    const double kjj = diag[j], kij = row_i[j];
    double quad = kii + kjj - 2.0 * kij;
    if (quad <= 0.0) quad = 1e-12;
    const double old_ai = alpha[i], old_aj = alpha[j];
    double ai, aj;
    if (uy[i] != uy[j]) {
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = old_ai - old_aj;  // preserved by the step
      ai = std::clamp(old_ai + delta, std::max(0.0, diff),
                      std::min(upper[i], upper[j] + diff));
      aj = ai - diff;
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = old_ai + old_aj;  // preserved by the step
      ai = std::clamp(old_ai - delta, std::max(0.0, sum - upper[j]),
                      std::min(upper[i], sum));
      aj = sum - ai;
    }
    alpha[i] = ai;
    alpha[j] = aj;

    const double ci = uy[i] * (ai - old_ai), cj = uy[j] * (aj - old_aj);
    for (std::size_t t = 0; t < m; ++t)
      grad[t] += uy[t] * (ci * row_i[t] + cj * row_j[t]);
  }

  SvmSolution sol;
  sol.c_param = opt.c;
  sol.converged = converged;
  sol.weights.assign(dim, 0.0);
  for (std::size_t t = 0; t < m; ++t) {
    if (alpha[t] == 0.0) continue;
    const double coef = alpha[t] * uy[t];
    for (std::size_t d = 0; d < dim; ++d) sol.weights[d] += coef * ux[t][d];
  }

  // bias from free support vectors, else the midpoint of the KKT interval
  double free_sum = 0.0;
  std::size_t free_cnt = 0;
  double lo = -kInf, hi = kInf;
  for (std::size_t t = 0; t < m; ++t) {
    const double v = -uy[t] * grad[t];
    const bool at_lower = alpha[t] <= 0.0;
    const bool at_upper = alpha[t] >= upper[t];
    if (!at_lower && !at_upper) {
      free_sum += v;
      ++free_cnt;
    } else if ((uy[t] > 0 && at_lower) || (uy[t] < 0 && at_upper)) {
      lo = std::max(lo, v);
    } else {
      hi = std::min(hi, v);
    }
  }
  if (free_cnt > 0)
    sol.bias = free_sum / static_cast<double>(free_cnt);
  else if (std::isfinite(lo) && std::isfinite(hi))
    sol.bias = (lo + hi) / 2.0;
  else if (std::isfinite(lo))
    sol.bias = lo;
  else if (std::isfinite(hi))
    sol.bias = hi;
  else
    sol.bias = 0.0;
  return sol;
}

}  // namespace revana
