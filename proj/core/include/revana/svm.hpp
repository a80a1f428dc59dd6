#pragma once

#include <span>
#include <vector>

namespace revana {

using FeatureVector = std::vector<double>;

struct SvmOptions {
  double c = 1.0;
  double kkt_tol = 1e-8;  // maximal-violating-pair gap threshold
  long long max_iter = 2'000'000;
};

struct SvmSolution {
  std::vector<double> weights;
  double bias = 0.0;
  double c_param = 0.0;
  bool converged = true;  // false only when max_iter ran out
};

// Soft-margin linear SVM with hinge loss and unregularized bias:
//   min 1/2 |w|^2 + C * sum_i max(0, 1 - y_i (w.x_i + b))
// solved in the dual by SMO over maximal violating pairs. Labels are +1/-1.
// Duplicate (x, y) samples are collapsed into one dual variable with a
// proportionally larger box, which changes nothing about the optimum.
// Throws SingleClassTrainingSetError if only one label is present.
SvmSolution train_svm(std::span<const FeatureVector> xs,
                      std::span<const int> ys, const SvmOptions& opt = {});

// w.x + b
double decision_value(std::span<const double> weights, double bias,
                      const FeatureVector& x);

// Primal objective at (w, b).
double hinge_objective(std::span<const FeatureVector> xs,
                       std::span<const int> ys, std::span<const double> w,
                       double b, double c);

}  // namespace revana
