#include "revana/svm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "revana/errors.hpp"
#include "revana/rng.hpp"

namespace {

using revana::decision_value;
using revana::FeatureVector;
using revana::hinge_objective;
using revana::SvmOptions;
using revana::SvmSolution;
using revana::train_svm;

TEST(TrainSvm, TwoPointSeparable) {
  // Optimal separator of (1,0)/+1 vs (0,1)/-1 is w = (1,-1), b = 0 with both
  // margins exactly 1; the objective there is |w|^2 / 2 = 1.
  const std::vector<FeatureVector> xs = {{1, 0}, {0, 1}};
  const std::vector<int> ys = {1, -1};
  const SvmSolution m = train_svm(xs, ys);
  ASSERT_EQ(m.weights.size(), 2u);
  EXPECT_NEAR(m.weights[0], 1.0, 1e-6);
  EXPECT_NEAR(m.weights[1], -1.0, 1e-6);
  EXPECT_NEAR(m.bias, 0.0, 1e-6);
  EXPECT_TRUE(m.converged);
  EXPECT_NEAR(hinge_objective(xs, ys, m.weights, m.bias, 1.0), 1.0, 1e-6);
}

TEST(TrainSvm, InputValidation) {
  const std::vector<FeatureVector> xs = {{1, 0}, {0, 1}};
  EXPECT_THROW(train_svm(xs, std::vector<int>{1, 1}),
               revana::SingleClassTrainingSetError);
  EXPECT_THROW(train_svm(xs, std::vector<int>{1, 0}), std::invalid_argument);
  EXPECT_THROW(train_svm(xs, std::vector<int>{1}), std::invalid_argument);
  EXPECT_THROW(train_svm({}, std::vector<int>{}),
               revana::EmptyTrainingSetError);
  const std::vector<FeatureVector> ragged = {{1, 0}, {0, 1, 2}};
  EXPECT_THROW(train_svm(ragged, std::vector<int>{1, -1}),
               revana::DimensionMismatchError);
  SvmOptions bad;
  bad.c = 0.0;
  EXPECT_THROW(train_svm(xs, std::vector<int>{1, -1}, bad),
               std::invalid_argument);
}

TEST(DecisionValue, DotPlusBias) {
  const std::vector<double> w = {-2.0, 1.0};
  EXPECT_DOUBLE_EQ(decision_value(w, 0.5, {1.0, 1.0}), -0.5);
  EXPECT_DOUBLE_EQ(decision_value(w, 0.0, {0.0, 0.0}), 0.0);
  EXPECT_THROW(decision_value(w, 0.0, {1.0}), revana::DimensionMismatchError);
}

struct RandomProblem {
  std::vector<FeatureVector> xs;
  std::vector<int> ys;
};

RandomProblem random_problem(revana::Rng& rng, std::size_t n, std::size_t d) {
  RandomProblem p;
  for (;;) {
    p.xs.clear();
    p.ys.clear();
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      FeatureVector x(d);
      for (auto& v : x) v = rng.uniform_real(-1, 1);
      p.xs.push_back(std::move(x));
      const int y = rng.bernoulli(0.5) ? 1 : -1;
      p.ys.push_back(y);
      (y > 0 ? has_pos : has_neg) = true;
    }
    if (has_pos && has_neg) return p;
  }
}

TEST(TrainSvm, MatchesReferenceSolver) {
  revana::Rng rng(1234);
  const double cs[] = {0.5, 1.0, 2.5};
  for (int trial = 0; trial < 10; ++trial) {
    const RandomProblem p = random_problem(rng, 12, 4);
    const double c = cs[trial % 3];
    SvmOptions opt;
    opt.c = c;
    const SvmSolution m = train_svm(p.xs, p.ys, opt);
    const oracle::SvmReference ref = oracle::solve_svm(p.xs, p.ys, c);
    ASSERT_LE(ref.gap, 1e-8) << "reference failed to certify optimality";
    const double primal = hinge_objective(p.xs, p.ys, m.weights, m.bias, c);
    EXPECT_NEAR(primal, ref.primal, 1e-6) << "trial " << trial;
    // weak duality: no primal point can beat the certified dual value
    EXPECT_GE(primal, ref.dual - 1e-9);
  }
}

TEST(TrainSvm, DuplicateSamplesMatchReference) {
  revana::Rng rng(77);
  RandomProblem p = random_problem(rng, 6, 3);
  // duplicate tails exercise the multiplicity boxes
  for (int copy = 0; copy < 3; ++copy) {
    p.xs.push_back(p.xs[0]);
    p.ys.push_back(p.ys[0]);
    p.xs.push_back(p.xs[1]);
    p.ys.push_back(p.ys[1]);
  }
  SvmOptions opt;
  opt.c = 1.5;
  const SvmSolution m = train_svm(p.xs, p.ys, opt);
  const oracle::SvmReference ref = oracle::solve_svm(p.xs, p.ys, 1.5);
  ASSERT_LE(ref.gap, 1e-8);
  EXPECT_NEAR(hinge_objective(p.xs, p.ys, m.weights, m.bias, 1.5), ref.primal,
              1e-6);
}

TEST(TrainSvm, SeparableDataClassifiedPerfectly) {
  revana::Rng rng(55);
  std::vector<FeatureVector> xs;
  std::vector<int> ys;
  for (int i = 0; i < 60; ++i) {
    FeatureVector x(3);
    const int y = i % 2 == 0 ? 1 : -1;
    // first coordinate carries the class with a margin of at least 0.4
    x[0] = y * rng.uniform_real(0.2, 1.0);
    x[1] = rng.uniform_real(-1, 1);
    x[2] = rng.uniform_real(-1, 1);
    xs.push_back(std::move(x));
    ys.push_back(y);
  }
  SvmOptions opt;
  opt.c = 1000.0;
  const SvmSolution m = train_svm(xs, ys, opt);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dv = decision_value(m.weights, m.bias, xs[i]);
    EXPECT_GT(dv * ys[i], 0.0) << "sample " << i;
  }
}

TEST(TrainSvm, IterationBudgetExhaustionIsFlagged) {
  const std::vector<FeatureVector> xs = {{1, 0}, {0, 1}};
  const std::vector<int> ys = {1, -1};
  SvmOptions opt;
  opt.max_iter = 0;
  const SvmSolution m = train_svm(xs, ys, opt);
  EXPECT_FALSE(m.converged);
}

TEST(HingeObjective, HandComputedValues) {
  const std::vector<FeatureVector> xs = {{1, 0}, {0, 1}};
  const std::vector<int> ys = {1, -1};
  const std::vector<double> w0 = {0, 0};
  // w = 0, b = 0: every margin is 0, each hinge term is 1
  EXPECT_DOUBLE_EQ(hinge_objective(xs, ys, w0, 0.0, 2.0), 4.0);
  const std::vector<double> w = {1, -1};
  EXPECT_DOUBLE_EQ(hinge_objective(xs, ys, w, 0.0, 2.0), 1.0);
}

}  // namespace
