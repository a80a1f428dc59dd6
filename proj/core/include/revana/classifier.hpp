#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "revana/corpus.hpp"
#include "revana/features.hpp"
#include "revana/svm.hpp"

namespace revana {

int label_value(Polarity p);  // +1 / -1

// Binary presence features over a sorted keyword list.
FeatureVector vectorize(std::span<const std::string> tokens,
                        std::span<const std::string> keywords);
FeatureVector vectorize(const Sentence& sentence, const KeywordTable& table);

std::vector<FeatureVector> vectorize_all(std::span<const LabeledSentence> docs,
                                         std::span<const std::string> keywords);
std::vector<int> labels_of(std::span<const LabeledSentence> docs);

struct TrainedModel {
  std::vector<std::string> keywords;  // sorted; defines the feature space
  std::vector<double> weights;        // aligned with keywords
  double bias = 0.0;
  double c_param = 0.0;
  bool converged = true;
};

TrainedModel train_model(std::span<const LabeledSentence> docs,
                         std::span<const std::string> keywords, double c,
                         const SvmOptions& base = {});

// sign(w.x + b); a decision value of exactly 0 goes to -1.
int predict(const TrainedModel& model, const FeatureVector& x);
int predict_sentence(const TrainedModel& model,
                     std::span<const std::string> tokens);

struct F1Result {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Positive-class F1; every 0/0 ratio resolves to 0.
F1Result f1_score(std::span<const int> predicted, std::span<const int> gold);
// Unweighted mean of the per-class F1 values.
double macro_f1(std::span<const int> predicted, std::span<const int> gold);

// Fold id per sample. Each class is shuffled with the seeded RNG and dealt
// into k contiguous chunks, so fold sizes differ by at most one per class.
// Throws InsufficientSamplesPerClassError when a class has fewer than k
// members.
std::vector<int> stratified_folds(std::span<const int> labels, int k,
                                  std::uint64_t seed);

struct CvReport {
  int k = 0;
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double c_param = 0.0;
  std::vector<double> fold_f1;
  double f1_mean = 0.0;
  double f1_std = 0.0;  // population standard deviation over folds
  double macro_f1_mean = 0.0;
};

CvReport kfold_cv(std::span<const FeatureVector> xs, std::span<const int> ys,
                  double c, int k, std::uint64_t seed,
                  const SvmOptions& base = {});
// Same, but vectorizes against table.combined() first.
CvReport kfold_cv(std::span<const LabeledSentence> docs,
                  const KeywordTable& table, double c, int k,
                  std::uint64_t seed);

enum class ListMode { positive, negative, combined };

struct SweepModeResult {
  ListMode mode = ListMode::combined;
  double alpha = 1.0;   // winning threshold; alpha' when mode == negative
  double c_param = 1.0;
  CvReport report;
  std::vector<std::string> keywords;
};

struct SweepResult {
  SweepModeResult positive;
  SweepModeResult negative;
  SweepModeResult combined;
  KeywordTable table;  // thresholds frozen at the winners
};

// Grid search in three stages: alpha over the positive-only list, alpha'
// over the negative-only list (each crossed with every C), then the union of
// the winning lists over C alone. An empty candidate list scores 0. Ties go
// to the smaller threshold, then the smaller C. Single-list reports carry
// the mode's threshold in both alpha fields.
SweepResult sweep_alpha(std::span<const LabeledSentence> docs,
                        std::span<const double> alpha_grid,
                        std::span<const double> c_grid, int k,
                        std::uint64_t seed);

// Model file: {"c": x, "bias": b, "keywords": [w, ...], "weights": [f, ...]}
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace revana
