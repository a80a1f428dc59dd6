#include "revana/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "revana/errors.hpp"
#include "revana/rng.hpp"

namespace revana {

int label_value(Polarity p) { return p == Polarity::positive ? 1 : -1; }

FeatureVector vectorize(std::span<const std::string> tokens,
                        std::span<const std::string> keywords) {
  FeatureVector x(keywords.size(), 0.0);
  for (const auto& tok : tokens) {
    const auto it = std::lower_bound(keywords.begin(), keywords.end(), tok);
    if (it != keywords.end() && *it == tok)
      x[static_cast<std::size_t>(it - keywords.begin())] = 1.0;
  }
  return x;
}

FeatureVector vectorize(const Sentence& sentence, const KeywordTable& table) {
  const auto words = table.combined();
  return vectorize(sentence.tokens, words);
}

std::vector<FeatureVector> vectorize_all(
    std::span<const LabeledSentence> docs,
    std::span<const std::string> keywords) {
  std::vector<FeatureVector> xs;
  xs.reserve(docs.size());
  for (const auto& d : docs) xs.push_back(vectorize(d.tokens, keywords));
  return xs;
}

std::vector<int> labels_of(std::span<const LabeledSentence> docs) {
  std::vector<int> ys;
  ys.reserve(docs.size());
  for (const auto& d : docs) ys.push_back(label_value(d.label));
  return ys;
}

TrainedModel train_model(std::span<const LabeledSentence> docs,
                         std::span<const std::string> keywords, double c,
                         const SvmOptions& base) {
  if (keywords.empty()) throw EmptyKeywordSetError(0.0, 0.0);
  const auto xs = vectorize_all(docs, keywords);
  const auto ys = labels_of(docs);
  SvmOptions opt = base;
  opt.c = c;
  const SvmSolution sol = train_svm(xs, ys, opt);
  TrainedModel model;
  model.keywords.assign(keywords.begin(), keywords.end());
  model.weights = sol.weights;
  model.bias = sol.bias;
  model.c_param = sol.c_param;
  model.converged = sol.converged;
  return model;
}

int predict(const TrainedModel& model, const FeatureVector& x) {
  return decision_value(model.weights, model.bias, x) > 0.0 ? 1 : -1;
}

int predict_sentence(const TrainedModel& model,
                     std::span<const std::string> tokens) {
  return predict(model, vectorize(tokens, model.keywords));
}

namespace {

struct Counts {
  long long tp = 0, fp = 0, fn = 0;
};

Counts count_for(std::span<const int> predicted, std::span<const int> gold,
                 int positive) {
  Counts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool p = predicted[i] == positive;
    const bool g = gold[i] == positive;
    if (p && g)
      ++c.tp;
    else if (p && !g)
      ++c.fp;
    else if (!p && g)
      ++c.fn;
  }
  return c;
}

double f1_from(const Counts& c) {
  const double precision =
      c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp)
                  : 0.0;
  const double recall =
      c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn)
                  : 0.0;
  return precision + recall > 0.0
             ? 2.0 * precision * recall / (precision + recall)
             : 0.0;
}

void check_labels(std::span<const int> predicted, std::span<const int> gold) {
  if (predicted.size() != gold.size())
    throw std::invalid_argument("predicted and gold differ in length");
  if (predicted.empty()) throw std::invalid_argument("empty label vectors");
  for (auto v : predicted)
    if (v != 1 && v != -1)
      throw std::invalid_argument("labels must be +1 or -1");
  for (auto v : gold)
    if (v != 1 && v != -1)
      throw std::invalid_argument("labels must be +1 or -1");
}

}  // namespace

F1Result f1_score(std::span<const int> predicted, std::span<const int> gold) {
  check_labels(predicted, gold);
  const Counts c = count_for(predicted, gold, 1);
  F1Result r;
  r.precision = c.tp + c.fp ? static_cast<double>(c.tp) /
                                  static_cast<double>(c.tp + c.fp)
                            : 0.0;
  r.recall = c.tp + c.fn ? static_cast<double>(c.tp) /
                               static_cast<double>(c.tp + c.fn)
                         : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

double macro_f1(std::span<const int> predicted, std::span<const int> gold) {
  check_labels(predicted, gold);
  return (f1_from(count_for(predicted, gold, 1)) +
          f1_from(count_for(predicted, gold, -1))) /
         2.0;
}

std::vector<int> stratified_folds(std::span<const int> labels, int k,
                                  std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1)
      pos.push_back(i);
    else if (labels[i] == -1)
      neg.push_back(i);
    else
      throw std::invalid_argument("labels must be +1 or -1");
  }
  const std::size_t smallest = std::min(pos.size(), neg.size());
  if (smallest < static_cast<std::size_t>(k))
    throw InsufficientSamplesPerClassError(k, smallest);

  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  std::vector<int> fold(labels.size(), 0);
  for (auto* cls : {&pos, &neg}) {
    const std::size_t base = cls->size() / static_cast<std::size_t>(k);
    const std::size_t rem = cls->size() % static_cast<std::size_t>(k);
    std::size_t p = 0;
    for (int f = 0; f < k; ++f) {
      const std::size_t take = base + (static_cast<std::size_t>(f) < rem);
      for (std::size_t t = 0; t < take; ++t) fold[(*cls)[p++]] = f;
    }
  }
  return fold;
}

CvReport kfold_cv(std::span<const FeatureVector> xs, std::span<const int> ys,
                  double c, int k, std::uint64_t seed,
                  const SvmOptions& base) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("xs and ys differ in length");
  const std::vector<int> fold = stratified_folds(ys, k, seed);

  CvReport rep;
  rep.k = k;
  rep.c_param = c;
  SvmOptions opt = base;
  opt.c = c;

  double macro_sum = 0.0;
  for (int f = 0; f < k; ++f) {
    std::vector<FeatureVector> train_x;
    std::vector<int> train_y, test_y;
    std::vector<std::size_t> test_idx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (fold[i] == f) {
        test_idx.push_back(i);
        test_y.push_back(ys[i]);
      } else {
        train_x.push_back(xs[i]);
        train_y.push_back(ys[i]);
      }
    }
    const SvmSolution sol = train_svm(train_x, train_y, opt);
    std::vector<int> pred;
    pred.reserve(test_idx.size());
    for (std::size_t i : test_idx)
      pred.push_back(
          decision_value(sol.weights, sol.bias, xs[i]) > 0.0 ? 1 : -1);
    rep.fold_f1.push_back(f1_score(pred, test_y).f1);
    macro_sum += macro_f1(pred, test_y);
  }

  double sum = 0.0;
  for (double v : rep.fold_f1) sum += v;
  rep.f1_mean = sum / static_cast<double>(k);
  double ss = 0.0;
  for (double v : rep.fold_f1) ss += (v - rep.f1_mean) * (v - rep.f1_mean);
  rep.f1_std = std::sqrt(ss / static_cast<double>(k));
  rep.macro_f1_mean = macro_sum / static_cast<double>(k);
  return rep;
}

CvReport kfold_cv(std::span<const LabeledSentence> docs,
                  const KeywordTable& table, double c, int k,
                  std::uint64_t seed) {
  const auto words = table.combined();
  if (words.empty()) throw EmptyKeywordSetError(table.alpha, table.alpha_prime);
  const auto xs = vectorize_all(docs, words);
  const auto ys = labels_of(docs);
  CvReport rep = kfold_cv(xs, ys, c, k, seed);
  rep.alpha = table.alpha;
  rep.alpha_prime = table.alpha_prime;
  return rep;
}

namespace {

// One grid cell of the sweep.
struct Candidate {
  double threshold = 0.0;
  double c = 0.0;
  CvReport report;
  std::vector<std::string> keywords;
};

}  // namespace

SweepResult sweep_alpha(std::span<const LabeledSentence> docs,
                        std::span<const double> alpha_grid,
                        std::span<const double> c_grid, int k,
                        std::uint64_t seed) {
  if (alpha_grid.empty() || c_grid.empty())
    throw std::invalid_argument("sweep grids must be non-empty");
  std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
  std::vector<double> cs(c_grid.begin(), c_grid.end());
  std::sort(alphas.begin(), alphas.end());
  std::sort(cs.begin(), cs.end());

  CountTable counts = count_occurrences(docs);
  compute_entropies(counts);
  const std::vector<int> ys = labels_of(docs);

  auto search = [&](ListMode mode) {
    Candidate best;
    bool have = false;
    for (double a : alphas) {
      const std::vector<std::string> words =
          mode == ListMode::positive ? positive_keywords_at(counts, a)
                                     : negative_keywords_at(counts, a);
      std::vector<Candidate> cells;
      if (words.empty()) {
        // no features to train on; scored as 0 so a usable cell always wins
        Candidate cell;
        cell.threshold = a;
        cell.c = cs.front();
        cell.report.k = k;
        cells.push_back(std::move(cell));
      } else {
        const auto xs = vectorize_all(docs, words);
        for (double c : cs) {
          Candidate cell;
          cell.threshold = a;
          cell.c = c;
          cell.report = kfold_cv(xs, ys, c, k, seed);
          cell.keywords = words;
          cells.push_back(std::move(cell));
        }
      }
      for (auto& cell : cells) {
        if (!have || cell.report.f1_mean > best.report.f1_mean) {
          best = std::move(cell);
          have = true;
        }
      }
    }
    SweepModeResult r;
    r.mode = mode;
    r.alpha = best.threshold;
    r.c_param = best.c;
    r.report = best.report;
    r.report.alpha = best.threshold;
    r.report.alpha_prime = best.threshold;
    r.keywords = std::move(best.keywords);
    return r;
  };

  SweepResult result;
  result.positive = search(ListMode::positive);
  result.negative = search(ListMode::negative);

  std::vector<std::string> merged;
  std::set_union(result.positive.keywords.begin(),
                 result.positive.keywords.end(),
                 result.negative.keywords.begin(),
                 result.negative.keywords.end(), std::back_inserter(merged));
  if (merged.empty())
    throw EmptyKeywordSetError(result.positive.alpha, result.negative.alpha);

  {
    const auto xs = vectorize_all(docs, merged);
    Candidate best;
    bool have = false;
    for (double c : cs) {
      Candidate cell;
      cell.c = c;
      cell.report = kfold_cv(xs, ys, c, k, seed);
      if (!have || cell.report.f1_mean > best.report.f1_mean) {
        best = std::move(cell);
        have = true;
      }
    }
    result.combined.mode = ListMode::combined;
    result.combined.alpha = result.positive.alpha;
    result.combined.c_param = best.c;
    result.combined.report = best.report;
    result.combined.report.alpha = result.positive.alpha;
    result.combined.report.alpha_prime = result.negative.alpha;
    result.combined.keywords = merged;
  }

  result.table.alpha = result.positive.alpha;
  result.table.alpha_prime = result.negative.alpha;
  result.table.positive = result.positive.keywords;
  result.table.negative = result.negative.keywords;
  return result;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["c"] = model.c_param;
  j["bias"] = model.bias;
  j["keywords"] = model.keywords;
  j["weights"] = model.weights;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open())
    throw Error("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFoundError(path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FileFormatError("model " + path.string() + ": " + e.what());
  }
  TrainedModel model;
  try {
    model.c_param = j.at("c").get<double>();
    model.bias = j.at("bias").get<double>();
    model.keywords = j.at("keywords").get<std::vector<std::string>>();
    model.weights = j.at("weights").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError("model " + path.string() + ": " + e.what());
  }
  if (model.keywords.size() != model.weights.size())
    throw FileFormatError("model " + path.string() +
                          ": keywords and weights differ in length");
  if (!std::is_sorted(model.keywords.begin(), model.keywords.end()) ||
      std::adjacent_find(model.keywords.begin(), model.keywords.end()) !=
          model.keywords.end())
    throw FileFormatError("model " + path.string() +
                          ": keywords must be sorted and unique");
  return model;
}

}  // namespace revana
