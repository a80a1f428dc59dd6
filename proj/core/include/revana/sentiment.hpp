#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "revana/classifier.hpp"
#include "revana/corpus.hpp"
#include "revana/stats.hpp"

namespace revana {

struct SentimentSummary {
  std::string review_id;
  std::string hotel_id;
  double score = 0.0;
  int n_total = 0;
  int n_pos = 0;
  int n_neg = 0;
  double pos_ratio = 0.0;  // n_pos / n_total
  double neg_ratio = 0.0;  // n_neg / n_total
};

// Classifies every sentence of the review. Throws EmptyReviewError when the
// review has no sentences.
SentimentSummary summarize_review(const Review& review,
                                  const TrainedModel& model);

// Review order is preserved.
std::vector<SentimentSummary> summarize_corpus(const Corpus& corpus,
                                               const TrainedModel& model);

// CSV with header review_id,hotel_id,score,n_total,n_pos,n_neg,pos_ratio,
// neg_ratio; ratios printed with 6 decimal places.
void write_sentiment_csv(std::span<const SentimentSummary> summaries,
                         const std::filesystem::path& path);

// (ratio, score) pairs in review order, ready for correlation.
PairedSample pos_ratio_sample(std::span<const SentimentSummary> summaries);
PairedSample neg_ratio_sample(std::span<const SentimentSummary> summaries);

}  // namespace revana
