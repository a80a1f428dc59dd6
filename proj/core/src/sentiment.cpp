#include "revana/sentiment.hpp"

#include <cstdio>
#include <fstream>

#include "revana/errors.hpp"

namespace revana {

SentimentSummary summarize_review(const Review& review,
                                  const TrainedModel& model) {
  if (review.sentences.empty()) throw EmptyReviewError(review.review_id);
  SentimentSummary s;
  s.review_id = review.review_id;
  s.hotel_id = review.hotel_id;
  s.score = review.score;
  s.n_total = static_cast<int>(review.sentences.size());
  for (const auto& sentence : review.sentences) {
    if (predict_sentence(model, sentence.tokens) > 0)
      ++s.n_pos;
    else
      ++s.n_neg;
  }
  s.pos_ratio = static_cast<double>(s.n_pos) / static_cast<double>(s.n_total);
  s.neg_ratio = static_cast<double>(s.n_neg) / static_cast<double>(s.n_total);
  return s;
}

std::vector<SentimentSummary> summarize_corpus(const Corpus& corpus,
                                               const TrainedModel& model) {
  std::vector<SentimentSummary> out;
  out.reserve(corpus.reviews.size());
  for (const auto& r : corpus.reviews)
    out.push_back(summarize_review(r, model));
  return out;
}

void write_sentiment_csv(std::span<const SentimentSummary> summaries,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open())
    throw Error("cannot open for writing: " + path.string());
  out << "review_id,hotel_id,score,n_total,n_pos,n_neg,pos_ratio,neg_ratio\n";
  char buf[128];
  for (const auto& s : summaries) {
    std::snprintf(buf, sizeof(buf), "%.6g,%d,%d,%d,%.6f,%.6f", s.score,
                  s.n_total, s.n_pos, s.n_neg, s.pos_ratio, s.neg_ratio);
    out << s.review_id << ',' << s.hotel_id << ',' << buf << '\n';
  }
}

PairedSample pos_ratio_sample(std::span<const SentimentSummary> summaries) {
  PairedSample p;
  p.x.reserve(summaries.size());
  p.y.reserve(summaries.size());
  for (const auto& s : summaries) {
    p.x.push_back(s.pos_ratio);
    p.y.push_back(s.score);
  }
  return p;
}

PairedSample neg_ratio_sample(std::span<const SentimentSummary> summaries) {
  PairedSample p;
  p.x.reserve(summaries.size());
  p.y.reserve(summaries.size());
  for (const auto& s : summaries) {
    p.x.push_back(s.neg_ratio);
    p.y.push_back(s.score);
  }
  return p;
}

}  // namespace revana
