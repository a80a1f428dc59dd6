#pragma once

#include <cstdint>

#include "revana/corpus.hpp"

namespace revana {

enum class Dependence { none, monotone };

struct SynthOptions {
  std::uint64_t seed = 0;
  int n_reviews = 100;
  int sentences_min = 3;
  int sentences_max = 8;
  int tokens_min = 4;
  int tokens_max = 9;
  int n_pos_words = 20;
  int n_neg_words = 20;
  int n_noise_words = 120;
  double cross_polarity_prob = 0.03;  // chance of one opposite-vocab token
  Dependence dependence = Dependence::monotone;
  double score_noise = 0.25;  // stddev of the noise on monotone scores
  bool labels = true;
};

// Synthetic review corpus with planted polarity vocabularies. Each sentence
// draws a gold polarity from the review's positivity level and mixes words
// of its own vocabulary with shared noise words. Under monotone dependence
// the review score is an affine function of the fraction of positive
// sentences plus Gaussian noise; under none it is independent uniform noise.
Corpus synth_corpus(const SynthOptions& opt);

}  // namespace revana
