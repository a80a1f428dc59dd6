#include "revana/synth.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "revana/rng.hpp"

namespace revana {
namespace {

std::vector<std::string> make_vocab(const char* stem, int n) {
  std::vector<std::string> v;
  v.reserve(static_cast<std::size_t>(n));
  char buf[32];
  for (int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof(buf), "%s%03d", stem, i);
    v.emplace_back(buf);
  }
  return v;
}

const std::string& pick(Rng& rng, const std::vector<std::string>& vocab) {
  return vocab[rng.index(vocab.size())];
}

}  // namespace

Corpus synth_corpus(const SynthOptions& opt) {
  if (opt.n_reviews < 1) throw std::invalid_argument("n_reviews must be >= 1");
  if (opt.sentences_min < 1 || opt.sentences_max < opt.sentences_min)
    throw std::invalid_argument("bad sentence count range");
  if (opt.tokens_min < 3 || opt.tokens_max < opt.tokens_min)
    throw std::invalid_argument("tokens per sentence must be >= 3");
  if (opt.n_pos_words < 1 || opt.n_neg_words < 1 || opt.n_noise_words < 1)
    throw std::invalid_argument("vocabulary sizes must be >= 1");
  if (opt.cross_polarity_prob < 0.0 || opt.cross_polarity_prob > 1.0)
    throw std::invalid_argument("cross_polarity_prob must be in [0, 1]");
  if (opt.score_noise < 0.0)
    throw std::invalid_argument("score_noise must be >= 0");

  const auto pos_vocab = make_vocab("good", opt.n_pos_words);
  const auto neg_vocab = make_vocab("bad", opt.n_neg_words);
  const auto noise_vocab = make_vocab("noise", opt.n_noise_words);

  Rng rng(opt.seed);
  Corpus corpus;
  corpus.provenance = "synthetic";
  corpus.reviews.reserve(static_cast<std::size_t>(opt.n_reviews));
  char buf[32];
  for (int r = 0; r < opt.n_reviews; ++r) {
    Review review;
    std::snprintf(buf, sizeof(buf), "r%05d", r);
    review.review_id = buf;
    std::snprintf(buf, sizeof(buf), "h%03d", r % 50);
    review.hotel_id = buf;

    const int n_sentences = static_cast<int>(
        rng.uniform_int(opt.sentences_min, opt.sentences_max));
    const double positivity = rng.uniform_real(0.05, 0.95);
    int n_pos = 0;
    for (int s = 0; s < n_sentences; ++s) {
      const bool positive = rng.bernoulli(positivity);
      if (positive) ++n_pos;
      const auto& own = positive ? pos_vocab : neg_vocab;
      const auto& other = positive ? neg_vocab : pos_vocab;

      Sentence sentence;
      const int n_tokens =
          static_cast<int>(rng.uniform_int(opt.tokens_min, opt.tokens_max));
      sentence.tokens.push_back(pick(rng, own));
      sentence.tokens.push_back(pick(rng, own));
      int used = 2;
      if (rng.bernoulli(opt.cross_polarity_prob)) {
        sentence.tokens.push_back(pick(rng, other));
        ++used;
      }
      for (; used < n_tokens; ++used)
        sentence.tokens.push_back(pick(rng, noise_vocab));
      if (opt.labels)
        sentence.gold_label =
            positive ? Polarity::positive : Polarity::negative;
      review.sentences.push_back(std::move(sentence));
    }

    const double ratio =
        static_cast<double>(n_pos) / static_cast<double>(n_sentences);
    review.score = opt.dependence == Dependence::monotone
                       ? 1.0 + 4.0 * ratio + rng.normal(0.0, opt.score_noise)
                       : rng.uniform_real(1.0, 5.0);
    corpus.reviews.push_back(std::move(review));
  }
  return corpus;
}

}  // namespace revana
