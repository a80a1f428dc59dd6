#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revana/corpus.hpp"

namespace revana {

// One training unit. Keyword statistics treat each labeled sentence as a
// document of its own, so entropies measure how evenly a word spreads over
// sentences of one polarity.
struct LabeledSentence {
  std::vector<std::string> tokens;
  Polarity label = Polarity::positive;
};

// Flattens every labeled sentence of the corpus, skipping unlabeled ones.
std::vector<LabeledSentence> labeled_sentences(const Corpus& corpus);

struct WordStats {
  std::string word;
  // class-local document index -> occurrence count; absent documents omitted
  std::map<int, int> pos_counts;
  std::map<int, int> neg_counts;
  double entropy_pos = 0.0;  // bits
  double entropy_neg = 0.0;
};

struct CountTable {
  std::vector<WordStats> words;  // sorted by word
  int n_pos_docs = 0;
  int n_neg_docs = 0;

  const WordStats* find(std::string_view word) const;
};

// Tallies per-document occurrence counts for every word.
// Throws EmptyTrainingSetError on an empty input.
CountTable count_occurrences(std::span<const LabeledSentence> docs);

// Normalizes one word's counts into per-document probabilities, dense over
// all n_docs documents of the class. Throws ZeroTotalCountError when the
// counts sum to zero.
std::vector<double> word_distribution(const std::map<int, int>& counts,
                                      int n_docs);

// Shannon entropy in bits, with 0 * log2(0) = 0. An empty distribution has
// entropy 0.
double word_entropy(std::span<const double> probs);

// Fills entropy_pos / entropy_neg for every word. A word absent from a class
// gets entropy 0 there.
void compute_entropies(CountTable& table);

// Words whose positive entropy strictly exceeds alpha times their negative
// entropy (and the mirror image for the negative list). Returned sorted.
std::vector<std::string> positive_keywords_at(const CountTable& table,
                                              double alpha);
std::vector<std::string> negative_keywords_at(const CountTable& table,
                                              double alpha_prime);

struct KeywordTable {
  double alpha = 1.0;
  double alpha_prime = 1.0;
  std::vector<std::string> positive;  // sorted
  std::vector<std::string> negative;  // sorted

  std::vector<std::string> combined() const;  // sorted union
};

// Throws EmptyKeywordSetError when both lists come out empty.
KeywordTable select_keywords(const CountTable& table, double alpha,
                             double alpha_prime);

void save_keyword_table(const KeywordTable& table,
                        const std::filesystem::path& path);
KeywordTable load_keyword_table(const std::filesystem::path& path);

}  // namespace revana
