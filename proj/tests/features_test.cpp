#include "revana/features.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "revana/errors.hpp"
#include "revana/rng.hpp"
#include "test_util.hpp"

namespace {

using revana::compute_entropies;
using revana::count_occurrences;
using revana::CountTable;
using revana::KeywordTable;
using revana::LabeledSentence;
using revana::negative_keywords_at;
using revana::Polarity;
using revana::positive_keywords_at;
using revana::select_keywords;
using revana::word_distribution;
using revana::word_entropy;

using Strings = std::vector<std::string>;

LabeledSentence pos(Strings tokens) {
  return {std::move(tokens), Polarity::positive};
}
LabeledSentence neg(Strings tokens) {
  return {std::move(tokens), Polarity::negative};
}

TEST(CountOccurrences, TalliesPerDocument) {
  const std::vector<LabeledSentence> docs = {
      pos({"好", "好"}), pos({"好"}), neg({"差"})};
  const CountTable t = count_occurrences(docs);
  EXPECT_EQ(t.n_pos_docs, 2);
  EXPECT_EQ(t.n_neg_docs, 1);
  const auto* good = t.find("好");
  ASSERT_NE(good, nullptr);
  EXPECT_EQ(good->pos_counts, (std::map<int, int>{{0, 2}, {1, 1}}));
  EXPECT_TRUE(good->neg_counts.empty());
  const auto* bad = t.find("差");
  ASSERT_NE(bad, nullptr);
  EXPECT_TRUE(bad->pos_counts.empty());
  EXPECT_EQ(bad->neg_counts, (std::map<int, int>{{0, 1}}));
  EXPECT_EQ(t.find("missing"), nullptr);
  EXPECT_TRUE(std::is_sorted(
      t.words.begin(), t.words.end(),
      [](const auto& a, const auto& b) { return a.word < b.word; }));
}

TEST(CountOccurrences, EmptyInputThrows) {
  EXPECT_THROW(count_occurrences({}), revana::EmptyTrainingSetError);
}

TEST(WordDistribution, NormalizesDense) {
  const std::vector<double> d = word_distribution({{0, 3}, {1, 1}}, 2);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d[0], 0.75);
  EXPECT_DOUBLE_EQ(d[1], 0.25);

  const std::vector<double> sparse = word_distribution({{1, 2}}, 3);
  EXPECT_EQ(sparse, (std::vector<double>{0.0, 1.0, 0.0}));
}

TEST(WordDistribution, Validation) {
  EXPECT_THROW(word_distribution({}, 2), revana::ZeroTotalCountError);
  EXPECT_THROW(word_distribution({{5, 1}}, 2), std::invalid_argument);
  EXPECT_THROW(word_distribution({{0, -1}}, 2), std::invalid_argument);
}

TEST(WordEntropy, KnownValues) {
  {
    const std::vector<double> p = {0.5, 0.5};
    EXPECT_DOUBLE_EQ(word_entropy(p), 1.0);
  }
  {
    const std::vector<double> p = {0.25, 0.25, 0.25, 0.25};
    EXPECT_DOUBLE_EQ(word_entropy(p), 2.0);
  }
  {
    const std::vector<double> p = {1.0};
    EXPECT_EQ(word_entropy(p), 0.0);
  }
  {
    // zero cells contribute nothing
    const std::vector<double> p = {0.5, 0.0, 0.5};
    EXPECT_DOUBLE_EQ(word_entropy(p), 1.0);
  }
  {
    const std::vector<double> p = {0.75, 0.25};
    EXPECT_NEAR(word_entropy(p), 0.8112781244591328, 1e-12);
  }
  EXPECT_EQ(word_entropy({}), 0.0);
}

TEST(WordEntropy, MatchesLongDoubleOracle) {
  revana::Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = rng.uniform_int(1, 12);
    std::vector<double> raw(m);
    double total = 0.0;
    for (auto& v : raw) {
      v = rng.uniform_real(0.0, 1.0) + 1e-6;
      total += v;
    }
    for (auto& v : raw) v /= total;
    // renormalize exactly enough to pass the sum check
    const double h = word_entropy(raw);
    EXPECT_NEAR(h, oracle::entropy_bits(raw), 1e-12);
    EXPECT_LE(h, std::log2(static_cast<double>(m)) + 1e-12);
    EXPECT_GE(h, 0.0);
  }
}

TEST(WordEntropy, Validation) {
  {
    const std::vector<double> p = {0.5, 0.6};
    EXPECT_THROW(word_entropy(p), std::invalid_argument);
  }
  {
    const std::vector<double> p = {-0.5, 1.5};
    EXPECT_THROW(word_entropy(p), std::invalid_argument);
  }
}

TEST(ComputeEntropies, AbsentClassIsZero) {
  const std::vector<LabeledSentence> docs = {
      pos({"只", "好"}), pos({"好"}), neg({"差"})};
  CountTable t = count_occurrences(docs);
  compute_entropies(t);
  const auto* only = t.find("只");
  ASSERT_NE(only, nullptr);
  EXPECT_EQ(only->entropy_pos, 0.0);  // single-document word
  EXPECT_EQ(only->entropy_neg, 0.0);  // absent from the class
  const auto* good = t.find("好");
  ASSERT_NE(good, nullptr);
  EXPECT_DOUBLE_EQ(good->entropy_pos, 1.0);  // uniform over two documents
}

// Builds a table where word "w" appears once in each of four positive
// documents (H_P = 2 bits) and with counts {7, 1} over two negative documents
// (H_N = H(7/8) ~ 0.5436 bits).
CountTable skewed_table() {
  std::vector<LabeledSentence> docs;
  for (int i = 0; i < 4; ++i) docs.push_back(pos({"w"}));
  docs.push_back(neg({"w", "w", "w", "w", "w", "w", "w"}));
  docs.push_back(neg({"w"}));
  CountTable t = count_occurrences(docs);
  compute_entropies(t);
  return t;
}

TEST(KeywordSelection, StrictThresholdRule) {
  const CountTable t = skewed_table();
  const auto* w = t.find("w");
  ASSERT_NE(w, nullptr);
  EXPECT_DOUBLE_EQ(w->entropy_pos, 2.0);
  EXPECT_NEAR(w->entropy_neg, 0.5435644431995964, 1e-12);

  // 2.0 > 2.75 * 0.5436 holds, so "w" is a positive keyword there.
  EXPECT_EQ(positive_keywords_at(t, 2.75), Strings{"w"});
  // 2.0 > 3.75 * 0.5436 fails.
  EXPECT_TRUE(positive_keywords_at(t, 3.75).empty());
  // Mirror list never fires: 0.5436 > a' * 2.0 is false for a' >= 1.
  EXPECT_TRUE(negative_keywords_at(t, 1.0).empty());
}

TEST(KeywordSelection, ExactTieIsExcluded) {
  // H_P = 2 (four uniform docs), H_N = 1 (two uniform docs): at alpha = 2
  // the comparison 2 > 2*1 is false, so the word must not be selected.
  std::vector<LabeledSentence> docs;
  for (int i = 0; i < 4; ++i) docs.push_back(pos({"w"}));
  docs.push_back(neg({"w"}));
  docs.push_back(neg({"w"}));
  CountTable t = count_occurrences(docs);
  compute_entropies(t);
  EXPECT_TRUE(positive_keywords_at(t, 2.0).empty());
  EXPECT_EQ(positive_keywords_at(t, 1.9999), Strings{"w"});
}

TEST(KeywordSelection, ZeroOppositeEntropySelectsAtAnyThreshold) {
  // "好" spreads over two positive docs and never shows up negative side.
  const std::vector<LabeledSentence> docs = {
      pos({"好"}), pos({"好"}), neg({"差"}), neg({"差"})};
  CountTable t = count_occurrences(docs);
  compute_entropies(t);
  EXPECT_EQ(positive_keywords_at(t, 100.0), Strings{"好"});
  EXPECT_EQ(negative_keywords_at(t, 100.0), Strings{"差"});
}

TEST(KeywordSelection, BothZeroNeverSelected) {
  // One document per class: both entropies are 0, neither strict inequality
  // can hold, so selection must throw for lack of keywords.
  const std::vector<LabeledSentence> docs = {pos({"w"}), neg({"w"})};
  CountTable t = count_occurrences(docs);
  compute_entropies(t);
  EXPECT_TRUE(positive_keywords_at(t, 1.0).empty());
  EXPECT_TRUE(negative_keywords_at(t, 1.0).empty());
  EXPECT_THROW(select_keywords(t, 1.0, 1.0), revana::EmptyKeywordSetError);
}

TEST(KeywordSelection, ThresholdBelowOneRejected) {
  const CountTable t = skewed_table();
  EXPECT_THROW(positive_keywords_at(t, 0.99), std::invalid_argument);
  EXPECT_THROW(negative_keywords_at(t, 0.0), std::invalid_argument);
  EXPECT_THROW(select_keywords(t, 1.0, 0.5), std::invalid_argument);
}

CountTable random_table(revana::Rng& rng) {
  static const Strings vocab = [] {
    Strings v;
    for (int i = 0; i < 30; ++i) v.push_back("w" + std::to_string(i));
    return v;
  }();
  std::vector<LabeledSentence> docs;
  const int n_pos = static_cast<int>(rng.uniform_int(5, 30));
  const int n_neg = static_cast<int>(rng.uniform_int(5, 30));
  for (int i = 0; i < n_pos + n_neg; ++i) {
    Strings tokens;
    const std::size_t len = rng.uniform_int(3, 10);
    for (std::size_t k = 0; k < len; ++k) tokens.push_back(vocab[rng.index(vocab.size())]);
    docs.push_back({std::move(tokens),
                    i < n_pos ? Polarity::positive : Polarity::negative});
  }
  CountTable t = count_occurrences(docs);
  compute_entropies(t);
  return t;
}

TEST(KeywordSelection, MonotoneInAlpha) {
  revana::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const CountTable t = random_table(rng);
    Strings prev_pos, prev_neg;
    bool first = true;
    for (double a = 1.0; a <= 4.0; a += 0.25) {
      const Strings p = positive_keywords_at(t, a);
      const Strings n = negative_keywords_at(t, a);
      if (!first) {
        // raising the threshold can only shrink the sets
        EXPECT_TRUE(std::includes(prev_pos.begin(), prev_pos.end(), p.begin(),
                                  p.end()));
        EXPECT_TRUE(std::includes(prev_neg.begin(), prev_neg.end(), n.begin(),
                                  n.end()));
      }
      prev_pos = p;
      prev_neg = n;
      first = false;
    }
  }
}

TEST(KeywordSelection, ListsAreDisjointAndSorted) {
  revana::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const CountTable t = random_table(rng);
    const Strings p = positive_keywords_at(t, 1.0);
    const Strings n = negative_keywords_at(t, 1.0);
    EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
    EXPECT_TRUE(std::is_sorted(n.begin(), n.end()));
    Strings inter;
    std::set_intersection(p.begin(), p.end(), n.begin(), n.end(),
                          std::back_inserter(inter));
    EXPECT_TRUE(inter.empty());
  }
}

TEST(KeywordTableStruct, CombinedIsSortedUnion) {
  KeywordTable t;
  t.positive = {"a", "c"};
  t.negative = {"b", "c"};
  EXPECT_EQ(t.combined(), (Strings{"a", "b", "c"}));
}

TEST(KeywordTableIo, RoundTripAndKeyOrder) {
  testutil::TempDir tmp("kwio");
  KeywordTable t;
  t.alpha = 1.75;
  t.alpha_prime = 2.5;
  t.positive = {"好", "棒"};
  t.negative = {"差"};
  revana::save_keyword_table(t, tmp.file("k.json"));
  const KeywordTable back = revana::load_keyword_table(tmp.file("k.json"));
  EXPECT_DOUBLE_EQ(back.alpha, 1.75);
  EXPECT_DOUBLE_EQ(back.alpha_prime, 2.5);
  EXPECT_EQ(back.positive, t.positive);
  EXPECT_EQ(back.negative, t.negative);

  const std::string text = testutil::read_file(tmp.file("k.json"));
  const auto pa = text.find("\"alpha\"");
  const auto pap = text.find("\"alpha_prime\"");
  const auto pp = text.find("\"positive\"");
  const auto pn = text.find("\"negative\"");
  ASSERT_NE(pa, std::string::npos);
  EXPECT_LT(pa, pap);
  EXPECT_LT(pap, pp);
  EXPECT_LT(pp, pn);
}

TEST(KeywordTableIo, LoadValidation) {
  testutil::TempDir tmp("kwio_bad");
  EXPECT_THROW(revana::load_keyword_table(tmp.file("missing.json")),
               revana::FileNotFoundError);
  testutil::write_file(tmp.file("bad.json"), "{");
  EXPECT_THROW(revana::load_keyword_table(tmp.file("bad.json")),
               revana::FileFormatError);
  testutil::write_file(
      tmp.file("alpha.json"),
      R"({"alpha":0.5,"alpha_prime":1.0,"positive":["a"],"negative":[]})");
  EXPECT_THROW(revana::load_keyword_table(tmp.file("alpha.json")),
               revana::FileFormatError);
}

}  // namespace
