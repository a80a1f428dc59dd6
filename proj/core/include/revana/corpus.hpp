#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revana {

enum class Polarity { positive, negative };

struct Sentence {
  std::vector<std::string> tokens;
  std::optional<Polarity> gold_label;

  bool operator==(const Sentence&) const = default;
};

struct Review {
  std::string review_id;
  std::string hotel_id;
  double score = 0.0;
  std::vector<Sentence> sentences;

  bool operator==(const Review&) const = default;
};

struct Corpus {
  std::vector<Review> reviews;
  std::string provenance;  // free-form source note, not serialized

  std::size_t sentence_count() const;
  // review_id of the first review with an unlabeled sentence, if any
  std::optional<std::string> first_unlabeled() const;
};

enum class TokenizerMode { pretokenized, fallback };

// Splits raw text on sentence-final punctuation. The delimiters
// (U+3002, U+FF01, U+FF1F, '.', '!', '?') are consumed; empty segments are
// dropped. Invalid UTF-8 bytes pass through untouched.
std::vector<std::string> split_sentences(std::string_view text);

// Whitespace tokenization for non-CJK runs; CJK codepoints become
// single-character tokens. A unigram stand-in for a real segmenter.
std::vector<std::string> tokenize_fallback(std::string_view sentence);

// One JSON object per line:
//   {"review_id": str, "hotel_id": str, "score": number,
//    "sentences": [[token, ...], ...], "labels": ["pos"|"neg"|null, ...]}
// "labels" is optional and must match "sentences" in length. In fallback
// mode a record may instead carry "text": str, which is split and tokenized.
// Throws FileNotFoundError, MalformedRecordError, DuplicateReviewIdError.
Corpus load_corpus(const std::filesystem::path& path,
                   TokenizerMode mode = TokenizerMode::pretokenized);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace revana
