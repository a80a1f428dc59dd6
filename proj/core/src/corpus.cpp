#include "revana/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "revana/errors.hpp"

namespace revana {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Decodes the codepoint at s[i] and advances i. Bytes that do not form a
// valid sequence are passed through one at a time so malformed input still
// makes forward progress.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  std::size_t len;
  char32_t cp;
  if (b0 < 0x80) {
    ++i;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return b0;
  }
  if (i + len > s.size()) {
    ++i;
    return b0;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char bk = static_cast<unsigned char>(s[i + k]);
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

bool is_sentence_delimiter(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?' || c == 0x3002 /* 。 */ ||
         c == 0xFF01 /* ！ */ || c == 0xFF1F /* ？ */;
}

bool is_cjk(char32_t c) {
  return (c >= 0x3400 && c <= 0x4DBF) || (c >= 0x4E00 && c <= 0x9FFF) ||
         (c >= 0xF900 && c <= 0xFAFF) || (c >= 0x20000 && c <= 0x2FA1F);
}

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' ||
         c == 0x3000 /* ideographic space */;
}

bool contains_delimiter(std::string_view token) {
  std::size_t i = 0;
  while (i < token.size()) {
    if (is_sentence_delimiter(decode_utf8(token, i))) return true;
  }
  return false;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

Sentence parse_tokens(const json& arr, std::size_t lineno, std::size_t idx) {
  if (!arr.is_array() || arr.empty())
    throw MalformedRecordError(
        lineno, "sentence " + std::to_string(idx) +
                    " must be a non-empty array of tokens");
  Sentence s;
  s.tokens.reserve(arr.size());
  for (const auto& t : arr) {
    if (!t.is_string() || t.get_ref<const std::string&>().empty())
      throw MalformedRecordError(lineno,
                                 "sentence " + std::to_string(idx) +
                                     " contains an empty or non-string token");
    const auto& tok = t.get_ref<const std::string&>();
    if (contains_delimiter(tok))
      throw MalformedRecordError(
          lineno, "token \"" + tok + "\" contains a sentence delimiter");
    s.tokens.push_back(tok);
  }
  return s;
}

Review parse_record(const json& j, std::size_t lineno, TokenizerMode mode) {
  if (!j.is_object())
    throw MalformedRecordError(lineno, "record is not a JSON object");

  Review r;
  auto it = j.find("review_id");
  if (it == j.end() || !it->is_string())
    throw MalformedRecordError(lineno, "missing or non-string review_id");
  r.review_id = it->get<std::string>();
  if (r.review_id.empty())
    throw MalformedRecordError(lineno, "review_id must be non-empty");

  it = j.find("hotel_id");
  if (it == j.end() || !it->is_string())
    throw MalformedRecordError(lineno, "missing or non-string hotel_id");
  r.hotel_id = it->get<std::string>();

  it = j.find("score");
  if (it == j.end() || !it->is_number())
    throw MalformedRecordError(lineno, "missing or non-numeric score");
  r.score = it->get<double>();

  const bool has_sentences = j.contains("sentences");
  const bool has_text = j.contains("text");
  if (has_sentences) {
    const json& arr = j.at("sentences");
    if (!arr.is_array() || arr.empty())
      throw MalformedRecordError(lineno,
                                 "sentences must be a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      r.sentences.push_back(parse_tokens(arr[i], lineno, i));
  } else if (has_text && mode == TokenizerMode::fallback) {
    if (!j.at("text").is_string())
      throw MalformedRecordError(lineno, "text must be a string");
    if (j.contains("labels"))
      throw MalformedRecordError(lineno,
                                 "labels require explicit sentences");
    for (const std::string& seg :
         split_sentences(j.at("text").get_ref<const std::string&>())) {
      Sentence s;
      s.tokens = tokenize_fallback(seg);
      if (!s.tokens.empty()) r.sentences.push_back(std::move(s));
    }
    if (r.sentences.empty())
      throw MalformedRecordError(lineno, "text yields no sentences");
  } else {
    throw MalformedRecordError(
        lineno, mode == TokenizerMode::fallback
                    ? "record has neither sentences nor text"
                    : "missing sentences array");
  }

  if (j.contains("labels")) {
    const json& labels = j.at("labels");
    if (!labels.is_array() || labels.size() != r.sentences.size())
      throw MalformedRecordError(
          lineno, "labels must be an array matching sentences in length");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const json& l = labels[i];
      if (l.is_null()) continue;
      if (l.is_string() && l.get_ref<const std::string&>() == "pos")
        r.sentences[i].gold_label = Polarity::positive;
      else if (l.is_string() && l.get_ref<const std::string&>() == "neg")
        r.sentences[i].gold_label = Polarity::negative;
      else
        throw MalformedRecordError(
            lineno, "label " + std::to_string(i) +
                        " must be \"pos\", \"neg\" or null");
    }
  }
  return r;
}

}  // namespace

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& r : reviews) n += r.sentences.size();
  return n;
}

std::optional<std::string> Corpus::first_unlabeled() const {
  for (const auto& r : reviews)
    for (const auto& s : r.sentences)
      if (!s.gold_label) return r.review_id;
  return std::nullopt;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string segment;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = decode_utf8(text, i);
    if (is_sentence_delimiter(cp)) {
      if (!segment.empty()) out.push_back(std::move(segment));
      segment.clear();
    } else {
      segment.append(text.substr(start, i - start));
    }
  }
  if (!segment.empty()) out.push_back(std::move(segment));
  return out;
}

std::vector<std::string> tokenize_fallback(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  std::size_t i = 0;
  while (i < sentence.size()) {
    const std::size_t start = i;
    const char32_t cp = decode_utf8(sentence, i);
    if (is_space(cp)) {
      flush();
    } else if (is_cjk(cp)) {
      flush();
      tokens.emplace_back(sentence.substr(start, i - start));
    } else {
      current.append(sentence.substr(start, i - start));
    }
  }
  flush();
  return tokens;
}

Corpus load_corpus(const std::filesystem::path& path, TokenizerMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFoundError(path.string());

  Corpus corpus;
  corpus.provenance = path.string();
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecordError(lineno, std::string("invalid JSON: ") +
                                             e.what());
    }
    Review r = parse_record(j, lineno, mode);
    if (!seen.insert(r.review_id).second)
      throw DuplicateReviewIdError(r.review_id, lineno);
    corpus.reviews.push_back(std::move(r));
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open())
    throw Error("cannot open for writing: " + path.string());
  for (const auto& r : corpus.reviews) {
    ordered_json j;
    j["review_id"] = r.review_id;
    j["hotel_id"] = r.hotel_id;
    j["score"] = r.score;
    ordered_json sentences = ordered_json::array();
    bool any_label = false;
    for (const auto& s : r.sentences) {
      sentences.push_back(s.tokens);
      any_label = any_label || s.gold_label.has_value();
    }
    j["sentences"] = std::move(sentences);
    if (any_label) {
      ordered_json labels = ordered_json::array();
      for (const auto& s : r.sentences) {
        if (!s.gold_label)
          labels.push_back(nullptr);
        else
          labels.push_back(*s.gold_label == Polarity::positive ? "pos"
                                                               : "neg");
      }
      j["labels"] = std::move(labels);
    }
    out << j.dump() << '\n';
  }
}

}  // namespace revana
