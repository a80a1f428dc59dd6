#include "revana/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "revana/errors.hpp"

namespace revana {

std::vector<LabeledSentence> labeled_sentences(const Corpus& corpus) {
  std::vector<LabeledSentence> out;
  for (const auto& r : corpus.reviews)
    for (const auto& s : r.sentences)
      if (s.gold_label) out.push_back({s.tokens, *s.gold_label});
  return out;
}

const WordStats* CountTable::find(std::string_view word) const {
  auto it = std::lower_bound(
      words.begin(), words.end(), word,
      [](const WordStats& w, std::string_view v) { return w.word < v; });
  if (it == words.end() || it->word != word) return nullptr;
  return &*it;
}

CountTable count_occurrences(std::span<const LabeledSentence> docs) {
  if (docs.empty()) throw EmptyTrainingSetError();

  CountTable table;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<WordStats> stats;
  for (const auto& doc : docs) {
    const bool pos = doc.label == Polarity::positive;
    const int doc_id = pos ? table.n_pos_docs++ : table.n_neg_docs++;
    for (const auto& tok : doc.tokens) {
      auto [it, inserted] = index.try_emplace(tok, stats.size());
      if (inserted) stats.push_back(WordStats{tok, {}, {}, 0.0, 0.0});
      WordStats& w = stats[it->second];
      (pos ? w.pos_counts : w.neg_counts)[doc_id] += 1;
    }
  }
  std::sort(stats.begin(), stats.end(),
            [](const WordStats& a, const WordStats& b) {
              return a.word < b.word;
            });
  table.words = std::move(stats);
  return table;
}

std::vector<double> word_distribution(const std::map<int, int>& counts,
                                      int n_docs) {
  long long total = 0;
  for (const auto& [doc, c] : counts) {
    if (doc < 0 || doc >= n_docs)
      throw std::invalid_argument("document index out of range");
    if (c < 0) throw std::invalid_argument("negative occurrence count");
    total += c;
  }
  if (total == 0) throw ZeroTotalCountError();
  std::vector<double> probs(static_cast<std::size_t>(n_docs), 0.0);
  for (const auto& [doc, c] : counts)
    probs[static_cast<std::size_t>(doc)] =
        static_cast<double>(c) / static_cast<double>(total);
  return probs;
}

double word_entropy(std::span<const double> probs) {
  double sum = 0.0;
  double h = 0.0;
  for (double p : probs) {
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("probability outside [0, 1]");
    sum += p;
    if (p > 0.0) h -= p * std::log2(p);
  }
  if (!probs.empty() && std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("probabilities do not sum to 1");
  return h;
}

void compute_entropies(CountTable& table) {
  for (auto& w : table.words) {
    w.entropy_pos =
        w.pos_counts.empty()
            ? 0.0
            : word_entropy(word_distribution(w.pos_counts, table.n_pos_docs));
    w.entropy_neg =
        w.neg_counts.empty()
            ? 0.0
            : word_entropy(word_distribution(w.neg_counts, table.n_neg_docs));
  }
}

namespace {

void check_threshold(double alpha, const char* name) {
  if (!(alpha >= 1.0))
    throw std::invalid_argument(std::string(name) + " must be >= 1");
}

}  // namespace

std::vector<std::string> positive_keywords_at(const CountTable& table,
                                              double alpha) {
  check_threshold(alpha, "alpha");
  std::vector<std::string> out;
  for (const auto& w : table.words)
    if (w.entropy_pos > alpha * w.entropy_neg) out.push_back(w.word);
  return out;  // table.words is sorted already
}

std::vector<std::string> negative_keywords_at(const CountTable& table,
                                              double alpha_prime) {
  check_threshold(alpha_prime, "alpha_prime");
  std::vector<std::string> out;
  for (const auto& w : table.words)
    if (w.entropy_neg > alpha_prime * w.entropy_pos) out.push_back(w.word);
  return out;
}

std::vector<std::string> KeywordTable::combined() const {
  std::vector<std::string> out;
  out.reserve(positive.size() + negative.size());
  std::set_union(positive.begin(), positive.end(), negative.begin(),
                 negative.end(), std::back_inserter(out));
  return out;
}

KeywordTable select_keywords(const CountTable& table, double alpha,
                             double alpha_prime) {
  KeywordTable kt;
  kt.alpha = alpha;
  kt.alpha_prime = alpha_prime;
  kt.positive = positive_keywords_at(table, alpha);
  kt.negative = negative_keywords_at(table, alpha_prime);
  if (kt.positive.empty() && kt.negative.empty())
    throw EmptyKeywordSetError(alpha, alpha_prime);
  return kt;
}

void save_keyword_table(const KeywordTable& table,
                        const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["alpha"] = table.alpha;
  j["alpha_prime"] = table.alpha_prime;
  j["positive"] = table.positive;
  j["negative"] = table.negative;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open())
    throw Error("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
}

KeywordTable load_keyword_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFoundError(path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FileFormatError("keyword table " + path.string() + ": " + e.what());
  }
  KeywordTable table;
  try {
    table.alpha = j.at("alpha").get<double>();
    table.alpha_prime = j.at("alpha_prime").get<double>();
    table.positive = j.at("positive").get<std::vector<std::string>>();
    table.negative = j.at("negative").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError("keyword table " + path.string() + ": " + e.what());
  }
  if (!(table.alpha >= 1.0) || !(table.alpha_prime >= 1.0))
    throw FileFormatError("keyword table " + path.string() +
                          ": thresholds must be >= 1");
  for (auto* list : {&table.positive, &table.negative}) {
    std::sort(list->begin(), list->end());
    list->erase(std::unique(list->begin(), list->end()), list->end());
  }
  return table;
}

}  // namespace revana
