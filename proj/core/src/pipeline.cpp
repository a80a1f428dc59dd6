#include "revana/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "revana/errors.hpp"
#include "revana/rng.hpp"
#include "revana/version.hpp"

namespace revana {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const char* tokenizer_name(TokenizerMode m) {
  return m == TokenizerMode::pretokenized ? "pretokenized" : "fallback";
}

ordered_json config_json_object(const PipelineConfig& cfg) {
  ordered_json j;
  j["alpha_grid"] = cfg.alpha_grid;
  j["c_grid"] = cfg.c_grid;
  j["k"] = cfg.k;
  j["seed"] = cfg.seed;
  j["mic_b_exponent"] = cfg.mic_b_exponent;
  j["mic_clump_factor"] = cfg.mic_clump_factor;
  j["tokenizer"] = tokenizer_name(cfg.tokenizer);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open())
    throw Error("cannot open for writing: " + path.string());
  out << text;
}

Corpus load_labeled_corpus(const std::filesystem::path& path,
                           const PipelineConfig& cfg) {
  Corpus corpus = load_corpus(path, cfg.tokenizer);
  if (corpus.reviews.empty()) throw EmptyTrainingSetError();
  if (auto id = corpus.first_unlabeled()) throw UnlabeledCorpusError(*id);
  return corpus;
}

}  // namespace

PipelineConfig::PipelineConfig() : alpha_grid(default_alpha_grid()) {}

MicOptions PipelineConfig::mic_options() const {
  return MicOptions{mic_b_exponent, mic_clump_factor};
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 11; ++i) grid.push_back(1.0 + 0.25 * i);
  return grid;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFoundError(path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FileFormatError("config " + path.string() + ": " + e.what());
  }
  if (!j.is_object())
    throw FileFormatError("config " + path.string() + ": not a JSON object");

  PipelineConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "alpha_grid")
        cfg.alpha_grid = value.get<std::vector<double>>();
      else if (key == "c_grid")
        cfg.c_grid = value.get<std::vector<double>>();
      else if (key == "k")
        cfg.k = value.get<int>();
      else if (key == "seed") {
        // get<uint64_t> would silently wrap a negative integer
        if (!value.is_number_unsigned())
          throw FileFormatError("config " + path.string() +
                                ": seed must be a non-negative integer");
        cfg.seed = value.get<std::uint64_t>();
      }
      else if (key == "mic_b_exponent")
        cfg.mic_b_exponent = value.get<double>();
      else if (key == "mic_clump_factor")
        cfg.mic_clump_factor = value.get<int>();
      else if (key == "tokenizer") {
        const auto name = value.get<std::string>();
        if (name == "pretokenized")
          cfg.tokenizer = TokenizerMode::pretokenized;
        else if (name == "fallback")
          cfg.tokenizer = TokenizerMode::fallback;
        else
          throw FileFormatError("config " + path.string() +
                                ": unknown tokenizer \"" + name + "\"");
      } else {
        throw FileFormatError("config " + path.string() +
                              ": unknown key \"" + key + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw FileFormatError("config " + path.string() + ": " + e.what());
  }

  if (cfg.alpha_grid.empty() || cfg.c_grid.empty())
    throw FileFormatError("config " + path.string() + ": empty grid");
  for (double a : cfg.alpha_grid)
    if (!(a >= 1.0))
      throw FileFormatError("config " + path.string() +
                            ": alpha values must be >= 1");
  for (double c : cfg.c_grid)
    if (!(c > 0.0))
      throw FileFormatError("config " + path.string() +
                            ": c values must be positive");
  if (cfg.k < 2)
    throw FileFormatError("config " + path.string() + ": k must be >= 2");
  if (!(cfg.mic_b_exponent > 0.0) || cfg.mic_b_exponent > 1.0)
    throw FileFormatError("config " + path.string() +
                          ": mic_b_exponent must be in (0, 1]");
  if (cfg.mic_clump_factor < 1)
    throw FileFormatError("config " + path.string() +
                          ": mic_clump_factor must be >= 1");
  return cfg;
}

std::string pipeline_config_json(const PipelineConfig& cfg) {
  return config_json_object(cfg).dump();
}

std::string config_hash(const PipelineConfig& cfg) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(
                    fnv1a64(pipeline_config_json(cfg))));
  return buf;
}

void write_run_config(const std::filesystem::path& out_dir,
                      const PipelineConfig& cfg) {
  ordered_json j;
  j["version"] = std::string(kVersion);
  j["config_hash"] = config_hash(cfg);
  j["config"] = config_json_object(cfg);
  write_text(out_dir / "run_config.json", j.dump(2) + "\n");
}

ExtractOutcome run_extract(const std::filesystem::path& corpus_path,
                           const std::filesystem::path& out_dir,
                           const PipelineConfig& cfg) {
  const Corpus corpus = load_labeled_corpus(corpus_path, cfg);
  const auto docs = labeled_sentences(corpus);

  ExtractOutcome outcome;
  outcome.sweep = sweep_alpha(docs, cfg.alpha_grid, cfg.c_grid, cfg.k,
                              cfg.seed);

  std::filesystem::create_directories(out_dir);
  outcome.table_path = out_dir / "keywords.json";
  save_keyword_table(outcome.sweep.table, outcome.table_path);
  write_run_config(out_dir, cfg);

  const auto& sw = outcome.sweep;
  std::string text = "mode      threshold  c      f1_mean  f1_std\n";
  auto row = [&](const char* name, const std::string& thr,
                 const SweepModeResult& m) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-9s %-10s %-6.2f %-8.4f %-6.4f\n", name,
                  thr.c_str(), m.c_param, m.report.f1_mean, m.report.f1_std);
    text += buf;
  };
  row("positive", fmt("%.2f", sw.positive.alpha), sw.positive);
  row("negative", fmt("%.2f", sw.negative.alpha), sw.negative);
  row("combined",
      fmt("%.2f", sw.positive.alpha) + "/" + fmt("%.2f", sw.negative.alpha),
      sw.combined);
  outcome.summary = text;
  return outcome;
}

TrainOutcome run_train(const std::filesystem::path& corpus_path,
                       const std::filesystem::path& table_path,
                       const std::filesystem::path& out_dir,
                       const PipelineConfig& cfg) {
  const Corpus corpus = load_labeled_corpus(corpus_path, cfg);
  const auto docs = labeled_sentences(corpus);
  const KeywordTable table = load_keyword_table(table_path);
  const auto words = table.combined();
  if (words.empty()) throw EmptyKeywordSetError(table.alpha, table.alpha_prime);

  const auto xs = vectorize_all(docs, words);
  const auto ys = labels_of(docs);

  TrainOutcome outcome;
  bool have = false;
  for (double c : cfg.c_grid) {
    CvReport rep = kfold_cv(xs, ys, c, cfg.k, cfg.seed);
    rep.alpha = table.alpha;
    rep.alpha_prime = table.alpha_prime;
    if (!have || rep.f1_mean > outcome.cv.f1_mean) {
      outcome.cv = rep;
      outcome.chosen_c = c;
      have = true;
    }
  }
  outcome.model = train_model(docs, words, outcome.chosen_c);

  std::filesystem::create_directories(out_dir);
  outcome.model_path = out_dir / "model.json";
  save_model(outcome.model, outcome.model_path);
  write_run_config(out_dir, cfg);

  std::string text;
  text += "chosen_c " + fmt("%.2f", outcome.chosen_c) + "\n";
  text += "cv_f1_mean " + fmt("%.4f", outcome.cv.f1_mean) + "\n";
  text += "cv_f1_std " + fmt("%.4f", outcome.cv.f1_std) + "\n";
  text += "cv_macro_f1_mean " + fmt("%.4f", outcome.cv.macro_f1_mean) + "\n";
  text += "keywords " + std::to_string(outcome.model.keywords.size()) + "\n";
  if (!outcome.model.converged)
    text += "warning: solver stopped at the iteration limit\n";
  outcome.summary = text;
  return outcome;
}

namespace {

SeriesStats compute_series(const std::string& name, const PairedSample& s,
                           const MicOptions& mopt) {
  SeriesStats st;
  st.name = name;
  try {
    st.pearson_r = pearson(s);
    st.spearman_rho = spearman(s);
  } catch (const ConstantInputError&) {
    st.defined = false;
    st.pearson_r = 0.0;
    st.spearman_rho = 0.0;
  }
  st.kendall_tau = kendall(s, KendallVariant::tau_a);
  st.kendall_tau_b = kendall(s, KendallVariant::tau_b);
  st.mic_value = mic(s, mopt);
  return st;
}

ordered_json series_json(const SeriesStats& st) {
  ordered_json j;
  if (st.defined) {
    j["pearson_r"] = st.pearson_r;
    j["spearman_rho"] = st.spearman_rho;
  } else {
    j["pearson_r"] = nullptr;
    j["spearman_rho"] = nullptr;
  }
  j["kendall_tau"] = st.kendall_tau;
  j["kendall_tau_b"] = st.kendall_tau_b;
  j["mic"] = st.mic_value;
  j["flags"] = st.defined ? ordered_json::array()
                          : ordered_json::array({"constant_input"});
  return j;
}

std::string csv_cell(bool defined, double v) {
  return defined ? fmt("%.6f", v) : "nan";
}

}  // namespace

CorrelateOutcome run_correlate(const std::filesystem::path& corpus_path,
                               const std::filesystem::path& model_path,
                               const std::filesystem::path& out_dir,
                               const PipelineConfig& cfg) {
  const Corpus corpus = load_corpus(corpus_path, cfg.tokenizer);
  if (corpus.reviews.size() < 4)
    throw DegenerateInputError("correlate needs at least 4 reviews, got " +
                               std::to_string(corpus.reviews.size()));
  const TrainedModel model = load_model(model_path);

  CorrelateOutcome outcome;
  outcome.summaries = summarize_corpus(corpus, model);

  const MicOptions mopt = cfg.mic_options();
  outcome.positive = compute_series(
      "positive_ratio", pos_ratio_sample(outcome.summaries), mopt);
  outcome.negative = compute_series(
      "negative_ratio", neg_ratio_sample(outcome.summaries), mopt);

  std::filesystem::create_directories(out_dir);
  outcome.sentiment_path = out_dir / "sentiment.csv";
  write_sentiment_csv(outcome.summaries, outcome.sentiment_path);

  outcome.csv_path = out_dir / "correlation.csv";
  {
    std::string csv = "series,spearman_rho,kendall_tau,mic\n";
    for (const auto* st : {&outcome.positive, &outcome.negative}) {
      csv += st->name + "," + csv_cell(st->defined, st->spearman_rho) + "," +
             fmt("%.6f", st->kendall_tau) + "," +
             fmt("%.6f", st->mic_value) + "\n";
    }
    write_text(outcome.csv_path, csv);
  }

  outcome.json_path = out_dir / "correlation.json";
  {
    ordered_json j;
    j["version"] = std::string(kVersion);
    j["config_hash"] = config_hash(cfg);
    j["n"] = outcome.summaries.size();
    ordered_json ms;
    ms["b_exponent"] = cfg.mic_b_exponent;
    ms["clump_factor"] = cfg.mic_clump_factor;
    ms["exact"] = false;
    j["mic_settings"] = std::move(ms);
    ordered_json series;
    series["positive_ratio"] = series_json(outcome.positive);
    series["negative_ratio"] = series_json(outcome.negative);
    j["series"] = std::move(series);
    j["config"] = config_json_object(cfg);
    write_text(outcome.json_path, j.dump(2) + "\n");
  }
  write_run_config(out_dir, cfg);

  std::string text =
      "series          pearson_r  spearman_rho  kendall_tau  mic\n";
  for (const auto* st : {&outcome.positive, &outcome.negative}) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-15s %-10s %-13s %-12s %-8s\n",
                  st->name.c_str(),
                  csv_cell(st->defined, st->pearson_r).c_str(),
                  csv_cell(st->defined, st->spearman_rho).c_str(),
                  fmt("%.6f", st->kendall_tau).c_str(),
                  fmt("%.6f", st->mic_value).c_str());
    text += buf;
  }
  outcome.summary = text;
  return outcome;
}

std::filesystem::path run_synth(const std::filesystem::path& out_dir,
                                const SynthOptions& opt) {
  const Corpus corpus = synth_corpus(opt);
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / "corpus.jsonl";
  save_corpus(corpus, path);

  ordered_json j;
  j["version"] = std::string(kVersion);
  ordered_json s;
  s["seed"] = opt.seed;
  s["n_reviews"] = opt.n_reviews;
  s["sentences_min"] = opt.sentences_min;
  s["sentences_max"] = opt.sentences_max;
  s["tokens_min"] = opt.tokens_min;
  s["tokens_max"] = opt.tokens_max;
  s["n_pos_words"] = opt.n_pos_words;
  s["n_neg_words"] = opt.n_neg_words;
  s["n_noise_words"] = opt.n_noise_words;
  s["cross_polarity_prob"] = opt.cross_polarity_prob;
  s["dependence"] = opt.dependence == Dependence::monotone ? "monotone"
                                                           : "none";
  s["score_noise"] = opt.score_noise;
  s["labels"] = opt.labels;
  j["synth"] = std::move(s);
  write_text(out_dir / "run_config.json", j.dump(2) + "\n");
  return path;
}

std::vector<MicDemoRow> run_demo_mic(std::uint64_t seed, int n,
                                     const PipelineConfig& cfg) {
  if (n < 50) throw DegenerateInputError("demo-mic needs n >= 50");
  const MicOptions mopt = cfg.mic_options();
  Rng rng(seed);
  std::vector<MicDemoRow> rows;

  auto add = [&](const std::string& name, const PairedSample& s) {
    MicDemoRow row;
    row.name = name;
    row.n = static_cast<int>(s.size());
    row.mic_value = mic(s, mopt);
    try {
      row.pearson_r = pearson(s);
    } catch (const ConstantInputError&) {
      row.pearson_r = 0.0;
    }
    rows.push_back(std::move(row));
  };

  {
    PairedSample s;
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform_real(-1.0, 1.0);
      s.x.push_back(x);
      s.y.push_back(x);
    }
    add("linear", s);
  }
  {
    // symmetric pairs keep the linear correlation at exactly zero
    PairedSample s;
    for (int i = 0; i < n / 2; ++i) {
      const double u = rng.uniform_real(0.0, 1.0);
      s.x.push_back(u);
      s.y.push_back(u * u);
      s.x.push_back(-u);
      s.y.push_back(u * u);
    }
    if (n % 2) {
      s.x.push_back(0.0);
      s.y.push_back(0.0);
    }
    add("parabola", s);
  }
  {
    PairedSample s;
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform_real(-1.0, 1.0);
      s.x.push_back(x);
      s.y.push_back(std::sin(4.0 * 3.14159265358979323846 * x));
    }
    add("sine", s);
  }
  {
    PairedSample s;
    for (int i = 0; i < n; ++i) {
      const double t = rng.uniform_real(0.0, 2.0 * 3.14159265358979323846);
      s.x.push_back(std::cos(t));
      s.y.push_back(std::sin(t));
    }
    add("circle", s);
  }
  {
    PairedSample s;
    for (int i = 0; i < n; ++i) {
      s.x.push_back(rng.uniform_real(0.0, 1.0));
      s.y.push_back(rng.uniform_real(0.0, 1.0));
    }
    add("independent", s);
  }
  return rows;
}

std::string demo_mic_table(const std::vector<MicDemoRow>& rows) {
  std::string text = "case         n      mic     pearson_r\n";
  for (const auto& r : rows) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-12s %-6d %-7.4f %9.4f\n",
                  r.name.c_str(), r.n, r.mic_value, r.pearson_r);
    text += buf;
  }
  return text;
}

}  // namespace revana
