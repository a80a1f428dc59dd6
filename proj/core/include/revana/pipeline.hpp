#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "revana/classifier.hpp"
#include "revana/corpus.hpp"
#include "revana/mic.hpp"
#include "revana/sentiment.hpp"
#include "revana/synth.hpp"

namespace revana {

struct PipelineConfig {
  std::vector<double> alpha_grid;  // defaults to 1.00 .. 3.75 step 0.25
  std::vector<double> c_grid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  int k = 5;
  std::uint64_t seed = 0;
  double mic_b_exponent = 0.6;
  int mic_clump_factor = 15;
  TokenizerMode tokenizer = TokenizerMode::pretokenized;

  PipelineConfig();
  MicOptions mic_options() const;
};

std::vector<double> default_alpha_grid();

// JSON config file; absent keys keep their defaults, unknown keys are
// rejected. Throws FileNotFoundError / FileFormatError.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

// Canonical serialization (fixed key order, compact) and its FNV-1a hash.
// Every report embeds both, so results can be traced to the exact settings.
std::string pipeline_config_json(const PipelineConfig& cfg);
std::string config_hash(const PipelineConfig& cfg);

// Writes <out_dir>/run_config.json with version, hash and the echoed config.
void write_run_config(const std::filesystem::path& out_dir,
                      const PipelineConfig& cfg);

struct ExtractOutcome {
  SweepResult sweep;
  std::filesystem::path table_path;
  std::string summary;  // fixed-width text table for the CLI
};

// Threshold sweep on a labeled corpus; writes keywords.json.
ExtractOutcome run_extract(const std::filesystem::path& corpus_path,
                           const std::filesystem::path& out_dir,
                           const PipelineConfig& cfg);

struct TrainOutcome {
  TrainedModel model;
  CvReport cv;  // report of the winning C
  double chosen_c = 0.0;
  std::filesystem::path model_path;
  std::string summary;
};

// Picks C by cross-validation with the given keyword table, then fits the
// final model on the whole corpus; writes model.json.
TrainOutcome run_train(const std::filesystem::path& corpus_path,
                       const std::filesystem::path& table_path,
                       const std::filesystem::path& out_dir,
                       const PipelineConfig& cfg);

struct SeriesStats {
  std::string name;
  bool defined = true;  // false when the ratio or the scores are constant
  double pearson_r = 0.0;
  double spearman_rho = 0.0;
  double kendall_tau = 0.0;
  double kendall_tau_b = 0.0;
  double mic_value = 0.0;
};

struct CorrelateOutcome {
  std::vector<SentimentSummary> summaries;
  SeriesStats positive;
  SeriesStats negative;
  std::filesystem::path sentiment_path;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
  std::string summary;
};

// Scores every review with the model and correlates sentence-ratio against
// review score; writes sentiment.csv, correlation.csv, correlation.json.
// Needs at least 4 reviews (MIC is undefined below that).
CorrelateOutcome run_correlate(const std::filesystem::path& corpus_path,
                               const std::filesystem::path& model_path,
                               const std::filesystem::path& out_dir,
                               const PipelineConfig& cfg);

// Writes <out_dir>/corpus.jsonl plus a small settings echo; returns the
// corpus path.
std::filesystem::path run_synth(const std::filesystem::path& out_dir,
                                const SynthOptions& opt);

struct MicDemoRow {
  std::string name;
  int n = 0;
  double mic_value = 0.0;
  double pearson_r = 0.0;
};

// Canonical shapes (linear, parabola, sine, circle, independent) sampled
// with the seed; shows where MIC and Pearson agree and where they diverge.
std::vector<MicDemoRow> run_demo_mic(std::uint64_t seed, int n,
                                     const PipelineConfig& cfg);
std::string demo_mic_table(const std::vector<MicDemoRow>& rows);

}  // namespace revana
