#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "revana/errors.hpp"
#include "revana/pipeline.hpp"
#include "revana/version.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string tokenizer;
  std::string out_dir = "out";

  void attach(CLI::App* sub, bool with_out = true) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "override the config seed")
        ->each([this](const std::string&) { seed_set = true; });
    sub->add_option("--tokenizer", tokenizer,
                    "override the tokenizer (pretokenized|fallback)")
        ->check(CLI::IsMember({"pretokenized", "fallback"}));
    if (with_out)
      sub->add_option("--out", out_dir, "output directory")
          ->capture_default_str();
  }

  revana::PipelineConfig resolve() const {
    revana::PipelineConfig cfg;
    if (!config_path.empty())
      cfg = revana::load_pipeline_config(config_path);
    if (seed_set) cfg.seed = seed;
    if (tokenizer == "pretokenized")
      cfg.tokenizer = revana::TokenizerMode::pretokenized;
    else if (tokenizer == "fallback")
      cfg.tokenizer = revana::TokenizerMode::fallback;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy keyword extraction, sentence sentiment and "
               "score correlation for hotel reviews"};
  app.set_version_flag("--version", std::string(revana::kVersion));
  app.require_subcommand(1);

  auto* extract = app.add_subcommand(
      "extract", "sweep thresholds on a labeled corpus, write keywords.json");
  std::string extract_corpus;
  extract->add_option("corpus", extract_corpus, "labeled corpus (JSONL)")
      ->required();
  CommonArgs extract_args;
  extract_args.attach(extract);

  auto* train = app.add_subcommand(
      "train", "pick C by cross-validation and fit the final model");
  std::string train_corpus, train_table;
  train->add_option("corpus", train_corpus, "labeled corpus (JSONL)")
      ->required();
  train->add_option("table", train_table, "keyword table (JSON)")->required();
  CommonArgs train_args;
  train_args.attach(train);

  auto* correlate = app.add_subcommand(
      "correlate", "score reviews and correlate ratios against scores");
  std::string corr_corpus, corr_model;
  correlate->add_option("corpus", corr_corpus, "corpus (JSONL)")->required();
  correlate->add_option("model", corr_model, "model file (JSON)")->required();
  CommonArgs corr_args;
  corr_args.attach(correlate);

  auto* demo = app.add_subcommand(
      "demo-mic", "MIC vs Pearson on canonical dependence shapes");
  int demo_n = 100;
  demo->add_option("--n", demo_n, "points per shape")->capture_default_str();
  CommonArgs demo_args;
  demo_args.attach(demo, /*with_out=*/false);

  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic labeled corpus");
  revana::SynthOptions sopt;
  std::string synth_dependence = "monotone";
  bool synth_unlabeled = false;
  synth->add_option("--n-reviews", sopt.n_reviews)->capture_default_str();
  synth->add_option("--sentences-min", sopt.sentences_min)
      ->capture_default_str();
  synth->add_option("--sentences-max", sopt.sentences_max)
      ->capture_default_str();
  synth->add_option("--tokens-min", sopt.tokens_min)->capture_default_str();
  synth->add_option("--tokens-max", sopt.tokens_max)->capture_default_str();
  synth->add_option("--pos-words", sopt.n_pos_words)->capture_default_str();
  synth->add_option("--neg-words", sopt.n_neg_words)->capture_default_str();
  synth->add_option("--noise-words", sopt.n_noise_words)
      ->capture_default_str();
  synth->add_option("--cross-prob", sopt.cross_polarity_prob)
      ->capture_default_str();
  synth->add_option("--score-noise", sopt.score_noise)->capture_default_str();
  synth->add_option("--dependence", synth_dependence,
                    "score dependence on sentiment (monotone|none)")
      ->check(CLI::IsMember({"monotone", "none"}))
      ->capture_default_str();
  synth->add_flag("--unlabeled", synth_unlabeled,
                  "omit gold labels from the output");
  CommonArgs synth_args;
  synth_args.attach(synth);

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      const auto outcome = revana::run_extract(
          extract_corpus, extract_args.out_dir, extract_args.resolve());
      std::cout << outcome.summary;
      std::cout << "wrote " << outcome.table_path.string() << "\n";
    } else if (train->parsed()) {
      const auto outcome =
          revana::run_train(train_corpus, train_table, train_args.out_dir,
                            train_args.resolve());
      std::cout << outcome.summary;
      std::cout << "wrote " << outcome.model_path.string() << "\n";
    } else if (correlate->parsed()) {
      const auto outcome = revana::run_correlate(
          corr_corpus, corr_model, corr_args.out_dir, corr_args.resolve());
      std::cout << outcome.summary;
      std::cout << "wrote " << outcome.csv_path.string() << "\n";
    } else if (demo->parsed()) {
      const auto cfg = demo_args.resolve();
      std::cout << revana::demo_mic_table(
          revana::run_demo_mic(cfg.seed, demo_n, cfg));
    } else if (synth->parsed()) {
      const auto cfg = synth_args.resolve();
      sopt.seed = cfg.seed;
      sopt.labels = !synth_unlabeled;
      sopt.dependence = synth_dependence == "none"
                            ? revana::Dependence::none
                            : revana::Dependence::monotone;
      const auto path = revana::run_synth(synth_args.out_dir, sopt);
      std::cout << "wrote " << path.string() << "\n";
    }
  } catch (const revana::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const revana::FileFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
