#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "arabtc/classify.hpp"
#include "arabtc/corpus.hpp"
#include "arabtc/error.hpp"
#include "arabtc/eval.hpp"
#include "arabtc/features.hpp"

namespace arabtc::harness {

enum class ReportFormat { Json, Csv, Markdown };
// Which averaging mode fills the Recall/Precision/F-measure columns of the
// Markdown table. JSON and CSV always carry all three.
enum class Averaging { Macro, Micro, Weighted };

std::string_view to_string(ReportFormat format);
ReportFormat parse_format(std::string_view name);
std::string_view to_string(Averaging averaging);
Averaging parse_averaging(std::string_view name);

std::filesystem::path default_stoplist_path();
std::filesystem::path default_affix_path();

struct ExperimentConfig {
  std::filesystem::path corpus_root;
  features::WeightingScheme weighting = features::WeightingScheme::TermFrequency;
  bool remove_stopwords = true;
  classify::Flavor flavor = classify::Flavor::Multinomial;
  double ratio = corpus::kDefaultRatio;
  std::uint64_t seed = corpus::kDefaultSeed;
  bool stem = true;
  std::size_t min_stem_length = textprep::kDefaultMinStemLength;
  std::filesystem::path stoplist_path = default_stoplist_path();
  std::filesystem::path affix_path = default_affix_path();
  eval::FMode f_mode = eval::FMode::Harmonic;
  ReportFormat format = ReportFormat::Markdown;
  Averaging averaging = Averaging::Macro;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Sets one config field from its textual form. Keys match the CLI flag
/// names without the leading dashes:
///
///   corpus, weighting (binary|tf), stopwords (on|off),
///   flavor (bernoulli|multinomial), ratio, seed, stem (on|off),
///   min-stem-length, stoplist, affixes, f-mode (harmonic|geometric),
///   format (json|csv|markdown), average (macro|micro|weighted)
///
/// Throws InvalidArgument for an unknown key or a malformed value.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Applies a `key = value` file: one setting per line, '#' comment lines and
/// blank lines ignored, optional double quotes around the value. Relative
/// paths in the file are resolved against the file's directory.
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// Every field as key/value pairs in apply_setting() vocabulary. Feeding the
/// pairs back through apply_setting() rebuilds an equal config.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& config);

/// A pipeline failure tagged with the stage that raised it. `usage()` is
/// true when the root cause was an invalid argument rather than bad data.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message, bool usage)
      : Error("stage '" + stage + "': " + message), stage_(std::move(stage)), cause_(message), usage_(usage) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& cause() const noexcept { return cause_; }
  bool usage() const noexcept { return usage_; }

 private:
  std::string stage_;
  std::string cause_;
  bool usage_;
};

struct StageCounts {
  std::size_t corpus_documents = 0;
  std::size_t train_documents = 0;
  std::size_t test_documents = 0;
  std::size_t train_tokens = 0;                  // after tokenize
  std::size_t train_tokens_after_stopwords = 0;  // equals train_tokens when removal is off
  std::size_t test_tokens = 0;
  std::size_t test_tokens_after_stopwords = 0;
  std::size_t test_tokens_out_of_vocabulary = 0;
  std::size_t vocabulary_size = 0;

  friend bool operator==(const StageCounts&, const StageCounts&) = default;
};

struct ExperimentResult {
  std::string name;  // "Exp.1".."Exp.4" inside a grid, "run" otherwise
  ExperimentConfig config;
  eval::MetricsReport metrics;
  features::Vocabulary vocabulary;
  classify::NaiveBayesModel model;
  StageCounts counts;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::chrono::nanoseconds wall_clock{0};
};

/// load -> split -> preprocess(train) -> build_vocabulary -> train ->
/// preprocess(test) -> vectorize -> predict -> evaluate. Vocabulary and model
/// only ever see the training split. Throws StageError.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// The cell settings of the four-experiment grid, in report order:
///   Exp.1 tf + stop-word removal      Exp.2 binary + stop-word removal
///   Exp.3 binary, no removal          Exp.4 tf, no removal
struct GridCell {
  std::string name;
  features::WeightingScheme weighting;
  bool remove_stopwords;
};
const std::vector<GridCell>& grid_cells();

/// Runs the four cells against one corpus load and one split, holding the
/// flavor fixed. Cells run concurrently; results come back in Exp.1..4
/// order. A failing cell aborts the grid with a StageError naming the cell.
std::vector<ExperimentResult> run_grid(const ExperimentConfig& base);

/// Renders results. Markdown uses three decimals (round-half-even), JSON
/// keeps full precision, CSV uses shortest round-trip decimals and omits
/// wall-clock time so reruns are byte-identical.
/// Throws InvalidArgument for an empty result list.
std::string emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                        Averaging averaging = Averaging::Macro);

/// One line per weighting scheme saying whether stop-word removal raised
/// accuracy in these results. Empty when no on/off pair is present.
std::vector<std::string> stopword_effect_summary(const std::vector<ExperimentResult>& results);

/// Fixed-point with `decimals` digits, ties to even on the exact binary value.
std::string format_fixed(double value, int decimals);
/// Shortest decimal that round-trips.
std::string format_shortest(double value);

}  // namespace arabtc::harness
