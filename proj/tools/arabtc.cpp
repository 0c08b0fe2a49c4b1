// Command-line front end: corpus validation, single runs, the four-experiment
// grid, and pipeline debugging.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arabtc/classify.hpp"
#include "arabtc/corpus.hpp"
#include "arabtc/error.hpp"
#include "arabtc/harness.hpp"
#include "arabtc/textprep.hpp"
#include "arabtc/utf8.hpp"

namespace {

using namespace arabtc;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

// Flags that map one-to-one onto harness::apply_setting() keys. Values stay
// strings until the config is assembled so that a config file can sit
// underneath them: defaults < --config file < explicit flags.
class SettingFlags {
 public:
  void add(CLI::App* app, const std::string& key, const std::string& help) {
    app->add_option("--" + key, values_[key], help);
    keys_.push_back(key);
  }

  harness::ExperimentConfig resolve(CLI::App* app, const std::string& config_file) const {
    harness::ExperimentConfig config;
    if (!config_file.empty()) harness::apply_config_file(config, config_file);
    for (const auto& key : keys_) {
      if (app->count("--" + key) > 0) harness::apply_setting(config, key, values_.at(key));
    }
    return config;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> keys_;
};

void add_shared_flags(CLI::App* app, SettingFlags& flags, std::string& config_file, bool cell_flags) {
  flags.add(app, "corpus", "corpus root: <root>/<category>/<file>");
  if (cell_flags) {
    flags.add(app, "weighting", "binary | tf (default tf)");
    flags.add(app, "stopwords", "on | off (default on)");
  }
  flags.add(app, "flavor", "bernoulli | multinomial (default multinomial)");
  flags.add(app, "ratio", "train fraction in (0,1) (default 0.7)");
  flags.add(app, "seed", "split seed (default 42)");
  flags.add(app, "stem", "on | off (default on)");
  flags.add(app, "min-stem-length", "shortest stem the stemmer may produce (default 2)");
  flags.add(app, "stoplist", "stop-word file");
  flags.add(app, "affixes", "affix table file");
  flags.add(app, "f-mode", "harmonic | geometric (default harmonic)");
  flags.add(app, "format", "json | csv | markdown (default markdown)");
  flags.add(app, "average", "macro | micro | weighted: Markdown table averaging (default macro)");
  app->add_option("--config", config_file, "key = value file; explicit flags override it");
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw DataError("cannot write output file: " + path);
}

textprep::LightStemmer make_stemmer(const std::string& affixes, std::size_t min_length) {
  return textprep::LightStemmer(
      affixes.empty() ? textprep::AffixTables::load(harness::default_affix_path()) : textprep::AffixTables::load(affixes),
      min_length);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic text classification toolkit: preprocessing, naive Bayes, and the weighting x stop-word grid"};
  app.require_subcommand(1);

  // corpus validate <root>
  auto* corpus_cmd = app.add_subcommand("corpus", "corpus utilities");
  corpus_cmd->require_subcommand(1);
  auto* validate_cmd = corpus_cmd->add_subcommand("validate", "load a corpus and print per-category counts");
  std::string validate_root;
  validate_cmd->add_option("root", validate_root, "corpus root")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "run one experiment");
  SettingFlags run_flags;
  std::string run_config;
  std::string run_output;
  std::string vocab_out;
  std::string model_out;
  add_shared_flags(run_cmd, run_flags, run_config, true);
  run_cmd->add_option("--output", run_output, "write the report here instead of stdout");
  run_cmd->add_option("--vocab-out", vocab_out, "dump the vocabulary as index<TAB>term");
  run_cmd->add_option("--model-out", model_out, "save the trained model");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "run the four weighting x stop-word experiments");
  SettingFlags grid_flags;
  std::string grid_config;
  std::string grid_output;
  add_shared_flags(grid_cmd, grid_flags, grid_config, false);
  grid_cmd->add_option("--output", grid_output, "write the report here instead of stdout");

  // stem <word>...
  auto* stem_cmd = app.add_subcommand("stem", "normalize and light-stem words");
  std::vector<std::string> stem_words;
  std::string stem_affixes;
  std::size_t stem_min = textprep::kDefaultMinStemLength;
  stem_cmd->add_option("words", stem_words, "words to stem")->required();
  stem_cmd->add_option("--affixes", stem_affixes, "affix table file");
  stem_cmd->add_option("--min-stem-length", stem_min, "shortest stem (default 2)");

  // prep <file>
  auto* prep_cmd = app.add_subcommand("prep", "print the token list of one document, one token per line");
  std::string prep_file;
  std::string prep_stopwords = "off";
  std::string prep_stem = "on";
  std::string prep_stoplist;
  std::string prep_affixes;
  std::size_t prep_min = textprep::kDefaultMinStemLength;
  prep_cmd->add_option("file", prep_file, "UTF-8 text file")->required();
  prep_cmd->add_option("--stopwords", prep_stopwords, "on | off (default off)")->check(CLI::IsMember({"on", "off"}));
  prep_cmd->add_option("--stem", prep_stem, "on | off (default on)")->check(CLI::IsMember({"on", "off"}));
  prep_cmd->add_option("--stoplist", prep_stoplist, "stop-word file");
  prep_cmd->add_option("--affixes", prep_affixes, "affix table file");
  prep_cmd->add_option("--min-stem-length", prep_min, "shortest stem (default 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate_cmd) {
      const corpus::Corpus c = corpus::load_corpus(validate_root);
      for (std::size_t k = 0; k < c.categories().size(); ++k) {
        std::cout << c.categories()[k] << '\t' << c.members(k).size() << '\n';
      }
      std::cout << "total\t" << c.size() << '\n';
    } else if (*run_cmd) {
      const auto config = run_flags.resolve(run_cmd, run_config);
      if (config.corpus_root.empty()) throw InvalidArgument("--corpus is required");
      const auto result = harness::run_experiment(config);
      const std::string report = harness::emit_report({result}, config.format, config.averaging);
      if (!vocab_out.empty()) write_output(result.vocabulary.dump(), vocab_out);
      if (!model_out.empty()) classify::save_model(result.model, model_out);
      write_output(report, run_output);
    } else if (*grid_cmd) {
      const auto config = grid_flags.resolve(grid_cmd, grid_config);
      if (config.corpus_root.empty()) throw InvalidArgument("--corpus is required");
      const auto results = harness::run_grid(config);
      write_output(harness::emit_report(results, config.format, config.averaging), grid_output);
    } else if (*stem_cmd) {
      const auto stemmer = make_stemmer(stem_affixes, stem_min);
      for (const auto& w : stem_words) {
        std::cout << w << '\t' << stemmer.stem(textprep::normalize(w)) << '\n';
      }
    } else if (*prep_cmd) {
      textprep::TokenPipelineConfig pipeline{
          prep_stopwords == "on",
          textprep::Stoplist::load(prep_stoplist.empty() ? harness::default_stoplist_path()
                                                         : std::filesystem::path(prep_stoplist)),
          prep_stem == "on", make_stemmer(prep_affixes, prep_min)};
      std::ifstream in(prep_file, std::ios::binary);
      if (!in) throw DataError("cannot read file: " + prep_file);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
      if (const auto bad = utf8::first_invalid_offset(text)) {
        throw DataError("undecodable file " + prep_file + ": invalid UTF-8 at byte " + std::to_string(*bad));
      }
      for (const auto& t : textprep::preprocess(text, pipeline)) std::cout << t << '\n';
    }
  } catch (const harness::StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.usage() ? kUsage : kData;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
