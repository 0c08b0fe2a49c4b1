#include "arabtc/harness.hpp"

#include <charconv>
#include <fstream>
#include <future>
#include <map>

#include "arabtc/textprep.hpp"

namespace arabtc::harness {

namespace fs = std::filesystem;

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return "json";
    case ReportFormat::Csv:
      return "csv";
    case ReportFormat::Markdown:
      break;
  }
  return "markdown";
}

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown") return ReportFormat::Markdown;
  throw InvalidArgument("unknown report format: " + std::string(name));
}

std::string_view to_string(Averaging averaging) {
  switch (averaging) {
    case Averaging::Macro:
      return "macro";
    case Averaging::Micro:
      return "micro";
    case Averaging::Weighted:
      break;
  }
  return "weighted";
}

Averaging parse_averaging(std::string_view name) {
  if (name == "macro") return Averaging::Macro;
  if (name == "micro") return Averaging::Micro;
  if (name == "weighted") return Averaging::Weighted;
  throw InvalidArgument("unknown averaging mode: " + std::string(name));
}

fs::path default_stoplist_path() { return fs::path(ARABTC_DATA_DIR) / "stopwords_ar.txt"; }
fs::path default_affix_path() { return fs::path(ARABTC_DATA_DIR) / "affixes_ar.txt"; }

namespace {

bool parse_switch(std::string_view key, std::string_view value) {
  if (value == "on") return true;
  if (value == "off") return false;
  throw InvalidArgument(std::string(key) + " must be 'on' or 'off', got '" + std::string(value) + "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw InvalidArgument(std::string(key) + ": not a valid number: '" + std::string(value) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

}  // namespace

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  if (key == "corpus") {
    config.corpus_root = fs::path(value);
  } else if (key == "weighting") {
    config.weighting = features::parse_weighting(value);
  } else if (key == "stopwords") {
    config.remove_stopwords = parse_switch(key, value);
  } else if (key == "flavor") {
    config.flavor = classify::parse_flavor(value);
  } else if (key == "ratio") {
    config.ratio = parse_number<double>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "stem") {
    config.stem = parse_switch(key, value);
  } else if (key == "min-stem-length") {
    config.min_stem_length = parse_number<std::size_t>(key, value);
  } else if (key == "stoplist") {
    config.stoplist_path = fs::path(value);
  } else if (key == "affixes") {
    config.affix_path = fs::path(value);
  } else if (key == "f-mode") {
    config.f_mode = eval::parse_f_mode(value);
  } else if (key == "format") {
    config.format = parse_format(value);
  } else if (key == "average") {
    config.averaging = parse_averaging(value);
  } else {
    throw InvalidArgument("unknown configuration key: " + std::string(key));
  }
}

void apply_config_file(ExperimentConfig& config, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument(path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(t.substr(0, eq));
    std::string_view value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    try {
      if ((key == "corpus" || key == "stoplist" || key == "affixes") && fs::path(value).is_relative()) {
        apply_setting(config, key, (path.parent_path() / fs::path(value)).string());
      } else {
        apply_setting(config, key, value);
      }
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& c) {
  return {
      {"corpus", c.corpus_root.string()},
      {"weighting", std::string(features::to_string(c.weighting))},
      {"stopwords", c.remove_stopwords ? "on" : "off"},
      {"flavor", std::string(classify::to_string(c.flavor))},
      {"ratio", format_shortest(c.ratio)},
      {"seed", std::to_string(c.seed)},
      {"stem", c.stem ? "on" : "off"},
      {"min-stem-length", std::to_string(c.min_stem_length)},
      {"stoplist", c.stoplist_path.string()},
      {"affixes", c.affix_path.string()},
      {"f-mode", std::string(eval::to_string(c.f_mode))},
      {"format", std::string(to_string(c.format))},
      {"average", std::string(to_string(c.averaging))},
  };
}

namespace {

template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw StageError(stage, e.what(), true);
  } catch (const Error& e) {
    throw StageError(stage, e.what(), false);
  } catch (const std::exception& e) {
    throw StageError(stage, e.what(), false);
  }
}

struct Resources {
  textprep::Stoplist stoplist;
  textprep::AffixTables affixes;
};

Resources load_resources(const ExperimentConfig& config) {
  return in_stage("resources", [&] {
    Resources r;
    r.stoplist = textprep::Stoplist::load(config.stoplist_path);
    r.affixes = textprep::AffixTables::load(config.affix_path);
    if (config.min_stem_length < 1) throw InvalidArgument("min-stem-length must be >= 1");
    return r;
  });
}

corpus::Corpus load_stage(const ExperimentConfig& config) {
  return in_stage("load", [&] { return corpus::load_corpus(config.corpus_root); });
}

corpus::Split split_stage(const ExperimentConfig& config, const corpus::Corpus& corpus) {
  return in_stage("split", [&] { return corpus::stratified_split(corpus, config.ratio, config.seed); });
}

// Runs the pipeline stages one at a time so each stage's token count can be
// recorded; the composition matches textprep::preprocess().
struct Prepared {
  std::vector<textprep::TokenList> docs;
  std::size_t tokens = 0;
  std::size_t after_stopwords = 0;
};

Prepared prepare(const corpus::Corpus& corpus, const std::vector<std::size_t>& indices,
                 const textprep::TokenPipelineConfig& pipeline) {
  Prepared p;
  p.docs.reserve(indices.size());
  for (std::size_t i : indices) {
    textprep::TokenList tokens = textprep::tokenize(textprep::normalize(corpus.documents()[i].text));
    p.tokens += tokens.size();
    if (pipeline.remove_stopwords) tokens = textprep::remove_stopwords(std::move(tokens), pipeline.stoplist);
    p.after_stopwords += tokens.size();
    if (pipeline.stem) {
      for (std::string& t : tokens) t = pipeline.stemmer.stem(std::string_view(t));
    }
    p.docs.push_back(std::move(tokens));
  }
  return p;
}

ExperimentResult run_cell(const ExperimentConfig& config, const corpus::Corpus& corpus, const corpus::Split& split,
                          const Resources& resources) {
  const auto started = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.name = "run";
  result.config = config;

  textprep::TokenPipelineConfig pipeline{
      config.remove_stopwords, resources.stoplist, config.stem,
      textprep::LightStemmer(resources.affixes, config.min_stem_length)};

  const Prepared train = in_stage("preprocess(train)", [&] { return prepare(corpus, split.train, pipeline); });
  result.vocabulary = in_stage("vocabulary", [&] { return features::build_vocabulary(train.docs); });

  std::vector<classify::TrainingExample> examples;
  examples.reserve(split.train.size());
  for (std::size_t k = 0; k < split.train.size(); ++k) {
    examples.push_back({features::vectorize(train.docs[k], result.vocabulary, config.weighting),
                        corpus.documents()[split.train[k]].label});
  }
  result.model = in_stage("train", [&] {
    return classify::train(config.flavor, examples, result.vocabulary, corpus.categories());
  });

  const Prepared test = in_stage("preprocess(test)", [&] { return prepare(corpus, split.test, pipeline); });
  std::vector<std::string> truth;
  std::vector<std::string> predicted;
  std::size_t oov = 0;
  in_stage("predict", [&] {
    for (std::size_t k = 0; k < split.test.size(); ++k) {
      const textprep::TokenList& tokens = test.docs[k];
      for (const std::string& t : tokens) {
        if (!result.vocabulary.index_of(t)) ++oov;
      }
      const auto vector = features::vectorize(tokens, result.vocabulary, config.weighting);
      truth.push_back(corpus.documents()[split.test[k]].label);
      predicted.push_back(result.model.predict(vector).label);
    }
  });
  result.metrics = in_stage("evaluate", [&] {
    return eval::evaluate(eval::confusion(truth, predicted, corpus.categories()), config.f_mode);
  });

  result.counts.corpus_documents = corpus.size();
  result.counts.train_documents = split.train.size();
  result.counts.test_documents = split.test.size();
  result.counts.train_tokens = train.tokens;
  result.counts.train_tokens_after_stopwords = train.after_stopwords;
  result.counts.test_tokens = test.tokens;
  result.counts.test_tokens_after_stopwords = test.after_stopwords;
  result.counts.test_tokens_out_of_vocabulary = oov;
  result.counts.vocabulary_size = result.vocabulary.size();
  for (std::size_t i : split.train) result.train_ids.push_back(corpus.documents()[i].id);
  for (std::size_t i : split.test) result.test_ids.push_back(corpus.documents()[i].id);
  result.wall_clock = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started);
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const Resources resources = load_resources(config);
  const corpus::Corpus corpus = load_stage(config);
  const corpus::Split split = split_stage(config, corpus);
  ExperimentResult result = run_cell(config, corpus, split, resources);
  result.wall_clock = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started);
  return result;
}

const std::vector<GridCell>& grid_cells() {
  using features::WeightingScheme;
  static const std::vector<GridCell> cells{
      {"Exp.1", WeightingScheme::TermFrequency, true},
      {"Exp.2", WeightingScheme::Binary, true},
      {"Exp.3", WeightingScheme::Binary, false},
      {"Exp.4", WeightingScheme::TermFrequency, false},
  };
  return cells;
}

std::vector<ExperimentResult> run_grid(const ExperimentConfig& base) {
  const Resources resources = load_resources(base);
  const corpus::Corpus corpus = load_stage(base);
  const corpus::Split split = split_stage(base, corpus);

  std::vector<std::future<ExperimentResult>> pending;
  for (const GridCell& cell : grid_cells()) {
    ExperimentConfig config = base;
    config.weighting = cell.weighting;
    config.remove_stopwords = cell.remove_stopwords;
    pending.push_back(std::async(std::launch::async, [config, &cell, &corpus, &split, &resources] {
      ExperimentResult r = run_cell(config, corpus, split, resources);
      r.name = cell.name;
      return r;
    }));
  }

  std::vector<ExperimentResult> results;
  std::exception_ptr first_error;
  for (std::size_t k = 0; k < pending.size(); ++k) {
    try {
      results.push_back(pending[k].get());
    } catch (const StageError& e) {
      if (!first_error) {
        first_error = std::make_exception_ptr(
            StageError(grid_cells()[k].name + "/" + e.stage(), e.cause(), e.usage()));
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace arabtc::harness
