#include <charconv>
#include <sstream>

#include "arabtc/harness.hpp"
#include "json.hpp"

namespace arabtc::harness {

using json = nlohmann::ordered_json;

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

const eval::Averaged& pick(const eval::Averages& a, Averaging mode) {
  switch (mode) {
    case Averaging::Macro:
      return a.macro;
    case Averaging::Micro:
      return a.micro;
    case Averaging::Weighted:
      break;
  }
  return a.weighted;
}

json averaged_json(const eval::Averaged& a) {
  return json{{"precision", a.precision}, {"recall", a.recall}, {"f_measure", a.f_measure}};
}

json result_json(const ExperimentResult& r) {
  json config = json::object();
  for (const auto& [key, value] : config_echo(r.config)) config[key] = value;

  const eval::MetricsReport& m = r.metrics;
  json per_class = json::object();
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    const eval::ClassMetrics& cm = m.per_class[c];
    per_class[m.classes[c]] = json{{"precision", cm.precision},
                                   {"recall", cm.recall},
                                   {"f_measure", cm.f_measure},
                                   {"support", cm.support}};
  }
  json counts = json::array();
  for (std::size_t i = 0; i < m.confusion.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.confusion.size(); ++j) row.push_back(m.confusion.at(i, j));
    counts.push_back(std::move(row));
  }

  const StageCounts& s = r.counts;
  return json{
      {"experiment", r.name},
      {"config", std::move(config)},
      {"metrics",
       {{"accuracy", m.accuracy},
        {"f_mode", eval::to_string(m.f_mode)},
        {"averages",
         {{"macro", averaged_json(m.averaged.macro)},
          {"micro", averaged_json(m.averaged.micro)},
          {"weighted", averaged_json(m.averaged.weighted)}}},
        {"per_class", std::move(per_class)},
        {"confusion", {{"classes", m.classes}, {"counts", std::move(counts)}}},
        {"warnings", m.warnings}}},
      {"counts",
       {{"corpus_documents", s.corpus_documents},
        {"train_documents", s.train_documents},
        {"test_documents", s.test_documents},
        {"train_tokens", s.train_tokens},
        {"train_tokens_after_stopwords", s.train_tokens_after_stopwords},
        {"test_tokens", s.test_tokens},
        {"test_tokens_after_stopwords", s.test_tokens_after_stopwords},
        {"test_tokens_out_of_vocabulary", s.test_tokens_out_of_vocabulary},
        {"vocabulary_size", s.vocabulary_size}}},
      {"wall_clock_ms", static_cast<double>(r.wall_clock.count()) / 1e6},
  };
}

std::string render_json(const std::vector<ExperimentResult>& results) {
  json experiments = json::array();
  for (const auto& r : results) experiments.push_back(result_json(r));
  return json{{"experiments", std::move(experiments)}}.dump(2) + "\n";
}

std::string render_csv(const std::vector<ExperimentResult>& results) {
  std::ostringstream out;
  out << "experiment,weighting,stopwords,flavor,stem,ratio,seed,f_mode,train_documents,test_documents,"
         "vocabulary_size,accuracy";
  for (const char* mode : {"macro", "micro", "weighted"}) {
    out << ',' << mode << "_precision," << mode << "_recall," << mode << "_f_measure";
  }
  out << '\n';
  for (const auto& r : results) {
    const ExperimentConfig& c = r.config;
    const eval::MetricsReport& m = r.metrics;
    out << r.name << ',' << features::to_string(c.weighting) << ',' << (c.remove_stopwords ? "on" : "off") << ','
        << classify::to_string(c.flavor) << ',' << (c.stem ? "on" : "off") << ',' << format_shortest(c.ratio) << ','
        << c.seed << ',' << eval::to_string(m.f_mode) << ',' << r.counts.train_documents << ','
        << r.counts.test_documents << ',' << r.counts.vocabulary_size << ',' << format_shortest(m.accuracy);
    for (const eval::Averaged* a : {&m.averaged.macro, &m.averaged.micro, &m.averaged.weighted}) {
      out << ',' << format_shortest(a->precision) << ',' << format_shortest(a->recall) << ','
          << format_shortest(a->f_measure);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_markdown(const std::vector<ExperimentResult>& results, Averaging averaging) {
  const ExperimentConfig& c = results.front().config;
  std::ostringstream out;
  out << "# Experiment results\n\n";
  out << "- classifier: " << classify::to_string(c.flavor) << " naive Bayes\n";
  out << "- split: ratio " << format_shortest(c.ratio) << ", seed " << c.seed << '\n';
  out << "- stemming: " << (c.stem ? "on" : "off") << ", min stem length " << c.min_stem_length << '\n';
  out << "- recall/precision/F-measure: " << to_string(averaging) << " average, F-measure "
      << eval::to_string(c.f_mode) << " mean of precision and recall\n";
  if (results.size() > 1) {
    out << "- every experiment uses the same classifier and the same train/test documents, so differences "
           "between rows come only from the weighting scheme and stop-word removal\n";
  }
  out << '\n';
  for (const auto& r : results) {
    out << "- " << r.name << ": " << features::to_string(r.config.weighting) << " weighting, "
        << (r.config.remove_stopwords ? "stop words removed" : "stop words kept") << '\n';
  }
  out << '\n';
  out << "| Experiment | Accuracy | Recall | Precision | F-measure |\n";
  out << "|------------|----------|--------|-----------|-----------|\n";
  for (const auto& r : results) {
    const eval::Averaged& a = pick(r.metrics.averaged, averaging);
    out << "| " << r.name << " | " << format_fixed(r.metrics.accuracy, 3) << " | " << format_fixed(a.recall, 3)
        << " | " << format_fixed(a.precision, 3) << " | " << format_fixed(a.f_measure, 3) << " |\n";
  }

  const auto effects = stopword_effect_summary(results);
  if (!effects.empty()) {
    out << "\nStop-word removal and accuracy:\n\n";
    for (const auto& line : effects) out << "- " << line << '\n';
  }
  bool header = false;
  for (const auto& r : results) {
    for (const auto& w : r.metrics.warnings) {
      if (!header) out << "\nWarnings:\n\n";
      header = true;
      out << "- " << r.name << ": " << w << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::vector<std::string> stopword_effect_summary(const std::vector<ExperimentResult>& results) {
  std::vector<std::string> lines;
  for (auto scheme : {features::WeightingScheme::TermFrequency, features::WeightingScheme::Binary}) {
    const ExperimentResult* on = nullptr;
    const ExperimentResult* off = nullptr;
    for (const auto& r : results) {
      if (r.config.weighting != scheme) continue;
      (r.config.remove_stopwords ? on : off) = &r;
    }
    if (on == nullptr || off == nullptr) continue;
    const double a_on = on->metrics.accuracy;
    const double a_off = off->metrics.accuracy;
    const char* verdict = a_on > a_off ? "improves accuracy" : (a_on == a_off ? "leaves accuracy unchanged"
                                                                                : "lowers accuracy");
    lines.push_back(std::string(features::to_string(scheme)) + ": " + format_fixed(a_on, 3) + " with removal vs " +
                    format_fixed(a_off, 3) + " without; removal " + verdict);
  }
  return lines;
}

std::string emit_report(const std::vector<ExperimentResult>& results, ReportFormat format, Averaging averaging) {
  if (results.empty()) throw InvalidArgument("cannot render a report with no results");
  switch (format) {
    case ReportFormat::Json:
      return render_json(results);
    case ReportFormat::Csv:
      return render_csv(results);
    case ReportFormat::Markdown:
      return render_markdown(results, averaging);
  }
  throw InvalidArgument("unknown report format");
}

}  // namespace arabtc::harness
