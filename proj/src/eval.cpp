#include "arabtc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arabtc/error.hpp"

namespace arabtc::eval {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)), counts_(classes_.size() * classes_.size(), 0) {}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes, std::vector<std::vector<std::uint64_t>> counts)
    : ConfusionMatrix(std::move(classes)) {
  if (counts.size() != size()) throw InvalidArgument("confusion matrix row count does not match classes");
  for (std::size_t i = 0; i < size(); ++i) {
    if (counts[i].size() != size()) throw InvalidArgument("confusion matrix must be square");
    for (std::size_t j = 0; j < size(); ++j) counts_[i * size() + j] = counts[i][j];
  }
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted, std::uint64_t n) {
  if (truth >= size() || predicted >= size()) throw InvalidArgument("confusion matrix index out of range");
  counts_[truth * size() + predicted] += n;
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < size(); ++i) t += counts_[i * size() + i];
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < size(); ++j) s += at(truth, j);
  return s;
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < size(); ++i) s += at(i, predicted);
  return s;
}

ConfusionMatrix confusion(std::span<const std::string> truth, std::span<const std::string> predicted,
                          std::vector<std::string> classes) {
  if (truth.size() != predicted.size()) throw InvalidArgument("label sequences differ in length");
  if (truth.empty()) throw InvalidArgument("cannot build a confusion matrix from zero labels");
  auto index = [&](const std::string& label) {
    const auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) throw InvalidArgument("unknown label: " + label);
    return static_cast<std::size_t>(it - classes.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) cells.emplace_back(index(truth[k]), index(predicted[k]));
  ConfusionMatrix m(std::move(classes));
  for (const auto& [i, j] : cells) m.add(i, j);
  return m;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double accuracy(const ConfusionMatrix& m) {
  const std::uint64_t total = m.total();
  if (total == 0) throw InvalidArgument("accuracy of an empty confusion matrix");
  return ratio(m.trace(), total);
}

std::string_view to_string(FMode mode) { return mode == FMode::Harmonic ? "harmonic" : "geometric"; }

FMode parse_f_mode(std::string_view name) {
  if (name == "harmonic") return FMode::Harmonic;
  if (name == "geometric") return FMode::Geometric;
  throw InvalidArgument("unknown F-measure mode: " + std::string(name));
}

double f_measure(double precision, double recall, FMode mode) {
  if (precision == recall) return precision;
  if (mode == FMode::Geometric) return std::sqrt(precision * recall);
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

std::vector<ClassMetrics> per_class_metrics(const ConfusionMatrix& m, FMode mode, std::vector<std::string>* warnings) {
  if (m.total() == 0) throw InvalidArgument("metrics of an empty confusion matrix");
  std::vector<ClassMetrics> out;
  out.reserve(m.size());
  for (std::size_t c = 0; c < m.size(); ++c) {
    const std::uint64_t tp = m.at(c, c);
    const std::uint64_t predicted = m.column_sum(c);
    const std::uint64_t actual = m.row_sum(c);
    if (warnings != nullptr) {
      if (predicted == 0) warnings->push_back("precision of class '" + m.classes()[c] + "' is 0/0 (never predicted); set to 0");
      if (actual == 0) warnings->push_back("recall of class '" + m.classes()[c] + "' is 0/0 (no true documents); set to 0");
    }
    ClassMetrics cm;
    cm.precision = ratio(tp, predicted);
    cm.recall = ratio(tp, actual);
    cm.f_measure = f_measure(cm.precision, cm.recall, mode);
    cm.support = actual;
    out.push_back(cm);
  }
  return out;
}

Averages aggregate(const std::vector<ClassMetrics>& per_class, const ConfusionMatrix& m, FMode mode) {
  if (per_class.empty()) throw InvalidArgument("cannot average zero classes");
  Averages a;
  const auto n = static_cast<double>(per_class.size());
  std::uint64_t support = 0;
  for (const ClassMetrics& c : per_class) {
    a.macro.precision += c.precision;
    a.macro.recall += c.recall;
    a.macro.f_measure += c.f_measure;
    const auto w = static_cast<double>(c.support);
    a.weighted.precision += w * c.precision;
    a.weighted.recall += w * c.recall;
    a.weighted.f_measure += w * c.f_measure;
    support += c.support;
  }
  a.macro.precision /= n;
  a.macro.recall /= n;
  a.macro.f_measure /= n;
  if (support > 0) {
    const auto s = static_cast<double>(support);
    a.weighted.precision /= s;
    a.weighted.recall /= s;
    a.weighted.f_measure /= s;
  }

  // Pooled counts: sum TP = trace; sum FP = sum FN = total - trace.
  const std::uint64_t tp = m.trace();
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    fp += m.column_sum(c) - m.at(c, c);
    fn += m.row_sum(c) - m.at(c, c);
  }
  a.micro.precision = ratio(tp, tp + fp);
  a.micro.recall = ratio(tp, tp + fn);
  a.micro.f_measure = f_measure(a.micro.precision, a.micro.recall, mode);
  return a;
}

MetricsReport evaluate(const ConfusionMatrix& m, FMode mode) {
  MetricsReport r;
  r.accuracy = accuracy(m);
  r.classes = m.classes();
  r.per_class = per_class_metrics(m, mode, &r.warnings);
  r.averaged = aggregate(r.per_class, m, mode);
  r.f_mode = mode;
  r.confusion = m;
  return r;
}

}  // namespace arabtc::eval
