#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arabtc::eval {

/// counts(i, j) = documents of true class i predicted as class j.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> classes);
  ConfusionMatrix(std::vector<std::string> classes, std::vector<std::vector<std::uint64_t>> counts);

  std::size_t size() const noexcept { return classes_.size(); }
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  std::uint64_t at(std::size_t truth, std::size_t predicted) const { return counts_.at(truth * size() + predicted); }
  void add(std::size_t truth, std::size_t predicted, std::uint64_t n = 1);

  std::uint64_t total() const noexcept;
  std::uint64_t trace() const noexcept;
  std::uint64_t row_sum(std::size_t truth) const;
  std::uint64_t column_sum(std::size_t predicted) const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::vector<std::string> classes_;
  std::vector<std::uint64_t> counts_;
};

/// Throws InvalidArgument on length mismatch, empty input, or a label not in
/// `classes`.
ConfusionMatrix confusion(std::span<const std::string> truth, std::span<const std::string> predicted,
                          std::vector<std::string> classes);

/// trace / total. Throws InvalidArgument when total is zero.
double accuracy(const ConfusionMatrix& m);

enum class FMode { Harmonic, Geometric };

std::string_view to_string(FMode mode);
FMode parse_f_mode(std::string_view name);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::uint64_t support = 0;  // true documents of the class
};

/// Harmonic: 2PR/(P+R). Geometric: sqrt(PR). Both are 0 when P = R = 0.
double f_measure(double precision, double recall, FMode mode);

/// Per-class precision/recall/F. A 0/0 ratio is defined as 0 and, when
/// `warnings` is given, noted there.
std::vector<ClassMetrics> per_class_metrics(const ConfusionMatrix& m, FMode mode,
                                            std::vector<std::string>* warnings = nullptr);

struct Averaged {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

struct Averages {
  Averaged macro;     // unweighted mean over classes
  Averaged micro;     // from pooled TP/FP/FN
  Averaged weighted;  // mean weighted by true-class support
};

Averages aggregate(const std::vector<ClassMetrics>& per_class, const ConfusionMatrix& m, FMode mode);

struct MetricsReport {
  double accuracy = 0.0;
  std::vector<std::string> classes;
  std::vector<ClassMetrics> per_class;
  Averages averaged;
  FMode f_mode = FMode::Harmonic;
  std::vector<std::string> warnings;
  ConfusionMatrix confusion;
};

MetricsReport evaluate(const ConfusionMatrix& m, FMode mode = FMode::Harmonic);

}  // namespace arabtc::eval
