#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arabtc/features.hpp"

namespace arabtc::classify {

enum class Flavor { Bernoulli, Multinomial };

std::string_view to_string(Flavor flavor);
// Accepts "bernoulli" and "multinomial"; throws InvalidArgument otherwise.
Flavor parse_flavor(std::string_view name);

struct TrainingExample {
  features::FeatureVector vector;
  std::string label;
};

struct Prediction {
  std::string label;
  std::size_t label_index = 0;
  std::vector<double> log_posteriors;  // unnormalized per-class scores
  std::vector<double> posteriors;      // softmax of the scores
};

/// Naive Bayes parameters for either event model, all in log space.
///
/// Bernoulli (document events, Laplace +1/+2):
///   theta[c][t] = (docs of c containing t + 1) / (docs of c + 2)
///   score[c] = log prior[c] + sum_{t present} log theta[c][t]
///                           + sum_{t absent}  log(1 - theta[c][t])
/// The absence sum runs over the whole vocabulary. It is stored per class as
/// the sum over all terms of log(1 - theta), and predict() swaps in log theta
/// for the terms that are present.
///
/// Multinomial (token events, Laplace +1/+|V|):
///   phi[c][t] = (occurrences of t in c + 1) / (tokens in c + |V|)
///   score[c] = log prior[c] + sum_t weight[t] * log phi[c][t]
///
/// Immutable after training; predict() is safe to call from many threads.
class NaiveBayesModel {
 public:
  Flavor flavor() const noexcept { return flavor_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const std::vector<double>& log_prior() const noexcept { return log_prior_; }
  std::size_t vocab_size() const noexcept { return vocab_size_; }
  std::uint64_t vocab_fingerprint() const noexcept { return vocab_fingerprint_; }

  /// log theta (Bernoulli) or log phi (Multinomial), indexed [class][term].
  const std::vector<std::vector<double>>& log_prob() const noexcept { return log_prob_; }
  /// log(1 - theta), Bernoulli only; empty for Multinomial.
  const std::vector<std::vector<double>>& log_complement() const noexcept { return log_complement_; }

  /// Throws InvalidArgument if a vector index is >= vocab_size().
  Prediction predict(const features::FeatureVector& vector) const;

  friend bool operator==(const NaiveBayesModel&, const NaiveBayesModel&) = default;

 private:
  friend NaiveBayesModel train(Flavor, std::span<const TrainingExample>, const features::Vocabulary&,
                               std::vector<std::string>);
  friend NaiveBayesModel load_model(std::istream&);

  void finalize();

  Flavor flavor_ = Flavor::Multinomial;
  std::vector<std::string> class_names_;
  std::vector<double> log_prior_;
  std::size_t vocab_size_ = 0;
  std::uint64_t vocab_fingerprint_ = 0;
  std::vector<std::vector<double>> log_prob_;
  std::vector<std::vector<double>> log_complement_;
  std::vector<double> absence_sum_;  // Bernoulli: sum_t log(1 - theta[c][t])
};

/// Fits a model over `class_names` (sorted, unique). When `class_names` is
/// empty the sorted set of example labels is used. Bernoulli binarizes each
/// vector first; Multinomial sums raw weights.
/// Throws DataError for an empty vocabulary or a class with no examples and
/// InvalidArgument for a label outside `class_names` or an index outside
/// the vocabulary.
NaiveBayesModel train(Flavor flavor, std::span<const TrainingExample> examples,
                      const features::Vocabulary& vocab, std::vector<std::string> class_names = {});

/// Versioned text format; every double is written as a hex float so a
/// reload predicts bit-identically.
void save_model(const NaiveBayesModel& model, std::ostream& out);
NaiveBayesModel load_model(std::istream& in);
void save_model(const NaiveBayesModel& model, const std::filesystem::path& path);
/// Also checks the stored fingerprint against `vocab`.
NaiveBayesModel load_model(const std::filesystem::path& path, const features::Vocabulary& vocab);

}  // namespace arabtc::classify
