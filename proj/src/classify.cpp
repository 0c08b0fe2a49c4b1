#include "arabtc/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arabtc/error.hpp"

namespace arabtc::classify {

std::string_view to_string(Flavor flavor) {
  return flavor == Flavor::Bernoulli ? "bernoulli" : "multinomial";
}

Flavor parse_flavor(std::string_view name) {
  if (name == "bernoulli") return Flavor::Bernoulli;
  if (name == "multinomial") return Flavor::Multinomial;
  throw InvalidArgument("unknown classifier flavor: " + std::string(name));
}

void NaiveBayesModel::finalize() {
  absence_sum_.clear();
  if (flavor_ != Flavor::Bernoulli) return;
  absence_sum_.reserve(log_complement_.size());
  for (const auto& row : log_complement_) {
    double sum = 0.0;
    for (double v : row) sum += v;
    absence_sum_.push_back(sum);
  }
}

NaiveBayesModel train(Flavor flavor, std::span<const TrainingExample> examples, const features::Vocabulary& vocab,
                      std::vector<std::string> class_names) {
  if (vocab.empty()) throw DataError("cannot train on an empty vocabulary");
  if (class_names.empty()) {
    for (const auto& ex : examples) class_names.push_back(ex.label);
    std::sort(class_names.begin(), class_names.end());
    class_names.erase(std::unique(class_names.begin(), class_names.end()), class_names.end());
  }
  if (class_names.empty()) throw DataError("no training examples");
  if (!std::is_sorted(class_names.begin(), class_names.end()) ||
      std::adjacent_find(class_names.begin(), class_names.end()) != class_names.end()) {
    throw InvalidArgument("class names must be sorted and unique");
  }

  const std::size_t n_classes = class_names.size();
  const std::size_t n_terms = vocab.size();
  std::vector<std::uint64_t> docs(n_classes, 0);
  std::vector<std::uint64_t> tokens(n_classes, 0);
  // Bernoulli: document frequency; Multinomial: summed weight.
  std::vector<std::vector<std::uint64_t>> counts(n_classes, std::vector<std::uint64_t>(n_terms, 0));

  for (const auto& ex : examples) {
    const auto it = std::lower_bound(class_names.begin(), class_names.end(), ex.label);
    if (it == class_names.end() || *it != ex.label) {
      throw InvalidArgument("training label not among class names: " + ex.label);
    }
    const auto c = static_cast<std::size_t>(it - class_names.begin());
    ++docs[c];
    for (const auto& [idx, w] : ex.vector.entries) {
      if (idx >= n_terms) throw InvalidArgument("feature index outside the vocabulary");
      if (w == 0) continue;
      counts[c][idx] += flavor == Flavor::Bernoulli ? 1 : w;
      tokens[c] += w;
    }
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (docs[c] == 0) throw DataError("class with zero training documents: " + class_names[c]);
  }

  NaiveBayesModel m;
  m.flavor_ = flavor;
  m.vocab_size_ = n_terms;
  m.vocab_fingerprint_ = vocab.fingerprint();
  const auto total_docs = static_cast<double>(examples.size());
  m.log_prior_.reserve(n_classes);
  m.log_prob_.assign(n_classes, std::vector<double>(n_terms));
  if (flavor == Flavor::Bernoulli) m.log_complement_.assign(n_classes, std::vector<double>(n_terms));

  for (std::size_t c = 0; c < n_classes; ++c) {
    m.log_prior_.push_back(std::log(static_cast<double>(docs[c]) / total_docs));
    if (flavor == Flavor::Bernoulli) {
      const double denom = static_cast<double>(docs[c]) + 2.0;
      for (std::size_t t = 0; t < n_terms; ++t) {
        const auto df = static_cast<double>(counts[c][t]);
        m.log_prob_[c][t] = std::log((df + 1.0) / denom);
        m.log_complement_[c][t] = std::log((static_cast<double>(docs[c]) - df + 1.0) / denom);
      }
    } else {
      const double denom = static_cast<double>(tokens[c]) + static_cast<double>(n_terms);
      for (std::size_t t = 0; t < n_terms; ++t) {
        m.log_prob_[c][t] = std::log((static_cast<double>(counts[c][t]) + 1.0) / denom);
      }
    }
  }
  m.class_names_ = std::move(class_names);
  m.finalize();
  return m;
}

Prediction NaiveBayesModel::predict(const features::FeatureVector& vector) const {
  for (const auto& [idx, w] : vector.entries) {
    if (idx >= vocab_size_) throw InvalidArgument("feature index outside the model vocabulary");
  }

  const std::size_t n = class_names_.size();
  Prediction p;
  p.log_posteriors.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    double score = log_prior_[c];
    if (flavor_ == Flavor::Bernoulli) {
      score += absence_sum_[c];
      for (const auto& [idx, w] : vector.entries) {
        if (w > 0) score += log_prob_[c][idx] - log_complement_[c][idx];
      }
    } else {
      for (const auto& [idx, w] : vector.entries) score += static_cast<double>(w) * log_prob_[c][idx];
    }
    p.log_posteriors[c] = score;
  }

  std::size_t best = 0;
  for (std::size_t c = 1; c < n; ++c) {
    if (p.log_posteriors[c] > p.log_posteriors[best]) best = c;
  }
  p.label_index = best;
  p.label = class_names_[best];

  const double top = p.log_posteriors[best];
  p.posteriors.resize(n);
  double z = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    p.posteriors[c] = std::exp(p.log_posteriors[c] - top);
    z += p.posteriors[c];
  }
  for (double& v : p.posteriors) v /= z;
  return p;
}

}  // namespace arabtc::classify
