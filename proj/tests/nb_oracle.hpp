#pragma once

// Probability-space Naive Bayes evaluated straight from raw token lists.
// Shares no code with the library: counts, smoothing, products, and the
// normalization are all recomputed here so it can check log-space results.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace arabtc::testing {

struct OracleDoc {
  std::vector<std::string> tokens;
  std::string label;
};

enum class OracleFlavor { Bernoulli, Multinomial };

struct OracleResult {
  std::vector<double> posteriors;
  // Smoothed event probabilities, [class][term in sorted vocabulary order].
  std::vector<std::vector<double>> probs;
  std::vector<double> priors;
};

// `binary` selects presence weights instead of counts for the Multinomial
// flavor (Bernoulli always uses presence).
inline OracleResult oracle_posteriors(const std::vector<OracleDoc>& train, const std::vector<std::string>& classes,
                                      const std::vector<std::string>& test_tokens, OracleFlavor flavor,
                                      bool binary) {
  std::set<std::string> vocab_set;
  for (const auto& d : train) vocab_set.insert(d.tokens.begin(), d.tokens.end());
  const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());

  auto weight = [&](const std::vector<std::string>& tokens, const std::string& term) {
    double n = 0;
    for (const auto& t : tokens) n += (t == term) ? 1 : 0;
    if (flavor == OracleFlavor::Bernoulli || binary) return n > 0 ? 1.0 : 0.0;
    return n;
  };

  OracleResult r;
  std::vector<double> joint;
  for (const auto& c : classes) {
    double docs = 0;
    for (const auto& d : train) docs += (d.label == c) ? 1 : 0;
    const double prior = docs / static_cast<double>(train.size());
    r.priors.push_back(prior);

    std::vector<double> probs;
    double likelihood = 1.0;
    if (flavor == OracleFlavor::Bernoulli) {
      for (const auto& term : vocab) {
        double df = 0;
        for (const auto& d : train) {
          if (d.label == c) df += weight(d.tokens, term);
        }
        const double theta = (df + 1) / (docs + 2);
        probs.push_back(theta);
        likelihood *= weight(test_tokens, term) > 0 ? theta : (1 - theta);
      }
    } else {
      double total = 0;
      std::vector<double> counts;
      for (const auto& term : vocab) {
        double n = 0;
        for (const auto& d : train) {
          if (d.label == c) n += weight(d.tokens, term);
        }
        counts.push_back(n);
        total += n;
      }
      for (std::size_t t = 0; t < vocab.size(); ++t) {
        const double phi = (counts[t] + 1) / (total + static_cast<double>(vocab.size()));
        probs.push_back(phi);
        const double w = weight(test_tokens, vocab[t]);
        for (int k = 0; k < static_cast<int>(w); ++k) likelihood *= phi;
      }
    }
    r.probs.push_back(probs);
    joint.push_back(prior * likelihood);
  }
  double z = 0;
  for (double j : joint) z += j;
  for (double j : joint) r.posteriors.push_back(j / z);
  return r;
}

}  // namespace arabtc::testing
