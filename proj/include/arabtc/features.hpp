#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arabtc/textprep.hpp"

namespace arabtc::features {

/// Sorted unique term list with a term -> index map (index = position).
class Vocabulary {
 public:
  Vocabulary() = default;
  // `terms` must be sorted and unique; throws InvalidArgument otherwise.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::string& term(std::uint32_t index) const { return terms_.at(index); }
  std::optional<std::uint32_t> index_of(std::string_view term) const;

  /// FNV-1a 64 over the terms, each followed by a NUL byte. Identifies the
  /// vocabulary a serialized model was trained against.
  std::uint64_t fingerprint() const noexcept;

  /// `index<TAB>term` per line.
  std::string dump() const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> terms_;
};

/// Union of all training tokens. Throws DataError if `train_docs` is empty or
/// contains no tokens at all.
Vocabulary build_vocabulary(const std::vector<textprep::TokenList>& train_docs);

enum class WeightingScheme { Binary, TermFrequency };

std::string_view to_string(WeightingScheme scheme);
// Accepts "binary" and "tf"; throws InvalidArgument otherwise.
WeightingScheme parse_weighting(std::string_view name);

/// Sparse non-negative integer weights, sorted by term index, no zeros.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

  std::uint32_t weight(std::uint32_t index) const noexcept;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Out-of-vocabulary tokens are skipped.
FeatureVector vectorize(const textprep::TokenList& tokens, const Vocabulary& vocab, WeightingScheme scheme);

/// Every stored weight clamped to 1.
FeatureVector binarize(const FeatureVector& vector);

}  // namespace arabtc::features
