#include "arabtc/features.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arabtc/error.hpp"

namespace arabtc::features {

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  if (std::adjacent_find(terms_.begin(), terms_.end(),
                         [](const std::string& a, const std::string& b) { return !(a < b); }) != terms_.end()) {
    throw InvalidArgument("vocabulary terms must be sorted and unique");
  }
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
  if (it == terms_.end() || *it != term) return std::nullopt;
  return static_cast<std::uint32_t>(it - terms_.begin());
}

std::uint64_t Vocabulary::fingerprint() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (const std::string& t : terms_) {
    for (char c : t) mix(static_cast<unsigned char>(c));
    mix(0);
  }
  return h;
}

std::string Vocabulary::dump() const {
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += terms_[i];
    out += '\n';
  }
  return out;
}

Vocabulary build_vocabulary(const std::vector<textprep::TokenList>& train_docs) {
  if (train_docs.empty()) throw DataError("cannot build a vocabulary from zero training documents");
  std::set<std::string> terms;
  for (const auto& doc : train_docs) terms.insert(doc.begin(), doc.end());
  if (terms.empty()) throw DataError("empty vocabulary: every training document is empty after preprocessing");
  return Vocabulary(std::vector<std::string>(terms.begin(), terms.end()));
}

std::string_view to_string(WeightingScheme scheme) {
  return scheme == WeightingScheme::Binary ? "binary" : "tf";
}

WeightingScheme parse_weighting(std::string_view name) {
  if (name == "binary") return WeightingScheme::Binary;
  if (name == "tf") return WeightingScheme::TermFrequency;
  throw InvalidArgument("unknown weighting scheme: " + std::string(name));
}

std::uint32_t FeatureVector::weight(std::uint32_t index) const noexcept {
  const auto it = std::lower_bound(entries.begin(), entries.end(), index,
                                   [](const auto& e, std::uint32_t i) { return e.first < i; });
  return (it != entries.end() && it->first == index) ? it->second : 0;
}

FeatureVector vectorize(const textprep::TokenList& tokens, const Vocabulary& vocab, WeightingScheme scheme) {
  std::map<std::uint32_t, std::uint32_t> counts;
  for (const std::string& t : tokens) {
    if (const auto idx = vocab.index_of(t)) ++counts[*idx];
  }
  FeatureVector v;
  v.entries.reserve(counts.size());
  for (const auto& [idx, n] : counts) {
    v.entries.emplace_back(idx, scheme == WeightingScheme::Binary ? 1u : n);
  }
  return v;
}

FeatureVector binarize(const FeatureVector& vector) {
  FeatureVector out = vector;
  for (auto& e : out.entries) e.second = 1;
  return out;
}

}  // namespace arabtc::features
