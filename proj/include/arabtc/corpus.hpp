#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arabtc::corpus {

struct Document {
  std::string id;     // "<category>/<filename>", unique within a corpus
  std::string label;  // category name
  std::string text;   // validated UTF-8

  friend bool operator==(const Document&, const Document&) = default;
};

/// Labeled document collection. Categories are unique and sorted
/// lexicographically; that order is the canonical class order everywhere
/// downstream. Immutable once built.
class Corpus {
 public:
  Corpus(std::vector<std::string> categories, std::vector<Document> documents);

  const std::vector<std::string>& categories() const noexcept { return categories_; }
  const std::vector<Document>& documents() const noexcept { return documents_; }
  std::size_t size() const noexcept { return documents_.size(); }

  // Position of `label` in categories(); throws InvalidArgument if absent.
  std::size_t category_index(std::string_view label) const;

  // Indices into documents() for one category, in corpus order.
  const std::vector<std::size_t>& members(std::size_t category) const { return members_.at(category); }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.categories_ == b.categories_ && a.documents_ == b.documents_;
  }

 private:
  std::vector<std::string> categories_;
  std::vector<Document> documents_;
  std::vector<std::vector<std::size_t>> members_;
};

/// Train/test partition expressed as ascending indices into
/// Corpus::documents().
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
  double ratio = 0.0;

  friend bool operator==(const Split&, const Split&) = default;
};

inline constexpr double kDefaultRatio = 0.7;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Loads `<root>/<category>/<file>`. Hidden entries (leading '.') and
/// non-regular files inside a category are skipped. Categories and the files
/// within them are sorted by name. A leading UTF-8 BOM is dropped.
/// Throws DataError for a missing or empty root, an empty category, or a
/// file that is not valid UTF-8 (the message carries the path and offset).
Corpus load_corpus(const std::filesystem::path& root);

/// Number of training documents drawn from a category of `size` documents:
/// round-half-away-from-zero of ratio*size, clamped to [1, size-1].
std::size_t train_count(std::size_t size, double ratio);

/// Per-category seeded shuffle, then the first train_count() documents go to
/// train.
///
/// The shuffle is portable: a std::mt19937_64 seeded with `seed` drives a
/// descending Fisher-Yates pass over each category (categories in canonical
/// order, documents in corpus order). Bounded draws use rejection sampling on
/// the raw 64-bit output (reject r < 2^64 mod n, return r mod n), so the
/// result does not depend on the standard library's distribution classes.
///
/// Throws InvalidArgument if ratio is not in (0,1) or a category has fewer
/// than two documents.
Split stratified_split(const Corpus& corpus, double ratio, std::uint64_t seed);

/// The generator behind stratified_split().
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform draw in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace arabtc::corpus
