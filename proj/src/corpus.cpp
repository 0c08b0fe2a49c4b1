#include "arabtc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "arabtc/error.hpp"
#include "arabtc/utf8.hpp"

namespace arabtc::corpus {

namespace fs = std::filesystem;

Corpus::Corpus(std::vector<std::string> categories, std::vector<Document> documents)
    : categories_(std::move(categories)), documents_(std::move(documents)) {
  if (!std::is_sorted(categories_.begin(), categories_.end()) ||
      std::adjacent_find(categories_.begin(), categories_.end()) != categories_.end()) {
    throw InvalidArgument("corpus categories must be unique and sorted");
  }
  members_.resize(categories_.size());
  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const Document& doc = documents_[i];
    if (!ids.insert(doc.id).second) throw InvalidArgument("duplicate document id: " + doc.id);
    members_[category_index(doc.label)].push_back(i);
  }
  for (std::size_t c = 0; c < categories_.size(); ++c) {
    if (members_[c].empty()) throw DataError("category with zero files: " + categories_[c]);
  }
}

std::size_t Corpus::category_index(std::string_view label) const {
  const auto it = std::lower_bound(categories_.begin(), categories_.end(), label);
  if (it == categories_.end() || *it != label) {
    throw InvalidArgument("unknown category: " + std::string(label));
  }
  return static_cast<std::size_t>(it - categories_.begin());
}

namespace {

bool hidden(const fs::path& p) {
  const std::string name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.erase(0, 3);
  if (const auto bad = utf8::first_invalid_offset(bytes)) {
    throw DataError("undecodable file " + path.string() + ": invalid UTF-8 at byte " +
                    std::to_string(*bad));
  }
  return bytes;
}

}  // namespace

Corpus load_corpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw DataError("corpus root not found: " + root.string());

  std::vector<fs::path> category_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && !hidden(entry.path())) category_dirs.push_back(entry.path());
  }
  if (category_dirs.empty()) throw DataError("empty corpus root (no categories): " + root.string());
  std::sort(category_dirs.begin(), category_dirs.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  std::vector<std::string> categories;
  std::vector<Document> documents;
  for (const fs::path& dir : category_dirs) {
    const std::string label = dir.filename().string();
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && !hidden(entry.path())) files.push_back(entry.path().filename().string());
    }
    if (files.empty()) throw DataError("category with zero files: " + dir.string());
    std::sort(files.begin(), files.end());
    categories.push_back(label);
    for (const std::string& name : files) {
      documents.push_back({label + "/" + name, label, read_text(dir / name)});
    }
  }
  return Corpus(std::move(categories), std::move(documents));
}

std::uint64_t PortableRng::below(std::uint64_t bound) {
  // (2^64 - bound) mod bound == 2^64 mod bound in unsigned arithmetic.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

std::size_t train_count(std::size_t size, double ratio) {
  const auto rounded = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(size)));
  return std::clamp<std::size_t>(rounded, 1, size - 1);
}

Split stratified_split(const Corpus& corpus, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    std::ostringstream msg;
    msg << "split ratio must be in (0,1), got " << ratio;
    throw InvalidArgument(msg.str());
  }
  for (std::size_t c = 0; c < corpus.categories().size(); ++c) {
    if (corpus.members(c).size() < 2) {
      throw InvalidArgument("category too small to split: " + corpus.categories()[c]);
    }
  }

  Split split;
  split.seed = seed;
  split.ratio = ratio;
  PortableRng rng(seed);
  for (std::size_t c = 0; c < corpus.categories().size(); ++c) {
    std::vector<std::size_t> order = corpus.members(c);
    rng.shuffle(order);
    const std::size_t n_train = train_count(order.size(), ratio);
    split.train.insert(split.train.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(), order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace arabtc::corpus
