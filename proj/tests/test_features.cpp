#include "arabtc/features.hpp"

#include <random>

#include "arabtc/error.hpp"
#include "doctest.h"

using namespace arabtc;
using namespace arabtc::features;
using textprep::TokenList;

namespace {
using Entries = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
}

TEST_CASE("build_vocabulary") {
  CHECK(build_vocabulary({{"a", "b"}, {"b", "c"}}).terms() == std::vector<std::string>{"a", "b", "c"});
  CHECK(build_vocabulary({{"a", "a", "a"}}).terms() == std::vector<std::string>{"a"});
  CHECK_THROWS_AS(build_vocabulary({{}, {}}), DataError);
  CHECK_THROWS_AS(build_vocabulary({}), DataError);

  const Vocabulary v = build_vocabulary({{"ب", "ا"}, {"ت"}});
  CHECK(v.index_of("ا") == 0u);
  CHECK(v.index_of("ت") == 2u);
  CHECK_FALSE(v.index_of("ث"));
  CHECK(v.dump() == "0\tا\n1\tب\n2\tت\n");
  CHECK_THROWS_AS(Vocabulary({"b", "a"}), InvalidArgument);
}

TEST_CASE("vocabulary fingerprint distinguishes term boundaries") {
  CHECK(Vocabulary({"ab", "c"}).fingerprint() != Vocabulary({"a", "bc"}).fingerprint());
  CHECK(Vocabulary({"a"}).fingerprint() == Vocabulary({"a"}).fingerprint());
}

TEST_CASE("vectorize under both schemes") {
  const Vocabulary v({"a", "b", "c"});
  CHECK(vectorize({"a", "a", "b"}, v, WeightingScheme::TermFrequency).entries == Entries{{0, 2}, {1, 1}});
  CHECK(vectorize({"a", "a", "b"}, v, WeightingScheme::Binary).entries == Entries{{0, 1}, {1, 1}});
  CHECK(vectorize({"z"}, v, WeightingScheme::TermFrequency).entries.empty());
  CHECK(vectorize({"z"}, v, WeightingScheme::Binary).entries.empty());
  CHECK(vectorize({"c", "z", "a"}, v, WeightingScheme::TermFrequency).weight(2) == 1);
  CHECK(vectorize({"c", "z", "a"}, v, WeightingScheme::TermFrequency).weight(1) == 0);
}

TEST_CASE("weighting scheme names") {
  CHECK(parse_weighting("tf") == WeightingScheme::TermFrequency);
  CHECK(parse_weighting("binary") == WeightingScheme::Binary);
  CHECK(to_string(WeightingScheme::Binary) == "binary");
  CHECK_THROWS_AS(parse_weighting("tfidf"), InvalidArgument);
}

TEST_CASE("scheme relations over random token lists") {
  const Vocabulary v({"a", "b", "c", "d", "e"});
  const std::vector<std::string> pool{"a", "b", "c", "d", "e", "x", "y"};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    TokenList tokens;
    for (std::size_t k = rng() % 12; k > 0; --k) tokens.push_back(pool[rng() % pool.size()]);
    const auto tf = vectorize(tokens, v, WeightingScheme::TermFrequency);
    const auto bin = vectorize(tokens, v, WeightingScheme::Binary);
    CHECK(bin == binarize(tf));
    for (const auto& [idx, w] : tf.entries) CHECK(w > 0);

    // Monotonicity: one more token never lowers a weight.
    TokenList more = tokens;
    more.push_back(pool[rng() % pool.size()]);
    const auto tf_more = vectorize(more, v, WeightingScheme::TermFrequency);
    for (std::uint32_t t = 0; t < v.size(); ++t) CHECK(tf_more.weight(t) >= tf.weight(t));

    TokenList unique = tokens;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    CHECK(vectorize(unique, v, WeightingScheme::Binary) == vectorize(unique, v, WeightingScheme::TermFrequency));
  }
}
