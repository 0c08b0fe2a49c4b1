#include "arabtc/classify.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "arabtc/error.hpp"
#include "doctest.h"
#include "nb_oracle.hpp"
#include "test_util.hpp"

using namespace arabtc;
using namespace arabtc::classify;
using features::Vocabulary;
using features::WeightingScheme;
using testing::OracleDoc;
using testing::OracleFlavor;

namespace {

// A = {[x, x]}, B = {[y]}
struct TwoClass {
  Vocabulary vocab{std::vector<std::string>{"x", "y"}};
  std::vector<TrainingExample> tf{
      {features::vectorize({"x", "x"}, vocab, WeightingScheme::TermFrequency), "A"},
      {features::vectorize({"y"}, vocab, WeightingScheme::TermFrequency), "B"},
  };
};

std::vector<TrainingExample> examples_from(const std::vector<OracleDoc>& docs, const Vocabulary& vocab,
                                           WeightingScheme scheme) {
  std::vector<TrainingExample> out;
  for (const auto& d : docs) out.push_back({features::vectorize(d.tokens, vocab, scheme), d.label});
  return out;
}

}  // namespace

TEST_CASE("multinomial worked example") {
  TwoClass f;
  const auto m = train(Flavor::Multinomial, f.tf, f.vocab);
  CHECK(m.class_names() == std::vector<std::string>{"A", "B"});
  CHECK(std::exp(m.log_prob()[0][0]) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::exp(m.log_prob()[0][1]) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::exp(m.log_prob()[1][0]) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(std::exp(m.log_prob()[1][1]) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(std::exp(m.log_prior()[0]) == doctest::Approx(0.5).epsilon(1e-12));

  const auto p = m.predict(features::vectorize({"x"}, f.vocab, WeightingScheme::TermFrequency));
  CHECK(p.label == "A");
  CHECK(p.log_posteriors[0] == doctest::Approx(std::log(0.5) + std::log(0.75)).epsilon(1e-12));
  CHECK(p.log_posteriors[1] == doctest::Approx(std::log(0.5) + std::log(1.0 / 3)).epsilon(1e-12));
  CHECK(p.posteriors[0] == doctest::Approx(0.75 / (0.75 + 1.0 / 3)).epsilon(1e-12));
}

TEST_CASE("bernoulli worked example") {
  TwoClass f;
  const auto m = train(Flavor::Bernoulli, f.tf, f.vocab);
  CHECK(std::exp(m.log_prob()[0][0]) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(std::exp(m.log_prob()[0][1]) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(std::exp(m.log_complement()[0][0]) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  for (const auto& row : m.log_prob()) {
    for (double lp : row) {
      CHECK(lp < 0.0);
      CHECK(std::exp(lp) > 0.0);
    }
  }
}

TEST_CASE("empty vector: multinomial is uniform, bernoulli is not") {
  TwoClass f;
  const auto mnb = train(Flavor::Multinomial, f.tf, f.vocab).predict({});
  CHECK(mnb.posteriors[0] == doctest::Approx(0.5));
  CHECK(mnb.label == "A");

  // A(1 doc): absent x,y -> (1/3)(2/3); B: (2/3)(1/3). Equal here, so make B
  // bigger to break the symmetry.
  std::vector<TrainingExample> ex = f.tf;
  ex.push_back({features::vectorize({"y"}, f.vocab, WeightingScheme::TermFrequency), "B"});
  const auto bnb = train(Flavor::Bernoulli, ex, f.vocab).predict({});
  CHECK(bnb.posteriors[0] != doctest::Approx(bnb.posteriors[1]));
  const auto mnb_unequal_priors = train(Flavor::Multinomial, ex, f.vocab).predict({});
  CHECK(mnb_unequal_priors.posteriors[1] == doctest::Approx(2.0 / 3));
}

TEST_CASE("single class gives posterior 1") {
  const Vocabulary vocab({"x", "y"});
  const std::vector<TrainingExample> ex{{features::vectorize({"x"}, vocab, WeightingScheme::TermFrequency), "only"}};
  for (Flavor fl : {Flavor::Bernoulli, Flavor::Multinomial}) {
    const auto p = train(fl, ex, vocab).predict(features::vectorize({"y", "y"}, vocab, WeightingScheme::TermFrequency));
    CHECK(p.label == "only");
    CHECK(p.posteriors[0] == 1.0);
  }
}

TEST_CASE("train and predict errors") {
  TwoClass f;
  CHECK_THROWS_AS(train(Flavor::Multinomial, f.tf, f.vocab, {"A", "B", "C"}), DataError);
  CHECK_THROWS_AS(train(Flavor::Multinomial, f.tf, Vocabulary{}), DataError);
  CHECK_THROWS_AS(train(Flavor::Multinomial, f.tf, f.vocab, {"A"}), InvalidArgument);
  const auto m = train(Flavor::Multinomial, f.tf, f.vocab);
  features::FeatureVector bad;
  bad.entries = {{5, 1}};
  CHECK_THROWS_AS(m.predict(bad), InvalidArgument);
  CHECK(parse_flavor("bernoulli") == Flavor::Bernoulli);
  CHECK_THROWS_AS(parse_flavor("gaussian"), InvalidArgument);
}

TEST_CASE("ties resolve to the first class") {
  const Vocabulary vocab({"x", "y"});
  const std::vector<TrainingExample> ex{
      {features::vectorize({"x"}, vocab, WeightingScheme::TermFrequency), "A"},
      {features::vectorize({"x"}, vocab, WeightingScheme::TermFrequency), "B"},
  };
  for (Flavor fl : {Flavor::Bernoulli, Flavor::Multinomial}) {
    CHECK(train(fl, ex, vocab).predict(features::vectorize({"x"}, vocab, WeightingScheme::TermFrequency)).label ==
          "A");
  }
}

TEST_CASE("multinomial count sensitivity fixture") {
  // Class A repeats "x" heavily; class B spreads over x, y, z. Under TF the
  // repeated x in the query points to A; under Binary only presence of
  // x, y, z remains and that looks like B.
  const std::vector<OracleDoc> docs{
      {{"x", "x", "x", "x", "x", "x"}, "A"},
      {{"x", "x"}, "A"},
      {{"x", "y", "z"}, "B"},
      {{"y", "z"}, "B"},
  };
  const Vocabulary vocab({"x", "y", "z"});
  const std::vector<std::string> query{"x", "x", "x", "x", "x", "y", "z"};
  const auto tf_model = train(Flavor::Multinomial, examples_from(docs, vocab, WeightingScheme::TermFrequency), vocab);
  const auto bin_model = train(Flavor::Multinomial, examples_from(docs, vocab, WeightingScheme::Binary), vocab);
  const auto tf_label = tf_model.predict(features::vectorize(query, vocab, WeightingScheme::TermFrequency)).label;
  const auto bin_label = bin_model.predict(features::vectorize(query, vocab, WeightingScheme::Binary)).label;
  CHECK(tf_label == "A");
  CHECK(bin_label == "B");
}

TEST_CASE("log-space predictions match the probability-space oracle") {
  const std::vector<std::string> terms{"p", "q", "r", "s"};
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n_classes = 1 + rng() % 3;
    std::vector<std::string> classes;
    for (std::size_t c = 0; c < n_classes; ++c) classes.push_back(std::string(1, static_cast<char>('A' + c)));
    const std::size_t n_docs = n_classes + rng() % (7 - n_classes);
    std::vector<OracleDoc> docs;
    for (std::size_t d = 0; d < n_docs; ++d) {
      OracleDoc doc;
      doc.label = classes[d < n_classes ? d : rng() % n_classes];
      for (std::size_t k = rng() % 6; k > 0; --k) doc.tokens.push_back(terms[rng() % terms.size()]);
      docs.push_back(doc);
    }
    docs[0].tokens.push_back(terms[rng() % terms.size()]);
    std::vector<std::string> query;
    for (std::size_t k = rng() % 6; k > 0; --k) query.push_back(terms[rng() % terms.size()]);

    const Vocabulary vocab = features::build_vocabulary([&] {
      std::vector<textprep::TokenList> lists;
      for (const auto& d : docs) lists.push_back(d.tokens);
      return lists;
    }());
    for (auto scheme : {WeightingScheme::TermFrequency, WeightingScheme::Binary}) {
      for (auto [flavor, oflavor] : {std::pair{Flavor::Multinomial, OracleFlavor::Multinomial},
                                     std::pair{Flavor::Bernoulli, OracleFlavor::Bernoulli}}) {
        const auto model = train(flavor, examples_from(docs, vocab, scheme), vocab, classes);
        const auto got = model.predict(features::vectorize(query, vocab, scheme));
        const auto want =
            testing::oracle_posteriors(docs, classes, query, oflavor, scheme == WeightingScheme::Binary);
        REQUIRE(got.posteriors.size() == want.posteriors.size());
        for (std::size_t c = 0; c < n_classes; ++c) {
          CHECK(std::abs(got.posteriors[c] - want.posteriors[c]) <= 1e-10 * want.posteriors[c]);
        }
        CHECK(std::accumulate(got.posteriors.begin(), got.posteriors.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("multinomial distributions and priors normalize") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> terms{"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<OracleDoc> docs;
    for (int d = 0; d < 8; ++d) {
      OracleDoc doc{{}, d < 3 ? std::string(1, static_cast<char>('A' + d)) : std::string(1, static_cast<char>('A' + rng() % 3))};
      for (std::size_t k = 1 + rng() % 10; k > 0; --k) doc.tokens.push_back(terms[rng() % terms.size()]);
      docs.push_back(doc);
    }
    std::vector<textprep::TokenList> lists;
    for (const auto& d : docs) lists.push_back(d.tokens);
    const Vocabulary vocab = features::build_vocabulary(lists);
    const auto m = train(Flavor::Multinomial, examples_from(docs, vocab, WeightingScheme::TermFrequency), vocab);
    double prior_sum = 0;
    for (double lp : m.log_prior()) prior_sum += std::exp(lp);
    CHECK(prior_sum == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& row : m.log_prob()) {
      double s = 0;
      for (double lp : row) s += std::exp(lp);
      CHECK(std::abs(s - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("duplicating training data keeps priors and rescales smoothed counts") {
  // Laplace smoothing is not scale-invariant, so labels may move; priors may not.
  std::mt19937_64 rng(13);
  const std::vector<std::string> terms{"a", "b", "c", "d"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<OracleDoc> docs;
    for (int d = 0; d < 6; ++d) {
      OracleDoc doc{{}, d < 2 ? std::string(1, static_cast<char>('A' + d)) : std::string(1, static_cast<char>('A' + rng() % 2))};
      for (std::size_t k = 1 + rng() % 5; k > 0; --k) doc.tokens.push_back(terms[rng() % terms.size()]);
      docs.push_back(doc);
    }
    const Vocabulary vocab({"a", "b", "c", "d"});
    const auto once = examples_from(docs, vocab, WeightingScheme::TermFrequency);
    constexpr int k = 3;
    std::vector<TrainingExample> repeated;
    for (int r = 0; r < k; ++r) repeated.insert(repeated.end(), once.begin(), once.end());
    const auto m1 = train(Flavor::Multinomial, once, vocab);
    const auto mk = train(Flavor::Multinomial, repeated, vocab);
    REQUIRE(m1.class_names() == mk.class_names());
    for (std::size_t c = 0; c < m1.class_names().size(); ++c) {
      CHECK(mk.log_prior()[c] == doctest::Approx(m1.log_prior()[c]).epsilon(1e-14));
      std::vector<double> counts(terms.size(), 0.0);
      for (const auto& doc : docs) {
        if (doc.label != m1.class_names()[c]) continue;
        for (const auto& t : doc.tokens) counts[*vocab.index_of(t)] += 1.0;
      }
      const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const double expected = (k * counts[t] + 1.0) / (k * total + static_cast<double>(terms.size()));
        CHECK(std::exp(mk.log_prob()[c][t]) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("bernoulli binarizes its inputs") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> terms{"a", "b", "c"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<OracleDoc> docs;
    for (int d = 0; d < 5; ++d) {
      OracleDoc doc{{}, d < 2 ? std::string(1, static_cast<char>('A' + d)) : std::string(1, static_cast<char>('A' + rng() % 2))};
      for (std::size_t k = 1 + rng() % 6; k > 0; --k) doc.tokens.push_back(terms[rng() % terms.size()]);
      docs.push_back(doc);
    }
    const Vocabulary vocab({"a", "b", "c"});
    const auto from_tf = train(Flavor::Bernoulli, examples_from(docs, vocab, WeightingScheme::TermFrequency), vocab);
    const auto from_bin = train(Flavor::Bernoulli, examples_from(docs, vocab, WeightingScheme::Binary), vocab);
    CHECK(from_tf == from_bin);
    const std::vector<std::string> query{"a", "a", "c"};
    const auto p_tf = from_tf.predict(features::vectorize(query, vocab, WeightingScheme::TermFrequency));
    const auto p_bin = from_bin.predict(features::vectorize(query, vocab, WeightingScheme::Binary));
    CHECK(p_tf.label == p_bin.label);
    CHECK(p_tf.posteriors == p_bin.posteriors);
  }
}

TEST_CASE("training is deterministic to the bit") {
  TwoClass f;
  for (Flavor fl : {Flavor::Bernoulli, Flavor::Multinomial}) {
    CHECK(train(fl, f.tf, f.vocab) == train(fl, f.tf, f.vocab));
  }
}

TEST_CASE("model files round-trip bit-identically") {
  const std::vector<OracleDoc> docs{{{"x", "x", "y"}, "الصحة"}, {{"z"}, "رياضة"}, {{"y", "z", "z"}, "رياضة"}};
  const Vocabulary vocab({"x", "y", "z"});
  for (Flavor fl : {Flavor::Bernoulli, Flavor::Multinomial}) {
    const auto m = train(fl, examples_from(docs, vocab, WeightingScheme::TermFrequency), vocab);
    std::stringstream buf;
    save_model(m, buf);
    const auto loaded = load_model(buf);
    CHECK(loaded == m);
    const auto v = features::vectorize({"x", "z", "z"}, vocab, WeightingScheme::TermFrequency);
    CHECK(loaded.predict(v).log_posteriors == m.predict(v).log_posteriors);

    testing::TempDir dir;
    save_model(m, dir.path() / "model.txt");
    CHECK(load_model(dir.path() / "model.txt", vocab) == m);
    CHECK_THROWS_AS(load_model(dir.path() / "model.txt", Vocabulary({"w", "x", "y"})), DataError);
  }
}

TEST_CASE("malformed model files are rejected") {
  std::stringstream wrong_magic("not-a-model 1\n");
  CHECK_THROWS_AS(load_model(wrong_magic), DataError);
  std::stringstream truncated("arabtc-nb-model 1\nflavor multinomial\nvocab_size 2\n");
  CHECK_THROWS_AS(load_model(truncated), DataError);
  std::stringstream future("arabtc-nb-model 99\n");
  CHECK_THROWS_AS(load_model(future), DataError);
}
