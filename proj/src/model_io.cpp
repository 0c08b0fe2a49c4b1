#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "arabtc/classify.hpp"
#include "arabtc/error.hpp"

// Layout (UTF-8 text, one record per line):
//
//   arabtc-nb-model 1
//   flavor <bernoulli|multinomial>
//   vocab_size <n>
//   vocab_fingerprint <16 hex digits>
//   classes <k>
//   class <name>                       (k lines, canonical order)
//   prior <k hex floats>
//   prob <n hex floats>                (k lines)
//   complement <n hex floats>          (k lines, Bernoulli only)
//   end

namespace arabtc::classify {

namespace {

constexpr std::string_view kMagic = "arabtc-nb-model";
constexpr int kVersion = 1;

void write_row(std::ostream& out, std::string_view tag, const std::vector<double>& row) {
  out << tag;
  char buf[64];
  for (double v : row) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
    out << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
  }
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next line split into its tag and the remainder after one space.
  std::string expect(std::string_view tag) {
    std::string line;
    ++line_no_;
    if (!std::getline(in_, line)) fail("unexpected end of file, wanted '" + std::string(tag) + "'");
    if (!line.starts_with(tag) || (line.size() > tag.size() && line[tag.size()] != ' ')) {
      fail("expected '" + std::string(tag) + "'");
    }
    return line.size() > tag.size() ? line.substr(tag.size() + 1) : std::string();
  }

  std::size_t expect_count(std::string_view tag) {
    const std::string v = expect(tag);
    std::size_t n = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) fail("bad integer");
    return n;
  }

  std::vector<double> expect_row(std::string_view tag, std::size_t n) {
    const std::string v = expect(tag);
    std::vector<double> row;
    row.reserve(n);
    const char* p = v.data();
    const char* end = v.data() + v.size();
    while (p < end) {
      if (*p == ' ') {
        ++p;
        continue;
      }
      double d = 0;
      const auto res = std::from_chars(p, end, d, std::chars_format::hex);
      if (res.ec != std::errc()) fail("bad number");
      row.push_back(d);
      p = res.ptr;
    }
    if (row.size() != n) fail("wrong number of values");
    return row;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("model file line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

void save_model(const NaiveBayesModel& model, std::ostream& out) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "flavor " << to_string(model.flavor()) << '\n';
  out << "vocab_size " << model.vocab_size() << '\n';
  char fp[17];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(model.vocab_fingerprint()));
  out << "vocab_fingerprint " << fp << '\n';
  out << "classes " << model.class_names().size() << '\n';
  for (const auto& name : model.class_names()) out << "class " << name << '\n';
  write_row(out, "prior", model.log_prior());
  for (const auto& row : model.log_prob()) write_row(out, "prob", row);
  for (const auto& row : model.log_complement()) write_row(out, "complement", row);
  out << "end\n";
}

NaiveBayesModel load_model(std::istream& in) {
  Reader r(in);
  if (r.expect(kMagic) != std::to_string(kVersion)) r.fail("unsupported model version");
  NaiveBayesModel m;
  try {
    m.flavor_ = parse_flavor(r.expect("flavor"));
  } catch (const InvalidArgument&) {
    r.fail("unknown flavor");
  }
  m.vocab_size_ = r.expect_count("vocab_size");
  {
    const std::string v = r.expect("vocab_fingerprint");
    const auto res = std::from_chars(v.data(), v.data() + v.size(), m.vocab_fingerprint_, 16);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) r.fail("bad fingerprint");
  }
  const std::size_t k = r.expect_count("classes");
  for (std::size_t c = 0; c < k; ++c) m.class_names_.push_back(r.expect("class"));
  if (k == 0 || !std::is_sorted(m.class_names_.begin(), m.class_names_.end()) ||
      std::adjacent_find(m.class_names_.begin(), m.class_names_.end()) != m.class_names_.end()) {
    r.fail("class names must be non-empty, sorted and unique");
  }
  m.log_prior_ = r.expect_row("prior", k);
  for (std::size_t c = 0; c < k; ++c) m.log_prob_.push_back(r.expect_row("prob", m.vocab_size_));
  if (m.flavor_ == Flavor::Bernoulli) {
    for (std::size_t c = 0; c < k; ++c) m.log_complement_.push_back(r.expect_row("complement", m.vocab_size_));
  }
  r.expect("end");
  m.finalize();
  return m;
}

void save_model(const NaiveBayesModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path.string());
  save_model(model, out);
  if (!out) throw DataError("failed writing model file: " + path.string());
}

NaiveBayesModel load_model(const std::filesystem::path& path, const features::Vocabulary& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read model file: " + path.string());
  NaiveBayesModel m = load_model(in);
  if (m.vocab_size() != vocab.size() || m.vocab_fingerprint() != vocab.fingerprint()) {
    throw DataError("model file " + path.string() + " was trained against a different vocabulary");
  }
  return m;
}

}  // namespace arabtc::classify
