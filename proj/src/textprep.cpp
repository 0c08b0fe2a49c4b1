#include "arabtc/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "arabtc/error.hpp"
#include "arabtc/utf8.hpp"

namespace arabtc::textprep {

namespace {

constexpr char32_t kAlef = 0x0627;
constexpr char32_t kYeh = 0x064A;
constexpr char32_t kHeh = 0x0647;

bool dropped(char32_t cp) noexcept {
  return (cp >= 0x064B && cp <= 0x0652) || cp == 0x0670 || cp == 0x0640;
}

char32_t fold(char32_t cp) noexcept {
  switch (cp) {
    case 0x0622:  // alef with madda
    case 0x0623:  // alef with hamza above
    case 0x0625:  // alef with hamza below
    case 0x0671:  // alef wasla
      return kAlef;
    case 0x0649:  // alef maqsura
      return kYeh;
    case 0x0629:  // teh marbuta
      return kHeh;
    default:
      return cp;
  }
}

std::u32string decode_or_throw(std::string_view text) {
  auto decoded = utf8::decode(text);
  if (!decoded) throw InvalidArgument("text is not valid UTF-8");
  return std::move(*decoded);
}

std::u32string normalize32(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (!dropped(cp)) out.push_back(fold(cp));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  while (!content.empty()) {
    const auto nl = content.find('\n');
    const std::string_view line = content.substr(0, nl);
    ++line_no;
    const std::string_view t = trim(line);
    if (!t.empty() && t.front() != '#') fn(t, line_no);
    if (nl == std::string_view::npos) break;
    content.remove_prefix(nl + 1);
  }
}

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(std::string("cannot read ") + what + ": " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::u32string to_affix(std::string_view entry) {
  if (!utf8::decode(entry)) throw DataError("affix table entry is not valid UTF-8");
  return normalize32(decode_or_throw(entry));
}

}  // namespace

std::string normalize(std::string_view text) { return utf8::encode(normalize32(decode_or_throw(text))); }

bool is_arabic_letter(char32_t cp) noexcept {
  return (cp >= 0x0621 && cp <= 0x063A) || (cp >= 0x0641 && cp <= 0x064A);
}

TokenList tokenize(std::string_view normalized_text) {
  TokenList tokens;
  std::string current;
  for (char32_t cp : decode_or_throw(normalized_text)) {
    if (is_arabic_letter(cp)) {
      utf8::append(current, cp);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Stoplist::Stoplist(const std::vector<std::string>& terms) {
  for (const std::string& t : terms) terms_.insert(normalize(t));
}

Stoplist Stoplist::parse(std::string_view content) {
  if (!utf8::decode(content)) throw DataError("stop-word list is not valid UTF-8");
  Stoplist list;
  for_each_line(content, [&](std::string_view term, std::size_t) { list.terms_.insert(normalize(term)); });
  return list;
}

Stoplist Stoplist::load(const std::filesystem::path& path) {
  try {
    return parse(read_file(path, "stop-word list"));
  } catch (const DataError& e) {
    if (std::string_view(e.what()).starts_with("cannot read")) throw;
    throw DataError(std::string(e.what()) + ": " + path.string());
  }
}

TokenList remove_stopwords(TokenList tokens, const Stoplist& stoplist) {
  // Tokens from tokenize() are already normalized; the second lookup catches
  // callers that pass raw spellings.
  std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t) || stoplist.contains(normalize(t)); });
  return tokens;
}

AffixTables AffixTables::defaults() {
  return AffixTables{
      {U"وال", U"فال", U"بال", U"كال", U"ال", U"لل", U"و"},
      {U"ها", U"ان", U"ات", U"ون", U"ين", U"يه", U"يا", U"ه", U"ي", U"ا"},
  };
}

AffixTables AffixTables::parse(std::string_view content) {
  AffixTables tables;
  std::vector<std::u32string>* section = nullptr;
  for_each_line(content, [&](std::string_view entry, std::size_t line_no) {
    if (entry == "[prefixes]") {
      section = &tables.prefixes;
    } else if (entry == "[suffixes]") {
      section = &tables.suffixes;
    } else if (entry.front() == '[') {
      throw DataError("affix table line " + std::to_string(line_no) + ": unknown section " + std::string(entry));
    } else if (section == nullptr) {
      throw DataError("affix table line " + std::to_string(line_no) + ": entry outside a section");
    } else {
      std::u32string affix = to_affix(entry);
      if (affix.empty()) throw DataError("affix table line " + std::to_string(line_no) + ": empty affix");
      section->push_back(std::move(affix));
    }
  });
  return tables;
}

AffixTables AffixTables::load(const std::filesystem::path& path) {
  try {
    return parse(read_file(path, "affix table"));
  } catch (const DataError& e) {
    if (std::string_view(e.what()).starts_with("cannot read")) throw;
    throw DataError(std::string(e.what()) + ": " + path.string());
  }
}

LightStemmer::LightStemmer(AffixTables tables, std::size_t min_stem_length)
    : tables_(std::move(tables)), min_length_(min_stem_length) {
  if (min_length_ < 1) throw InvalidArgument("min_stem_length must be >= 1");
}

bool LightStemmer::single_pass(std::u32string& word) const {
  const std::size_t before = word.size();
  if (word.size() <= min_length_) return false;

  for (const std::u32string& p : tables_.prefixes) {
    if (word.size() >= p.size() + min_length_ && word.starts_with(p)) {
      word.erase(0, p.size());
      break;
    }
  }
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (const std::u32string& s : tables_.suffixes) {
      if (word.size() >= s.size() + min_length_ && word.ends_with(s)) {
        word.resize(word.size() - s.size());
        stripped = true;
        break;
      }
    }
  }
  return word.size() != before;
}

std::u32string LightStemmer::stem(std::u32string word) const {
  while (single_pass(word)) {
  }
  return word;
}

std::string LightStemmer::stem(std::string_view token) const {
  return utf8::encode(stem(decode_or_throw(token)));
}

std::string light_stem(std::string_view token) {
  static const LightStemmer stemmer;
  return stemmer.stem(token);
}

TokenList preprocess(std::string_view text, const TokenPipelineConfig& config) {
  TokenList tokens = tokenize(normalize(text));
  if (config.remove_stopwords) tokens = remove_stopwords(std::move(tokens), config.stoplist);
  if (config.stem) {
    for (std::string& t : tokens) t = config.stemmer.stem(std::string_view(t));
  }
  return tokens;
}

}  // namespace arabtc::textprep
