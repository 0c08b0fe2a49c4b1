#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace arabtc::textprep {

using TokenList = std::vector<std::string>;

/// Folds orthographic variance out of Arabic text:
///   - tashkeel U+064B..U+0652 and superscript alef U+0670 are removed
///   - tatweel U+0640 is removed
///   - alef variants U+0622 U+0623 U+0625 U+0671 fold to bare alef U+0627
///   - alef maqsura U+0649 folds to yeh U+064A
///   - teh marbuta U+0629 folds to heh U+0647
/// Everything else passes through. Throws InvalidArgument on invalid UTF-8.
std::string normalize(std::string_view text);

/// True for the base Arabic letters U+0621..U+063A and U+0641..U+064A.
bool is_arabic_letter(char32_t cp) noexcept;

/// Splits on every code point that is not an Arabic letter. Runs of Latin
/// letters, digits, and punctuation therefore never form tokens.
TokenList tokenize(std::string_view normalized_text);

/// Set of normalized stop words.
class Stoplist {
 public:
  Stoplist() = default;

  // Entries are normalized on insertion.
  explicit Stoplist(const std::vector<std::string>& terms);

  /// One term per line, '#' starts a comment line, blank lines ignored.
  static Stoplist parse(std::string_view content);
  /// Throws DataError when the file cannot be read.
  static Stoplist load(const std::filesystem::path& path);

  bool contains(std::string_view term) const { return terms_.find(term) != terms_.end(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::set<std::string, std::less<>>& terms() const noexcept { return terms_; }

 private:
  std::set<std::string, std::less<>> terms_;
};

/// Drops every token whose normalized form is in the stoplist; survivors keep
/// their order.
TokenList remove_stopwords(TokenList tokens, const Stoplist& stoplist);

/// Ordered prefix and suffix lists for the light stemmer. List order is strip
/// priority.
struct AffixTables {
  std::vector<std::u32string> prefixes;
  std::vector<std::u32string> suffixes;

  /// prefixes: وال فال بال كال ال لل و
  /// suffixes: ها ان ات ون ين يه يا ه ي ا
  static AffixTables defaults();

  /// Sections `[prefixes]` and `[suffixes]`, one affix per line, '#' comment
  /// lines. Affixes are normalized on load. Throws DataError on malformed
  /// content or an unreadable file.
  static AffixTables parse(std::string_view content);
  static AffixTables load(const std::filesystem::path& path);

  friend bool operator==(const AffixTables&, const AffixTables&) = default;
};

inline constexpr std::size_t kDefaultMinStemLength = 2;

/// Affix-stripping light stemmer.
///
/// One pass strips the first listed prefix that matches, then strips
/// suffixes (first listed match each time) until none applies. A strip that
/// would leave fewer than min_stem_length letters is skipped. Passes repeat
/// until the word stops changing, so stem(stem(w)) == stem(w) holds for
/// every input, including words that start with a prefix again once their
/// article is gone (الوزير -> وزير -> زير).
class LightStemmer {
 public:
  explicit LightStemmer(AffixTables tables = AffixTables::defaults(),
                        std::size_t min_stem_length = kDefaultMinStemLength);

  std::string stem(std::string_view token) const;
  std::u32string stem(std::u32string word) const;

  const AffixTables& tables() const noexcept { return tables_; }
  std::size_t min_stem_length() const noexcept { return min_length_; }

 private:
  bool single_pass(std::u32string& word) const;

  AffixTables tables_;
  std::size_t min_length_;
};

/// Stems with the default tables and minimum length.
std::string light_stem(std::string_view token);

struct TokenPipelineConfig {
  bool remove_stopwords = false;
  Stoplist stoplist;
  bool stem = true;
  LightStemmer stemmer;
};

/// stem-map(remove_stopwords?(tokenize(normalize(text)))), each stage toggled
/// by the config.
TokenList preprocess(std::string_view text, const TokenPipelineConfig& config);

}  // namespace arabtc::textprep
