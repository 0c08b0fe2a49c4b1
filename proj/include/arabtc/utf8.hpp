#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace arabtc::utf8 {

// Strict decoder: rejects overlong forms, surrogates, and code points above
// U+10FFFF. Returns nullopt on the first malformed sequence.
std::optional<std::u32string> decode(std::string_view bytes);

// Byte offset of the first malformed sequence, or nullopt if valid.
std::optional<std::size_t> first_invalid_offset(std::string_view bytes);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

// Number of code points; input is assumed valid.
std::size_t length(std::string_view bytes);

}  // namespace arabtc::utf8
