#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace k12::utf8 {

// Decodes UTF-8 into code points. Invalid byte sequences decode to U+FFFD
// and consume one byte, so arbitrary binary input never throws.
std::vector<char32_t> decode(std::string_view s);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Character classes follow the Unicode general categories (tables generated
// from unicodedata, see scripts/gen_unicode_tables.py).
bool is_whitespace(char32_t cp); // \t \n \r \f \v, Zs
bool is_control(char32_t cp);    // Cc/Cf minus the whitespace controls
bool is_punct(char32_t cp);      // ASCII symbol ranges plus category P*
bool is_combining_mark(char32_t cp);
bool is_cjk(char32_t cp);        // CJK ideograph blocks

bool is_ascii_digit(char32_t cp);
bool is_ascii_alpha(char32_t cp);

// Single-base NFD decomposition for precomposed Latin letters
// (Latin-1 Supplement through Latin Extended-B). Returns the base letter,
// or the input unchanged when it has no such decomposition.
char32_t strip_accent(char32_t cp);

// ASCII plus Latin-1/Latin Extended-A lowercasing; other scripts unchanged.
char32_t to_lower(char32_t cp);

std::string lower_ascii(std::string_view s);

} // namespace k12::utf8
