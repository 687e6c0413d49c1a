#pragma once

#include <string>
#include <string_view>
#include <vector>

// Thin wrappers over ICU so the rest of the library works on UTF-8
// std::string and char32_t code points only.
namespace stylo::unicode {

bool is_valid_utf8(std::string_view s);

/// Decodes UTF-8; throws InputError on malformed input.
std::u32string decode(std::string_view s);
void append_utf8(std::string& out, char32_t cp);
std::string encode(std::u32string_view s);

std::string nfc(std::string_view s);
std::string nfd(std::string_view s);
/// NFC followed by full Unicode case folding (then NFC again).
std::string fold_case(std::string_view s);
std::string to_upper(std::string_view s);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_upper(char32_t cp);
/// Nonspacing / enclosing / spacing combining marks.
bool is_mark(char32_t cp);
char32_t to_lower(char32_t cp);

}  // namespace stylo::unicode
