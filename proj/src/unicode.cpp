#include "stylo/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "stylo/error.hpp"

namespace stylo::unicode {
namespace {

icu::UnicodeString to_icu(std::string_view s) {
  if (!is_valid_utf8(s)) throw InputError("invalid UTF-8 text");
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string from_icu(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFC normalizer unavailable");
  return *n;
}

const icu::Normalizer2& nfd_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFD normalizer unavailable");
  return *n;
}

std::string normalize(const icu::Normalizer2& norm, const icu::UnicodeString& u) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = norm.normalize(u, status);
  if (U_FAILURE(status)) throw Error("Unicode normalization failed");
  return from_icu(out);
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c = 0;
    U8_NEXT(p, i, n, c);
    if (c < 0) return false;
  }
  return true;
}

std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c = 0;
    U8_NEXT(p, i, n, c);
    if (c < 0) throw InputError("invalid UTF-8 text");
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) throw InputError("cannot encode code point as UTF-8");
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append_utf8(out, cp);
  return out;
}

std::string nfc(std::string_view s) { return normalize(nfc_instance(), to_icu(s)); }

std::string nfd(std::string_view s) { return normalize(nfd_instance(), to_icu(s)); }

std::string fold_case(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString u = nfc_instance().normalize(to_icu(s), status);
  if (U_FAILURE(status)) throw Error("Unicode normalization failed");
  u.foldCase();
  return normalize(nfc_instance(), u);
}

std::string to_upper(std::string_view s) {
  icu::UnicodeString u = to_icu(s);
  u.toUpper(icu::Locale::getRoot());
  return from_icu(u);
}

bool is_letter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)) != 0; }
bool is_digit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)) != 0; }
bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }
bool is_upper(char32_t cp) { return u_isUUppercase(static_cast<UChar32>(cp)) != 0; }

bool is_mark(char32_t cp) {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
  return (mask & U_GC_M_MASK) != 0;
}

char32_t to_lower(char32_t cp) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))); }

}  // namespace stylo::unicode
