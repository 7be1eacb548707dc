#ifndef SENTIMARK_UNICODE_HPP
#define SENTIMARK_UNICODE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace sentimark {

// Decodes the code point starting at byte offset pos; advances pos past it.
// Malformed bytes decode as U+FFFD, advancing one byte.
char32_t decode_utf8(std::string_view s, size_t& pos);

void append_utf8(std::string& out, char32_t cp);

size_t codepoint_length(std::string_view s);

// Canonical composition limited to the kana voiced/semi-voiced marks
// (U+3099 / U+309A), the decomposition that actually occurs in Japanese
// social-media text. Everything else passes through unchanged; inputs are
// expected to be NFC otherwise.
std::string nfc_normalize(std::string_view s);

std::string trim(std::string_view s);

}  // namespace sentimark

#endif
