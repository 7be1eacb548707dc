#include "sentimark/unicode.hpp"

#include <array>
#include <cctype>

namespace sentimark {

char32_t decode_utf8(std::string_view s, size_t& pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    auto cont = [&](size_t i) {
        return pos + i < s.size() &&
               (static_cast<unsigned char>(s[pos + i]) & 0xC0u) == 0x80u;
    };
    auto bits = [&](size_t i) {
        return static_cast<char32_t>(static_cast<unsigned char>(s[pos + i]) & 0x3Fu);
    };
    if (b0 < 0x80u) {
        ++pos;
        return b0;
    }
    if ((b0 & 0xE0u) == 0xC0u && cont(1)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x1Fu) << 6) | bits(1);
        pos += 2;
        return cp;
    }
    if ((b0 & 0xF0u) == 0xE0u && cont(1) && cont(2)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x0Fu) << 12) | (bits(1) << 6) | bits(2);
        pos += 3;
        return cp;
    }
    if ((b0 & 0xF8u) == 0xF0u && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x07u) << 18) | (bits(1) << 12) |
                      (bits(2) << 6) | bits(3);
        pos += 4;
        return cp;
    }
    ++pos;
    return 0xFFFD;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

size_t codepoint_length(std::string_view s) {
    size_t pos = 0, n = 0;
    while (pos < s.size()) {
        decode_utf8(s, pos);
        ++n;
    }
    return n;
}

namespace {

constexpr char32_t kVoicedMark = 0x3099;
constexpr char32_t kSemiVoicedMark = 0x309A;

// base, base+voiced mark, base+semi-voiced mark (0 = no composition)
struct KanaRow {
    char32_t base;
    char32_t voiced;
    char32_t semi;
};

constexpr std::array<KanaRow, 48> kKanaTable = {{
    // hiragana
    {0x3046, 0x3094, 0},  // u -> vu
    {0x304B, 0x304C, 0}, {0x304D, 0x304E, 0}, {0x304F, 0x3050, 0},
    {0x3051, 0x3052, 0}, {0x3053, 0x3054, 0},
    {0x3055, 0x3056, 0}, {0x3057, 0x3058, 0}, {0x3059, 0x305A, 0},
    {0x305B, 0x305C, 0}, {0x305D, 0x305E, 0},
    {0x305F, 0x3060, 0}, {0x3061, 0x3062, 0}, {0x3064, 0x3065, 0},
    {0x3066, 0x3067, 0}, {0x3068, 0x3069, 0},
    {0x306F, 0x3070, 0x3071}, {0x3072, 0x3073, 0x3074}, {0x3075, 0x3076, 0x3077},
    {0x3078, 0x3079, 0x307A}, {0x307B, 0x307C, 0x307D},
    // katakana
    {0x30A6, 0x30F4, 0},  // U -> VU
    {0x30AB, 0x30AC, 0}, {0x30AD, 0x30AE, 0}, {0x30AF, 0x30B0, 0},
    {0x30B1, 0x30B2, 0}, {0x30B3, 0x30B4, 0},
    {0x30B5, 0x30B6, 0}, {0x30B7, 0x30B8, 0}, {0x30B9, 0x30BA, 0},
    {0x30BB, 0x30BC, 0}, {0x30BD, 0x30BE, 0},
    {0x30BF, 0x30C0, 0}, {0x30C1, 0x30C2, 0}, {0x30C4, 0x30C5, 0},
    {0x30C6, 0x30C7, 0}, {0x30C8, 0x30C9, 0},
    {0x30CF, 0x30D0, 0x30D1}, {0x30D2, 0x30D3, 0x30D4}, {0x30D5, 0x30D6, 0x30D7},
    {0x30D8, 0x30D9, 0x30DA}, {0x30DB, 0x30DC, 0x30DD},
    {0x30EF, 0x30F7, 0}, {0x30F0, 0x30F8, 0}, {0x30F1, 0x30F9, 0},
    {0x30F2, 0x30FA, 0},
    // iteration marks
    {0x309D, 0x309E, 0}, {0x30FD, 0x30FE, 0},
}};

char32_t compose_kana(char32_t base, char32_t mark) {
    for (const auto& row : kKanaTable) {
        if (row.base != base) continue;
        if (mark == kVoicedMark) return row.voiced;
        if (mark == kSemiVoicedMark) return row.semi;
    }
    return 0;
}

}  // namespace

std::string nfc_normalize(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t pos = 0;
    char32_t pending = 0;
    bool has_pending = false;
    while (pos < s.size()) {
        char32_t cp = decode_utf8(s, pos);
        if (has_pending && (cp == kVoicedMark || cp == kSemiVoicedMark)) {
            if (char32_t composed = compose_kana(pending, cp)) {
                pending = composed;
                continue;
            }
        }
        if (has_pending) append_utf8(out, pending);
        pending = cp;
        has_pending = true;
    }
    if (has_pending) append_utf8(out, pending);
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace sentimark
