#include "sentimark/calendar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "sentimark/errors.hpp"

namespace sentimark {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return kDays[month - 1];
}

namespace {

// Days since 1970-01-01 (proleptic Gregorian), Hinnant's algorithm.
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yy = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

struct Cursor {
    std::string_view s;
    size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    // Fixed-width unsigned integer field.
    bool number(int width, int& out) {
        if (pos + width > s.size()) return false;
        int v = 0;
        for (int i = 0; i < width; ++i) {
            char c = s[pos + i];
            if (c < '0' || c > '9') return false;
            v = v * 10 + (c - '0');
        }
        out = v;
        pos += width;
        return true;
    }
};

[[noreturn]] void bad_timestamp(std::string_view s) {
    fail(Errc::BadTimestamp, "cannot parse timestamp '" + std::string(s) + "'");
}

}  // namespace

CivilDateTime parse_timestamp(std::string_view s) {
    Cursor c{s};
    CivilDateTime t;
    if (!c.number(4, t.year) || !c.eat('-') || !c.number(2, t.month) ||
        !c.eat('-') || !c.number(2, t.day)) {
        bad_timestamp(s);
    }
    if (t.month < 1 || t.month > 12 || t.day < 1 ||
        t.day > days_in_month(t.year, t.month)) {
        bad_timestamp(s);
    }
    int offset_minutes = 9 * 60;  // assume JST when no offset is given
    if (!c.done()) {
        if (!c.eat('T') && !c.eat(' ')) bad_timestamp(s);
        if (!c.number(2, t.hour) || !c.eat(':') || !c.number(2, t.minute)) {
            bad_timestamp(s);
        }
        if (c.eat(':')) {
            if (!c.number(2, t.second)) bad_timestamp(s);
        }
        if (t.hour > 23 || t.minute > 59 || t.second > 59) bad_timestamp(s);
        if (!c.done()) {
            if (c.eat('Z')) {
                offset_minutes = 0;
            } else {
                int sign = 0;
                if (c.eat('+')) sign = 1;
                else if (c.eat('-')) sign = -1;
                else bad_timestamp(s);
                int oh = 0, om = 0;
                if (!c.number(2, oh) || !c.eat(':') || !c.number(2, om)) {
                    bad_timestamp(s);
                }
                offset_minutes = sign * (oh * 60 + om);
            }
            if (!c.done()) bad_timestamp(s);
        }
    }
    // Shift to JST when the source offset differs.
    int delta = 9 * 60 - offset_minutes;
    if (delta != 0) {
        long long total = days_from_civil(t.year, t.month, t.day) * 1440LL +
                          t.hour * 60LL + t.minute + delta;
        long long days = total / 1440;
        long long mins = total % 1440;
        if (mins < 0) {
            mins += 1440;
            --days;
        }
        civil_from_days(days, t.year, t.month, t.day);
        t.hour = static_cast<int>(mins / 60);
        t.minute = static_cast<int>(mins % 60);
    }
    return t;
}

int HalfMonthBucket::order_key() const {
    int rank = (half == Half::H2 || half == Half::Mar11Post) ? 1 : 0;
    return year * 24 + (month - 1) * 2 + rank;
}

bool operator<(const HalfMonthBucket& a, const HalfMonthBucket& b) {
    return a.order_key() < b.order_key();
}

bool operator<=(const HalfMonthBucket& a, const HalfMonthBucket& b) {
    return a.order_key() <= b.order_key();
}

bool valid_bucket(const HalfMonthBucket& b) {
    if (b.month < 1 || b.month > 12) return false;
    bool split_month = (b.year == 2011 && b.month == 3);
    bool split_half = (b.half == Half::Mar11Pre || b.half == Half::Mar11Post);
    return split_month == split_half;
}

int bucket_first_day(const HalfMonthBucket& b) {
    switch (b.half) {
        case Half::H1:
        case Half::Mar11Pre:
            return 1;
        case Half::H2:
            return 16;
        case Half::Mar11Post:
            return 11;
    }
    return 1;
}

int bucket_last_day(const HalfMonthBucket& b) {
    switch (b.half) {
        case Half::H1:
            return 15;
        case Half::Mar11Pre:
            return 10;
        case Half::H2:
        case Half::Mar11Post:
            return days_in_month(b.year, b.month);
    }
    return days_in_month(b.year, b.month);
}

HalfMonthBucket next_bucket(const HalfMonthBucket& b) {
    if (b.half == Half::H1 || b.half == Half::Mar11Pre) {
        Half second = (b.year == 2011 && b.month == 3) ? Half::Mar11Post : Half::H2;
        return {b.year, b.month, second};
    }
    int year = b.year;
    int month = b.month + 1;
    if (month > 12) {
        month = 1;
        ++year;
    }
    Half first = (year == 2011 && month == 3) ? Half::Mar11Pre : Half::H1;
    return {year, month, first};
}

HalfMonthBucket bucket_of_date(int year, int month, int day) {
    if (year == 2011 && month == 3) {
        return {year, month, day <= 10 ? Half::Mar11Pre : Half::Mar11Post};
    }
    return {year, month, day <= 15 ? Half::H1 : Half::H2};
}

HalfMonthBucket bucket_of(const CivilDateTime& t) {
    return bucket_of_date(t.year, t.month, t.day);
}

bool in_study_range(const HalfMonthBucket& b, const HalfMonthBucket& start,
                    const HalfMonthBucket& end) {
    return start <= b && b <= end;
}

std::string format_bucket(const HalfMonthBucket& b) {
    const char* tag = nullptr;
    switch (b.half) {
        case Half::H1: tag = "H1"; break;
        case Half::H2: tag = "H2"; break;
        case Half::Mar11Pre: tag = "PRE"; break;
        case Half::Mar11Post: tag = "POST"; break;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%s", b.year, b.month, tag);
    return buf;
}

HalfMonthBucket parse_bucket(std::string_view s) {
    Cursor c{s};
    HalfMonthBucket b;
    if (!c.number(4, b.year) || !c.eat('-') || !c.number(2, b.month) || !c.eat('-')) {
        fail(Errc::ParseError, "bad bucket literal '" + std::string(s) + "'");
    }
    std::string_view tag = s.substr(c.pos);
    if (tag == "H1") b.half = Half::H1;
    else if (tag == "H2") b.half = Half::H2;
    else if (tag == "PRE") b.half = Half::Mar11Pre;
    else if (tag == "POST") b.half = Half::Mar11Post;
    else fail(Errc::ParseError, "bad bucket literal '" + std::string(s) + "'");
    if (!valid_bucket(b)) {
        fail(Errc::ParseError, "invalid bucket '" + std::string(s) +
                                   "' (split halves exist only in 2011-03)");
    }
    return b;
}

}  // namespace sentimark
