#ifndef SENTIMARK_CALENDAR_HPP
#define SENTIMARK_CALENDAR_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace sentimark {

// Wall-clock instant in Japan local time (UTC+9). Timestamps that arrive
// with an explicit offset are converted on parse; naked timestamps are
// taken as JST already.
struct CivilDateTime {
    int year = 0;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;

    bool operator==(const CivilDateTime&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

// Accepts YYYY-MM-DD with optional [T ]HH:MM[:SS] and optional trailing
// Z or +HH:MM / -HH:MM offset. Throws Errc::BadTimestamp.
CivilDateTime parse_timestamp(std::string_view s);

// Half-month time unit. A regular month splits at day 15/16; March 2011
// instead splits at the disaster date into Mar 1-10 and Mar 11-31, so
// (2011, 3) never carries H1/H2.
enum class Half : std::uint8_t { H1, H2, Mar11Pre, Mar11Post };

struct HalfMonthBucket {
    int year = 0;
    int month = 1;
    Half half = Half::H1;

    bool operator==(const HalfMonthBucket&) const = default;

    // Total order over valid buckets: two per month, everywhere.
    int order_key() const;
};

bool operator<(const HalfMonthBucket& a, const HalfMonthBucket& b);
bool operator<=(const HalfMonthBucket& a, const HalfMonthBucket& b);

bool valid_bucket(const HalfMonthBucket& b);

// First/last covered day-of-month.
int bucket_first_day(const HalfMonthBucket& b);
int bucket_last_day(const HalfMonthBucket& b);

HalfMonthBucket next_bucket(const HalfMonthBucket& b);

HalfMonthBucket bucket_of(const CivilDateTime& t);
HalfMonthBucket bucket_of_date(int year, int month, int day);

bool in_study_range(const HalfMonthBucket& b, const HalfMonthBucket& start,
                    const HalfMonthBucket& end);

// "2011-04-H2", "2011-03-PRE", "2011-03-POST"
std::string format_bucket(const HalfMonthBucket& b);
HalfMonthBucket parse_bucket(std::string_view s);  // throws Errc::ParseError

}  // namespace sentimark

#endif
