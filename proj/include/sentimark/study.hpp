#ifndef SENTIMARK_STUDY_HPP
#define SENTIMARK_STUDY_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentimark/calendar.hpp"
#include "sentimark/numerics.hpp"
#include "sentimark/partition.hpp"
#include "sentimark/sentiment.hpp"

namespace sentimark {

struct SeriesPoint {
    double mean_score = 0.0;
    long long n_docs = 0;
};

// Half-month mean sentiment per dataset. Buckets with no member documents
// are absent, never zero.
struct SentimentSeries {
    Dataset dataset = Dataset::D1;
    std::map<HalfMonthBucket, SeriesPoint> points;
};

// Scores and labels are indexed identically (corpus order); accumulation
// runs in that order so results do not depend on the scoring parallelism.
SentimentSeries bucket_mean_series(const std::vector<ScoredDocument>& scores,
                                   const std::vector<PartitionLabel>& labels,
                                   Dataset dataset);

// One-month publication lag: same half, month + 1. Split March buckets
// have no market counterpart (throws SplitBucket).
HalfMonthBucket lag_align(const HalfMonthBucket& fb_bucket);
// Inverse mapping: market bucket -> the Facebook bucket feeding it.
HalfMonthBucket market_to_fb(const HalfMonthBucket& market_bucket);

enum class BodyType { LR, LC, LT, LO };
inline constexpr std::array<BodyType, 4> kAllBodyTypes = {BodyType::LR, BodyType::LC,
                                                          BodyType::LT, BodyType::LO};
const char* body_type_name(BodyType b);
BodyType parse_body_type(std::string_view s);

enum class Fuel { Gasoline, Diesel, GasHybrid, Ev, Other };
const char* fuel_name(Fuel f);
Fuel parse_fuel(std::string_view s);

struct CarListing {
    std::string listing_id;
    BodyType body_type = BodyType::LR;
    double nominal_price = 0.0;  // yen
    HalfMonthBucket issue_bucket;
    bool transmission_automatic = false;
    Fuel fuel = Fuel::Gasoline;
    double age_years = 0.0;
    bool over_100k_km = false;
};

// CSV: listing_id,body_type,nominal_price,issue_year,issue_month,issue_half,
//      transmission,fuel,age_years,over_100k_km
std::vector<CarListing> load_listings(const std::string& path,
                                      const HalfMonthBucket& market_start,
                                      const HalfMonthBucket& market_end);

// (year, month) -> automobile CPI index, base fiscal 2015 = 100.
struct DeflatorTable {
    std::map<std::pair<int, int>, double> index;

    static DeflatorTable load(const std::string& path);  // CSV year,month,index
    double at(int year, int month) const;  // throws MissingDeflator
};

// nominal * 100 / index(year, month)
double deflate_price(double nominal, const HalfMonthBucket& issue_bucket,
                     const DeflatorTable& deflators);

// Control periods of the price model (first-half July, second-half August,
// first-half September 2011).
inline constexpr int kRegressorCount = 12;
extern const std::array<const char*, kRegressorCount> kRegressorNames;
extern const std::array<HalfMonthBucket, 3> kControlPeriods;

struct DesignMatrix {
    LeastSquaresProblem problem;          // columns in kRegressorNames order
    std::vector<std::string> row_ids;     // listing ids, row order
    long long dropped_no_sentiment = 0;   // listings without a lagged S point
};

// One body type per call. Listings whose lagged Facebook bucket has no
// series point (or lies outside fb_range) are dropped and counted.
DesignMatrix build_design(const std::vector<CarListing>& listings,
                          const SentimentSeries& series,
                          const DeflatorTable& deflators,
                          const HalfMonthBucket& fb_start,
                          const HalfMonthBucket& fb_end);

struct RegressorResult {
    std::string name;
    bool dropped = false;  // all-zero column removed before the fit
    double coef = 0.0;
    double se = 0.0;
    double t = 0.0;
    double p = 1.0;
    std::string stars;  // "**" p<.01, "*" p<.05, "" otherwise
};

struct ResidualSummary {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct FitResult {
    Dataset dataset = Dataset::D1;
    BodyType body_type = BodyType::LR;
    size_t n = 0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double sigma2 = 0.0;
    std::vector<RegressorResult> regressors;
    ResidualSummary residuals;
    long long dropped_listings = 0;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
    const RegressorResult* find(std::string_view name) const;
};

std::string stars_for_p(double p);

// Fits one grid cell; all-zero dummy columns are removed first and marked
// dropped in the result.
FitResult fit_cell(Dataset dataset, BodyType body, const DesignMatrix& design);

// 4 datasets x body types present in the listings. Cells are independent
// and run in parallel; a failed cell carries its error, the grid survives.
std::vector<FitResult> run_study(const std::array<SentimentSeries, 4>& series,
                                 const std::vector<CarListing>& listings,
                                 const DeflatorTable& deflators,
                                 const HalfMonthBucket& fb_start,
                                 const HalfMonthBucket& fb_end, int threads = 0);

}  // namespace sentimark

#endif
