#include "sentimark/study.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sentimark/csv.hpp"
#include "sentimark/errors.hpp"

namespace sentimark {

SentimentSeries bucket_mean_series(const std::vector<ScoredDocument>& scores,
                                   const std::vector<PartitionLabel>& labels,
                                   Dataset dataset) {
    if (scores.size() != labels.size()) {
        fail(Errc::Internal, "scores/labels size mismatch");
    }
    std::map<HalfMonthBucket, std::pair<double, long long>> acc;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i].in(dataset)) continue;
        auto& [sum, n] = acc[scores[i].bucket];
        sum += scores[i].score;
        ++n;
    }
    SentimentSeries series;
    series.dataset = dataset;
    for (const auto& [bucket, sn] : acc) {
        series.points[bucket] = {sn.first / static_cast<double>(sn.second), sn.second};
    }
    return series;
}

HalfMonthBucket lag_align(const HalfMonthBucket& fb_bucket) {
    if (fb_bucket.half == Half::Mar11Pre || fb_bucket.half == Half::Mar11Post) {
        fail(Errc::SplitBucket, "split bucket " + format_bucket(fb_bucket) +
                                    " has no market counterpart");
    }
    int year = fb_bucket.year;
    int month = fb_bucket.month + 1;
    if (month > 12) {
        month = 1;
        ++year;
    }
    return {year, month, fb_bucket.half};
}

HalfMonthBucket market_to_fb(const HalfMonthBucket& market_bucket) {
    if (market_bucket.half == Half::Mar11Pre || market_bucket.half == Half::Mar11Post) {
        fail(Errc::SplitBucket, "split bucket " + format_bucket(market_bucket) +
                                    " is not a market bucket");
    }
    int year = market_bucket.year;
    int month = market_bucket.month - 1;
    if (month < 1) {
        month = 12;
        --year;
    }
    if (year == 2011 && month == 3) {
        fail(Errc::SplitBucket, "market bucket " + format_bucket(market_bucket) +
                                    " maps into the split month");
    }
    return {year, month, market_bucket.half};
}

const char* body_type_name(BodyType b) {
    switch (b) {
        case BodyType::LR: return "LR";
        case BodyType::LC: return "LC";
        case BodyType::LT: return "LT";
        case BodyType::LO: return "LO";
    }
    return "?";
}

BodyType parse_body_type(std::string_view s) {
    for (BodyType b : kAllBodyTypes) {
        if (s == body_type_name(b)) return b;
    }
    fail(Errc::ParseError, "unknown body type '" + std::string(s) + "'");
}

const char* fuel_name(Fuel f) {
    switch (f) {
        case Fuel::Gasoline: return "gasoline";
        case Fuel::Diesel: return "diesel";
        case Fuel::GasHybrid: return "gas_hybrid";
        case Fuel::Ev: return "ev";
        case Fuel::Other: return "other";
    }
    return "?";
}

Fuel parse_fuel(std::string_view s) {
    for (Fuel f : {Fuel::Gasoline, Fuel::Diesel, Fuel::GasHybrid, Fuel::Ev, Fuel::Other}) {
        if (s == fuel_name(f)) return f;
    }
    fail(Errc::ParseError, "unknown fuel '" + std::string(s) + "'");
}

std::vector<CarListing> load_listings(const std::string& path,
                                      const HalfMonthBucket& market_start,
                                      const HalfMonthBucket& market_end) {
    std::ifstream in(path);
    if (!in) fail(Errc::MissingInput, "cannot open listings '" + path + "'");
    CsvReader reader(in);
    std::vector<std::string> fields;
    std::vector<CarListing> listings;
    bool header = true;
    while (reader.next(fields)) {
        if (header) {
            header = false;
            continue;
        }
        auto where = [&]() {
            return path + ":" + std::to_string(reader.record_line());
        };
        if (fields.size() != 10) {
            fail(Errc::ParseError, where() + ": expected 10 fields, got " +
                                       std::to_string(fields.size()));
        }
        CarListing l;
        l.listing_id = fields[0];
        l.body_type = parse_body_type(fields[1]);
        try {
            l.nominal_price = std::stod(fields[2]);
            int year = std::stoi(fields[3]);
            int month = std::stoi(fields[4]);
            int half = std::stoi(fields[5]);
            if (half != 1 && half != 2) {
                fail(Errc::ParseError, "issue_half must be 1 or 2");
            }
            l.issue_bucket = {year, month, half == 1 ? Half::H1 : Half::H2};
            l.age_years = std::stod(fields[8]);
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            fail(Errc::ParseError, where() + ": " + e.what());
        }
        l.transmission_automatic = fields[6] == "automatic";
        l.fuel = parse_fuel(fields[7]);
        l.over_100k_km = fields[9] == "1" || fields[9] == "true";

        if (!(l.nominal_price > 0.0)) {
            fail(Errc::ParseError, where() + ": nominal_price must be positive");
        }
        if (l.age_years < 0.0 || l.age_years > 30.0) {
            fail(Errc::ParseError, where() + ": age_years outside [0, 30]");
        }
        if (!valid_bucket(l.issue_bucket) ||
            !in_study_range(l.issue_bucket, market_start, market_end)) {
            fail(Errc::ParseError,
                 where() + ": issue bucket " + format_bucket(l.issue_bucket) +
                     " outside market range " + format_bucket(market_start) + ".." +
                     format_bucket(market_end));
        }
        listings.push_back(std::move(l));
    }
    return listings;
}

DeflatorTable DeflatorTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::MissingInput, "cannot open deflators '" + path + "'");
    CsvReader reader(in);
    std::vector<std::string> fields;
    DeflatorTable table;
    bool header = true;
    while (reader.next(fields)) {
        if (header) {
            header = false;
            continue;
        }
        if (fields.size() != 3) {
            fail(Errc::ParseError, path + ":" + std::to_string(reader.record_line()) +
                                       ": expected year,month,index");
        }
        try {
            int year = std::stoi(fields[0]);
            int month = std::stoi(fields[1]);
            double idx = std::stod(fields[2]);
            if (idx <= 0.0) fail(Errc::ParseError, "deflator index must be positive");
            table.index[{year, month}] = idx;
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            fail(Errc::ParseError,
                 path + ":" + std::to_string(reader.record_line()) + ": " + e.what());
        }
    }
    return table;
}

double DeflatorTable::at(int year, int month) const {
    auto it = index.find({year, month});
    if (it == index.end()) {
        fail(Errc::MissingDeflator, "no automobile CPI index for " +
                                        std::to_string(year) + "-" +
                                        std::to_string(month));
    }
    return it->second;
}

double deflate_price(double nominal, const HalfMonthBucket& issue_bucket,
                     const DeflatorTable& deflators) {
    return nominal * 100.0 / deflators.at(issue_bucket.year, issue_bucket.month);
}

const std::array<const char*, kRegressorCount> kRegressorNames = {
    "Intercept", "X1", "X2", "X3", "X4", "X5",
    "X6",        "X7", "D_72", "D_82", "D_91", "S"};

const std::array<HalfMonthBucket, 3> kControlPeriods = {
    HalfMonthBucket{2011, 7, Half::H1},
    HalfMonthBucket{2011, 8, Half::H2},
    HalfMonthBucket{2011, 9, Half::H1}};

DesignMatrix build_design(const std::vector<CarListing>& listings,
                          const SentimentSeries& series,
                          const DeflatorTable& deflators,
                          const HalfMonthBucket& fb_start,
                          const HalfMonthBucket& fb_end) {
    DesignMatrix design;
    design.problem.k = kRegressorCount;
    for (const auto& listing : listings) {
        HalfMonthBucket fb;
        try {
            fb = market_to_fb(listing.issue_bucket);
        } catch (const PipelineError&) {
            // lag inverse lands in the split month: no Facebook counterpart
            ++design.dropped_no_sentiment;
            continue;
        }
        auto point = series.points.find(fb);
        if (!in_study_range(fb, fb_start, fb_end) || point == series.points.end()) {
            ++design.dropped_no_sentiment;
            continue;
        }
        double real_price = deflate_price(listing.nominal_price,
                                          listing.issue_bucket, deflators);
        design.problem.y.push_back(std::log(real_price));
        design.row_ids.push_back(listing.listing_id);

        std::array<double, kRegressorCount> row{};
        row[0] = 1.0;
        row[1] = listing.transmission_automatic ? 1.0 : 0.0;
        row[2] = listing.fuel == Fuel::Diesel ? 1.0 : 0.0;
        row[3] = listing.fuel == Fuel::GasHybrid ? 1.0 : 0.0;
        row[4] = listing.fuel == Fuel::Ev ? 1.0 : 0.0;
        row[5] = listing.fuel == Fuel::Other ? 1.0 : 0.0;
        row[6] = listing.age_years;
        row[7] = listing.over_100k_km ? 1.0 : 0.0;
        for (size_t d = 0; d < kControlPeriods.size(); ++d) {
            row[8 + d] = listing.issue_bucket == kControlPeriods[d] ? 1.0 : 0.0;
        }
        row[11] = point->second.mean_score;
        design.problem.X.insert(design.problem.X.end(), row.begin(), row.end());
    }
    design.problem.n = design.problem.y.size();
    return design;
}

std::string stars_for_p(double p) {
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

const RegressorResult* FitResult::find(std::string_view name) const {
    for (const auto& r : regressors) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

FitResult fit_cell(Dataset dataset, BodyType body, const DesignMatrix& design) {
    FitResult result;
    result.dataset = dataset;
    result.body_type = body;
    result.n = design.problem.n;
    result.dropped_listings = design.dropped_no_sentiment;

    try {
        if (design.problem.n == 0) {
            fail(Errc::EmptyDesign, "no listings with lagged sentiment available");
        }
        // Remove identically-zero columns (dummies for levels absent from
        // this cell); refitting without them leaves the rest unchanged.
        const size_t k = design.problem.k;
        std::vector<size_t> kept;
        for (size_t j = 0; j < k; ++j) {
            bool all_zero = true;
            for (size_t i = 0; i < design.problem.n && all_zero; ++i) {
                if (design.problem.at(i, j) != 0.0) all_zero = false;
            }
            if (!all_zero) kept.push_back(j);
        }
        LeastSquaresProblem reduced;
        reduced.n = design.problem.n;
        reduced.k = kept.size();
        reduced.y = design.problem.y;
        reduced.X.resize(reduced.n * reduced.k);
        for (size_t i = 0; i < reduced.n; ++i) {
            for (size_t jj = 0; jj < kept.size(); ++jj) {
                reduced.X[i * reduced.k + jj] = design.problem.at(i, kept[jj]);
            }
        }

        LeastSquaresFit fit = least_squares_fit(reduced);
        if (fit.tss <= 0.0) {
            fail(Errc::ZeroVariance, "dependent variable has zero variance");
        }

        result.r2 = fit.r2;
        result.adj_r2 = adjusted_r2(fit.r2, reduced.n, reduced.k);
        result.sigma2 = fit.sigma2;

        const long long df = static_cast<long long>(reduced.n - reduced.k);
        result.regressors.resize(kRegressorCount);
        for (size_t j = 0; j < static_cast<size_t>(kRegressorCount); ++j) {
            result.regressors[j].name = kRegressorNames[j];
            result.regressors[j].dropped = true;
        }
        for (size_t jj = 0; jj < kept.size(); ++jj) {
            RegressorResult& r = result.regressors[kept[jj]];
            r.dropped = false;
            r.coef = fit.beta[jj];
            r.se = fit.se[jj];
            r.t = r.se > 0.0 ? r.coef / r.se : 0.0;
            r.p = t_two_sided_p(r.t, df);
            r.stars = stars_for_p(r.p);
        }

        double mean = 0.0;
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
        for (double r : fit.residuals) {
            mean += r;
            mn = std::min(mn, r);
            mx = std::max(mx, r);
        }
        mean /= static_cast<double>(fit.residuals.size());
        double var = 0.0;
        for (double r : fit.residuals) var += (r - mean) * (r - mean);
        var /= static_cast<double>(fit.residuals.size());
        result.residuals = {mean, std::sqrt(var), mn, mx};
    } catch (const PipelineError& e) {
        result.error = e.what();
    }
    return result;
}

std::vector<FitResult> run_study(const std::array<SentimentSeries, 4>& series,
                                 const std::vector<CarListing>& listings,
                                 const DeflatorTable& deflators,
                                 const HalfMonthBucket& fb_start,
                                 const HalfMonthBucket& fb_end, int threads) {
    // Body types present in the input, in canonical order.
    std::vector<BodyType> bodies;
    for (BodyType b : kAllBodyTypes) {
        if (std::any_of(listings.begin(), listings.end(),
                        [b](const CarListing& l) { return l.body_type == b; })) {
            bodies.push_back(b);
        }
    }
    std::array<std::vector<CarListing>, 4> by_body;
    for (const auto& l : listings) {
        by_body[static_cast<size_t>(l.body_type)].push_back(l);
    }

    struct Cell {
        Dataset dataset;
        BodyType body;
    };
    std::vector<Cell> cells;
    for (Dataset d : kAllDatasets) {
        for (BodyType b : bodies) cells.push_back({d, b});
    }

    std::vector<FitResult> grid(cells.size());
    const auto n_cells = static_cast<long long>(cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (long long i = 0; i < n_cells; ++i) {
        const Cell& cell = cells[i];
        const auto& body_listings = by_body[static_cast<size_t>(cell.body)];
        try {
            DesignMatrix design =
                build_design(body_listings, series[static_cast<size_t>(cell.dataset)],
                             deflators, fb_start, fb_end);
            grid[i] = fit_cell(cell.dataset, cell.body, design);
        } catch (const PipelineError& e) {
            grid[i].dataset = cell.dataset;
            grid[i].body_type = cell.body;
            grid[i].error = e.what();
        }
    }
    return grid;
}

}  // namespace sentimark
