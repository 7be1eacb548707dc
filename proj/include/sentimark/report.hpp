#ifndef SENTIMARK_REPORT_HPP
#define SENTIMARK_REPORT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sentimark/partition.hpp"
#include "sentimark/sentiment.hpp"
#include "sentimark/study.hpp"

namespace sentimark {

// FNV-1a over the file contents; stable across platforms.
std::uint64_t fnv1a_digest(const std::string& data);
std::string digest_hex(std::uint64_t digest);

void write_scored_csv(const std::string& path,
                      const std::vector<ScoredDocument>& scores);

void write_series_csv(const std::string& path,
                      const std::array<SentimentSeries, 4>& series);

void write_selection_csv(const std::string& path,
                         const std::vector<TermSelection>& selections);

void write_grid_csv(const std::string& path, const std::vector<FitResult>& grid);

// Table-2-like text layout: one block per cell, columns = regressors,
// coef row (with stars) above the standard-error row.
void write_grid_pretty(std::ostream& out, const std::vector<FitResult>& grid);

std::string grid_report_json(const std::vector<FitResult>& grid);

// Descriptive statistics in the appendix layout: mean/std/min/max per
// regressor per body type, with one S column per dataset. The S reference
// band is advisory output only.
struct StatsReport {
    std::string csv;
    std::vector<std::string> advisories;
};
StatsReport build_stats_report(const std::vector<CarListing>& listings,
                               const std::array<SentimentSeries, 4>& series,
                               const DeflatorTable& deflators,
                               const HalfMonthBucket& fb_start,
                               const HalfMonthBucket& fb_end);

// Line chart of the four dataset series, one polyline per dataset.
std::string series_chart_svg(const std::array<SentimentSeries, 4>& series);

struct ManifestEntry {
    std::string file;
    std::string digest;
    std::uint64_t bytes = 0;
};

// Writes MANIFEST listing every produced file with its digest, plus a
// completeness marker.
void write_manifest(const std::string& path, const std::vector<std::string>& files,
                    const std::string& base_dir, bool complete,
                    const std::string& note = "");

std::string read_file(const std::string& path);

}  // namespace sentimark

#endif
