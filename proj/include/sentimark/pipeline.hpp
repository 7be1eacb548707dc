#ifndef SENTIMARK_PIPELINE_HPP
#define SENTIMARK_PIPELINE_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sentimark/calendar.hpp"
#include "sentimark/partition.hpp"
#include "sentimark/study.hpp"

namespace sentimark {

struct PipelineConfig {
    std::string corpus;
    std::string baseline_corpus;
    std::string dictionary;
    std::string denial_words;
    std::string removal_words;
    std::string gazetteer;
    std::string allowlist;
    std::string listings;
    std::string deflators;
    double alpha = 0.05;
    HalfMonthBucket fb_start{2011, 4, Half::H2};
    HalfMonthBucket fb_end{2011, 9, Half::H2};
    HalfMonthBucket market_start{2011, 4, Half::H2};
    HalfMonthBucket market_end{2011, 10, Half::H1};
    std::string outdir = "out";
    int threads = 0;  // 0 = runtime default
    bool document_frequency = false;
};

// Key-value file (`key = value`, '#' comments); relative paths resolve
// against the config file's directory. `overrides` are applied after the
// file, keys as in the file.
PipelineConfig load_config(const std::string& path,
                           const std::map<std::string, std::string>& overrides = {});

// Validates invariants (alpha range, distinct paths, ordered ranges).
void validate_config(const PipelineConfig& config);

struct IngestSummary {
    size_t documents = 0;
    size_t baseline_documents = 0;
    size_t lexicon_entries = 0;
    size_t denial_words = 0;
    size_t removed_words = 0;
    size_t gazetteer_names = 0;
    size_t allowlist_terms = 0;
    size_t listings = 0;
    size_t deflator_rows = 0;
};

// Parses and validates every configured input, writes ingest_summary.json
// into outdir, prints per-source counts.
IngestSummary cmd_ingest(const PipelineConfig& config, std::ostream& log);

struct RunResult {
    std::vector<std::string> outputs;  // files written under outdir
    LabelSummary labels;
    std::array<SentimentSeries, 4> series;
    std::vector<FitResult> grid;
    size_t selected_terms = 0;
    size_t effective_terms = 0;
    bool all_cells_failed = false;
};

// Full pipeline: score -> select -> partition -> aggregate -> regress,
// then reports, chart, and MANIFEST.
RunResult cmd_run(const PipelineConfig& config, std::ostream& log);

// Term selection only; writes the selection report.
std::vector<TermSelection> cmd_select_terms(const PipelineConfig& config,
                                            std::ostream& log);

// Regression only, from a precomputed series CSV.
std::vector<FitResult> cmd_regress(const PipelineConfig& config,
                                   const std::string& series_csv,
                                   std::ostream& log);

std::array<SentimentSeries, 4> read_series_csv(const std::string& path);

}  // namespace sentimark

#endif
