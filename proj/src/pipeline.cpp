#include "sentimark/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sentimark/csv.hpp"
#include "sentimark/errors.hpp"
#include "sentimark/report.hpp"
#include "sentimark/unicode.hpp"

namespace sentimark {

namespace fs = std::filesystem;

namespace {

std::pair<HalfMonthBucket, HalfMonthBucket> parse_range(const std::string& value) {
    auto sep = value.find("..");
    if (sep == std::string::npos) {
        fail(Errc::BadConfig, "range '" + value + "' must look like A..B");
    }
    return {parse_bucket(trim(value.substr(0, sep))),
            parse_bucket(trim(value.substr(sep + 2)))};
}

void apply_key(PipelineConfig& config, const std::string& key,
               const std::string& value, const fs::path& base) {
    auto resolve = [&](const std::string& p) {
        fs::path candidate(p);
        if (candidate.is_absolute() || base.empty()) return p;
        return (base / candidate).string();
    };
    if (key == "corpus") config.corpus = resolve(value);
    else if (key == "baseline_corpus") config.baseline_corpus = resolve(value);
    else if (key == "dictionary") config.dictionary = resolve(value);
    else if (key == "denial_words") config.denial_words = resolve(value);
    else if (key == "removal_words") config.removal_words = resolve(value);
    else if (key == "gazetteer") config.gazetteer = resolve(value);
    else if (key == "allowlist") config.allowlist = resolve(value);
    else if (key == "listings") config.listings = resolve(value);
    else if (key == "deflators") config.deflators = resolve(value);
    else if (key == "outdir") config.outdir = resolve(value);
    else if (key == "alpha") {
        try {
            config.alpha = std::stod(value);
        } catch (const std::exception&) {
            fail(Errc::BadConfig, "alpha must be numeric, got '" + value + "'");
        }
    } else if (key == "threads") {
        try {
            config.threads = std::stoi(value);
        } catch (const std::exception&) {
            fail(Errc::BadConfig, "threads must be an integer, got '" + value + "'");
        }
    } else if (key == "document_frequency") {
        config.document_frequency = value == "true" || value == "1";
    } else if (key == "fb_range") {
        auto [start, end] = parse_range(value);
        config.fb_start = start;
        config.fb_end = end;
    } else if (key == "market_range") {
        auto [start, end] = parse_range(value);
        config.market_start = start;
        config.market_end = end;
    } else {
        fail(Errc::BadConfig, "unknown config key '" + key + "'");
    }
}

}  // namespace

PipelineConfig load_config(const std::string& path,
                           const std::map<std::string, std::string>& overrides) {
    std::ifstream in(path);
    if (!in) fail(Errc::MissingInput, "cannot open config '" + path + "'");
    fs::path base = fs::path(path).parent_path();

    PipelineConfig config;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            fail(Errc::BadConfig, path + ":" + std::to_string(line_no) +
                                      ": expected key = value");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        apply_key(config, key, value, base);
    }
    for (const auto& [key, value] : overrides) {
        apply_key(config, key, value, fs::path());
    }
    validate_config(config);
    return config;
}

void validate_config(const PipelineConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        fail(Errc::BadConfig, "alpha must be in (0, 1)");
    }
    if (!(config.fb_start <= config.fb_end)) {
        fail(Errc::BadConfig, "fb_range is not well-ordered");
    }
    if (!(config.market_start <= config.market_end)) {
        fail(Errc::BadConfig, "market_range is not well-ordered");
    }
    std::vector<std::string> paths = {
        config.corpus, config.baseline_corpus, config.dictionary,
        config.denial_words, config.removal_words, config.gazetteer,
        config.allowlist, config.listings, config.deflators};
    std::set<std::string> unique;
    for (const auto& p : paths) {
        if (p.empty()) continue;
        if (!unique.insert(p).second) {
            fail(Errc::BadConfig, "config paths are not distinct: '" + p + "'");
        }
    }
}

IngestSummary cmd_ingest(const PipelineConfig& config, std::ostream& log) {
    IngestSummary summary;

    PolarityLexicon lexicon = PolarityLexicon::load(
        config.dictionary, config.denial_words, config.removal_words);
    summary.lexicon_entries = lexicon.entry_count();
    summary.denial_words = lexicon.denial_words().size();
    summary.removed_words = lexicon.removed_words().size();
    auto tally = lexicon.tally();
    log << "lexicon: " << summary.lexicon_entries << " entries ("
        << tally.positive << " positive, " << tally.negative << " negative, "
        << tally.neutral << " neutral after removals), " << summary.denial_words
        << " denial words, " << summary.removed_words << " removal words\n";

    Gazetteer gazetteer = Gazetteer::load(config.gazetteer);
    summary.gazetteer_names = gazetteer.names.size();
    log << "gazetteer: " << summary.gazetteer_names << " area names\n";

    auto allowlist = read_word_list(config.allowlist);
    summary.allowlist_terms = allowlist.size();
    log << "allowlist: " << summary.allowlist_terms << " terms\n";

    DeflatorTable deflators = DeflatorTable::load(config.deflators);
    summary.deflator_rows = deflators.index.size();
    log << "deflators: " << summary.deflator_rows << " month rows\n";

    Corpus corpus = load_corpus_jsonl(config.corpus, &log);
    summary.documents = corpus.documents.size();

    Corpus baseline = load_corpus_jsonl(config.baseline_corpus, &log);
    summary.baseline_documents = baseline.documents.size();

    auto listings = load_listings(config.listings, config.market_start,
                                  config.market_end);
    summary.listings = listings.size();
    log << "listings: " << summary.listings << " rows\n";

    fs::create_directories(config.outdir);
    nlohmann::ordered_json j;
    j["documents"] = summary.documents;
    j["baseline_documents"] = summary.baseline_documents;
    j["lexicon_entries"] = summary.lexicon_entries;
    j["denial_words"] = summary.denial_words;
    j["removed_words"] = summary.removed_words;
    j["gazetteer_names"] = summary.gazetteer_names;
    j["allowlist_terms"] = summary.allowlist_terms;
    j["listings"] = summary.listings;
    j["deflator_rows"] = summary.deflator_rows;
    nlohmann::ordered_json digests;
    for (const auto& p :
         {config.corpus, config.baseline_corpus, config.dictionary,
          config.denial_words, config.removal_words, config.gazetteer,
          config.allowlist, config.listings, config.deflators}) {
        digests[fs::path(p).filename().string()] =
            digest_hex(fnv1a_digest(read_file(p)));
    }
    j["input_digests"] = std::move(digests);
    std::ofstream out(fs::path(config.outdir) / "ingest_summary.json");
    out << j.dump(2) << "\n";
    return summary;
}

RunResult cmd_run(const PipelineConfig& config, std::ostream& log) {
    RunResult result;
    fs::create_directories(config.outdir);
    auto outpath = [&](const char* name) {
        return (fs::path(config.outdir) / name).string();
    };
    bool complete = false;
    std::string failure_note;

    try {
        PolarityLexicon lexicon = PolarityLexicon::load(
            config.dictionary, config.denial_words, config.removal_words);
        Gazetteer gazetteer = Gazetteer::load(config.gazetteer);
        auto allowlist_raw = read_word_list(config.allowlist);
        std::vector<std::string> allowlist;
        allowlist.reserve(allowlist_raw.size());
        for (const auto& t : allowlist_raw) allowlist.push_back(nfc_normalize(t));
        DeflatorTable deflators = DeflatorTable::load(config.deflators);
        Corpus corpus = load_corpus_jsonl(config.corpus, &log);
        Corpus baseline = load_corpus_jsonl(config.baseline_corpus, &log);
        auto listings = load_listings(config.listings, config.market_start,
                                      config.market_end);

        // One vocabulary for the whole run: lexicon surfaces, denial words,
        // area names, allowlist terms.
        std::vector<std::string> vocabulary = lexicon.surfaces();
        for (const auto& w : gazetteer.names) vocabulary.push_back(w);
        for (const auto& w : allowlist) vocabulary.push_back(w);
        LongestMatchTokenizer tokenizer(vocabulary, lexicon.denial_words());

        // Stage 1: sentiment scores (parallel kernel).
        auto scores = score_corpus(corpus, lexicon, tokenizer, config.threads);
        write_scored_csv(outpath("scored.csv"), scores);
        result.outputs.push_back("scored.csv");

        // Stage 2: salient-term selection against the baseline corpus.
        auto candidates = content_term_candidates(lexicon, gazetteer, allowlist);
        TermCounts event_counts = count_terms(corpus, tokenizer, candidates,
                                              config.document_frequency,
                                              config.threads);
        TermCounts base_counts = count_terms(baseline, tokenizer, candidates,
                                             config.document_frequency,
                                             config.threads);
        std::vector<std::string> warnings;
        auto selections = select_salient_terms(event_counts, base_counts,
                                               config.alpha, &warnings);
        write_selection_csv(outpath("selection_report.csv"), selections);
        result.outputs.push_back("selection_report.csv");
        for (const auto& w : warnings) {
            log << "warning: term '" << w << "' absent from both corpora, skipped\n";
        }
        result.selected_terms = static_cast<size_t>(
            std::count_if(selections.begin(), selections.end(),
                          [](const TermSelection& s) { return s.selected; }));

        // Interest terms: selection output filtered by the allowlist.
        std::set<std::string> allow(allowlist.begin(), allowlist.end());
        std::vector<std::string> effective;
        for (const auto& s : selections) {
            if (s.selected && allow.count(s.term)) effective.push_back(s.term);
        }
        result.effective_terms = effective.size();
        log << "selected terms: " << result.selected_terms << " ("
            << result.effective_terms << " on the allowlist)\n";
        TermSet termset = TermSet::from_terms(effective);

        // Stage 3: partition labels (parallel kernel).
        auto labels = label_corpus(corpus, gazetteer, termset, config.threads);
        result.labels = summarize_labels(labels);
        log << "partition: |D1|=" << result.labels.d1 << " |D2|=" << result.labels.d2
            << " |D3|=" << result.labels.d3 << " |D4|=" << result.labels.d4 << "\n";
        if (result.labels.d2 != result.labels.d3 + result.labels.d4) {
            fail(Errc::Internal, "|D2| != |D3| + |D4|");
        }

        // Stage 4: per-dataset half-month means (serial, document order).
        for (size_t ds = 0; ds < 4; ++ds) {
            result.series[ds] =
                bucket_mean_series(scores, labels, static_cast<Dataset>(ds));
        }
        write_series_csv(outpath("series.csv"), result.series);
        result.outputs.push_back("series.csv");

        // Stage 5: regression grid.
        result.grid = run_study(result.series, listings, deflators,
                                config.fb_start, config.fb_end, config.threads);
        write_grid_csv(outpath("grid_report.csv"), result.grid);
        result.outputs.push_back("grid_report.csv");
        {
            std::ofstream json_out(outpath("grid_report.json"), std::ios::binary);
            json_out << grid_report_json(result.grid);
        }
        result.outputs.push_back("grid_report.json");
        {
            std::ofstream pretty(outpath("grid_report.txt"), std::ios::binary);
            write_grid_pretty(pretty, result.grid);
        }
        result.outputs.push_back("grid_report.txt");
        write_grid_pretty(log, result.grid);

        StatsReport stats = build_stats_report(listings, result.series, deflators,
                                               config.fb_start, config.fb_end);
        {
            std::ofstream stats_out(outpath("stats_report.csv"), std::ios::binary);
            stats_out << stats.csv;
        }
        result.outputs.push_back("stats_report.csv");
        for (const auto& a : stats.advisories) log << "advisory: " << a << "\n";

        {
            std::ofstream svg(outpath("series_chart.svg"), std::ios::binary);
            svg << series_chart_svg(result.series);
        }
        result.outputs.push_back("series_chart.svg");

        result.all_cells_failed =
            !result.grid.empty() &&
            std::all_of(result.grid.begin(), result.grid.end(),
                        [](const FitResult& f) { return !f.ok(); });
        complete = true;
    } catch (...) {
        // Flush what exists, note incompleteness, re-throw.
        write_manifest(outpath("MANIFEST"), result.outputs, config.outdir, false,
                       "run aborted before completion");
        throw;
    }
    write_manifest(outpath("MANIFEST"), result.outputs, config.outdir, complete);
    result.outputs.push_back("MANIFEST");
    return result;
}

std::vector<TermSelection> cmd_select_terms(const PipelineConfig& config,
                                            std::ostream& log) {
    PolarityLexicon lexicon = PolarityLexicon::load(
        config.dictionary, config.denial_words, config.removal_words);
    Gazetteer gazetteer = Gazetteer::load(config.gazetteer);
    auto allowlist = read_word_list(config.allowlist);
    Corpus corpus = load_corpus_jsonl(config.corpus, &log);
    Corpus baseline = load_corpus_jsonl(config.baseline_corpus, &log);

    std::vector<std::string> vocabulary = lexicon.surfaces();
    for (const auto& w : gazetteer.names) vocabulary.push_back(w);
    for (const auto& w : allowlist) vocabulary.push_back(w);
    LongestMatchTokenizer tokenizer(vocabulary, lexicon.denial_words());

    auto candidates = content_term_candidates(lexicon, gazetteer, allowlist);
    TermCounts event_counts = count_terms(corpus, tokenizer, candidates,
                                          config.document_frequency, config.threads);
    TermCounts base_counts = count_terms(baseline, tokenizer, candidates,
                                         config.document_frequency, config.threads);
    auto selections = select_salient_terms(event_counts, base_counts, config.alpha);

    fs::create_directories(config.outdir);
    write_selection_csv(
        (fs::path(config.outdir) / "selection_report.csv").string(), selections);
    log << "selection_report.csv: " << selections.size() << " candidate terms\n";
    return selections;
}

std::array<SentimentSeries, 4> read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::MissingInput, "cannot open series '" + path + "'");
    CsvReader reader(in);
    std::vector<std::string> fields;
    std::array<SentimentSeries, 4> series;
    for (size_t ds = 0; ds < 4; ++ds) series[ds].dataset = static_cast<Dataset>(ds);
    bool header = true;
    while (reader.next(fields)) {
        if (header) {
            header = false;
            continue;
        }
        if (fields.size() != 4) {
            fail(Errc::ParseError, path + ":" + std::to_string(reader.record_line()) +
                                       ": expected dataset,bucket,mean_score,n_docs");
        }
        Dataset ds = parse_dataset(fields[0]);
        HalfMonthBucket bucket = parse_bucket(fields[1]);
        try {
            series[static_cast<size_t>(ds)].points[bucket] = {
                std::stod(fields[2]), std::stoll(fields[3])};
        } catch (const std::exception& e) {
            fail(Errc::ParseError,
                 path + ":" + std::to_string(reader.record_line()) + ": " + e.what());
        }
    }
    return series;
}

std::vector<FitResult> cmd_regress(const PipelineConfig& config,
                                   const std::string& series_csv,
                                   std::ostream& log) {
    auto series = read_series_csv(series_csv);
    DeflatorTable deflators = DeflatorTable::load(config.deflators);
    auto listings = load_listings(config.listings, config.market_start,
                                  config.market_end);
    auto grid = run_study(series, listings, deflators, config.fb_start,
                          config.fb_end, config.threads);

    fs::create_directories(config.outdir);
    write_grid_csv((fs::path(config.outdir) / "grid_report.csv").string(), grid);
    {
        std::ofstream json_out(fs::path(config.outdir) / "grid_report.json",
                               std::ios::binary);
        json_out << grid_report_json(grid);
    }
    write_grid_pretty(log, grid);
    return grid;
}

}  // namespace sentimark
