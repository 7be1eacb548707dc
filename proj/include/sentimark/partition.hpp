#ifndef SENTIMARK_PARTITION_HPP
#define SENTIMARK_PARTITION_HPP

#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentimark/corpus.hpp"
#include "sentimark/lexicon.hpp"
#include "sentimark/match.hpp"
#include "sentimark/sentiment.hpp"

namespace sentimark {

enum class Dataset { D1, D2, D3, D4 };

inline constexpr std::array<Dataset, 4> kAllDatasets = {Dataset::D1, Dataset::D2,
                                                        Dataset::D3, Dataset::D4};

const char* dataset_name(Dataset d);
Dataset parse_dataset(std::string_view s);

// Tsunami-stricken area names, stored NFC-normalized.
struct Gazetteer {
    std::vector<std::string> names;
    TokenTrie trie;

    static Gazetteer load(const std::string& path);
    static Gazetteer from_names(std::vector<std::string> names);
};

// True iff any area name occurs as a substring of text or attachment.
bool geo_match(const Document& doc, const Gazetteer& gazetteer);

// Salient terms filtered by the user-supplied allowlist.
struct TermSet {
    std::vector<std::string> terms;
    TokenTrie trie;

    static TermSet from_terms(std::vector<std::string> terms);
};

bool interest_match(const Document& doc, const TermSet& termset);

struct PartitionLabel {
    bool in_d1 = false;  // geo-info match
    bool in_d2 = false;  // interest match

    bool in_d3() const { return in_d1 && in_d2; }
    bool in_d4() const { return in_d2 && !in_d3(); }

    bool in(Dataset d) const {
        switch (d) {
            case Dataset::D1: return in_d1;
            case Dataset::D2: return in_d2;
            case Dataset::D3: return in_d3();
            case Dataset::D4: return in_d4();
        }
        return false;
    }

    bool operator==(const PartitionLabel&) const = default;
};

struct LabelSummary {
    size_t d1 = 0, d2 = 0, d3 = 0, d4 = 0;
};

// Parallel kernel + serial reference; labels indexed like corpus.documents.
std::vector<PartitionLabel> label_corpus(const Corpus& corpus,
                                         const Gazetteer& gazetteer,
                                         const TermSet& termset, int threads = 0);
std::vector<PartitionLabel> label_corpus_serial(const Corpus& corpus,
                                                const Gazetteer& gazetteer,
                                                const TermSet& termset);

LabelSummary summarize_labels(const std::vector<PartitionLabel>& labels);

// Term-frequency aggregation for the chi-square comparison. `counts` holds
// candidate content terms only; `total_tokens` counts every token the
// tokenizer emitted (candidates and everything else).
struct TermCounts {
    std::unordered_map<std::string, long long> counts;
    long long total_tokens = 0;
};

// Candidate filter: content-class lexicon surfaces, gazetteer names, and
// allowlist terms whose code-point length exceeds one.
std::unordered_set<std::string> content_term_candidates(
    const PolarityLexicon& lexicon, const Gazetteer& gazetteer,
    const std::vector<std::string>& allowlist);

// When document_frequency is set, a term counts once per document and the
// total is the document count.
TermCounts count_terms(const Corpus& corpus, const Tokenizer& tokenizer,
                       const std::unordered_set<std::string>& candidates,
                       bool document_frequency = false, int threads = 0);
TermCounts count_terms_serial(const Corpus& corpus, const Tokenizer& tokenizer,
                              const std::unordered_set<std::string>& candidates,
                              bool document_frequency = false);

struct TermSelection {
    std::string term;
    long long count_event = 0;
    long long total_event = 0;
    long long count_base = 0;
    long long total_base = 0;
    double chi2 = 0.0;
    double p_value = 1.0;
    bool selected = false;
};

// One row per candidate term, sorted by chi2 descending (term ascending on
// ties). selected = p < alpha AND event proportion > base proportion.
// Terms absent from both corpora are skipped; their names go to `warnings`.
std::vector<TermSelection> select_salient_terms(
    const TermCounts& event_counts, const TermCounts& base_counts, double alpha,
    std::vector<std::string>* warnings = nullptr);

}  // namespace sentimark

#endif
