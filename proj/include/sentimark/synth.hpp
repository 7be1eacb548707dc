#ifndef SENTIMARK_SYNTH_HPP
#define SENTIMARK_SYNTH_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sentimark/partition.hpp"
#include "sentimark/study.hpp"

namespace sentimark {

// Fixture generator doubling as the recovery oracle: document polar-word
// frequencies follow the per-dataset trends, listing log prices follow the
// planted coefficients against the realized sentiment series, and the
// generator's own bookkeeping is written out as ground truth.
struct SyntheticSpec {
    std::uint64_t seed = 42;
    long long n_docs = 5000;       // event corpus, >= 44
    long long n_base_docs = 2500;  // baseline corpus
    long long n_listings = 5000;

    // Keyed by regressor name; missing keys take the built-in defaults.
    std::map<std::string, double> planted_beta;

    double base_sentiment = 0.19;
    // Linear drift amplitudes across the Facebook window; geo applies to
    // D1/D3 documents, interest to D4 documents (sign included).
    double geo_amplitude = 0.09;
    double interest_amplitude = -0.09;

    // Which dataset's realized series drives the planted price model.
    Dataset price_dataset = Dataset::D2;

    double noise_sigma = 0.1;

    double frac_d1_only = 0.10;
    double frac_d3 = 0.10;
    double frac_d4 = 0.70;  // remainder is unlabeled background

    double attach_prob = 0.20;
    double negation_prob = 0.15;
    double early_listing_frac = 0.02;  // market buckets with no lagged S
};

struct SynthTruth {
    std::map<std::string, double> planted_beta;
    Dataset price_dataset = Dataset::D2;
    std::array<SentimentSeries, 4> series;  // realized, generation order
    std::vector<std::string> termset;       // planted interest terms
    std::map<std::string, long long> group_counts;
    std::map<std::string, long long> listing_counts;
    long long early_listings = 0;
};

struct SynthOutput {
    std::vector<std::string> files;  // paths written, relative to outdir
    SynthTruth truth;
};

std::map<std::string, double> default_planted_beta();

// Writes corpus.jsonl, baseline.jsonl, lexicon.csv, denial_words.txt,
// removal_words.txt, gazetteer.txt, allowlist.txt, listings.csv,
// deflators.csv, config.ini and synth_truth.json into outdir.
SynthOutput generate_fixture(const SyntheticSpec& spec, const std::string& outdir);

}  // namespace sentimark

#endif
