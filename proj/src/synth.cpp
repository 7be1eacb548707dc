#include "sentimark/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "sentimark/errors.hpp"

namespace sentimark {

namespace {

// All synthetic vocabulary words are 8 bytes long and pairwise distinct, so
// no word can occur inside another and substring matching stays exact.
std::vector<std::string> make_words(const char* stem, int n) {
    std::vector<std::string> words;
    words.reserve(n);
    for (int i = 0; i < n; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%s%03d", stem, i);
        words.emplace_back(buf);
    }
    return words;
}

const std::vector<std::string>& positive_words() {
    static const auto words = make_words("possw", 20);
    return words;
}
const std::vector<std::string>& negative_words() {
    static const auto words = make_words("negsw", 20);
    return words;
}
const std::vector<std::string>& neutral_words() {
    static const auto words = make_words("neusw", 12);
    return words;
}
const std::vector<std::string>& gazetteer_names() {
    static const auto words = make_words("geotn", 10);
    return words;
}
const std::vector<std::string>& interest_terms() {
    static const auto words = make_words("intrs", 6);
    return words;
}

constexpr const char* kDenialWord = "denyw000";
constexpr const char* kDecoyEqual = "decoyeq0";   // same rate in both corpora
constexpr const char* kBaseHeavy = "basehvy0";    // more frequent in baseline
constexpr const char* kRemovedWord = "removedw";  // on the removal list

// Deterministic RNG helpers; distributions are hand-rolled so output never
// depends on the standard library's implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    long long uniform_int(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(uniform() * static_cast<double>(hi - lo + 1));
    }
    double normal(double mu, double sigma) {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return mu + sigma * std::sqrt(-2.0 * std::log(u1)) *
                        std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 gen_;
};

enum class Group { D1Only, D3, D4, None };

struct DocCounts {
    long long pos = 0, neg = 0, neu = 0;

    double score() const {
        long long denom = pos + neg + neu;
        if (denom == 0) return 0.0;
        return static_cast<double>(pos - neg) / static_cast<double>(denom);
    }
};

std::string json_escape_minimal(const std::string& s) {
    // Synthetic text is plain ASCII; keep the writer trivial.
    return s;
}

const std::array<HalfMonthBucket, 11>& fb_buckets() {
    static const std::array<HalfMonthBucket, 11> buckets = {
        HalfMonthBucket{2011, 4, Half::H2},  HalfMonthBucket{2011, 5, Half::H1},
        HalfMonthBucket{2011, 5, Half::H2},  HalfMonthBucket{2011, 6, Half::H1},
        HalfMonthBucket{2011, 6, Half::H2},  HalfMonthBucket{2011, 7, Half::H1},
        HalfMonthBucket{2011, 7, Half::H2},  HalfMonthBucket{2011, 8, Half::H1},
        HalfMonthBucket{2011, 8, Half::H2},  HalfMonthBucket{2011, 9, Half::H1},
        HalfMonthBucket{2011, 9, Half::H2}};
    return buckets;
}

double bucket_drift(size_t idx) {
    // Linear ramp over the Facebook window, -1 .. +1.
    return -1.0 + 2.0 * static_cast<double>(idx) / 10.0;
}

std::string timestamp_in(const HalfMonthBucket& b, Rng& rng) {
    int day = static_cast<int>(
        rng.uniform_int(bucket_first_day(b), bucket_last_day(b)));
    int hour = static_cast<int>(rng.uniform_int(0, 23));
    int minute = static_cast<int>(rng.uniform_int(0, 59));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", b.year, b.month,
                  day, hour, minute);
    return buf;
}

}  // namespace

std::map<std::string, double> default_planted_beta() {
    return {
        {"Intercept", 13.0}, {"X1", 0.09},   {"X2", 0.12},  {"X3", 0.10},
        {"X4", -0.05},       {"X5", 0.15},   {"X6", -0.10}, {"X7", -0.32},
        {"D_72", 0.02},      {"D_82", 0.015}, {"D_91", 0.025}, {"S", 0.9},
    };
}

SynthOutput generate_fixture(const SyntheticSpec& spec, const std::string& outdir) {
    if (spec.n_docs < 44) fail(Errc::BadConfig, "n_docs must be at least 44");
    if (spec.n_listings <= 0) fail(Errc::BadConfig, "n_listings must be positive");
    if (spec.frac_d1_only + spec.frac_d3 + spec.frac_d4 > 1.0) {
        fail(Errc::BadConfig, "group fractions exceed 1");
    }

    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    auto path = [&](const char* name) { return (fs::path(outdir) / name).string(); };

    SynthOutput output;
    SynthTruth& truth = output.truth;
    truth.planted_beta = default_planted_beta();
    for (const auto& [key, val] : spec.planted_beta) truth.planted_beta[key] = val;
    truth.price_dataset = spec.price_dataset;
    truth.termset = interest_terms();

    Rng rng(spec.seed);

    // --- dictionaries -----------------------------------------------------
    {
        std::ofstream lex(path("lexicon.csv"));
        lex << "surface,word_class,polarity\n";
        for (const auto& w : positive_words()) lex << w << ",noun,positive\n";
        for (const auto& w : negative_words()) lex << w << ",verb,negative\n";
        for (const auto& w : neutral_words()) lex << w << ",noun,neutral\n";
        lex << kDecoyEqual << ",noun,neutral\n";
        lex << kBaseHeavy << ",noun,neutral\n";
        lex << kRemovedWord << ",noun,negative\n";

        std::ofstream denial(path("denial_words.txt"));
        denial << "# negation markers\n" << kDenialWord << "\ndenyw001\n";

        std::ofstream removal(path("removal_words.txt"));
        removal << "# disaster-related words excluded from scoring\n";
        removal << kRemovedWord << "\n";

        std::ofstream gaz(path("gazetteer.txt"));
        for (const auto& w : gazetteer_names()) gaz << w << "\n";

        std::ofstream allow(path("allowlist.txt"));
        for (const auto& w : interest_terms()) allow << w << "\n";
    }

    // --- event corpus ------------------------------------------------------
    // Per-dataset running sums mirror the pipeline's aggregation order so the
    // realized means match bit for bit.
    std::array<std::map<HalfMonthBucket, std::pair<double, long long>>, 4> acc;
    {
        std::ofstream out(path("corpus.jsonl"));
        for (long long i = 0; i < spec.n_docs; ++i) {
            size_t bucket_idx = static_cast<size_t>(i % 11);
            const HalfMonthBucket& bucket = fb_buckets()[bucket_idx];

            Group group;
            if (i < 44) {
                group = static_cast<Group>(i / 11);
            } else {
                double u = rng.uniform();
                if (u < spec.frac_d1_only) group = Group::D1Only;
                else if (u < spec.frac_d1_only + spec.frac_d3) group = Group::D3;
                else if (u < spec.frac_d1_only + spec.frac_d3 + spec.frac_d4)
                    group = Group::D4;
                else group = Group::None;
            }

            double drift = bucket_drift(bucket_idx);
            double mu = spec.base_sentiment;
            if (group == Group::D1Only || group == Group::D3) {
                mu += spec.geo_amplitude * drift;
            } else if (group == Group::D4) {
                mu += spec.interest_amplitude * drift;
            }

            // Integer polarity counts hitting the target in expectation.
            DocCounts counts;
            counts.neu = 6;
            double dd = mu * 16.0;
            long long d = static_cast<long long>(std::floor(dd));
            if (rng.uniform() < dd - std::floor(dd)) ++d;
            counts.neg = 2;
            counts.pos = counts.neg + d;
            if (counts.pos < 0) {
                counts.pos = 0;
                counts.neg = -d;
            }

            std::vector<std::string> tokens;
            if (group == Group::D1Only || group == Group::D3) {
                tokens.push_back(gazetteer_names()[i % 10]);
            }
            if (group == Group::D3 || group == Group::D4) {
                tokens.push_back(interest_terms()[i % 6]);
            }
            for (long long t = 0; t < counts.pos; ++t) {
                tokens.push_back(positive_words()[rng.uniform_int(0, 19)]);
            }
            for (long long t = 0; t < counts.neg; ++t) {
                tokens.push_back(negative_words()[rng.uniform_int(0, 19)]);
            }
            for (long long t = 0; t < counts.neu; ++t) {
                tokens.push_back(neutral_words()[rng.uniform_int(0, 11)]);
            }
            if (rng.uniform() < 0.10) {
                tokens.push_back(kDecoyEqual);
                ++counts.neu;
            }
            if (rng.uniform() < 0.01) {
                tokens.push_back(kBaseHeavy);
                ++counts.neu;
            }
            if (rng.uniform() < 0.05) tokens.push_back(kRemovedWord);  // no effect

            std::string text;
            for (size_t t = 0; t < tokens.size(); ++t) {
                if (t) text += ' ';
                text += tokens[t];
            }
            // Negated clause: one negative word under an odd denial count
            // scores as positive.
            if (rng.uniform() < spec.negation_prob) {
                text += ". ";
                text += kDenialWord;
                text += ' ';
                text += negative_words()[rng.uniform_int(0, 19)];
                ++counts.pos;
            }

            double score = counts.score();
            std::string attachment;
            if (rng.uniform() < spec.attach_prob) {
                DocCounts att;
                att.pos = 1 + (rng.uniform() < 0.3 ? 1 : 0);
                att.neu = 2;
                std::vector<std::string> att_tokens;
                for (long long t = 0; t < att.pos; ++t) {
                    att_tokens.push_back(positive_words()[rng.uniform_int(0, 19)]);
                }
                for (long long t = 0; t < att.neu; ++t) {
                    att_tokens.push_back(neutral_words()[rng.uniform_int(0, 11)]);
                }
                for (size_t t = 0; t < att_tokens.size(); ++t) {
                    if (t) attachment += ' ';
                    attachment += att_tokens[t];
                }
                score += att.score();
            }

            char id[16];
            std::snprintf(id, sizeof(id), "e%07lld", i);
            out << "{\"id\":\"" << id << "\",\"page\":\"page"
                << (i % 7) << "\",\"kind\":\"" << (rng.uniform() < 0.4 ? "post" : "comment")
                << "\",\"ts\":\"" << timestamp_in(bucket, rng) << "\",\"text\":\""
                << json_escape_minimal(text) << "\"";
            if (!attachment.empty()) {
                out << ",\"attachment\":\"" << json_escape_minimal(attachment) << "\"";
            }
            out << "}\n";

            bool in_d1 = group == Group::D1Only || group == Group::D3;
            bool in_d2 = group == Group::D3 || group == Group::D4;
            bool members[4] = {in_d1, in_d2, group == Group::D3,
                               in_d2 && group != Group::D3};
            for (size_t ds = 0; ds < 4; ++ds) {
                if (!members[ds]) continue;
                auto& [sum, n] = acc[ds][bucket];
                sum += score;
                ++n;
            }
            const char* group_name = group == Group::D1Only ? "d1_only"
                                     : group == Group::D3   ? "d3"
                                     : group == Group::D4   ? "d4"
                                                            : "none";
            ++truth.group_counts[group_name];
        }
    }
    for (size_t ds = 0; ds < 4; ++ds) {
        truth.series[ds].dataset = static_cast<Dataset>(ds);
        for (const auto& [bucket, sn] : acc[ds]) {
            truth.series[ds].points[bucket] = {
                sn.first / static_cast<double>(sn.second), sn.second};
        }
    }

    // --- baseline corpus ----------------------------------------------------
    {
        std::ofstream out(path("baseline.jsonl"));
        for (long long i = 0; i < spec.n_base_docs; ++i) {
            std::vector<std::string> tokens;
            for (int t = 0; t < 2; ++t) {
                tokens.push_back(positive_words()[rng.uniform_int(0, 19)]);
            }
            for (int t = 0; t < 2; ++t) {
                tokens.push_back(negative_words()[rng.uniform_int(0, 19)]);
            }
            for (int t = 0; t < 6; ++t) {
                tokens.push_back(neutral_words()[rng.uniform_int(0, 11)]);
            }
            if (rng.uniform() < 0.10) tokens.push_back(kDecoyEqual);
            if (rng.uniform() < 0.30) tokens.push_back(kBaseHeavy);
            if (rng.uniform() < 0.01) {
                tokens.push_back(interest_terms()[i % 6]);
            }
            if (rng.uniform() < 0.02) {
                tokens.push_back(gazetteer_names()[i % 10]);
            }
            std::string text;
            for (size_t t = 0; t < tokens.size(); ++t) {
                if (t) text += ' ';
                text += tokens[t];
            }
            // 2010-03-11 .. 2010-09-11 window
            int month = static_cast<int>(rng.uniform_int(3, 9));
            int lo = month == 3 ? 11 : 1;
            int hi = month == 9 ? 11 : days_in_month(2010, month);
            int day = static_cast<int>(rng.uniform_int(lo, hi));
            char ts[32];
            std::snprintf(ts, sizeof(ts), "2010-%02d-%02dT%02d:%02d", month, day,
                          static_cast<int>(rng.uniform_int(0, 23)),
                          static_cast<int>(rng.uniform_int(0, 59)));
            char id[16];
            std::snprintf(id, sizeof(id), "b%07lld", i);
            out << "{\"id\":\"" << id << "\",\"page\":\"page" << (i % 7)
                << "\",\"kind\":\"" << (rng.uniform() < 0.4 ? "post" : "comment")
                << "\",\"ts\":\"" << ts << "\",\"text\":\"" << text << "\"}\n";
        }
    }

    // --- deflators ----------------------------------------------------------
    static constexpr std::array<double, 12> kIndices = {
        100.2, 99.8, 100.5, 101.2, 98.9, 99.5,
        100.8, 101.5, 99.2, 100.1, 100.9, 99.6};
    {
        std::ofstream out(path("deflators.csv"));
        out << "year,month,index\n";
        for (int m = 1; m <= 12; ++m) {
            char row[48];
            std::snprintf(row, sizeof(row), "2011,%d,%.1f\n", m, kIndices[m - 1]);
            out << row;
        }
    }

    // --- listings -------------------------------------------------------------
    {
        const auto& fb = fb_buckets();
        std::array<HalfMonthBucket, 10> market{};
        for (size_t i = 0; i < 10; ++i) market[i] = lag_align(fb[i]);
        const std::array<HalfMonthBucket, 2> early = {
            HalfMonthBucket{2011, 4, Half::H2}, HalfMonthBucket{2011, 5, Half::H1}};

        const auto& beta = truth.planted_beta;
        const SentimentSeries& price_series =
            truth.series[static_cast<size_t>(spec.price_dataset)];

        std::ofstream out(path("listings.csv"));
        out << "listing_id,body_type,nominal_price,issue_year,issue_month,"
               "issue_half,transmission,fuel,age_years,over_100k_km\n";
        for (long long j = 0; j < spec.n_listings; ++j) {
            bool is_early = rng.uniform() < spec.early_listing_frac;
            HalfMonthBucket bucket;
            size_t fb_idx = 0;
            if (is_early) {
                bucket = early[static_cast<size_t>(j % 2)];
                ++truth.early_listings;
            } else {
                fb_idx = static_cast<size_t>(rng.uniform_int(0, 9));
                bucket = market[fb_idx];
            }

            double u = rng.uniform();
            BodyType body = u < 0.73   ? BodyType::LR
                            : u < 0.79 ? BodyType::LC
                            : u < 0.85 ? BodyType::LT
                                       : BodyType::LO;
            bool automatic = rng.uniform() < 0.58;
            double uf = rng.uniform();
            Fuel fuel = uf < 0.95    ? Fuel::Gasoline
                        : uf < 0.965 ? Fuel::Diesel
                        : uf < 0.975 ? Fuel::GasHybrid
                        : uf < 0.98  ? Fuel::Ev
                                     : Fuel::Other;
            double age = std::fabs(rng.normal(7.4, 3.7));
            if (age > 21.0) age = 21.0;
            bool over100k = rng.uniform() < 0.15;

            double s_value = spec.base_sentiment;
            if (!is_early) {
                auto it = price_series.points.find(fb[fb_idx]);
                if (it != price_series.points.end()) s_value = it->second.mean_score;
            }

            double ln_price = beta.at("Intercept");
            ln_price += beta.at("X1") * (automatic ? 1.0 : 0.0);
            ln_price += beta.at("X2") * (fuel == Fuel::Diesel ? 1.0 : 0.0);
            ln_price += beta.at("X3") * (fuel == Fuel::GasHybrid ? 1.0 : 0.0);
            ln_price += beta.at("X4") * (fuel == Fuel::Ev ? 1.0 : 0.0);
            ln_price += beta.at("X5") * (fuel == Fuel::Other ? 1.0 : 0.0);
            ln_price += beta.at("X6") * age;
            ln_price += beta.at("X7") * (over100k ? 1.0 : 0.0);
            ln_price += beta.at("D_72") * (bucket == kControlPeriods[0] ? 1.0 : 0.0);
            ln_price += beta.at("D_82") * (bucket == kControlPeriods[1] ? 1.0 : 0.0);
            ln_price += beta.at("D_91") * (bucket == kControlPeriods[2] ? 1.0 : 0.0);
            ln_price += beta.at("S") * s_value;
            if (spec.noise_sigma > 0.0) {
                ln_price += rng.normal(0.0, spec.noise_sigma);
            }
            double real_price = std::exp(ln_price);
            double nominal = real_price * kIndices[bucket.month - 1] / 100.0;

            char price_buf[40], age_buf[40];
            std::snprintf(price_buf, sizeof(price_buf), "%.17g", nominal);
            std::snprintf(age_buf, sizeof(age_buf), "%.17g", age);
            out << "L" << j << "," << body_type_name(body) << "," << price_buf
                << "," << bucket.year << "," << bucket.month << ","
                << (bucket.half == Half::H1 ? 1 : 2) << ","
                << (automatic ? "automatic" : "manual") << "," << fuel_name(fuel)
                << "," << age_buf << "," << (over100k ? 1 : 0) << "\n";
            ++truth.listing_counts[body_type_name(body)];
        }
    }

    // --- config and truth -----------------------------------------------------
    {
        std::ofstream out(path("config.ini"));
        out << "# synthetic fixture configuration\n"
            << "corpus = corpus.jsonl\n"
            << "baseline_corpus = baseline.jsonl\n"
            << "dictionary = lexicon.csv\n"
            << "denial_words = denial_words.txt\n"
            << "removal_words = removal_words.txt\n"
            << "gazetteer = gazetteer.txt\n"
            << "allowlist = allowlist.txt\n"
            << "listings = listings.csv\n"
            << "deflators = deflators.csv\n"
            << "alpha = 0.05\n"
            << "fb_range = 2011-04-H2..2011-09-H2\n"
            << "market_range = 2011-04-H2..2011-10-H1\n"
            << "outdir = out\n"
            << "threads = 0\n"
            << "document_frequency = false\n";
    }
    {
        nlohmann::ordered_json j;
        j["seed"] = spec.seed;
        j["price_dataset"] = dataset_name(spec.price_dataset);
        j["planted_beta"] = truth.planted_beta;
        nlohmann::ordered_json series_json;
        for (size_t ds = 0; ds < 4; ++ds) {
            nlohmann::ordered_json pts;
            for (const auto& [bucket, point] : truth.series[ds].points) {
                pts[format_bucket(bucket)] = {{"mean", point.mean_score},
                                              {"n", point.n_docs}};
            }
            series_json[dataset_name(static_cast<Dataset>(ds))] = std::move(pts);
        }
        j["series"] = std::move(series_json);
        j["termset"] = truth.termset;
        j["group_counts"] = truth.group_counts;
        j["listing_counts"] = truth.listing_counts;
        j["early_listings"] = truth.early_listings;
        std::ofstream out(path("synth_truth.json"));
        out << j.dump(2) << "\n";
    }

    output.files = {"corpus.jsonl",  "baseline.jsonl",   "lexicon.csv",
                    "denial_words.txt", "removal_words.txt", "gazetteer.txt",
                    "allowlist.txt", "listings.csv",     "deflators.csv",
                    "config.ini",    "synth_truth.json"};
    return output;
}

}  // namespace sentimark
