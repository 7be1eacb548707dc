// Times the serial reference implementations against the OpenMP kernels on
// a generated corpus: document scoring, term counting, partition labeling.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sentimark/corpus.hpp"
#include "sentimark/partition.hpp"
#include "sentimark/sentiment.hpp"
#include "sentimark/synth.hpp"
#include "sentimark/unicode.hpp"

using namespace sentimark;
namespace chrono = std::chrono;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    auto t0 = chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    long long n_docs = argc > 1 ? std::atoll(argv[1]) : 50000;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;

    std::string dir = (std::filesystem::temp_directory_path() /
                       "sentimark_bench_fixture").string();
    SyntheticSpec spec;
    spec.seed = 7;
    spec.n_docs = n_docs;
    spec.n_base_docs = 100;
    spec.n_listings = 100;
    generate_fixture(spec, dir);

    auto path = [&](const char* name) {
        return (std::filesystem::path(dir) / name).string();
    };
    PolarityLexicon lexicon = PolarityLexicon::load(
        path("lexicon.csv"), path("denial_words.txt"), path("removal_words.txt"));
    Gazetteer gazetteer = Gazetteer::load(path("gazetteer.txt"));
    auto allowlist = read_word_list(path("allowlist.txt"));
    Corpus corpus = load_corpus_jsonl(path("corpus.jsonl"));

    std::vector<std::string> vocabulary = lexicon.surfaces();
    for (const auto& w : gazetteer.names) vocabulary.push_back(w);
    for (const auto& w : allowlist) vocabulary.push_back(w);
    LongestMatchTokenizer tokenizer(vocabulary, lexicon.denial_words());
    TermSet termset = TermSet::from_terms(allowlist);
    auto candidates = content_term_candidates(lexicon, gazetteer, allowlist);

#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::cout << "corpus: " << corpus.documents.size() << " documents, "
              << threads << " threads, " << reps << " reps\n\n";
    std::printf("%-16s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms",
                "speedup");

    auto report = [&](const char* name, double serial_ms, double parallel_ms) {
        std::printf("%-16s %12.1f %12.1f %8.2fx\n", name, serial_ms, parallel_ms,
                    serial_ms / parallel_ms);
    };

    {
        double s = time_ms(
            [&] { score_corpus_serial(corpus, lexicon, tokenizer); }, reps);
        double p = time_ms([&] { score_corpus(corpus, lexicon, tokenizer); }, reps);
        report("score", s, p);
    }
    {
        double s = time_ms(
            [&] { count_terms_serial(corpus, tokenizer, candidates); }, reps);
        double p = time_ms([&] { count_terms(corpus, tokenizer, candidates); }, reps);
        report("count_terms", s, p);
    }
    {
        double s = time_ms(
            [&] { label_corpus_serial(corpus, gazetteer, termset); }, reps);
        double p = time_ms([&] { label_corpus(corpus, gazetteer, termset); }, reps);
        report("label", s, p);
    }
    return 0;
}
