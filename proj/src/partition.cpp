#include "sentimark/partition.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sentimark/csv.hpp"
#include "sentimark/errors.hpp"
#include "sentimark/numerics.hpp"
#include "sentimark/unicode.hpp"

namespace sentimark {

const char* dataset_name(Dataset d) {
    switch (d) {
        case Dataset::D1: return "D1";
        case Dataset::D2: return "D2";
        case Dataset::D3: return "D3";
        case Dataset::D4: return "D4";
    }
    return "?";
}

Dataset parse_dataset(std::string_view s) {
    for (Dataset d : kAllDatasets) {
        if (s == dataset_name(d)) return d;
    }
    fail(Errc::ParseError, "unknown dataset '" + std::string(s) + "'");
}

Gazetteer Gazetteer::from_names(std::vector<std::string> names) {
    Gazetteer g;
    g.names.reserve(names.size());
    for (auto& name : names) {
        std::string norm = nfc_normalize(name);
        if (norm.empty()) continue;
        g.trie.add(norm);
        g.names.push_back(std::move(norm));
    }
    return g;
}

Gazetteer Gazetteer::load(const std::string& path) {
    return from_names(read_word_list(path));
}

bool geo_match(const Document& doc, const Gazetteer& gazetteer) {
    if (gazetteer.trie.contains_any(doc.text)) return true;
    return doc.attachment_text && gazetteer.trie.contains_any(*doc.attachment_text);
}

TermSet TermSet::from_terms(std::vector<std::string> terms) {
    TermSet t;
    t.terms.reserve(terms.size());
    for (auto& term : terms) {
        std::string norm = nfc_normalize(term);
        if (norm.empty()) continue;
        t.trie.add(norm);
        t.terms.push_back(std::move(norm));
    }
    return t;
}

bool interest_match(const Document& doc, const TermSet& termset) {
    if (termset.trie.contains_any(doc.text)) return true;
    return doc.attachment_text && termset.trie.contains_any(*doc.attachment_text);
}

namespace {

PartitionLabel label_one(const Document& doc, const Gazetteer& gazetteer,
                         const TermSet& termset) {
    return {geo_match(doc, gazetteer), interest_match(doc, termset)};
}

}  // namespace

std::vector<PartitionLabel> label_corpus_serial(const Corpus& corpus,
                                                const Gazetteer& gazetteer,
                                                const TermSet& termset) {
    std::vector<PartitionLabel> labels(corpus.documents.size());
    for (size_t i = 0; i < corpus.documents.size(); ++i) {
        labels[i] = label_one(corpus.documents[i], gazetteer, termset);
    }
    return labels;
}

std::vector<PartitionLabel> label_corpus(const Corpus& corpus,
                                         const Gazetteer& gazetteer,
                                         const TermSet& termset, int threads) {
    std::vector<PartitionLabel> labels(corpus.documents.size());
    const auto n = static_cast<long long>(corpus.documents.size());
#ifdef _OPENMP
    if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long long i = 0; i < n; ++i) {
            labels[i] = label_one(corpus.documents[i], gazetteer, termset);
        }
        return labels;
    }
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        labels[i] = label_one(corpus.documents[i], gazetteer, termset);
    }
#else
    (void)threads;
    for (long long i = 0; i < n; ++i) {
        labels[i] = label_one(corpus.documents[i], gazetteer, termset);
    }
#endif
    return labels;
}

LabelSummary summarize_labels(const std::vector<PartitionLabel>& labels) {
    LabelSummary s;
    for (const auto& l : labels) {
        if (l.in_d1) ++s.d1;
        if (l.in_d2) ++s.d2;
        if (l.in_d3()) ++s.d3;
        if (l.in_d4()) ++s.d4;
    }
    return s;
}

std::unordered_set<std::string> content_term_candidates(
    const PolarityLexicon& lexicon, const Gazetteer& gazetteer,
    const std::vector<std::string>& allowlist) {
    std::unordered_set<std::string> candidates;
    auto add = [&](const std::string& surface) {
        if (codepoint_length(surface) > 1) candidates.insert(surface);
    };
    for (const auto& surface : lexicon.content_surfaces()) add(surface);
    for (const auto& name : gazetteer.names) add(name);
    for (const auto& term : allowlist) add(nfc_normalize(term));
    return candidates;
}

namespace {

void accumulate_doc_terms(const Document& doc, const Tokenizer& tokenizer,
                          const std::unordered_set<std::string>& candidates,
                          bool document_frequency, TermCounts& out) {
    std::unordered_set<std::string> seen;
    auto scan = [&](std::string_view text) {
        for (const auto& clause : tokenizer.tokenize(text)) {
            for (const auto& token : clause.tokens) {
                if (!document_frequency) ++out.total_tokens;
                if (!candidates.count(token)) continue;
                if (document_frequency) {
                    seen.insert(token);
                } else {
                    ++out.counts[token];
                }
            }
        }
    };
    scan(doc.text);
    if (doc.attachment_text && *doc.attachment_text != doc.text) {
        scan(*doc.attachment_text);
    }
    if (document_frequency) {
        ++out.total_tokens;  // one trial per document
        for (const auto& term : seen) ++out.counts[term];
    }
}

}  // namespace

TermCounts count_terms_serial(const Corpus& corpus, const Tokenizer& tokenizer,
                              const std::unordered_set<std::string>& candidates,
                              bool document_frequency) {
    TermCounts out;
    for (const auto& doc : corpus.documents) {
        accumulate_doc_terms(doc, tokenizer, candidates, document_frequency, out);
    }
    return out;
}

TermCounts count_terms(const Corpus& corpus, const Tokenizer& tokenizer,
                       const std::unordered_set<std::string>& candidates,
                       bool document_frequency, int threads) {
#ifdef _OPENMP
    const auto n = static_cast<long long>(corpus.documents.size());
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
    std::vector<TermCounts> partial(static_cast<size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
    {
        TermCounts& mine = partial[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (long long i = 0; i < n; ++i) {
            accumulate_doc_terms(corpus.documents[i], tokenizer, candidates,
                                 document_frequency, mine);
        }
    }
    // Integer merge commutes, so the result is thread-count independent.
    TermCounts out;
    for (const auto& part : partial) {
        out.total_tokens += part.total_tokens;
        for (const auto& [term, count] : part.counts) out.counts[term] += count;
    }
    return out;
#else
    (void)threads;
    return count_terms_serial(corpus, tokenizer, candidates, document_frequency);
#endif
}

std::vector<TermSelection> select_salient_terms(
    const TermCounts& event_counts, const TermCounts& base_counts, double alpha,
    std::vector<std::string>* warnings) {
    if (event_counts.total_tokens <= 0 || base_counts.total_tokens <= 0) {
        fail(Errc::DegenerateTable, "empty corpus in term selection");
    }
    std::vector<std::string> terms;
    terms.reserve(event_counts.counts.size() + base_counts.counts.size());
    for (const auto& [term, _] : event_counts.counts) terms.push_back(term);
    for (const auto& [term, _] : base_counts.counts) {
        if (!event_counts.counts.count(term)) terms.push_back(term);
    }
    std::sort(terms.begin(), terms.end());

    std::vector<TermSelection> out;
    out.reserve(terms.size());
    for (const auto& term : terms) {
        TermSelection sel;
        sel.term = term;
        auto it_e = event_counts.counts.find(term);
        auto it_b = base_counts.counts.find(term);
        sel.count_event = it_e == event_counts.counts.end() ? 0 : it_e->second;
        sel.count_base = it_b == base_counts.counts.end() ? 0 : it_b->second;
        sel.total_event = event_counts.total_tokens;
        sel.total_base = base_counts.total_tokens;
        if (sel.count_event == 0 && sel.count_base == 0) {
            if (warnings) warnings->push_back(term);
            continue;
        }
        ContingencyTable2x2 table{sel.count_event, sel.total_event - sel.count_event,
                                  sel.count_base, sel.total_base - sel.count_base};
        Chi2Result r = chi_square_2x2(table);
        sel.chi2 = r.chi2;
        sel.p_value = r.p;
        double prop_event = static_cast<double>(sel.count_event) /
                            static_cast<double>(sel.total_event);
        double prop_base = static_cast<double>(sel.count_base) /
                           static_cast<double>(sel.total_base);
        sel.selected = sel.p_value < alpha && prop_event > prop_base;
        out.push_back(std::move(sel));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const TermSelection& a, const TermSelection& b) {
                         if (a.chi2 != b.chi2) return a.chi2 > b.chi2;
                         return a.term < b.term;
                     });
    return out;
}

}  // namespace sentimark
