#include "sentimark/sentiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sentimark/unicode.hpp"

namespace sentimark {

namespace {

// Clause delimiters: ideographic and ASCII sentence/clause punctuation
// plus newlines.
bool is_clause_break(char32_t cp) {
    switch (cp) {
        case U'。':  // ideographic full stop
        case U'、':  // ideographic comma
        case U'．':  // fullwidth full stop
        case U'，':  // fullwidth comma
        case U'.':
        case U',':
        case U'!':
        case U'?':
        case U'；':  // fullwidth semicolon
        case U';':
        case U'\n':
        case U'\r':
            return true;
        default:
            return false;
    }
}

}  // namespace

LongestMatchTokenizer::LongestMatchTokenizer(
    const std::vector<std::string>& vocabulary,
    const std::unordered_set<std::string>& denial_words) {
    for (const auto& w : vocabulary) trie_.add(nfc_normalize(w));
    for (const auto& w : denial_words) {
        std::string norm = nfc_normalize(w);
        trie_.add(norm);
        denial_.insert(std::move(norm));
    }
}

std::vector<TokenizedClause> LongestMatchTokenizer::tokenize(
    std::string_view text) const {
    std::vector<TokenizedClause> clauses;
    TokenizedClause current;

    auto flush = [&]() {
        if (!current.tokens.empty()) clauses.push_back(std::move(current));
        current = TokenizedClause{};
    };

    size_t pos = 0;
    while (pos < text.size()) {
        size_t probe = pos;
        char32_t cp = decode_utf8(text, probe);
        if (is_clause_break(cp)) {
            flush();
            pos = probe;
            continue;
        }
        size_t len = trie_.longest_match(text, pos);
        std::string token;
        if (len > 0) {
            token.assign(text.substr(pos, len));
            pos += len;
        } else {
            token.assign(text.substr(pos, probe - pos));
            pos = probe;
        }
        if (denial_.count(token)) ++current.denial_count;
        current.tokens.push_back(std::move(token));
    }
    flush();
    return clauses;
}

PolarityCounts count_polarities(const std::vector<TokenizedClause>& clauses,
                                const PolarityLexicon& lexicon) {
    PolarityCounts counts;
    for (const auto& clause : clauses) {
        bool flip = (clause.denial_count % 2) != 0;
        bool sole = clause.tokens.size() == 1;
        for (const auto& token : clause.tokens) {
            if (lexicon.is_denial(token) && !sole) continue;  // denial role wins
            auto pol = lexicon.lookup(token);
            if (!pol) continue;
            Polarity effective = *pol;
            if (flip && !lexicon.is_denial(token)) {
                if (effective == Polarity::Positive) effective = Polarity::Negative;
                else if (effective == Polarity::Negative) effective = Polarity::Positive;
            }
            switch (effective) {
                case Polarity::Positive: ++counts.n_positive; break;
                case Polarity::Negative: ++counts.n_negative; break;
                case Polarity::Neutral: ++counts.n_neutral; break;
            }
        }
    }
    return counts;
}

double score_text(const PolarityCounts& c) {
    long denom = c.n_positive + c.n_negative + c.n_neutral;
    if (denom == 0) return 0.0;
    return static_cast<double>(c.n_positive - c.n_negative) /
           static_cast<double>(denom);
}

DocumentScore score_document(const Document& doc, const PolarityLexicon& lexicon,
                             const Tokenizer& tokenizer) {
    DocumentScore result;
    PolarityCounts text_counts = count_polarities(tokenizer.tokenize(doc.text), lexicon);
    result.value = score_text(text_counts);
    result.counts = text_counts;
    if (doc.attachment_text && *doc.attachment_text != doc.text) {
        PolarityCounts att_counts =
            count_polarities(tokenizer.tokenize(*doc.attachment_text), lexicon);
        result.value += score_text(att_counts);
        result.counts += att_counts;
    }
    return result;
}

std::vector<ScoredDocument> score_corpus_serial(const Corpus& corpus,
                                                const PolarityLexicon& lexicon,
                                                const Tokenizer& tokenizer) {
    std::vector<ScoredDocument> out(corpus.documents.size());
    for (size_t i = 0; i < corpus.documents.size(); ++i) {
        const Document& doc = corpus.documents[i];
        DocumentScore s = score_document(doc, lexicon, tokenizer);
        out[i] = {doc.doc_id, doc.bucket, s.value, s.counts};
    }
    return out;
}

std::vector<ScoredDocument> score_corpus(const Corpus& corpus,
                                         const PolarityLexicon& lexicon,
                                         const Tokenizer& tokenizer,
                                         int threads) {
    std::vector<ScoredDocument> out(corpus.documents.size());
    const auto n = static_cast<long long>(corpus.documents.size());
#ifdef _OPENMP
    if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long long i = 0; i < n; ++i) {
            const Document& doc = corpus.documents[i];
            DocumentScore s = score_document(doc, lexicon, tokenizer);
            out[i] = {doc.doc_id, doc.bucket, s.value, s.counts};
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const Document& doc = corpus.documents[i];
        DocumentScore s = score_document(doc, lexicon, tokenizer);
        out[i] = {doc.doc_id, doc.bucket, s.value, s.counts};
    }
#else
    (void)threads;
    for (long long i = 0; i < n; ++i) {
        const Document& doc = corpus.documents[i];
        DocumentScore s = score_document(doc, lexicon, tokenizer);
        out[i] = {doc.doc_id, doc.bucket, s.value, s.counts};
    }
#endif
    return out;
}

}  // namespace sentimark
