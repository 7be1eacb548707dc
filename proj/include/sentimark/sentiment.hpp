#ifndef SENTIMARK_SENTIMENT_HPP
#define SENTIMARK_SENTIMENT_HPP

#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sentimark/corpus.hpp"
#include "sentimark/lexicon.hpp"
#include "sentimark/match.hpp"

namespace sentimark {

struct TokenizedClause {
    std::vector<std::string> tokens;
    int denial_count = 0;
};

// Tokenizer contract: text in, punctuation-delimited clauses of surface
// tokens out. The default below is a greedy longest-match segmenter; a
// morphological analyzer can be dropped in without touching scoring.
class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual std::vector<TokenizedClause> tokenize(std::string_view text) const = 0;
};

// Splits at clause punctuation, then greedy longest-match against the
// vocabulary from left to right; unmatched spans fall out as
// single-character tokens.
class LongestMatchTokenizer : public Tokenizer {
public:
    LongestMatchTokenizer(const std::vector<std::string>& vocabulary,
                          const std::unordered_set<std::string>& denial_words);

    std::vector<TokenizedClause> tokenize(std::string_view text) const override;

private:
    TokenTrie trie_;
    std::unordered_set<std::string> denial_;
};

struct PolarityCounts {
    long n_positive = 0;
    long n_negative = 0;
    long n_neutral = 0;

    bool operator==(const PolarityCounts&) const = default;
    PolarityCounts& operator+=(const PolarityCounts& o) {
        n_positive += o.n_positive;
        n_negative += o.n_negative;
        n_neutral += o.n_neutral;
        return *this;
    }
};

// Effective polarity of a polar token flips iff its clause holds an odd
// number of denial words; neutral never flips. A token that is both a
// denial word and a polar entry counts its own polarity only when it is
// the clause's sole token.
PolarityCounts count_polarities(const std::vector<TokenizedClause>& clauses,
                                const PolarityLexicon& lexicon);

// (n+ - n-) / (n+ + n- + n0); 0 when all counts are zero.
double score_text(const PolarityCounts& counts);

struct DocumentScore {
    double value = 0.0;         // text score plus attachment score, in [-2, 2]
    PolarityCounts counts;      // combined text + attachment counts
};

// Adds the attachment description's score when present and different from
// the main text.
DocumentScore score_document(const Document& doc, const PolarityLexicon& lexicon,
                             const Tokenizer& tokenizer);

struct ScoredDocument {
    std::string doc_id;
    HalfMonthBucket bucket;
    double score = 0.0;
    PolarityCounts counts;
};

// Parallel kernel and its serial reference; outputs are identical.
std::vector<ScoredDocument> score_corpus(const Corpus& corpus,
                                         const PolarityLexicon& lexicon,
                                         const Tokenizer& tokenizer,
                                         int threads = 0);
std::vector<ScoredDocument> score_corpus_serial(const Corpus& corpus,
                                                const PolarityLexicon& lexicon,
                                                const Tokenizer& tokenizer);

}  // namespace sentimark

#endif
