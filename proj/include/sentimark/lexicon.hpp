#ifndef SENTIMARK_LEXICON_HPP
#define SENTIMARK_LEXICON_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sentimark {

enum class WordClass { Noun, Verb, Adjective, AdjectivalVerb, Other };
enum class Polarity { Positive, Negative, Neutral };

const char* word_class_name(WordClass c);
const char* polarity_name(Polarity p);
WordClass parse_word_class(std::string_view s);  // throws Errc::ParseError
Polarity parse_polarity(std::string_view s);     // throws Errc::ParseError

struct LexiconEntry {
    std::string surface;
    WordClass word_class;
    Polarity polarity;
};

// Polarity dictionary plus the denial (negation) word list and the
// disaster-word removal list. Removal wins over entry presence: removed
// surfaces stay stored for round-tripping but never answer lookups.
class PolarityLexicon {
public:
    static PolarityLexicon load(const std::string& dictionary_path,
                                const std::string& denial_path,
                                const std::string& removal_path);

    void save(const std::string& dictionary_path,
              const std::string& denial_path,
              const std::string& removal_path) const;

    void add_entry(std::string_view surface, WordClass wc, Polarity pol);
    void add_denial(std::string_view word);
    void add_removed(std::string_view word);

    // Word-class conflicts resolve by fixed precedence:
    // noun < verb < adjective < adjectival_verb < other.
    std::optional<Polarity> lookup(std::string_view token) const;

    bool is_denial(std::string_view token) const;
    bool is_removed(std::string_view token) const;

    size_t entry_count() const;

    struct PolarityTally {
        size_t positive = 0;
        size_t negative = 0;
        size_t neutral = 0;
    };
    PolarityTally tally() const;

    std::vector<std::string> surfaces() const;
    // Surfaces carrying at least one noun/verb/adjective/adjectival_verb tag.
    std::vector<std::string> content_surfaces() const;
    const std::unordered_set<std::string>& denial_words() const { return denial_; }
    const std::unordered_set<std::string>& removed_words() const { return removed_; }

    bool operator==(const PolarityLexicon& other) const;

private:
    // surface -> per-word-class polarity slot
    using ClassSlots = std::array<std::optional<Polarity>, 5>;
    std::unordered_map<std::string, ClassSlots> entries_;
    std::unordered_set<std::string> denial_;
    std::unordered_set<std::string> removed_;
};

}  // namespace sentimark

#endif
