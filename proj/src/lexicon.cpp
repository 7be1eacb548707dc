#include "sentimark/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "sentimark/csv.hpp"
#include "sentimark/errors.hpp"
#include "sentimark/unicode.hpp"

namespace sentimark {

namespace {

constexpr std::array<const char*, 5> kClassNames = {
    "noun", "verb", "adjective", "adjectival_verb", "other"};
constexpr std::array<const char*, 3> kPolarityNames = {"positive", "negative",
                                                       "neutral"};

}  // namespace

const char* word_class_name(WordClass c) {
    return kClassNames[static_cast<size_t>(c)];
}

const char* polarity_name(Polarity p) {
    return kPolarityNames[static_cast<size_t>(p)];
}

WordClass parse_word_class(std::string_view s) {
    for (size_t i = 0; i < kClassNames.size(); ++i) {
        if (s == kClassNames[i]) return static_cast<WordClass>(i);
    }
    fail(Errc::ParseError, "unknown word class '" + std::string(s) + "'");
}

Polarity parse_polarity(std::string_view s) {
    for (size_t i = 0; i < kPolarityNames.size(); ++i) {
        if (s == kPolarityNames[i]) return static_cast<Polarity>(i);
    }
    fail(Errc::ParseError, "unknown polarity tag '" + std::string(s) + "'");
}

void PolarityLexicon::add_entry(std::string_view surface, WordClass wc, Polarity pol) {
    std::string key = nfc_normalize(surface);
    if (key.empty()) fail(Errc::ParseError, "empty lexicon surface");
    auto& slots = entries_[key];
    auto& slot = slots[static_cast<size_t>(wc)];
    if (slot.has_value()) {
        if (*slot != pol) {
            fail(Errc::DuplicateEntry,
                 "conflicting polarity for '" + key + "' (" + word_class_name(wc) + ")");
        }
        return;  // exact duplicate, ignore
    }
    slot = pol;
}

void PolarityLexicon::add_denial(std::string_view word) {
    denial_.insert(nfc_normalize(word));
}

void PolarityLexicon::add_removed(std::string_view word) {
    removed_.insert(nfc_normalize(word));
}

PolarityLexicon PolarityLexicon::load(const std::string& dictionary_path,
                                      const std::string& denial_path,
                                      const std::string& removal_path) {
    PolarityLexicon lex;
    std::ifstream in(dictionary_path);
    if (!in) fail(Errc::MissingInput, "cannot open dictionary '" + dictionary_path + "'");
    CsvReader reader(in);
    std::vector<std::string> fields;
    bool header = true;
    while (reader.next(fields)) {
        if (header) {
            header = false;
            continue;
        }
        if (fields.size() != 3) {
            fail(Errc::ParseError, dictionary_path + ":" +
                                       std::to_string(reader.record_line()) +
                                       ": expected 3 fields, got " +
                                       std::to_string(fields.size()));
        }
        lex.add_entry(fields[0], parse_word_class(fields[1]), parse_polarity(fields[2]));
    }
    for (const auto& w : read_word_list(denial_path)) lex.add_denial(w);
    for (const auto& w : read_word_list(removal_path)) lex.add_removed(w);
    return lex;
}

void PolarityLexicon::save(const std::string& dictionary_path,
                           const std::string& denial_path,
                           const std::string& removal_path) const {
    std::ofstream dict(dictionary_path);
    if (!dict) fail(Errc::MissingInput, "cannot write '" + dictionary_path + "'");
    dict << "surface,word_class,polarity\n";
    std::vector<std::string> keys;
    keys.reserve(entries_.size());
    for (const auto& [surface, _] : entries_) keys.push_back(surface);
    std::sort(keys.begin(), keys.end());
    for (const auto& surface : keys) {
        const auto& slots = entries_.at(surface);
        for (size_t c = 0; c < slots.size(); ++c) {
            if (!slots[c]) continue;
            write_csv_row(dict, {surface, kClassNames[c],
                                 polarity_name(*slots[c])});
        }
    }
    auto dump_list = [](const std::string& path,
                        const std::unordered_set<std::string>& words) {
        std::ofstream out(path);
        if (!out) fail(Errc::MissingInput, "cannot write '" + path + "'");
        std::vector<std::string> sorted(words.begin(), words.end());
        std::sort(sorted.begin(), sorted.end());
        for (const auto& w : sorted) out << w << '\n';
    };
    dump_list(denial_path, denial_);
    dump_list(removal_path, removed_);
}

std::optional<Polarity> PolarityLexicon::lookup(std::string_view token) const {
    auto it = entries_.find(std::string(token));
    if (it == entries_.end()) return std::nullopt;
    if (removed_.count(it->first)) return std::nullopt;
    for (const auto& slot : it->second) {
        if (slot) return *slot;
    }
    return std::nullopt;
}

bool PolarityLexicon::is_denial(std::string_view token) const {
    return denial_.count(std::string(token)) > 0;
}

bool PolarityLexicon::is_removed(std::string_view token) const {
    return removed_.count(std::string(token)) > 0;
}

size_t PolarityLexicon::entry_count() const {
    size_t n = 0;
    for (const auto& [_, slots] : entries_) {
        for (const auto& slot : slots) {
            if (slot) ++n;
        }
    }
    return n;
}

PolarityLexicon::PolarityTally PolarityLexicon::tally() const {
    PolarityTally t;
    for (const auto& [surface, slots] : entries_) {
        if (removed_.count(surface)) continue;
        for (const auto& slot : slots) {
            if (!slot) continue;
            switch (*slot) {
                case Polarity::Positive: ++t.positive; break;
                case Polarity::Negative: ++t.negative; break;
                case Polarity::Neutral: ++t.neutral; break;
            }
        }
    }
    return t;
}

std::vector<std::string> PolarityLexicon::surfaces() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [surface, _] : entries_) out.push_back(surface);
    return out;
}

std::vector<std::string> PolarityLexicon::content_surfaces() const {
    std::vector<std::string> out;
    for (const auto& [surface, slots] : entries_) {
        for (WordClass wc : {WordClass::Noun, WordClass::Verb, WordClass::Adjective,
                             WordClass::AdjectivalVerb}) {
            if (slots[static_cast<size_t>(wc)]) {
                out.push_back(surface);
                break;
            }
        }
    }
    return out;
}

bool PolarityLexicon::operator==(const PolarityLexicon& other) const {
    return entries_ == other.entries_ && denial_ == other.denial_ &&
           removed_ == other.removed_;
}

}  // namespace sentimark
