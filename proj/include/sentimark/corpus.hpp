#ifndef SENTIMARK_CORPUS_HPP
#define SENTIMARK_CORPUS_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentimark/calendar.hpp"

namespace sentimark {

enum class DocKind { Post, Comment };

const char* doc_kind_name(DocKind k);

// One post/comment with its optional attachment description. Text fields
// are stored trimmed and NFC-normalized.
struct Document {
    std::string doc_id;
    std::string page_id;
    DocKind kind = DocKind::Post;
    CivilDateTime timestamp;
    HalfMonthBucket bucket;
    std::string text;
    std::optional<std::string> attachment_text;
};

// Raw ingestion record before validation; absent optionals mean the field
// was missing from the source row.
struct RawDocument {
    std::optional<std::string> id;
    std::optional<std::string> page;
    std::optional<std::string> kind;
    std::optional<std::string> ts;
    std::optional<std::string> text;
    std::optional<std::string> attachment;
};

// Throws MissingField / BadTimestamp / EmptyText.
Document validate_document(const RawDocument& raw);

struct CorpusStats {
    size_t posts = 0;
    size_t comments = 0;
    std::map<HalfMonthBucket, size_t> by_bucket;

    size_t total() const { return posts + comments; }
};

// Immutable after load; safe for concurrent reads.
struct Corpus {
    std::vector<Document> documents;
    CorpusStats stats;
};

// JSON Lines, one document per line, keys: id, page, kind, ts, text,
// attachment (optional). Prints a row count and per-bucket histogram to
// `log` when given. Duplicate doc_ids are rejected.
Corpus load_corpus_jsonl(const std::string& path, std::ostream* log = nullptr);

Corpus make_corpus(std::vector<Document> documents);

}  // namespace sentimark

#endif
