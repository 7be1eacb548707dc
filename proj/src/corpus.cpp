#include "sentimark/corpus.hpp"

#include <fstream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "sentimark/errors.hpp"
#include "sentimark/unicode.hpp"

namespace sentimark {

const char* doc_kind_name(DocKind k) {
    return k == DocKind::Post ? "post" : "comment";
}

Document validate_document(const RawDocument& raw) {
    auto require = [](const std::optional<std::string>& f, const char* name) {
        if (!f) fail(Errc::MissingField, std::string("missing field '") + name + "'");
        return *f;
    };
    Document doc;
    doc.doc_id = trim(require(raw.id, "id"));
    if (doc.doc_id.empty()) fail(Errc::MissingField, "empty doc id");
    doc.page_id = trim(require(raw.page, "page"));

    std::string kind = trim(require(raw.kind, "kind"));
    if (kind == "post") doc.kind = DocKind::Post;
    else if (kind == "comment") doc.kind = DocKind::Comment;
    else fail(Errc::ParseError, "unknown kind '" + kind + "'");

    doc.timestamp = parse_timestamp(trim(require(raw.ts, "ts")));
    doc.bucket = bucket_of(doc.timestamp);

    doc.text = nfc_normalize(trim(require(raw.text, "text")));
    if (raw.attachment) {
        std::string att = nfc_normalize(trim(*raw.attachment));
        if (!att.empty()) doc.attachment_text = std::move(att);
    }
    if (doc.text.empty() && !doc.attachment_text) {
        fail(Errc::EmptyText, "document '" + doc.doc_id +
                                  "' has no text and no attachment description");
    }
    return doc;
}

Corpus make_corpus(std::vector<Document> documents) {
    Corpus corpus;
    std::unordered_set<std::string> seen;
    seen.reserve(documents.size());
    for (const auto& doc : documents) {
        if (!seen.insert(doc.doc_id).second) {
            fail(Errc::DuplicateDocId, "duplicate doc id '" + doc.doc_id + "'");
        }
        if (doc.kind == DocKind::Post) ++corpus.stats.posts;
        else ++corpus.stats.comments;
        ++corpus.stats.by_bucket[doc.bucket];
    }
    corpus.documents = std::move(documents);
    return corpus;
}

Corpus load_corpus_jsonl(const std::string& path, std::ostream* log) {
    std::ifstream in(path);
    if (!in) fail(Errc::MissingInput, "cannot open corpus '" + path + "'");

    std::vector<Document> documents;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(Errc::ParseError,
                 path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        RawDocument raw;
        auto pick = [&](const char* key) -> std::optional<std::string> {
            auto it = j.find(key);
            if (it == j.end() || it->is_null()) return std::nullopt;
            if (it->is_string()) return it->get<std::string>();
            return it->dump();
        };
        raw.id = pick("id");
        raw.page = pick("page");
        raw.kind = pick("kind");
        raw.ts = pick("ts");
        raw.text = pick("text");
        raw.attachment = pick("attachment");
        try {
            documents.push_back(validate_document(raw));
        } catch (const PipelineError& e) {
            fail(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }

    Corpus corpus = make_corpus(std::move(documents));
    if (log) {
        *log << path << ": " << corpus.documents.size() << " documents ("
             << corpus.stats.posts << " posts, " << corpus.stats.comments
             << " comments)\n";
        for (const auto& [bucket, n] : corpus.stats.by_bucket) {
            *log << "  " << format_bucket(bucket) << "  " << n << "\n";
        }
    }
    return corpus;
}

}  // namespace sentimark
