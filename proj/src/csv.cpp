#include "sentimark/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "sentimark/errors.hpp"
#include "sentimark/unicode.hpp"

namespace sentimark {

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    while (c == '\r' || c == '\n') {  // skip blank lines between records
        if (c == '\n') ++line_;
        c = in_.get();
    }
    if (c == EOF) return false;
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    while (true) {
        if (c == EOF) {
            fields.push_back(std::move(field));
            return true;
        }
        if (quoted) {
            if (c == '"') {
                int nxt = in_.get();
                if (nxt == '"') {
                    field.push_back('"');
                } else {
                    quoted = false;
                    c = nxt;
                    continue;
                }
            } else {
                if (c == '\n') ++line_;
                field.push_back(static_cast<char>(c));
            }
        } else {
            if (c == '"' && field.empty()) {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n' || c == '\r') {
                if (c == '\r' && in_.peek() == '\n') in_.get();
                ++line_;
                fields.push_back(std::move(field));
                return true;
            } else {
                field.push_back(static_cast<char>(c));
            }
        }
        c = in_.get();
    }
}

std::string csv_escape(std::string_view field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << csv_escape(fields[i]);
    }
    out.put('\n');
}

std::vector<std::string> read_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::MissingInput, "cannot open word list '" + path + "'");
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string w = trim(line);
        if (!w.empty()) words.push_back(std::move(w));
    }
    return words;
}

}  // namespace sentimark
