#ifndef SENTIMARK_CSV_HPP
#define SENTIMARK_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sentimark {

// RFC-4180 reader: quoted fields, embedded commas/quotes/newlines.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads one record into fields; returns false at end of input.
    bool next(std::vector<std::string>& fields);

    // 1-based line number where the last record started.
    size_t record_line() const { return record_line_; }

private:
    std::istream& in_;
    size_t line_ = 1;
    size_t record_line_ = 0;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// One-word-per-line list file; '#' comments and blank lines skipped.
std::vector<std::string> read_word_list(const std::string& path);

}  // namespace sentimark

#endif
