#ifndef SENTIMARK_ERRORS_HPP
#define SENTIMARK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sentimark {

// Error categories surfaced by the pipeline. Input-shaped problems map to
// CLI exit code 1, numeric failures to 2, internal invariant breaches to 3.
enum class Errc {
    MissingField,
    BadTimestamp,
    EmptyText,
    DuplicateDocId,
    ParseError,
    DuplicateEntry,
    DegenerateTable,
    RankDeficient,
    Underdetermined,
    ZeroVariance,
    SplitBucket,
    MissingDeflator,
    EmptyDesign,
    BadConfig,
    MissingInput,
    Internal,
};

const char* errc_name(Errc c);

class PipelineError : public std::runtime_error {
public:
    PipelineError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) {
    throw PipelineError(c, msg);
}

}  // namespace sentimark

#endif
