#include "sentimark/errors.hpp"

namespace sentimark {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MissingField: return "MissingField";
        case Errc::BadTimestamp: return "BadTimestamp";
        case Errc::EmptyText: return "EmptyText";
        case Errc::DuplicateDocId: return "DuplicateDocId";
        case Errc::ParseError: return "ParseError";
        case Errc::DuplicateEntry: return "DuplicateEntry";
        case Errc::DegenerateTable: return "DegenerateTable";
        case Errc::RankDeficient: return "RankDeficient";
        case Errc::Underdetermined: return "Underdetermined";
        case Errc::ZeroVariance: return "ZeroVariance";
        case Errc::SplitBucket: return "SplitBucket";
        case Errc::MissingDeflator: return "MissingDeflator";
        case Errc::EmptyDesign: return "EmptyDesign";
        case Errc::BadConfig: return "BadConfig";
        case Errc::MissingInput: return "MissingInput";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace sentimark
