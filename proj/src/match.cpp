#include "sentimark/match.hpp"

namespace sentimark {

void TokenTrie::add(std::string_view word) {
    if (word.empty()) return;
    if (nodes_.empty()) nodes_.emplace_back();
    std::int32_t cur = 0;
    for (char ch : word) {
        auto b = static_cast<unsigned char>(ch);
        auto it = nodes_[cur].next.find(b);
        if (it == nodes_[cur].next.end()) {
            nodes_.emplace_back();
            std::int32_t idx = static_cast<std::int32_t>(nodes_.size()) - 1;
            nodes_[cur].next.emplace(b, idx);
            cur = idx;
        } else {
            cur = it->second;
        }
    }
    if (!nodes_[cur].terminal) {
        nodes_[cur].terminal = true;
        ++size_;
    }
}

size_t TokenTrie::longest_match(std::string_view text, size_t pos) const {
    if (nodes_.empty()) return 0;
    std::int32_t cur = 0;
    size_t best = 0;
    for (size_t i = pos; i < text.size(); ++i) {
        auto b = static_cast<unsigned char>(text[i]);
        auto it = nodes_[cur].next.find(b);
        if (it == nodes_[cur].next.end()) break;
        cur = it->second;
        if (nodes_[cur].terminal) best = i - pos + 1;
    }
    return best;
}

bool TokenTrie::contains_any(std::string_view text) const {
    if (nodes_.empty()) return false;
    for (size_t pos = 0; pos < text.size(); ++pos) {
        std::int32_t cur = 0;
        for (size_t i = pos; i < text.size(); ++i) {
            auto b = static_cast<unsigned char>(text[i]);
            auto it = nodes_[cur].next.find(b);
            if (it == nodes_[cur].next.end()) break;
            cur = it->second;
            if (nodes_[cur].terminal) return true;
        }
    }
    return false;
}

}  // namespace sentimark
