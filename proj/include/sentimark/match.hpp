#ifndef SENTIMARK_MATCH_HPP
#define SENTIMARK_MATCH_HPP

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sentimark {

// Byte-level trie over UTF-8 strings. Backs both the greedy longest-match
// tokenizer and multi-pattern substring containment. Matching operates on
// raw bytes; valid UTF-8 on both sides keeps matches on character
// boundaries.
class TokenTrie {
public:
    void add(std::string_view word);

    bool empty() const { return nodes_.empty() || size_ == 0; }
    size_t size() const { return size_; }

    // Length in bytes of the longest vocabulary word starting at `pos`,
    // 0 if none.
    size_t longest_match(std::string_view text, size_t pos) const;

    // True iff any vocabulary word occurs anywhere in `text`.
    bool contains_any(std::string_view text) const;

private:
    struct Node {
        std::unordered_map<unsigned char, std::int32_t> next;
        bool terminal = false;
    };
    std::vector<Node> nodes_;
    size_t size_ = 0;
};

}  // namespace sentimark

#endif
