#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "k12/vocab.hpp"

namespace k12::tok {

// Debugging aid: the textual piece at each unpadded position, plus the
// index of the whitespace-level word it came from (-1 for [CLS]/[SEP]).
struct TokenSpan {
    std::string piece;
    int word_index = -1;
};

// Fixed-length single-segment encoder input. attention_mask is 1 on a
// prefix and 0 on the padded suffix; ids are [PAD] exactly where the mask
// is 0; token_type_ids are all zero.
struct TokenSequence {
    std::vector<int32_t> input_ids;
    std::vector<uint8_t> attention_mask;
    std::vector<uint8_t> token_type_ids;
    std::vector<TokenSpan> spans;

    int length() const { return static_cast<int>(input_ids.size()); }
    int unpadded_length() const;
};

// BERT-style tokenization over a fixed WordPiece vocabulary.
//
// basic_tokenize: clean control characters, isolate CJK ideographs, split
// on whitespace, lowercase + strip accents (when lowercasing is on), then
// split out every punctuation character as its own token.
//
// wordpiece: greedy longest-match-first against the vocabulary, with
// non-initial pieces carrying the "##" prefix; unmatched words map to
// [UNK]. All operations are pure and safe to call concurrently.
class Tokenizer {
public:
    explicit Tokenizer(const Vocab& vocab, bool lowercase = true, int max_word_chars = 100)
        : vocab_(vocab), lowercase_(lowercase), max_word_chars_(max_word_chars) {}

    const Vocab& vocab() const { return vocab_; }

    std::vector<std::string> basic_tokenize(std::string_view text) const;

    std::vector<std::string> wordpiece(std::string_view word) const;

    // basic_tokenize followed by wordpiece on each word.
    std::vector<std::string> tokenize(std::string_view text) const;

    // [CLS] + pieces + [SEP], tail-truncated so the total is at most
    // max_len, then padded with [PAD] to exactly max_len.
    TokenSequence encode(std::string_view text, int max_len) const;

    // Drops special tokens, merges "##" continuations, joins with spaces.
    std::string decode(std::span<const int32_t> ids) const;

private:
    const Vocab& vocab_;
    bool lowercase_;
    int max_word_chars_;
};

} // namespace k12::tok
