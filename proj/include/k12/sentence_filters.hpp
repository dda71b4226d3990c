#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "k12/dictionary.hpp"

namespace k12::corpus {

enum class DropReason { none, empty, script, spellcheck, too_short, duplicate };

const char* drop_reason_name(DropReason r);

// Inclusive code-point ranges whose presence drops a sentence. The default
// policy disallows the Devanagari block U+0900-U+097F.
struct ScriptPolicy {
    std::vector<std::pair<uint32_t, uint32_t>> disallowed_blocks;

    static ScriptPolicy devanagari_default();
    bool allows(char32_t cp) const;
};

struct ScriptVerdict {
    bool keep = true;
    DropReason reason = DropReason::none;
};

// Drops sentences containing any disallowed-block code point; empty or
// whitespace-only sentences drop with reason `empty`.
ScriptVerdict script_filter(std::string_view sentence, const ScriptPolicy& policy);

struct SpellVerdict {
    bool keep = false;
    int approved = 0;
    int rejected = 0;
};

// Tokenizes on whitespace, strips surrounding punctuation, lowercases,
// then counts dictionary hits. Pure-numeric tokens are neutral. Keeps the
// sentence only when approved is strictly greater than rejected.
SpellVerdict spellcheck_filter(std::string_view sentence, const Dictionary& dict);

// Number of whitespace word tokens, for the minimum-length noise rule.
int word_token_count(std::string_view sentence);

// casefold + whitespace collapse; the exact-match dedup key.
std::string dedup_key(std::string_view text);

// Tracks seen sentences; first occurrence wins. Feed records in the
// deterministic (source, doc_id, seq_no) merge order.
class Deduper {
public:
    // Returns true when the text is new, false for a duplicate.
    bool insert(std::string_view text);
    int64_t dropped() const { return dropped_; }

private:
    std::unordered_set<std::string> seen_;
    int64_t dropped_ = 0;
};

} // namespace k12::corpus
