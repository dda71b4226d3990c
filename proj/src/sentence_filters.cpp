#include "k12/sentence_filters.hpp"

#include "k12/utf8.hpp"

namespace k12::corpus {

const char* drop_reason_name(DropReason r) {
    switch (r) {
        case DropReason::none: return "none";
        case DropReason::empty: return "empty";
        case DropReason::script: return "script";
        case DropReason::spellcheck: return "spellcheck";
        case DropReason::too_short: return "too_short";
        case DropReason::duplicate: return "duplicate";
    }
    return "none";
}

ScriptPolicy ScriptPolicy::devanagari_default() {
    return ScriptPolicy{{{0x0900, 0x097F}}};
}

bool ScriptPolicy::allows(char32_t cp) const {
    for (const auto& [lo, hi] : disallowed_blocks)
        if (cp >= lo && cp <= hi) return false;
    return true;
}

ScriptVerdict script_filter(std::string_view sentence, const ScriptPolicy& policy) {
    bool any_visible = false;
    for (char32_t cp : utf8::decode(sentence)) {
        if (!policy.allows(cp)) return {false, DropReason::script};
        if (!utf8::is_whitespace(cp)) any_visible = true;
    }
    if (!any_visible) return {false, DropReason::empty};
    return {true, DropReason::none};
}

namespace {

struct WordShape {
    std::string stripped; // lowercased, surrounding punctuation removed
    bool numeric = false; // digits with number punctuation only
};

WordShape shape_word(const std::vector<char32_t>& cps, size_t begin, size_t end) {
    while (begin < end && utf8::is_punct(cps[begin])) ++begin;
    while (end > begin && utf8::is_punct(cps[end - 1])) --end;
    WordShape shape;
    bool has_digit = false, has_other = false;
    for (size_t i = begin; i < end; ++i) {
        char32_t cp = utf8::to_lower(cps[i]);
        utf8::append(shape.stripped, cp);
        if (utf8::is_ascii_digit(cp)) has_digit = true;
        else if (cp != U'.' && cp != U',' && cp != U'-' && cp != U'+' && cp != U'%' &&
                 cp != U'/' && cp != U':')
            has_other = true;
    }
    shape.numeric = has_digit && !has_other;
    return shape;
}

} // namespace

SpellVerdict spellcheck_filter(std::string_view sentence, const Dictionary& dict) {
    const std::vector<char32_t> cps = utf8::decode(sentence);
    SpellVerdict v;
    size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && utf8::is_whitespace(cps[i])) ++i;
        size_t start = i;
        while (i < cps.size() && !utf8::is_whitespace(cps[i])) ++i;
        if (i == start) break;
        WordShape shape = shape_word(cps, start, i);
        if (shape.stripped.empty() || shape.numeric) continue; // neutral
        if (dict.contains(shape.stripped)) ++v.approved;
        else ++v.rejected;
    }
    v.keep = v.approved > v.rejected;
    return v;
}

int word_token_count(std::string_view sentence) {
    int count = 0;
    bool in_word = false;
    for (char32_t cp : utf8::decode(sentence)) {
        if (utf8::is_whitespace(cp)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

std::string dedup_key(std::string_view text) {
    std::string key;
    key.reserve(text.size());
    bool pending_space = false;
    for (char32_t cp : utf8::decode(text)) {
        if (utf8::is_whitespace(cp)) {
            pending_space = !key.empty();
            continue;
        }
        if (pending_space) {
            key.push_back(' ');
            pending_space = false;
        }
        utf8::append(key, utf8::to_lower(cp));
    }
    return key;
}

bool Deduper::insert(std::string_view text) {
    auto [it, inserted] = seen_.insert(dedup_key(text));
    if (!inserted) ++dropped_;
    return inserted;
}

} // namespace k12::corpus
