#include "k12/sentences.hpp"

#include <unordered_set>

#include "k12/kvconfig.hpp"
#include "k12/utf8.hpp"

namespace k12::corpus {

namespace {

// Lowercased abbreviations that a period may follow without ending the
// sentence. Multi-dot forms ("e.g") are matched against the token with
// its final period removed.
const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> kSet = {
        "mr", "mrs", "ms", "dr", "prof", "st", "sr", "jr", "fig", "figs", "eq",
        "eqs", "sec", "ch", "vs", "etc", "no", "al", "approx", "dept", "univ",
        "inc", "ltd", "e.g", "i.e", "cf", "vol", "pp",
    };
    return kSet;
}

bool is_upper_start(const std::vector<char32_t>& cps, size_t i) {
    if (i >= cps.size()) return false;
    char32_t c = cps[i];
    // opening quotes and brackets defer to the next character
    while ((c == U'"' || c == U'\'' || c == U'(' || c == U'[' || c == 0x201C || c == 0x2018) &&
           i + 1 < cps.size()) {
        c = cps[++i];
    }
    return (c >= U'A' && c <= U'Z') || (c >= 0xC0 && c <= 0xDE && c != 0xD7);
}

// The word immediately before position `dot` (exclusive), lowercased,
// including internal periods so "e.g." can be recognized.
std::string word_before(const std::vector<char32_t>& cps, size_t dot) {
    size_t start = dot;
    while (start > 0) {
        char32_t c = cps[start - 1];
        bool wordish = !utf8::is_whitespace(c) && c != U'(' && c != U'"' && c != 0x201C;
        if (!wordish) break;
        --start;
    }
    std::string out;
    for (size_t i = start; i < dot; ++i) utf8::append(out, utf8::to_lower(cps[i]));
    // strip leading periods left over from ellipses
    size_t k = 0;
    while (k < out.size() && out[k] == '.') ++k;
    return out.substr(k);
}

} // namespace

std::vector<std::string> segment_sentences(std::string_view block) {
    const std::vector<char32_t> cps = utf8::decode(block);
    std::vector<std::string> out;
    std::string current;

    auto flush = [&] {
        std::string t = trim(current);
        if (!t.empty()) out.push_back(std::move(t));
        current.clear();
    };

    for (size_t i = 0; i < cps.size(); ++i) {
        char32_t c = cps[i];
        utf8::append(current, c);
        if (c != U'.' && c != U'!' && c != U'?') continue;

        size_t j = i + 1;
        // closing quote or bracket rides along with the sentence
        while (j < cps.size() &&
               (cps[j] == U'"' || cps[j] == U'\'' || cps[j] == U')' || cps[j] == U']' ||
                cps[j] == 0x201D || cps[j] == 0x2019)) {
            utf8::append(current, cps[j]);
            ++j;
        }
        if (j >= cps.size()) {
            i = j - 1;
            continue; // end of text; the final flush below emits it
        }
        if (!utf8::is_whitespace(cps[j])) continue; // "3.5", "U.S.A"

        if (c == U'.') {
            // a decimal like "3." before a digit never splits; handled above
            // because the digit is not whitespace. Check abbreviations here.
            std::string prev = word_before(cps, i);
            if (!prev.empty() && prev.back() == '.') prev.pop_back();
            if (abbreviations().count(prev)) {
                i = j - 1;
                continue;
            }
        }
        size_t k = j;
        while (k < cps.size() && utf8::is_whitespace(cps[k])) ++k;
        if (is_upper_start(cps, k)) {
            flush();
            i = k - 1; // resume at the uppercase start
        } else {
            i = j - 1;
        }
    }
    flush();
    return out;
}

} // namespace k12::corpus
