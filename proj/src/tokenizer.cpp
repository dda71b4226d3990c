#include "k12/tokenizer.hpp"

#include "k12/errors.hpp"
#include "k12/utf8.hpp"

namespace k12::tok {

int TokenSequence::unpadded_length() const {
    int n = 0;
    for (uint8_t m : attention_mask) n += m;
    return n;
}

std::vector<std::string> Tokenizer::basic_tokenize(std::string_view text) const {
    std::vector<char32_t> cleaned;
    cleaned.reserve(text.size());
    for (char32_t cp : utf8::decode(text)) {
        if (cp == 0 || cp == 0xFFFD || utf8::is_control(cp)) continue;
        if (utf8::is_cjk(cp)) {
            // Ideographs become standalone tokens.
            cleaned.push_back(U' ');
            cleaned.push_back(cp);
            cleaned.push_back(U' ');
            continue;
        }
        cleaned.push_back(utf8::is_whitespace(cp) ? U' ' : cp);
    }

    std::vector<std::string> out;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    };
    for (char32_t cp : cleaned) {
        if (cp == U' ') {
            flush();
            continue;
        }
        if (lowercase_) {
            cp = utf8::strip_accent(cp);
            if (utf8::is_combining_mark(cp)) continue;
            cp = utf8::to_lower(cp);
        }
        if (utf8::is_punct(cp)) {
            flush();
            std::string p;
            utf8::append(p, cp);
            out.push_back(std::move(p));
            continue;
        }
        utf8::append(current, cp);
    }
    flush();
    return out;
}

std::vector<std::string> Tokenizer::wordpiece(std::string_view word) const {
    std::vector<char32_t> cps = utf8::decode(word);
    if (cps.empty() || static_cast<int>(cps.size()) > max_word_chars_)
        return {kUnkToken};

    // Byte offset of each code point, so substring slices stay on UTF-8
    // boundaries.
    std::vector<std::string> encoded(cps.size());
    for (size_t i = 0; i < cps.size(); ++i) utf8::append(encoded[i], cps[i]);

    std::vector<std::string> pieces;
    size_t start = 0;
    while (start < cps.size()) {
        size_t end = cps.size();
        std::string match;
        while (start < end) {
            std::string candidate = start > 0 ? "##" : "";
            for (size_t i = start; i < end; ++i) candidate += encoded[i];
            if (vocab_.id_of(candidate) >= 0) {
                match = std::move(candidate);
                break;
            }
            --end;
        }
        if (match.empty()) return {kUnkToken};
        pieces.push_back(std::move(match));
        start = end;
    }
    return pieces;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
    std::vector<std::string> pieces;
    for (const std::string& word : basic_tokenize(text)) {
        for (std::string& p : wordpiece(word)) pieces.push_back(std::move(p));
    }
    return pieces;
}

TokenSequence Tokenizer::encode(std::string_view text, int max_len) const {
    if (max_len < 2)
        throw ConfigError("encode: max_len must be at least 2, got " + std::to_string(max_len));

    TokenSequence seq;
    seq.input_ids.assign(static_cast<size_t>(max_len), vocab_.pad_id());
    seq.attention_mask.assign(static_cast<size_t>(max_len), 0);
    seq.token_type_ids.assign(static_cast<size_t>(max_len), 0);

    seq.spans.push_back({kClsToken, -1});
    const std::vector<std::string> words = basic_tokenize(text);
    bool full = false;
    for (size_t w = 0; w < words.size() && !full; ++w) {
        for (std::string& p : wordpiece(words[w])) {
            if (static_cast<int>(seq.spans.size()) >= max_len - 1) {
                full = true;
                break;
            }
            seq.spans.push_back({std::move(p), static_cast<int>(w)});
        }
    }
    seq.spans.push_back({kSepToken, -1});

    for (size_t i = 0; i < seq.spans.size(); ++i) {
        seq.input_ids[i] = vocab_.id_of(seq.spans[i].piece);
        seq.attention_mask[i] = 1;
    }
    return seq;
}

std::string Tokenizer::decode(std::span<const int32_t> ids) const {
    std::string out;
    for (int32_t id : ids) {
        const std::string& tok = vocab_.token_of(id); // range-checks id
        if (vocab_.is_special(id)) continue;
        if (tok.size() > 2 && tok[0] == '#' && tok[1] == '#') {
            out += tok.substr(2);
        } else {
            if (!out.empty()) out += ' ';
            out += tok;
        }
    }
    return out;
}

} // namespace k12::tok
