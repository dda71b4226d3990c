#include "k12/html.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "k12/utf8.hpp"

namespace k12::corpus {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 0x20;
    return out;
}

// Elements whose entire subtree is boilerplate, not content.
const std::unordered_set<std::string>& excluded_elements() {
    static const std::unordered_set<std::string> kSet = {
        "script", "style", "noscript", "template", "nav", "header", "footer", "aside",
    };
    return kSet;
}

// Raw-text elements: content runs to the literal close tag.
bool is_rawtext(const std::string& tag) {
    return tag == "script" || tag == "style" || tag == "noscript" || tag == "template";
}

// Start tags that implicitly close an open <p>.
const std::unordered_set<std::string>& block_elements() {
    static const std::unordered_set<std::string> kSet = {
        "p", "div", "table", "tr", "td", "th", "ul", "ol", "li", "dl", "dt", "dd",
        "h1", "h2", "h3", "h4", "h5", "h6", "blockquote", "pre", "section", "article",
        "nav", "header", "footer", "aside", "form", "hr", "figure", "main", "body", "html",
    };
    return kSet;
}

struct Tag {
    std::string name;
    bool closing = false;
    size_t end = 0; // index just past '>'
};

// Parses a tag starting at '<'. Returns false when the text is not a tag
// (stray '<'), in which case it should be treated as literal text.
bool parse_tag(std::string_view html, size_t pos, Tag& tag) {
    size_t i = pos + 1;
    if (i >= html.size()) return false;
    if (html[i] == '/') {
        tag.closing = true;
        ++i;
    } else {
        tag.closing = false;
    }
    size_t name_start = i;
    while (i < html.size() && (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == '-')) ++i;
    if (i == name_start) return false;
    tag.name = lower(html.substr(name_start, i - name_start));
    // skip attributes, honoring quoted values that may contain '>'
    char quote = 0;
    while (i < html.size()) {
        char c = html[i];
        if (quote != 0) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            tag.end = i + 1;
            return true;
        }
        ++i;
    }
    tag.end = html.size(); // unterminated tag: swallow the rest
    return true;
}

const std::pair<std::string_view, char32_t> kNamedEntities[] = {
    {"amp", U'&'},    {"lt", U'<'},      {"gt", U'>'},     {"quot", U'"'},
    {"apos", U'\''},  {"nbsp", U' '}, {"mdash", U'—'}, {"ndash", U'–'},
    {"hellip", U'…'}, {"ldquo", U'“'}, {"rdquo", U'”'},
    {"lsquo", U'‘'}, {"rsquo", U'’'}, {"copy", U'©'},
    {"deg", U'°'}, {"times", U'×'}, {"divide", U'÷'},
    {"plusmn", U'±'}, {"micro", U'µ'}, {"middot", U'·'},
};

} // namespace

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        size_t semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back('&');
            ++i;
            continue;
        }
        std::string_view body = text.substr(i + 1, semi - i - 1);
        char32_t cp = 0;
        bool decoded = false;
        if (!body.empty() && body[0] == '#') {
            // numeric reference, decimal or hex
            uint32_t v = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (size_t k = 2; k < body.size() && ok; ++k) {
                    char c = body[k];
                    int d = (c >= '0' && c <= '9')   ? c - '0'
                            : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                            : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                                     : -1;
                    if (d < 0) ok = false;
                    else v = v * 16 + static_cast<uint32_t>(d);
                }
                ok = ok && body.size() > 2;
            } else {
                for (size_t k = 1; k < body.size() && ok; ++k) {
                    if (body[k] < '0' || body[k] > '9') ok = false;
                    else v = v * 10 + static_cast<uint32_t>(body[k] - '0');
                }
            }
            if (ok && v > 0 && v <= 0x10FFFF) {
                cp = v;
                decoded = true;
            }
        } else {
            for (const auto& [name, value] : kNamedEntities) {
                if (body == name) {
                    cp = value;
                    decoded = true;
                    break;
                }
            }
        }
        if (decoded) {
            utf8::append(out, cp);
            i = semi + 1;
        } else {
            out.push_back('&');
            ++i;
        }
    }
    return out;
}

namespace {

// Collapses runs of whitespace to single spaces and trims the ends.
std::string normalize_ws(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char32_t cp : utf8::decode(text)) {
        if (utf8::is_whitespace(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        utf8::append(out, cp);
    }
    return out;
}

} // namespace

std::vector<std::string> extract_paragraphs(std::string_view html) {
    std::vector<std::string> blocks;
    std::string current;
    bool in_p = false;
    int excluded_depth = 0;

    auto flush = [&] {
        if (in_p) {
            std::string text = normalize_ws(decode_entities(current));
            if (!text.empty()) blocks.push_back(std::move(text));
        }
        current.clear();
        in_p = false;
    };

    size_t i = 0;
    while (i < html.size()) {
        char c = html[i];
        if (c != '<') {
            if (in_p && excluded_depth == 0) current.push_back(c);
            ++i;
            continue;
        }
        // comments and declarations
        if (html.compare(i, 4, "<!--") == 0) {
            size_t end = html.find("-->", i + 4);
            i = (end == std::string_view::npos) ? html.size() : end + 3;
            continue;
        }
        if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
            size_t end = html.find('>', i + 1);
            i = (end == std::string_view::npos) ? html.size() : end + 1;
            continue;
        }
        Tag tag;
        if (!parse_tag(html, i, tag)) {
            if (in_p && excluded_depth == 0) current.push_back(c);
            ++i;
            continue;
        }
        i = tag.end;
        if (!tag.closing) {
            if (is_rawtext(tag.name)) {
                // skip to the matching close tag, case-insensitively
                std::string close = "</" + tag.name;
                size_t pos = i;
                size_t found = std::string_view::npos;
                while (pos < html.size()) {
                    size_t cand = html.find('<', pos);
                    if (cand == std::string_view::npos) break;
                    if (cand + close.size() <= html.size() &&
                        lower(html.substr(cand, close.size())) == close) {
                        found = cand;
                        break;
                    }
                    pos = cand + 1;
                }
                if (found == std::string_view::npos) {
                    i = html.size();
                } else {
                    size_t gt = html.find('>', found);
                    i = (gt == std::string_view::npos) ? html.size() : gt + 1;
                }
                continue;
            }
            if (excluded_elements().count(tag.name)) {
                flush(); // block boundary as well
                ++excluded_depth;
                continue;
            }
            if (tag.name == "p") {
                flush();
                if (excluded_depth == 0) in_p = true;
                continue;
            }
            if (block_elements().count(tag.name)) {
                flush();
                continue;
            }
            if (tag.name == "br" && in_p && excluded_depth == 0) current.push_back(' ');
            // other inline tags contribute nothing
        } else {
            if (excluded_elements().count(tag.name)) {
                if (excluded_depth > 0) --excluded_depth;
                continue;
            }
            if (tag.name == "p" || block_elements().count(tag.name)) {
                flush();
                continue;
            }
        }
    }
    flush();
    return blocks;
}

} // namespace k12::corpus
