#include "k12/dictionary.hpp"

#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/kvconfig.hpp"
#include "k12/utf8.hpp"

namespace k12::corpus {

Dictionary Dictionary::load(const std::string& path) {
    std::vector<std::string> words;
    for (const std::string& line : binio::read_lines(path)) {
        std::string w = trim(line);
        if (w.empty() || w[0] == '#') continue;
        words.push_back(std::move(w));
    }
    if (words.empty()) throw FormatError("dictionary is empty: " + path);
    return from_words(words);
}

Dictionary Dictionary::from_words(const std::vector<std::string>& words) {
    if (words.empty()) throw FormatError("dictionary must not be empty");
    Dictionary d;
    d.words_.reserve(words.size() * 2);
    for (const std::string& w : words) d.words_.insert(utf8::lower_ascii(w));
    return d;
}

bool Dictionary::contains(std::string_view word) const {
    return words_.count(utf8::lower_ascii(word)) > 0;
}

} // namespace k12::corpus
