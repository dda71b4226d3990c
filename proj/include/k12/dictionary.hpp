#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace k12::corpus {

// Word list for the spell-check filter. Lookup is case-insensitive; the
// file format is one lowercase word per line, UTF-8, with '#'-prefixed
// comment lines ignored. Immutable after load.
class Dictionary {
public:
    static Dictionary load(const std::string& path);
    static Dictionary from_words(const std::vector<std::string>& words);

    bool contains(std::string_view word) const;
    size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

} // namespace k12::corpus
