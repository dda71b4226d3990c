#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace k12::corpus {

// Splits a text block into sentences. A boundary is a terminator from
// {. ! ?} (optionally followed by a closing quote/bracket) that is
// followed by whitespace and an uppercase letter, or that ends the text.
// Periods inside decimal numbers and after a fixed abbreviation list
// ("Fig.", "e.g.", "Dr.", ...) do not split. Sentences come back trimmed;
// empty results are dropped.
std::vector<std::string> segment_sentences(std::string_view block);

} // namespace k12::corpus
