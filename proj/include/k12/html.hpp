#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace k12::corpus {

// Returns the flattened text of each paragraph element in document order.
// Inline markup is dropped, entities are decoded, whitespace is collapsed
// to single spaces, and empty blocks are skipped. Content under script,
// style, nav, header, footer, aside, and noscript is excluded. The parse
// is forgiving: malformed HTML never throws, worst case the result is
// empty.
std::vector<std::string> extract_paragraphs(std::string_view html);

// Decodes the common named entities plus numeric character references.
std::string decode_entities(std::string_view text);

} // namespace k12::corpus
