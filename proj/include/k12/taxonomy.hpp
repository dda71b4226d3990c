#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace k12::tag {

// One taxonomy node flattened to its retrieval key.
struct TaxonomyLabel {
    int64_t label_id = 0;
    std::string subject, chapter, topic;
    std::string flat; // "subject - chapter - topic", lowercased
};

// Builds the flat string: each level lowercased with internal whitespace
// collapsed, levels joined by " - ". Empty levels are format errors.
TaxonomyLabel flatten_taxonomy(int64_t label_id, const std::string& subject,
                               const std::string& chapter, const std::string& topic);

struct LabeledQuestion {
    std::string question_id;
    std::string text;
    int64_t gold_label_id = 0;
};

// JSON Lines {label_id, subject, chapter, topic}; label_id must be unique.
std::vector<TaxonomyLabel> load_taxonomy(const std::string& path);

// JSON Lines {question_id, text, gold_label_id}.
std::vector<LabeledQuestion> load_questions(const std::string& path);

} // namespace k12::tag
