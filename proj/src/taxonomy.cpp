#include "k12/taxonomy.hpp"

#include <set>

#include "json.hpp"

#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/kvconfig.hpp"
#include "k12/utf8.hpp"

namespace k12::tag {

using nlohmann::json;

namespace {

// lowercase + collapse runs of whitespace to single spaces
std::string normalize_level(const std::string& level) {
    std::string out;
    bool pending_space = false;
    for (char32_t cp : utf8::decode(level)) {
        if (utf8::is_whitespace(cp)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        utf8::append(out, utf8::to_lower(cp));
    }
    return out;
}

} // namespace

TaxonomyLabel flatten_taxonomy(int64_t label_id, const std::string& subject,
                               const std::string& chapter, const std::string& topic) {
    TaxonomyLabel label;
    label.label_id = label_id;
    label.subject = subject;
    label.chapter = chapter;
    label.topic = topic;
    std::string s = normalize_level(subject);
    std::string c = normalize_level(chapter);
    std::string t = normalize_level(topic);
    if (s.empty() || c.empty() || t.empty())
        throw FormatError("taxonomy: label " + std::to_string(label_id) +
                          " has an empty level");
    label.flat = s + " - " + c + " - " + t;
    return label;
}

std::vector<TaxonomyLabel> load_taxonomy(const std::string& path) {
    std::vector<TaxonomyLabel> labels;
    std::set<int64_t> seen;
    int lineno = 0;
    for (const std::string& line : binio::read_lines(path)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw FormatError(path + ":" + std::to_string(lineno) + ": invalid JSON line");
        int64_t id;
        std::string subject, chapter, topic;
        try {
            id = j.at("label_id").get<int64_t>();
            subject = j.at("subject").get<std::string>();
            chapter = j.at("chapter").get<std::string>();
            topic = j.at("topic").get<std::string>();
        } catch (const json::exception& e) {
            throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (!seen.insert(id).second)
            throw FormatError(path + ":" + std::to_string(lineno) + ": duplicate label_id " +
                              std::to_string(id));
        labels.push_back(flatten_taxonomy(id, subject, chapter, topic));
    }
    return labels;
}

std::vector<LabeledQuestion> load_questions(const std::string& path) {
    std::vector<LabeledQuestion> questions;
    std::set<std::string> seen;
    int lineno = 0;
    for (const std::string& line : binio::read_lines(path)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw FormatError(path + ":" + std::to_string(lineno) + ": invalid JSON line");
        LabeledQuestion q;
        try {
            q.question_id = j.at("question_id").get<std::string>();
            q.text = j.at("text").get<std::string>();
            q.gold_label_id = j.at("gold_label_id").get<int64_t>();
        } catch (const json::exception& e) {
            throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (!seen.insert(q.question_id).second)
            throw FormatError(path + ":" + std::to_string(lineno) + ": duplicate question_id " +
                              q.question_id);
        questions.push_back(std::move(q));
    }
    return questions;
}

} // namespace k12::tag
