#include <chrono>
#include <ctime>

#include "json.hpp"

#include "k12/binio.hpp"
#include "k12/corpus.hpp"
#include "k12/errors.hpp"
#include "k12/kvconfig.hpp"

namespace k12::corpus {

using nlohmann::json;

namespace {

std::string utc_now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

CorpusManifest build_manifest(const std::vector<SentenceRecord>& records,
                              int64_t dropped_by_script, int64_t dropped_by_spellcheck,
                              int64_t dropped_by_dedup) {
    CorpusManifest m;
    for (const SentenceRecord& r : records) {
        ++m.per_source[r.source];
        ++m.total;
    }
    m.dropped_by_script = dropped_by_script;
    m.dropped_by_spellcheck = dropped_by_spellcheck;
    m.dropped_by_dedup = dropped_by_dedup;
    m.timestamp = utc_now_iso8601();
    return m;
}

std::string manifest_to_json(const CorpusManifest& m) {
    json j;
    j["per_source"] = m.per_source;
    j["total"] = m.total;
    j["dropped_by_script"] = m.dropped_by_script;
    j["dropped_by_spellcheck"] = m.dropped_by_spellcheck;
    j["dropped_by_dedup"] = m.dropped_by_dedup;
    j["timestamp"] = m.timestamp;
    return j.dump(2) + "\n";
}

CorpusManifest manifest_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError("manifest: invalid JSON");
    CorpusManifest m;
    try {
        m.per_source = j.at("per_source").get<std::map<std::string, int64_t>>();
        m.total = j.at("total").get<int64_t>();
        m.dropped_by_script = j.at("dropped_by_script").get<int64_t>();
        m.dropped_by_spellcheck = j.at("dropped_by_spellcheck").get<int64_t>();
        m.dropped_by_dedup = j.at("dropped_by_dedup").get<int64_t>();
        m.timestamp = j.value("timestamp", "");
    } catch (const json::exception& e) {
        throw FormatError(std::string("manifest: ") + e.what());
    }
    return m;
}

void write_manifest(const CorpusManifest& m, const std::string& path) {
    binio::write_file(path, manifest_to_json(m));
}

CorpusManifest read_manifest(const std::string& path) {
    return manifest_from_json(binio::read_file(path));
}

namespace {

json record_to_json(const SentenceRecord& r) {
    json j;
    j["text"] = r.text;
    j["doc_id"] = r.doc_id;
    j["source"] = r.source;
    j["subjects"] = r.subjects;
    j["seq_no"] = r.seq_no;
    j["approved_words"] = r.approved_words;
    j["rejected_words"] = r.rejected_words;
    return j;
}

} // namespace

void write_corpus_jsonl(const std::vector<SentenceRecord>& records, const std::string& path) {
    std::string out;
    for (const SentenceRecord& r : records) {
        out += record_to_json(r).dump();
        out += '\n';
    }
    binio::write_file(path, out);
}

std::vector<SentenceRecord> read_corpus_jsonl(const std::string& path) {
    std::vector<SentenceRecord> records;
    int lineno = 0;
    for (const std::string& line : binio::read_lines(path)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw FormatError(path + ":" + std::to_string(lineno) + ": invalid JSON line");
        SentenceRecord r;
        try {
            r.text = j.at("text").get<std::string>();
            r.doc_id = j.at("doc_id").get<std::string>();
            r.source = j.at("source").get<std::string>();
            r.subjects = j.at("subjects").get<std::vector<std::string>>();
            r.seq_no = j.at("seq_no").get<int64_t>();
            r.approved_words = j.at("approved_words").get<int>();
            r.rejected_words = j.at("rejected_words").get<int>();
        } catch (const json::exception& e) {
            throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace k12::corpus
