#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace k12::corpus {

enum class DocKind { html, plain_text };

// One raw source document before any cleaning.
struct RawDocument {
    std::string doc_id;                 // unique within a corpus run
    std::string source;                 // e.g. "ncert", "openstax"
    std::vector<std::string> subjects;  // subject codes, e.g. {"P","C","B"}
    DocKind kind = DocKind::plain_text;
    std::string body;                   // UTF-8; may be empty
};

// One cleaned sentence that passed every filter.
struct SentenceRecord {
    std::string text;
    std::string doc_id;
    std::string source;
    std::vector<std::string> subjects;
    int64_t seq_no = 0;       // sentence position within the document
    int approved_words = 0;
    int rejected_words = 0;
};

// Per-source sentence counts plus filter statistics for one ingest run.
struct CorpusManifest {
    std::map<std::string, int64_t> per_source;
    int64_t total = 0;
    int64_t dropped_by_script = 0;
    int64_t dropped_by_spellcheck = 0;
    int64_t dropped_by_dedup = 0;
    std::string timestamp; // ISO-8601 UTC; excluded from determinism checks
};

CorpusManifest build_manifest(const std::vector<SentenceRecord>& records,
                              int64_t dropped_by_script, int64_t dropped_by_spellcheck,
                              int64_t dropped_by_dedup);

std::string manifest_to_json(const CorpusManifest& m);
CorpusManifest manifest_from_json(const std::string& text);
void write_manifest(const CorpusManifest& m, const std::string& path);
CorpusManifest read_manifest(const std::string& path);

// Sentence corpus files are JSON Lines with fields exactly
// {text, doc_id, source, subjects, seq_no, approved_words, rejected_words}.
void write_corpus_jsonl(const std::vector<SentenceRecord>& records, const std::string& path);
std::vector<SentenceRecord> read_corpus_jsonl(const std::string& path);

} // namespace k12::corpus
