#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k12/corpus.hpp"
#include "k12/dictionary.hpp"
#include "k12/sentence_filters.hpp"

namespace k12::corpus {

// One line of a source index file: where a document lives and how to read it.
// Exactly one of path/url is set; paths are resolved against the index dir.
struct SourceEntry {
    std::string doc_id; // optional for url entries (derived from the url)
    std::string source;
    std::vector<std::string> subjects;
    DocKind kind = DocKind::plain_text;
    std::string path;
    std::string url;
};

std::vector<SourceEntry> load_source_index(const std::string& path);

struct IngestOptions {
    ScriptPolicy script_policy = ScriptPolicy::devanagari_default();
    int min_word_tokens = 4; // shorter sentences are dropped as noise
    int jobs = 1;
    std::vector<std::string> include_sources; // empty means all
    std::vector<std::string> exclude_sources;
    std::string cache_dir = "cache";
    int64_t min_interval_ms = 250;
};

struct IngestStats {
    int64_t input_sentences = 0;
    int64_t dropped_empty = 0;
    int64_t dropped_by_script = 0;
    int64_t dropped_by_spellcheck = 0; // includes the minimum-length rule
    int64_t dropped_by_dedup = 0;
    int64_t persisted = 0;
};

struct IngestResult {
    std::vector<SentenceRecord> records;
    IngestStats stats;
    CorpusManifest manifest;
};

// Splits a document body into candidate text blocks: paragraph elements for
// HTML, blank-line separated paragraphs for plain text.
std::vector<std::string> document_blocks(const RawDocument& doc);

// Full pipeline over already-loaded documents: segmentation, script and
// spell-check filters, dedup, manifest. Documents are processed in parallel
// but merged in (source, doc_id, seq_no) order, so output is deterministic.
IngestResult run_ingest(const std::vector<RawDocument>& docs, const Dictionary& dict,
                        const IngestOptions& opt);

// Materializes index entries into documents, fetching url entries through a
// shared cache. base_dir anchors relative paths (usually the index file dir).
std::vector<RawDocument> load_documents(const std::vector<SourceEntry>& entries,
                                        const std::string& base_dir, const IngestOptions& opt);

} // namespace k12::corpus
