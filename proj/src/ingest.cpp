#include "k12/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <memory>
#include <set>

#include "json.hpp"

#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/fetch.hpp"
#include "k12/html.hpp"
#include "k12/kvconfig.hpp"
#include "k12/log.hpp"
#include "k12/parallel.hpp"
#include "k12/sentences.hpp"

namespace k12::corpus {

using nlohmann::json;

std::vector<SourceEntry> load_source_index(const std::string& path) {
    std::vector<SourceEntry> entries;
    int lineno = 0;
    for (const std::string& line : binio::read_lines(path)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw FormatError(path + ":" + std::to_string(lineno) + ": invalid JSON line");
        SourceEntry e;
        try {
            e.source = j.at("source").get<std::string>();
            e.subjects = j.at("subjects").get<std::vector<std::string>>();
            std::string kind = j.value("kind", "text");
            if (kind == "html")
                e.kind = DocKind::html;
            else if (kind == "text" || kind == "plain_text")
                e.kind = DocKind::plain_text;
            else
                throw FormatError(path + ":" + std::to_string(lineno) + ": unknown kind '" +
                                  kind + "'");
            e.path = j.value("path", "");
            e.url = j.value("url", "");
            e.doc_id = j.value("doc_id", "");
        } catch (const json::exception& ex) {
            throw FormatError(path + ":" + std::to_string(lineno) + ": " + ex.what());
        }
        if (e.path.empty() == e.url.empty())
            throw FormatError(path + ":" + std::to_string(lineno) +
                              ": entry needs exactly one of path/url");
        if (e.source.empty())
            throw FormatError(path + ":" + std::to_string(lineno) + ": empty source name");
        if (e.subjects.empty())
            throw FormatError(path + ":" + std::to_string(lineno) + ": empty subjects");
        if (e.doc_id.empty()) {
            if (e.url.empty())
                throw FormatError(path + ":" + std::to_string(lineno) +
                                  ": local entry needs a doc_id");
            e.doc_id = url_doc_id(e.url);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<std::string> document_blocks(const RawDocument& doc) {
    if (doc.kind == DocKind::html) return extract_paragraphs(doc.body);
    std::vector<std::string> blocks;
    std::string current;
    auto flush = [&] {
        std::string t = trim(current);
        if (!t.empty()) blocks.push_back(std::move(t));
        current.clear();
    };
    size_t start = 0;
    while (start <= doc.body.size()) {
        size_t nl = doc.body.find('\n', start);
        std::string line = doc.body.substr(
            start, nl == std::string::npos ? std::string::npos : nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) {
            flush();
        } else {
            if (!current.empty()) current += ' ';
            current += line;
        }
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    flush();
    return blocks;
}

namespace {

struct DocOutput {
    std::vector<SentenceRecord> kept; // pre-dedup
    IngestStats stats;                // dedup counted later
};

DocOutput process_document(const RawDocument& doc, const Dictionary& dict,
                           const IngestOptions& opt) {
    DocOutput out;
    int64_t seq = 0;
    for (const std::string& block : document_blocks(doc)) {
        for (const std::string& sentence : segment_sentences(block)) {
            int64_t seq_no = seq++;
            ++out.stats.input_sentences;
            ScriptVerdict sv = script_filter(sentence, opt.script_policy);
            if (!sv.keep) {
                if (sv.reason == DropReason::empty)
                    ++out.stats.dropped_empty;
                else
                    ++out.stats.dropped_by_script;
                continue;
            }
            if (word_token_count(sentence) < opt.min_word_tokens) {
                ++out.stats.dropped_by_spellcheck;
                continue;
            }
            SpellVerdict sp = spellcheck_filter(sentence, dict);
            if (!sp.keep) {
                ++out.stats.dropped_by_spellcheck;
                continue;
            }
            SentenceRecord r;
            r.text = sentence;
            r.doc_id = doc.doc_id;
            r.source = doc.source;
            r.subjects = doc.subjects;
            r.seq_no = seq_no;
            r.approved_words = sp.approved;
            r.rejected_words = sp.rejected;
            out.kept.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace

IngestResult run_ingest(const std::vector<RawDocument>& docs, const Dictionary& dict,
                        const IngestOptions& opt) {
    // Deterministic merge order regardless of scheduling: sort document
    // indices by (source, doc_id) and concatenate per-doc outputs.
    std::vector<size_t> order(docs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (docs[a].source != docs[b].source) return docs[a].source < docs[b].source;
        return docs[a].doc_id < docs[b].doc_id;
    });
    {
        std::set<std::string> seen_ids;
        for (const RawDocument& d : docs)
            if (!seen_ids.insert(d.doc_id).second)
                throw FormatError("ingest: duplicate doc_id '" + d.doc_id + "'");
    }

    std::vector<DocOutput> outputs(docs.size());
    parallel_for(docs.size(), opt.jobs,
                 [&](size_t i) { outputs[i] = process_document(docs[i], dict, opt); });

    IngestResult result;
    Deduper dedup;
    for (size_t idx : order) {
        const DocOutput& out = outputs[idx];
        result.stats.input_sentences += out.stats.input_sentences;
        result.stats.dropped_empty += out.stats.dropped_empty;
        result.stats.dropped_by_script += out.stats.dropped_by_script;
        result.stats.dropped_by_spellcheck += out.stats.dropped_by_spellcheck;
        for (const SentenceRecord& r : out.kept) {
            if (dedup.insert(r.text))
                result.records.push_back(r);
        }
    }
    result.stats.dropped_by_dedup = dedup.dropped();
    result.stats.persisted = static_cast<int64_t>(result.records.size());

    result.manifest =
        build_manifest(result.records, result.stats.dropped_by_script,
                       result.stats.dropped_by_spellcheck, result.stats.dropped_by_dedup);
    return result;
}

std::vector<RawDocument> load_documents(const std::vector<SourceEntry>& entries,
                                        const std::string& base_dir, const IngestOptions& opt) {
    std::vector<SourceEntry> selected;
    for (const SourceEntry& e : entries) {
        if (!opt.include_sources.empty() &&
            std::find(opt.include_sources.begin(), opt.include_sources.end(), e.source) ==
                opt.include_sources.end())
            continue;
        if (std::find(opt.exclude_sources.begin(), opt.exclude_sources.end(), e.source) !=
            opt.exclude_sources.end())
            continue;
        selected.push_back(e);
    }

    bool any_url = std::any_of(selected.begin(), selected.end(),
                               [](const SourceEntry& e) { return !e.url.empty(); });
    std::unique_ptr<FetchClient> client;
    if (any_url) client = std::make_unique<FetchClient>(opt.cache_dir, opt.min_interval_ms);

    std::vector<RawDocument> docs(selected.size());
    // Local reads can fan out; fetches stay serial per host inside the client.
    parallel_for(selected.size(), opt.jobs, [&](size_t i) {
        const SourceEntry& e = selected[i];
        RawDocument d;
        if (!e.url.empty()) {
            d = client->fetch(e.url);
        } else {
            std::filesystem::path p(e.path);
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            d.body = binio::read_file(p.string());
            d.kind = e.kind;
        }
        d.doc_id = e.doc_id;
        d.source = e.source;
        d.subjects = e.subjects;
        docs[i] = std::move(d);
    });
    return docs;
}

} // namespace k12::corpus
