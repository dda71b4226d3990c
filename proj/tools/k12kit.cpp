// k12kit: one binary, eight pipeline stages. Configuration comes from a
// flat key=value file plus --key=value flags; every stochastic output is
// pinned by --seed.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "k12/binio.hpp"
#include "k12/checkpoint.hpp"
#include "k12/dictionary.hpp"
#include "k12/embedder.hpp"
#include "k12/embeddings.hpp"
#include "k12/errors.hpp"
#include "k12/gradcheck.hpp"
#include "k12/ingest.hpp"
#include "k12/kvconfig.hpp"
#include "k12/log.hpp"
#include "k12/mlm.hpp"
#include "k12/model.hpp"
#include "k12/retrieval.hpp"
#include "k12/taxonomy.hpp"
#include "k12/tokenizer.hpp"
#include "k12/trainer.hpp"
#include "k12/vocab.hpp"

namespace {

using namespace k12;

const char* kUsage =
    "usage: k12kit SUBCOMMAND [--config PATH] [--seed N] [--jobs N] [--key=value...]\n"
    "\n"
    "subcommands:\n"
    "  ingest         source documents -> cleaned sentence corpus + manifest\n"
    "  manifest       recompute per-source counts from a corpus file\n"
    "  tokenize-check encode a sentence file, optionally diff a reference\n"
    "  mlm-build      corpus -> masked training shards\n"
    "  train          shards -> checkpoints + loss trace\n"
    "  grad-check     finite-difference gradient verification\n"
    "  embed          taxonomy/question/plain text -> embedding file\n"
    "  tag-eval       rank questions against taxonomy labels, report recall\n";

// Full key registry with defaults. Doubles as the validation list: any
// config or flag key outside this table is rejected.
std::vector<std::pair<std::string, std::string>> default_entries() {
    return {
        {"seed", "0"},
        {"jobs", "1"},
        {"quiet", "false"},

        {"paths.sources", "data/demo/corpus_src/sources.jsonl"},
        {"paths.dict", "data/wordlist.txt"},
        {"paths.corpus", "out/corpus.jsonl"},
        {"paths.manifest", "out/manifest.json"},
        {"paths.vocab", "data/demo/vocab.txt"},
        {"paths.text_in", ""},
        {"paths.tokens_out", "out/tokens.txt"},
        {"paths.reference", ""},
        {"paths.shards", "out/shards"},
        {"paths.checkpoints", "out/checkpoints"},
        {"paths.model", "out/checkpoints/last.ckpt"},
        {"paths.resume", ""},
        {"paths.trace", "out/trace.csv"},
        {"paths.taxonomy", "data/demo/taxonomy.jsonl"},
        {"paths.questions", "data/demo/questions.jsonl"},
        {"paths.label_embeddings", ""},
        {"paths.question_embeddings", ""},
        {"paths.embeddings_out", "out/embeddings.emb"},
        {"paths.report", "out/report.json"},
        {"paths.cache", "out/cache"},

        {"ingest.include", ""},
        {"ingest.exclude", ""},
        {"ingest.min_words", "4"},
        {"ingest.min_interval_ms", "250"},
        {"ingest.blocks", "0900-097F"},

        {"manifest.check", "false"},

        {"tokenize.max_len", "64"},
        {"tokenize.lowercase", "true"},

        {"mlm.max_len", "128"},
        {"mlm.select_prob", "0.15"},
        {"mlm.mask_frac", "0.8"},
        {"mlm.random_frac", "0.1"},
        {"mlm.keep_frac", "0.1"},
        {"mlm.shard_size", "1024"},
        {"mlm.pack", "true"},

        {"model.layers", "2"},
        {"model.hidden", "128"},
        {"model.heads", "2"},
        {"model.ff_dim", "512"},
        {"model.dropout", "0"},
        {"model.init_std", "0.02"},

        {"train.batch_size", "32"},
        {"train.accum", "4"},
        {"train.epochs", "10"},
        {"train.lr", "5e-5"},
        {"train.beta1", "0.9"},
        {"train.beta2", "0.999"},
        {"train.eps", "1e-8"},
        {"train.warmup", "0"},
        {"train.save_optimizer", "true"},

        {"gradcheck.layers", "1"},
        {"gradcheck.hidden", "8"},
        {"gradcheck.heads", "2"},
        {"gradcheck.ff_dim", "16"},
        {"gradcheck.max_len", "8"},
        {"gradcheck.vocab", "20"},
        {"gradcheck.eps", "1e-3"},
        {"gradcheck.coords", "200"},
        {"gradcheck.tol", "1e-3"},

        {"embed.kind", "taxonomy"},
        {"embed.pooling", "mean"},

        {"tag.ks", "5,10,15,20"},
        {"tag.pooling", "mean"},
    };
}

[[noreturn]] void bad_key(const std::string& key, const KvConfig& registry) {
    std::string msg = "unknown key '" + key + "'; valid keys are:";
    for (const auto& [k, v] : registry.entries()) msg += "\n  " + k;
    throw ConfigError(msg);
}

void ensure_parent_dir(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
}

corpus::ScriptPolicy parse_blocks(const std::string& spec) {
    corpus::ScriptPolicy policy;
    for (const std::string& part : split(spec, ',')) {
        std::string range = trim(part);
        if (range.empty()) continue;
        auto dash = range.find('-');
        if (dash == std::string::npos)
            throw ConfigError("ingest.blocks: expected HEXLO-HEXHI, got '" + range + "'");
        try {
            uint32_t lo = static_cast<uint32_t>(std::stoul(range.substr(0, dash), nullptr, 16));
            uint32_t hi = static_cast<uint32_t>(std::stoul(range.substr(dash + 1), nullptr, 16));
            if (lo > hi) throw ConfigError("ingest.blocks: empty range '" + range + "'");
            policy.disallowed_blocks.emplace_back(lo, hi);
        } catch (const std::invalid_argument&) {
            throw ConfigError("ingest.blocks: bad hex in '" + range + "'");
        } catch (const std::out_of_range&) {
            throw ConfigError("ingest.blocks: bad hex in '" + range + "'");
        }
    }
    return policy;
}

// ---- subcommands ----------------------------------------------------

int cmd_ingest(const KvConfig& cfg) {
    corpus::IngestOptions opt;
    opt.script_policy = parse_blocks(cfg.get_str("ingest.blocks"));
    opt.min_word_tokens = static_cast<int>(cfg.get_int("ingest.min_words", 4));
    opt.jobs = static_cast<int>(cfg.get_int("jobs", 1));
    opt.include_sources = cfg.get_list("ingest.include");
    opt.exclude_sources = cfg.get_list("ingest.exclude");
    opt.cache_dir = cfg.get_str("paths.cache");
    opt.min_interval_ms = cfg.get_int("ingest.min_interval_ms", 250);
    for (const std::string& inc : opt.include_sources)
        for (const std::string& exc : opt.exclude_sources)
            if (inc == exc)
                throw ConfigError("ingest: source '" + inc + "' is both included and excluded");

    std::string index_path = cfg.get_str("paths.sources");
    std::vector<corpus::SourceEntry> entries = corpus::load_source_index(index_path);
    std::string base_dir = std::filesystem::path(index_path).parent_path().string();
    if (base_dir.empty()) base_dir = ".";
    std::vector<corpus::RawDocument> docs = corpus::load_documents(entries, base_dir, opt);
    log::info("ingest", "loaded " + std::to_string(docs.size()) + " documents from " +
                            index_path);

    corpus::Dictionary dict = corpus::Dictionary::load(cfg.get_str("paths.dict"));
    corpus::IngestResult result = corpus::run_ingest(docs, dict, opt);

    std::string corpus_path = cfg.get_str("paths.corpus");
    std::string manifest_path = cfg.get_str("paths.manifest");
    ensure_parent_dir(corpus_path);
    ensure_parent_dir(manifest_path);
    corpus::write_corpus_jsonl(result.records, corpus_path);
    corpus::write_manifest(result.manifest, manifest_path);

    const corpus::IngestStats& s = result.stats;
    log::info("ingest", "sentences in " + std::to_string(s.input_sentences) + ", persisted " +
                            std::to_string(s.persisted) + ", dropped script " +
                            std::to_string(s.dropped_by_script) + ", spellcheck " +
                            std::to_string(s.dropped_by_spellcheck) + ", dedup " +
                            std::to_string(s.dropped_by_dedup) + ", empty " +
                            std::to_string(s.dropped_empty));
    log::info("ingest", "wrote " + corpus_path + " and " + manifest_path);
    return 0;
}

int cmd_manifest(const KvConfig& cfg) {
    std::vector<corpus::SentenceRecord> records =
        corpus::read_corpus_jsonl(cfg.get_str("paths.corpus"));
    corpus::CorpusManifest fresh = corpus::build_manifest(records, 0, 0, 0);

    if (cfg.get_bool("manifest.check", false)) {
        corpus::CorpusManifest existing = corpus::read_manifest(cfg.get_str("paths.manifest"));
        if (existing.per_source != fresh.per_source || existing.total != fresh.total) {
            log::error("manifest", "manifest does not match corpus contents");
            return 1;
        }
        log::info("manifest", "manifest matches corpus (" + std::to_string(fresh.total) +
                                  " sentences)");
        return 0;
    }
    std::fputs(corpus::manifest_to_json(fresh).c_str(), stdout);
    return 0;
}

int cmd_tokenize_check(const KvConfig& cfg) {
    std::string in_path = cfg.get_str("paths.text_in");
    if (in_path.empty()) throw ConfigError("tokenize-check: paths.text_in is required");
    tok::Vocab vocab = tok::Vocab::load(cfg.get_str("paths.vocab"));
    tok::Tokenizer tokenizer(vocab, cfg.get_bool("tokenize.lowercase", true));
    int max_len = static_cast<int>(cfg.get_int("tokenize.max_len", 64));

    std::string out;
    int64_t lines = 0;
    for (const std::string& line : binio::read_lines(in_path)) {
        tok::TokenSequence seq = tokenizer.encode(line, max_len);
        for (int i = 0; i < seq.length(); ++i) {
            if (i) out += ' ';
            out += std::to_string(seq.input_ids[i]);
        }
        out += '\n';
        ++lines;
    }
    std::string out_path = cfg.get_str("paths.tokens_out");
    ensure_parent_dir(out_path);
    binio::write_file(out_path, out);
    log::info("tokenize", "encoded " + std::to_string(lines) + " lines to " + out_path);

    std::string ref_path = cfg.get_str("paths.reference");
    if (!ref_path.empty()) {
        if (binio::read_file(ref_path) != out) {
            log::error("tokenize", "output differs from reference " + ref_path);
            return 1;
        }
        log::info("tokenize", "output matches reference byte for byte");
    }
    return 0;
}

mlm::MaskingPolicy policy_from(const KvConfig& cfg) {
    mlm::MaskingPolicy policy;
    policy.select_prob = cfg.get_double("mlm.select_prob", 0.15);
    policy.mask_frac = cfg.get_double("mlm.mask_frac", 0.8);
    policy.random_frac = cfg.get_double("mlm.random_frac", 0.1);
    policy.keep_frac = cfg.get_double("mlm.keep_frac", 0.1);
    policy.seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
    policy.validate();
    return policy;
}

int cmd_mlm_build(const KvConfig& cfg) {
    tok::Vocab vocab = tok::Vocab::load(cfg.get_str("paths.vocab"));
    tok::Tokenizer tokenizer(vocab);
    std::vector<corpus::SentenceRecord> records =
        corpus::read_corpus_jsonl(cfg.get_str("paths.corpus"));
    if (records.empty()) throw FormatError("mlm-build: corpus is empty");

    int max_len = static_cast<int>(cfg.get_int("mlm.max_len", 128));
    int jobs = static_cast<int>(cfg.get_int("jobs", 1));
    std::vector<mlm::Segment> segments = mlm::pack_corpus(
        records, tokenizer, max_len, cfg.get_bool("mlm.pack", true), jobs);
    if (segments.empty()) throw FormatError("mlm-build: no segments produced");

    std::string dir = cfg.get_str("paths.shards");
    mlm::DatasetHeader header =
        mlm::write_shards(segments, vocab, policy_from(cfg), max_len, dir,
                          static_cast<int>(cfg.get_int("mlm.shard_size", 1024)), jobs);
    log::info("mlm-build", "wrote " + std::to_string(header.shard_count) + " shards, " +
                               std::to_string(header.example_count) + " examples to " + dir);
    return 0;
}

int cmd_train(const KvConfig& cfg) {
    std::string shards_dir = cfg.get_str("paths.shards");
    mlm::DatasetHeader header = mlm::read_dataset_header(shards_dir);
    std::vector<mlm::MlmExample> data = mlm::read_shards(shards_dir);

    tok::Vocab vocab = tok::Vocab::load(cfg.get_str("paths.vocab"));
    if (vocab.size() != header.vocab_size)
        throw ConfigError("train: vocabulary size " + std::to_string(vocab.size()) +
                          " does not match dataset (" + std::to_string(header.vocab_size) + ")");

    model::TrainConfig tc;
    tc.batch_size = static_cast<int>(cfg.get_int("train.batch_size", 32));
    tc.grad_accum_steps = static_cast<int>(cfg.get_int("train.accum", 4));
    tc.epochs = static_cast<int>(cfg.get_int("train.epochs", 10));
    tc.lr = cfg.get_double("train.lr", 5e-5);
    tc.beta1 = cfg.get_double("train.beta1", 0.9);
    tc.beta2 = cfg.get_double("train.beta2", 0.999);
    tc.adam_eps = cfg.get_double("train.eps", 1e-8);
    tc.warmup_steps = static_cast<int>(cfg.get_int("train.warmup", 0));
    tc.seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
    tc.jobs = static_cast<int>(cfg.get_int("jobs", 1));
    tc.checkpoint_dir = cfg.get_str("paths.checkpoints");
    tc.save_optimizer = cfg.get_bool("train.save_optimizer", true);

    model::TrainState state = [&] {
        std::string resume = cfg.get_str("paths.resume");
        if (!resume.empty()) {
            log::info("train", "resuming from " + resume);
            return model::TrainState::from_checkpoint(resume);
        }
        model::EncoderConfig mc;
        mc.layers = static_cast<int>(cfg.get_int("model.layers", 2));
        mc.hidden = static_cast<int>(cfg.get_int("model.hidden", 128));
        mc.heads = static_cast<int>(cfg.get_int("model.heads", 2));
        mc.ff_dim = static_cast<int>(cfg.get_int("model.ff_dim", 512));
        mc.max_len = header.max_len;
        mc.vocab = header.vocab_size;
        mc.dropout_prob = cfg.get_double("model.dropout", 0.0);
        mc.init_std = cfg.get_double("model.init_std", 0.02);
        mc.seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
        return model::TrainState::fresh(mc);
    }();
    if (state.params.config.max_len != header.max_len ||
        state.params.config.vocab != header.vocab_size)
        throw ConfigError("train: checkpoint shape does not match the dataset");

    model::TrainResult result = train(state, data, tc);

    std::string trace_path = cfg.get_str("paths.trace");
    ensure_parent_dir(trace_path);
    model::write_trace_csv(result.trace, trace_path);
    if (!result.trace.empty()) {
        const model::TraceRow& last = result.trace.back();
        char buf[128];
        std::snprintf(buf, sizeof(buf), "final step %lld loss %.4f acc %.4f",
                      static_cast<long long>(last.step), last.loss, last.masked_acc);
        log::info("train", buf);
    }
    log::info("train", "trace written to " + trace_path);
    return 0;
}

int cmd_grad_check(const KvConfig& cfg) {
    model::EncoderConfig mc;
    mc.layers = static_cast<int>(cfg.get_int("gradcheck.layers", 1));
    mc.hidden = static_cast<int>(cfg.get_int("gradcheck.hidden", 8));
    mc.heads = static_cast<int>(cfg.get_int("gradcheck.heads", 2));
    mc.ff_dim = static_cast<int>(cfg.get_int("gradcheck.ff_dim", 16));
    mc.max_len = static_cast<int>(cfg.get_int("gradcheck.max_len", 8));
    mc.vocab = static_cast<int>(cfg.get_int("gradcheck.vocab", 20));
    mc.seed = static_cast<uint64_t>(cfg.get_int("seed", 0));

    double eps = cfg.get_double("gradcheck.eps", 1e-3);
    int coords = static_cast<int>(cfg.get_int("gradcheck.coords", 200));
    double tol = cfg.get_double("gradcheck.tol", 1e-3);

    model::GradCheckReport report = model::grad_check(mc, eps, coords, mc.seed);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max rel error %.3e over %d coords (worst %s[%lld])",
                  report.max_rel_error, report.coords_checked, report.worst_tensor.c_str(),
                  static_cast<long long>(report.worst_index));
    log::info("grad-check", buf);
    std::printf("%.6e\n", report.max_rel_error);
    if (!(report.max_rel_error < tol)) {
        log::error("grad-check", "exceeds tolerance");
        throw NumericError(report.worst_tensor, "grad-check: max relative error " +
                                                    std::to_string(report.max_rel_error) +
                                                    " is not below " + std::to_string(tol));
    }
    return 0;
}

// The tokenizer keeps a reference to the vocabulary, so both live here
// and the whole bundle stays put (no copies, no moves).
struct LoadedModel {
    model::ModelParams params;
    tok::Vocab vocab;
    tok::Tokenizer tokenizer;

    LoadedModel(model::ModelParams p, tok::Vocab v)
        : params(std::move(p)), vocab(std::move(v)), tokenizer(vocab) {}
    LoadedModel(const LoadedModel&) = delete;
    LoadedModel& operator=(const LoadedModel&) = delete;
};

LoadedModel load_model(const KvConfig& cfg) {
    model::CheckpointData data = model::load_checkpoint(cfg.get_str("paths.model"));
    tok::Vocab vocab = tok::Vocab::load(cfg.get_str("paths.vocab"));
    if (vocab.size() != data.params.config.vocab)
        throw ConfigError("embed: vocabulary size does not match the checkpoint");
    return LoadedModel(std::move(data.params), std::move(vocab));
}

int cmd_embed(const KvConfig& cfg) {
    LoadedModel m = load_model(cfg);
    model::Pooling pooling = model::pooling_from_string(cfg.get_str("embed.pooling", "mean"));
    int jobs = static_cast<int>(cfg.get_int("jobs", 1));

    std::vector<std::string> names, texts;
    std::string kind = cfg.get_str("embed.kind", "taxonomy");
    if (kind == "taxonomy") {
        for (const tag::TaxonomyLabel& l : tag::load_taxonomy(cfg.get_str("paths.taxonomy"))) {
            names.push_back(l.flat);
            texts.push_back(l.flat);
        }
    } else if (kind == "questions") {
        for (const tag::LabeledQuestion& q :
             tag::load_questions(cfg.get_str("paths.questions"))) {
            names.push_back(q.question_id);
            texts.push_back(q.text);
        }
    } else if (kind == "lines") {
        std::string in_path = cfg.get_str("paths.text_in");
        if (in_path.empty()) throw ConfigError("embed: paths.text_in is required for lines");
        int64_t n = 0;
        for (const std::string& line : binio::read_lines(in_path)) {
            names.push_back(std::to_string(n++));
            texts.push_back(line);
        }
    } else {
        throw ConfigError("embed.kind must be taxonomy, questions, or lines");
    }
    if (names.empty()) throw FormatError("embed: nothing to embed");

    std::vector<Eigen::VectorXd> vecs =
        model::embed_texts(m.params, m.tokenizer, texts, pooling, jobs);
    std::vector<std::pair<std::string, Eigen::VectorXd>> entries;
    entries.reserve(names.size());
    for (size_t i = 0; i < names.size(); ++i) entries.emplace_back(names[i], vecs[i]);

    std::string out_path = cfg.get_str("paths.embeddings_out");
    ensure_parent_dir(out_path);
    tag::save_embeddings(entries, out_path);
    log::info("embed", "wrote " + std::to_string(entries.size()) + " vectors (" + kind +
                           ") to " + out_path);
    return 0;
}

int cmd_tag_eval(const KvConfig& cfg) {
    std::vector<tag::TaxonomyLabel> taxonomy = tag::load_taxonomy(cfg.get_str("paths.taxonomy"));
    std::vector<tag::LabeledQuestion> questions =
        tag::load_questions(cfg.get_str("paths.questions"));
    int jobs = static_cast<int>(cfg.get_int("jobs", 1));

    std::vector<int> ks;
    for (const std::string& k : cfg.get_list("tag.ks")) ks.push_back(std::stoi(k));
    if (ks.empty()) ks = tag::kDefaultKs;

    // Labels and questions can come from embedding files or be computed by
    // the in-toolkit encoder, independently of one another.
    auto encoder_embeddings = [&](bool for_labels) {
        LoadedModel m = load_model(cfg);
        model::Pooling pooling = model::pooling_from_string(cfg.get_str("tag.pooling", "mean"));
        tag::EmbeddingSet set(m.params.config.hidden);
        if (for_labels) {
            std::vector<std::string> texts;
            for (const tag::TaxonomyLabel& l : taxonomy) texts.push_back(l.flat);
            std::vector<Eigen::VectorXd> vecs =
                model::embed_texts(m.params, m.tokenizer, texts, pooling, jobs);
            for (size_t i = 0; i < taxonomy.size(); ++i) set.add(taxonomy[i].flat, vecs[i]);
        } else {
            std::vector<std::string> texts;
            for (const tag::LabeledQuestion& q : questions) texts.push_back(q.text);
            std::vector<Eigen::VectorXd> vecs =
                model::embed_texts(m.params, m.tokenizer, texts, pooling, jobs);
            for (size_t i = 0; i < questions.size(); ++i)
                set.add(questions[i].question_id, vecs[i]);
        }
        return set;
    };

    std::string label_path = cfg.get_str("paths.label_embeddings");
    std::string question_path = cfg.get_str("paths.question_embeddings");
    tag::EmbeddingSet labels =
        label_path.empty() ? encoder_embeddings(true) : tag::load_embeddings(label_path);
    tag::EmbeddingSet queries =
        question_path.empty() ? encoder_embeddings(false) : tag::load_embeddings(question_path);

    tag::EvalResult result = tag::evaluate(questions, taxonomy, queries, labels, ks, jobs);

    std::string report_path = cfg.get_str("paths.report");
    ensure_parent_dir(report_path);
    tag::write_eval_report(result, report_path);
    std::string line = "n=" + std::to_string(result.n);
    for (const auto& [k, v] : result.recall) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), " R@%d=%.4f", k, v);
        line += buf;
    }
    log::info("tag-eval", line);
    std::printf("%s\n", line.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return 1;
    }
    std::string sub = argv[1];
    if (sub == "-h" || sub == "--help" || sub == "help") {
        std::fputs(kUsage, stdout);
        return 0;
    }

    try {
        KvConfig cfg;
        for (const auto& [k, v] : default_entries()) cfg.set(k, v);

        // First pass: find --config so file values sit under flag values.
        std::vector<std::string> args(argv + 2, argv + argc);
        std::string config_path;
        std::vector<std::string> overrides;
        for (size_t i = 0; i < args.size(); ++i) {
            std::string a = args[i];
            if (a.rfind("--", 0) != 0)
                throw ConfigError("unexpected argument '" + a + "' (flags look like --key=value)");
            a = a.substr(2);
            std::string key, value;
            auto eq = a.find('=');
            if (eq != std::string::npos) {
                key = a.substr(0, eq);
                value = a.substr(eq + 1);
            } else {
                key = a;
                if (i + 1 >= args.size())
                    throw ConfigError("flag --" + key + " needs a value");
                value = args[++i];
            }
            if (key == "config") {
                config_path = value;
            } else if (key == "sources") { // convenience alias
                overrides.push_back("ingest.include=" + value);
            } else {
                overrides.push_back(key + "=" + value);
            }
        }

        if (!config_path.empty()) {
            KvConfig file_cfg = KvConfig::load(config_path);
            for (const auto& [k, v] : file_cfg.entries()) {
                if (!cfg.has(k)) bad_key(k, cfg);
                cfg.set(k, v);
            }
        }
        for (const std::string& o : overrides) {
            auto eq = o.find('=');
            std::string key = o.substr(0, eq);
            if (!cfg.has(key)) bad_key(key, cfg);
            cfg.set(key, o.substr(eq + 1));
        }

        log::set_quiet(cfg.get_bool("quiet", false));

        if (sub == "ingest") return cmd_ingest(cfg);
        if (sub == "manifest") return cmd_manifest(cfg);
        if (sub == "tokenize-check") return cmd_tokenize_check(cfg);
        if (sub == "mlm-build") return cmd_mlm_build(cfg);
        if (sub == "train") return cmd_train(cfg);
        if (sub == "grad-check") return cmd_grad_check(cfg);
        if (sub == "embed") return cmd_embed(cfg);
        if (sub == "tag-eval") return cmd_tag_eval(cfg);
        std::fputs(kUsage, stderr);
        log::error("cli", "unknown subcommand '" + sub + "'");
        return 1;
    } catch (const Error& e) {
        log::error(sub, e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        log::error(sub, e.what());
        return 1;
    }
}
