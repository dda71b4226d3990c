#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>

#include "json.hpp"

#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/mlm.hpp"
#include "k12/parallel.hpp"

namespace k12::mlm {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'M', 'L', 'M', '1'};

std::string header_path(const std::string& dir) { return dir + "/dataset.json"; }

} // namespace

std::string shard_path(const std::string& dir, int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "shard-%05d.bin", index);
    return dir + "/" + buf;
}

void write_shard_file(const std::vector<MlmExample>& examples, int max_len, int vocab_size,
                      const std::string& path) {
    binio::Writer w(path);
    w.bytes(kMagic, 4);
    w.u32(static_cast<uint32_t>(max_len));
    w.u32(static_cast<uint32_t>(vocab_size));
    w.u32(static_cast<uint32_t>(examples.size()));
    for (const MlmExample& ex : examples) {
        if (ex.length() != max_len) throw RangeError("shard: example length != max_len");
        for (uint32_t id : ex.input_ids) w.u32(id);
        for (uint8_t m : ex.attention_mask) w.u8(m);
        for (int32_t l : ex.labels) w.i32(l);
    }
    w.close();
}

std::vector<MlmExample> read_shard_file(const std::string& path, int expect_len,
                                        int expect_vocab) {
    binio::Reader r(path);
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw CorruptError("shard: bad magic in " + path);
    uint32_t L = r.u32();
    uint32_t V = r.u32();
    uint32_t count = r.u32();
    if (expect_len >= 0 && L != static_cast<uint32_t>(expect_len))
        throw CorruptError("shard: length " + std::to_string(L) + " does not match header in " +
                           path);
    if (expect_vocab >= 0 && V != static_cast<uint32_t>(expect_vocab))
        throw CorruptError("shard: vocab size " + std::to_string(V) +
                           " does not match header in " + path);

    std::vector<MlmExample> examples(count);
    for (uint32_t e = 0; e < count; ++e) {
        MlmExample& ex = examples[e];
        ex.input_ids.resize(L);
        ex.attention_mask.resize(L);
        ex.labels.resize(L);
        for (uint32_t i = 0; i < L; ++i) ex.input_ids[i] = r.u32();
        for (uint32_t i = 0; i < L; ++i) ex.attention_mask[i] = r.u8();
        for (uint32_t i = 0; i < L; ++i) ex.labels[i] = r.i32();
        for (uint32_t i = 0; i < L; ++i) {
            if (ex.input_ids[i] >= V)
                throw CorruptError("shard: input id out of range in " + path);
            if (ex.labels[i] != -1 &&
                (ex.labels[i] < 0 || ex.labels[i] >= static_cast<int32_t>(V)))
                throw CorruptError("shard: label out of range in " + path);
        }
    }
    if (!r.at_eof()) throw CorruptError("shard: trailing bytes in " + path);
    return examples;
}

DatasetHeader write_shards(const std::vector<Segment>& segments, const Vocab& vocab,
                           const MaskingPolicy& policy, int max_len, const std::string& dir,
                           int shard_size, int jobs) {
    policy.validate();
    if (shard_size < 1) throw ConfigError("shards: shard_size must be >= 1");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("shards: cannot create " + dir + ": " + ec.message());

    const int64_t n = static_cast<int64_t>(segments.size());
    const int shard_count = static_cast<int>((n + shard_size - 1) / shard_size);

    parallel_for(static_cast<size_t>(shard_count), jobs, [&](size_t s) {
        int64_t begin = static_cast<int64_t>(s) * shard_size;
        int64_t end = std::min(n, begin + shard_size);
        std::vector<MlmExample> examples;
        examples.reserve(static_cast<size_t>(end - begin));
        for (int64_t i = begin; i < end; ++i) {
            const Segment& seg = segments[static_cast<size_t>(i)];
            tok::TokenSequence seq = segment_to_sequence(seg, vocab, max_len);
            rng::Engine eng(rng::derive(policy.seed, s, static_cast<uint64_t>(i - begin)));
            MlmExample ex = mask_tokens(seq, vocab, policy, eng);
            ex.doc_id = seg.doc_id;
            examples.push_back(std::move(ex));
        }
        write_shard_file(examples, max_len, static_cast<int>(vocab.size()),
                         shard_path(dir, static_cast<int>(s)));
    });

    DatasetHeader h;
    h.max_len = max_len;
    h.vocab_size = static_cast<int>(vocab.size());
    h.policy = policy;
    h.shard_count = shard_count;
    h.example_count = n;

    json j;
    j["max_len"] = h.max_len;
    j["vocab_size"] = h.vocab_size;
    j["policy"] = {{"select_prob", policy.select_prob},
                   {"mask_frac", policy.mask_frac},
                   {"random_frac", policy.random_frac},
                   {"keep_frac", policy.keep_frac}};
    j["seed"] = policy.seed;
    j["shard_count"] = h.shard_count;
    j["example_count"] = h.example_count;
    binio::write_file(header_path(dir), j.dump(2) + "\n");
    return h;
}

DatasetHeader read_dataset_header(const std::string& dir) {
    json j = json::parse(binio::read_file(header_path(dir)), nullptr, false);
    if (j.is_discarded()) throw CorruptError("shards: unreadable dataset header in " + dir);
    DatasetHeader h;
    try {
        h.max_len = j.at("max_len").get<int>();
        h.vocab_size = j.at("vocab_size").get<int>();
        h.policy.select_prob = j.at("policy").at("select_prob").get<double>();
        h.policy.mask_frac = j.at("policy").at("mask_frac").get<double>();
        h.policy.random_frac = j.at("policy").at("random_frac").get<double>();
        h.policy.keep_frac = j.at("policy").at("keep_frac").get<double>();
        h.policy.seed = j.at("seed").get<uint64_t>();
        h.shard_count = j.at("shard_count").get<int>();
        h.example_count = j.at("example_count").get<int64_t>();
    } catch (const json::exception& e) {
        throw CorruptError(std::string("shards: dataset header: ") + e.what());
    }
    return h;
}

std::vector<MlmExample> read_shards(const std::string& dir) {
    DatasetHeader h = read_dataset_header(dir);
    std::vector<MlmExample> all;
    all.reserve(static_cast<size_t>(h.example_count));
    for (int s = 0; s < h.shard_count; ++s) {
        std::vector<MlmExample> part =
            read_shard_file(shard_path(dir, s), h.max_len, h.vocab_size);
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    if (static_cast<int64_t>(all.size()) != h.example_count)
        throw CorruptError("shards: header example_count does not match shard contents in " +
                           dir);
    return all;
}

} // namespace k12::mlm
