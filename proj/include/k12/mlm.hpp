#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k12/corpus.hpp"
#include "k12/rng.hpp"
#include "k12/tokenizer.hpp"
#include "k12/vocab.hpp"

namespace k12::mlm {

using tok::Vocab;

// How masking selects and replaces positions. Fractions apply among the
// selected positions and must sum to 1.
struct MaskingPolicy {
    double select_prob = 0.15;
    double mask_frac = 0.8;
    double random_frac = 0.1;
    double keep_frac = 0.1;
    uint64_t seed = 0;

    void validate() const; // throws ConfigError on bad values
};

// A run of WordPiece ids from one document, at most max_len-2 long so it
// fits between [CLS] and [SEP]. doc_id is carried for provenance checks
// and is not persisted in shard files.
struct Segment {
    std::vector<int32_t> piece_ids;
    std::string doc_id;
};

// One training example after masking. labels hold the original id at the
// selected positions and -1 everywhere else.
struct MlmExample {
    std::vector<uint32_t> input_ids;
    std::vector<uint8_t> attention_mask;
    std::vector<int32_t> labels;
    std::string doc_id; // in-memory provenance only

    int length() const { return static_cast<int>(input_ids.size()); }
};

// Greedily concatenates consecutive same-document sentences into segments
// of at most max_len-2 pieces. A sentence longer than the whole budget is
// split at the piece level. Never mixes documents.
std::vector<Segment> pack_segments(const std::vector<std::vector<int32_t>>& sentence_pieces,
                                   const std::string& doc_id, int max_len);

// Tokenizes records (already in deterministic corpus order), groups them
// by doc_id, and packs each group. With pack=false every sentence becomes
// its own segment (still split when overlong).
std::vector<Segment> pack_corpus(const std::vector<corpus::SentenceRecord>& records,
                                 const tok::Tokenizer& tokenizer, int max_len, bool pack,
                                 int jobs = 1);

// Wraps a segment as [CLS] + pieces + [SEP] + [PAD]... of exactly max_len.
tok::TokenSequence segment_to_sequence(const Segment& seg, const Vocab& vocab, int max_len);

// Applies the policy to every maskable position (attention 1, not one of
// the special tokens) using draws from eng in position order.
MlmExample mask_tokens(const tok::TokenSequence& seq, const Vocab& vocab,
                       const MaskingPolicy& policy, rng::Engine& eng);

struct DatasetHeader {
    int max_len = 0;
    int vocab_size = 0;
    MaskingPolicy policy;
    int shard_count = 0;
    int64_t example_count = 0;
};

// Masks and persists segments as numbered shard files plus a dataset
// header. The rng stream of each example depends only on (policy.seed,
// shard index, index within shard), so output bytes are independent of
// the job count.
DatasetHeader write_shards(const std::vector<Segment>& segments, const Vocab& vocab,
                           const MaskingPolicy& policy, int max_len, const std::string& dir,
                           int shard_size, int jobs = 1);

DatasetHeader read_dataset_header(const std::string& dir);

// Reads every shard back in shard-then-index order, validating magic,
// sizes, and counts against the header.
std::vector<MlmExample> read_shards(const std::string& dir);

// Single shard file I/O (exposed for targeted tests).
void write_shard_file(const std::vector<MlmExample>& examples, int max_len, int vocab_size,
                      const std::string& path);
std::vector<MlmExample> read_shard_file(const std::string& path, int expect_len,
                                        int expect_vocab);

std::string shard_path(const std::string& dir, int index);

} // namespace k12::mlm
