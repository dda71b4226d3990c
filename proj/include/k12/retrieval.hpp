#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "k12/embeddings.hpp"
#include "k12/taxonomy.hpp"

namespace k12::tag {

inline const std::vector<int> kDefaultKs = {5, 10, 15, 20};

// Unit label vectors stacked in ascending label_id order. Immutable after
// build; concurrent queries are safe.
struct RankIndex {
    Eigen::MatrixXd vectors;        // one row per label
    std::vector<int64_t> label_ids; // ascending, aligned with rows

    int size() const { return static_cast<int>(label_ids.size()); }
};

// Every label's flat string must have an embedding; a missing one is an
// error naming the flat string.
RankIndex build_index(const std::vector<TaxonomyLabel>& labels, const EmbeddingSet& embeddings);

struct Scored {
    int64_t label_id = 0;
    double score = 0.0;
};

// Top-K labels by cosine similarity, ties broken by ascending label_id.
// K beyond the label count returns everything. Zero-norm queries are
// rejected (no defined direction).
std::vector<Scored> rank(const Eigen::VectorXd& query, const RankIndex& index, int k);

// 1-based position the gold label would take in the full ranking.
int gold_rank(const Eigen::VectorXd& query, const RankIndex& index, int64_t gold_label_id);

struct EvalResult {
    std::map<int, double> recall; // K -> fraction of golds inside top K
    int64_t n = 0;
    std::vector<std::pair<std::string, int>> ranks; // question_id -> gold rank
};

// Recall@K from precomputed gold ranks.
EvalResult recall_at_k(const std::vector<std::pair<std::string, int>>& ranks,
                       const std::vector<int>& ks = kDefaultKs);

// Full protocol: look up question vectors by question_id and label vectors
// by flat string, rank, and aggregate. Questions fan out across jobs; the
// result is reduced in input order, so output is deterministic.
EvalResult evaluate(const std::vector<LabeledQuestion>& questions,
                    const std::vector<TaxonomyLabel>& taxonomy,
                    const EmbeddingSet& question_embeddings,
                    const EmbeddingSet& label_embeddings,
                    const std::vector<int>& ks = kDefaultKs, int jobs = 1);

std::string eval_report_json(const EvalResult& result);
void write_eval_report(const EvalResult& result, const std::string& path);
EvalResult read_eval_report(const std::string& path);

} // namespace k12::tag
