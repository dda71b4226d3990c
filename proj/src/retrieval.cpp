#include "k12/retrieval.hpp"

#include <algorithm>

#include "json.hpp"

#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/parallel.hpp"

namespace k12::tag {

using nlohmann::json;

RankIndex build_index(const std::vector<TaxonomyLabel>& labels,
                      const EmbeddingSet& embeddings) {
    std::vector<const TaxonomyLabel*> sorted;
    sorted.reserve(labels.size());
    for (const TaxonomyLabel& l : labels) sorted.push_back(&l);
    std::sort(sorted.begin(), sorted.end(),
              [](const TaxonomyLabel* a, const TaxonomyLabel* b) {
                  return a->label_id < b->label_id;
              });

    RankIndex index;
    index.vectors.resize(static_cast<Eigen::Index>(sorted.size()), embeddings.dim());
    index.label_ids.reserve(sorted.size());
    for (size_t i = 0; i < sorted.size(); ++i) {
        const Eigen::VectorXd* v = embeddings.find(sorted[i]->flat);
        if (!v)
            throw FormatError("index: no embedding for label '" + sorted[i]->flat + "' (id " +
                              std::to_string(sorted[i]->label_id) + ")");
        index.vectors.row(static_cast<Eigen::Index>(i)) = v->transpose();
        index.label_ids.push_back(sorted[i]->label_id);
    }
    return index;
}

namespace {

Eigen::VectorXd scores_for(const Eigen::VectorXd& query, const RankIndex& index) {
    if (query.size() != index.vectors.cols())
        throw RangeError("rank: query dimension does not match the index");
    double norm = query.norm();
    if (!(norm > 0.0)) throw RangeError("rank: zero-norm query has no direction");
    return index.vectors * (query / norm);
}

} // namespace

std::vector<Scored> rank(const Eigen::VectorXd& query, const RankIndex& index, int k) {
    if (k < 1) throw ConfigError("rank: K must be >= 1");
    Eigen::VectorXd scores = scores_for(query, index);
    const int n = index.size();
    std::vector<int> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = i;
    int take = std::min(k, n);
    // rows are already in ascending label_id order, which is the tie-break
    auto better = [&](int a, int b) {
        if (scores(a) != scores(b)) return scores(a) > scores(b);
        return a < b;
    };
    std::partial_sort(rows.begin(), rows.begin() + take, rows.end(), better);
    std::vector<Scored> out;
    out.reserve(static_cast<size_t>(take));
    for (int i = 0; i < take; ++i)
        out.push_back({index.label_ids[static_cast<size_t>(rows[static_cast<size_t>(i)])],
                       scores(rows[static_cast<size_t>(i)])});
    return out;
}

int gold_rank(const Eigen::VectorXd& query, const RankIndex& index, int64_t gold_label_id) {
    Eigen::VectorXd scores = scores_for(query, index);
    auto it = std::lower_bound(index.label_ids.begin(), index.label_ids.end(), gold_label_id);
    if (it == index.label_ids.end() || *it != gold_label_id)
        throw FormatError("rank: gold label id " + std::to_string(gold_label_id) +
                          " is not in the index");
    const Eigen::Index g = it - index.label_ids.begin();
    const double gs = scores(g);
    int before = 0;
    for (Eigen::Index i = 0; i < scores.size(); ++i) {
        if (scores(i) > gs || (scores(i) == gs && i < g)) ++before;
    }
    return before + 1;
}

EvalResult recall_at_k(const std::vector<std::pair<std::string, int>>& ranks,
                       const std::vector<int>& ks) {
    EvalResult r;
    r.ranks = ranks;
    r.n = static_cast<int64_t>(ranks.size());
    for (int k : ks) {
        int64_t hits = 0;
        for (const auto& [id, rank_of_gold] : ranks)
            if (rank_of_gold <= k) ++hits;
        r.recall[k] = r.n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(r.n);
    }
    return r;
}

EvalResult evaluate(const std::vector<LabeledQuestion>& questions,
                    const std::vector<TaxonomyLabel>& taxonomy,
                    const EmbeddingSet& question_embeddings,
                    const EmbeddingSet& label_embeddings, const std::vector<int>& ks,
                    int jobs) {
    RankIndex index = build_index(taxonomy, label_embeddings);

    std::vector<std::pair<std::string, int>> ranks(questions.size());
    parallel_for(questions.size(), jobs, [&](size_t i) {
        const LabeledQuestion& q = questions[i];
        const Eigen::VectorXd* v = question_embeddings.find(q.question_id);
        if (!v)
            throw FormatError("evaluate: no embedding for question '" + q.question_id + "'");
        ranks[i] = {q.question_id, gold_rank(*v, index, q.gold_label_id)};
    });
    return recall_at_k(ranks, ks);
}

std::string eval_report_json(const EvalResult& result) {
    json j;
    json recall = json::object();
    for (const auto& [k, v] : result.recall) recall[std::to_string(k)] = v;
    j["recall"] = recall;
    j["n"] = result.n;
    json ranks = json::array();
    for (const auto& [id, r] : result.ranks)
        ranks.push_back({{"question_id", id}, {"gold_rank", r}});
    j["ranks"] = ranks;
    return j.dump(2) + "\n";
}

void write_eval_report(const EvalResult& result, const std::string& path) {
    binio::write_file(path, eval_report_json(result));
}

EvalResult read_eval_report(const std::string& path) {
    json j = json::parse(binio::read_file(path), nullptr, false);
    if (j.is_discarded()) throw FormatError("report: invalid JSON in " + path);
    EvalResult r;
    try {
        for (const auto& [k, v] : j.at("recall").items())
            r.recall[std::stoi(k)] = v.get<double>();
        r.n = j.at("n").get<int64_t>();
        for (const auto& row : j.at("ranks"))
            r.ranks.emplace_back(row.at("question_id").get<std::string>(),
                                 row.at("gold_rank").get<int>());
    } catch (const json::exception& e) {
        throw FormatError(std::string("report: ") + e.what());
    }
    return r;
}

} // namespace k12::tag
