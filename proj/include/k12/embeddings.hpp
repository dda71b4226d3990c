#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace k12::tag {

// Named unit vectors of one dimension. Vectors are L2-normalized as they
// are added, so anything read back out is already a direction.
class EmbeddingSet {
public:
    EmbeddingSet() = default;
    explicit EmbeddingSet(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    size_t size() const { return vectors_.size(); }

    // Normalizes and stores. Throws FormatError on duplicate names,
    // dimension mismatches, or zero vectors.
    void add(const std::string& name, Eigen::VectorXd vec);

    const Eigen::VectorXd* find(const std::string& name) const;

private:
    int dim_ = 0;
    std::unordered_map<std::string, Eigen::VectorXd> vectors_;
};

// Binary embedding file: magic "EMB1", u32 dim, u32 count, then per record
// u16 name length, name bytes, dim f32 values. Entries keep file order on
// save; load normalizes every vector.
void save_embeddings(const std::vector<std::pair<std::string, Eigen::VectorXd>>& entries,
                     const std::string& path);
EmbeddingSet load_embeddings(const std::string& path);

} // namespace k12::tag
