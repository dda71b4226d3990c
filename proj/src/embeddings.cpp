#include "k12/embeddings.hpp"

#include <cstring>

#include "k12/binio.hpp"
#include "k12/errors.hpp"

namespace k12::tag {

namespace {
constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
}

void EmbeddingSet::add(const std::string& name, Eigen::VectorXd vec) {
    if (dim_ == 0) dim_ = static_cast<int>(vec.size());
    if (static_cast<int>(vec.size()) != dim_)
        throw FormatError("embeddings: '" + name + "' has dimension " +
                          std::to_string(vec.size()) + ", expected " + std::to_string(dim_));
    double norm = vec.norm();
    if (!(norm > 0.0))
        throw FormatError("embeddings: '" + name + "' is a zero vector");
    vec /= norm;
    if (!vectors_.emplace(name, std::move(vec)).second)
        throw FormatError("embeddings: duplicate name '" + name + "'");
}

const Eigen::VectorXd* EmbeddingSet::find(const std::string& name) const {
    auto it = vectors_.find(name);
    return it == vectors_.end() ? nullptr : &it->second;
}

void save_embeddings(const std::vector<std::pair<std::string, Eigen::VectorXd>>& entries,
                     const std::string& path) {
    if (entries.empty()) throw FormatError("embeddings: nothing to save");
    const int dim = static_cast<int>(entries.front().second.size());
    binio::Writer w(path);
    w.bytes(kMagic, 4);
    w.u32(static_cast<uint32_t>(dim));
    w.u32(static_cast<uint32_t>(entries.size()));
    for (const auto& [name, vec] : entries) {
        if (static_cast<int>(vec.size()) != dim)
            throw FormatError("embeddings: '" + name + "' has dimension " +
                              std::to_string(vec.size()) + ", expected " + std::to_string(dim));
        if (name.size() > 0xFFFF) throw RangeError("embeddings: name too long: " + name);
        w.u16(static_cast<uint16_t>(name.size()));
        w.str(name);
        for (Eigen::Index i = 0; i < vec.size(); ++i) w.f32(static_cast<float>(vec(i)));
    }
    w.close();
}

EmbeddingSet load_embeddings(const std::string& path) {
    binio::Reader r(path);
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw CorruptError("embeddings: bad magic in " + path);
    uint32_t dim = r.u32();
    uint32_t count = r.u32();
    if (dim == 0 || dim > (1u << 20))
        throw CorruptError("embeddings: implausible dimension in " + path);

    EmbeddingSet set(static_cast<int>(dim));
    for (uint32_t e = 0; e < count; ++e) {
        uint16_t name_len = r.u16();
        std::string name = r.str(name_len);
        Eigen::VectorXd vec(dim);
        for (uint32_t i = 0; i < dim; ++i) vec(i) = static_cast<double>(r.f32());
        try {
            set.add(name, std::move(vec));
        } catch (const FormatError& err) {
            throw CorruptError(std::string(err.what()) + " (in " + path + ")");
        }
    }
    if (!r.at_eof()) throw CorruptError("embeddings: trailing bytes in " + path);
    return set;
}

} // namespace k12::tag
