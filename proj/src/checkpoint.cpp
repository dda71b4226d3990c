#include "k12/checkpoint.hpp"

#include <cstring>
#include <map>

#include "json.hpp"

#include "k12/binio.hpp"
#include "k12/errors.hpp"

namespace k12::model {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'K', '1', '2', 'C'};
constexpr uint32_t kVersion = 1;

void write_tensor(binio::Writer& w, const std::string& name, const TensorRef& t) {
    if (name.size() > 0xFFFF) throw RangeError("checkpoint: tensor name too long");
    w.u16(static_cast<uint16_t>(name.size()));
    w.str(name);
    std::vector<uint32_t> dims = t.dims();
    w.u8(static_cast<uint8_t>(dims.size()));
    for (uint32_t d : dims) w.u32(d);
    if (t.mat) {
        // row-major on disk regardless of in-memory layout
        for (Eigen::Index r = 0; r < t.mat->rows(); ++r)
            for (Eigen::Index col = 0; col < t.mat->cols(); ++col)
                w.f32(static_cast<float>((*t.mat)(r, col)));
    } else {
        for (Eigen::Index i = 0; i < t.vec->size(); ++i)
            w.f32(static_cast<float>((*t.vec)(i)));
    }
}

struct RawTensor {
    std::vector<uint32_t> dims;
    std::vector<float> data;
};

void fill_tensor(const std::string& name, const RawTensor& raw, TensorRef& t) {
    std::vector<uint32_t> want = t.dims();
    if (raw.dims != want) {
        auto fmt = [](const std::vector<uint32_t>& d) {
            std::string s = "[";
            for (size_t i = 0; i < d.size(); ++i)
                s += (i ? "x" : "") + std::to_string(d[i]);
            return s + "]";
        };
        throw FormatError("checkpoint: shape mismatch for tensor '" + name + "': file has " +
                          fmt(raw.dims) + ", config implies " + fmt(want));
    }
    if (t.mat) {
        size_t idx = 0;
        for (Eigen::Index r = 0; r < t.mat->rows(); ++r)
            for (Eigen::Index col = 0; col < t.mat->cols(); ++col)
                (*t.mat)(r, col) = static_cast<double>(raw.data[idx++]);
    } else {
        for (Eigen::Index i = 0; i < t.vec->size(); ++i)
            (*t.vec)(i) = static_cast<double>(raw.data[static_cast<size_t>(i)]);
    }
}

json config_to_json(const EncoderConfig& c) {
    return json{{"layers", c.layers},     {"hidden", c.hidden},
                {"heads", c.heads},       {"ff_dim", c.ff_dim},
                {"max_len", c.max_len},   {"vocab", c.vocab},
                {"dropout_prob", c.dropout_prob}, {"init_std", c.init_std},
                {"seed", c.seed}};
}

EncoderConfig config_from_json(const json& j) {
    EncoderConfig c;
    c.layers = j.at("layers").get<int>();
    c.hidden = j.at("hidden").get<int>();
    c.heads = j.at("heads").get<int>();
    c.ff_dim = j.at("ff_dim").get<int>();
    c.max_len = j.at("max_len").get<int>();
    c.vocab = j.at("vocab").get<int>();
    c.dropout_prob = j.at("dropout_prob").get<double>();
    c.init_std = j.at("init_std").get<double>();
    c.seed = j.at("seed").get<uint64_t>();
    return c;
}

} // namespace

void save_checkpoint(CheckpointData& data, const std::string& path) {
    binio::Writer w(path);
    w.bytes(kMagic, 4);
    w.u32(kVersion);

    json meta;
    meta["config"] = config_to_json(data.params.config);
    meta["global_step"] = data.global_step;
    meta["epochs_done"] = data.epochs_done;
    meta["has_optimizer"] = data.has_optimizer;
    std::string meta_str = meta.dump();
    w.u32(static_cast<uint32_t>(meta_str.size()));
    w.str(meta_str);

    std::vector<TensorRef> ptensors = data.params.tensors();
    uint32_t count = static_cast<uint32_t>(ptensors.size());
    if (data.has_optimizer) count *= 3;
    w.u32(count);
    for (TensorRef& t : ptensors) write_tensor(w, t.name, t);
    if (data.has_optimizer) {
        for (TensorRef& t : data.adam_m.tensors()) write_tensor(w, "adam.m." + t.name, t);
        for (TensorRef& t : data.adam_v.tensors()) write_tensor(w, "adam.v." + t.name, t);
    }
    w.close();
}

CheckpointData load_checkpoint(const std::string& path) {
    binio::Reader r(path);
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw CorruptError("checkpoint: bad magic in " + path);
    uint32_t version = r.u32();
    if (version != kVersion)
        throw FormatError("checkpoint: unsupported version " + std::to_string(version) + " in " +
                          path);

    uint32_t meta_len = r.u32();
    json meta = json::parse(r.str(meta_len), nullptr, false);
    if (meta.is_discarded()) throw CorruptError("checkpoint: unreadable metadata in " + path);

    CheckpointData data;
    EncoderConfig cfg;
    try {
        cfg = config_from_json(meta.at("config"));
        data.global_step = meta.at("global_step").get<int64_t>();
        data.epochs_done = meta.at("epochs_done").get<int>();
        data.has_optimizer = meta.at("has_optimizer").get<bool>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("checkpoint: metadata: ") + e.what());
    }
    cfg.validate();
    data.params = ModelParams::zeros(cfg);
    if (data.has_optimizer) {
        data.adam_m = ModelParams::zeros(cfg);
        data.adam_v = ModelParams::zeros(cfg);
    }

    uint32_t count = r.u32();
    std::map<std::string, RawTensor> table;
    for (uint32_t i = 0; i < count; ++i) {
        uint16_t name_len = r.u16();
        std::string name = r.str(name_len);
        uint8_t rank = r.u8();
        RawTensor raw;
        uint64_t n = 1;
        for (uint8_t d = 0; d < rank; ++d) {
            uint32_t dim = r.u32();
            raw.dims.push_back(dim);
            n *= dim;
        }
        if (n > (1ull << 31)) throw CorruptError("checkpoint: tensor too large in " + path);
        raw.data.resize(n);
        for (uint64_t e = 0; e < n; ++e) raw.data[e] = r.f32();
        if (!table.emplace(std::move(name), std::move(raw)).second)
            throw CorruptError("checkpoint: duplicate tensor name in " + path);
    }
    if (!r.at_eof()) throw CorruptError("checkpoint: trailing bytes in " + path);

    auto take = [&](const std::string& name, TensorRef& t) {
        auto it = table.find(name);
        if (it == table.end())
            throw FormatError("checkpoint: missing tensor '" + name + "' in " + path);
        fill_tensor(name, it->second, t);
        table.erase(it);
    };
    for (TensorRef t : data.params.tensors()) take(t.name, t);
    if (data.has_optimizer) {
        for (TensorRef t : data.adam_m.tensors()) take("adam.m." + t.name, t);
        for (TensorRef t : data.adam_v.tensors()) take("adam.v." + t.name, t);
    }
    if (!table.empty())
        throw FormatError("checkpoint: unexpected tensor '" + table.begin()->first + "' in " +
                          path);
    return data;
}

} // namespace k12::model
