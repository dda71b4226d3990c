#include "k12/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "k12/rng.hpp"

namespace k12::model {

namespace {

// Two padded sequences with label positions sprinkled over the interior.
std::vector<mlm::MlmExample> synth_batch(const EncoderConfig& cfg, uint64_t seed) {
    rng::Engine eng(rng::derive(seed, 0xBA7C4));
    const int L = cfg.max_len;
    std::vector<mlm::MlmExample> batch(2);
    for (size_t b = 0; b < batch.size(); ++b) {
        mlm::MlmExample& ex = batch[b];
        int used = b == 0 ? L : std::max(3, L * 2 / 3); // second one has padding
        ex.input_ids.resize(L);
        ex.attention_mask.resize(L);
        ex.labels.assign(L, -1);
        int labelled = 0;
        for (int i = 0; i < L; ++i) {
            bool live = i < used;
            ex.attention_mask[i] = live ? 1 : 0;
            ex.input_ids[i] =
                live ? static_cast<uint32_t>(eng.uniform_int(static_cast<uint64_t>(cfg.vocab)))
                     : 0;
            if (live && i > 0 && i < used - 1 && eng.uniform() < 0.25) {
                ex.labels[i] =
                    static_cast<int32_t>(eng.uniform_int(static_cast<uint64_t>(cfg.vocab)));
                ++labelled;
            }
        }
        if (labelled == 0) ex.labels[1] = static_cast<int32_t>(ex.input_ids[1]);
    }
    return batch;
}

double batch_loss(const ModelParams& params, const std::vector<mlm::MlmExample>& batch) {
    return forward_batch(params, batch, 1).stats.loss;
}

} // namespace

GradCheckReport grad_check(const EncoderConfig& config, double eps, int min_coords,
                           uint64_t seed) {
    EncoderConfig cfg = config;
    cfg.validate();
    std::vector<mlm::MlmExample> batch = synth_batch(cfg, seed);

    ModelParams params = init_params(cfg);
    BatchResult fw = forward_batch(params, batch, 1);
    ModelParams analytic = ModelParams::zeros(cfg);
    backward_batch(params, batch, fw, 1.0 / static_cast<double>(fw.stats.masked), analytic, 1);

    std::vector<TensorRef> pt = params.tensors();
    std::vector<TensorRef> gt = analytic.tensors();
    const size_t ntensors = pt.size();
    const int per_tensor =
        std::max<int>(1, (min_coords + static_cast<int>(ntensors) - 1) /
                             static_cast<int>(ntensors));

    GradCheckReport report;
    for (size_t t = 0; t < ntensors; ++t) {
        rng::Engine pick(rng::derive(seed, 0xC00D, t));
        double* p = pt[t].data();
        const double* g = gt[t].data();
        const int64_t size = pt[t].size();
        for (int k = 0; k < per_tensor; ++k) {
            int64_t i = static_cast<int64_t>(pick.uniform_int(static_cast<uint64_t>(size)));
            double saved = p[i];
            p[i] = saved + eps;
            double up = batch_loss(params, batch);
            p[i] = saved - eps;
            double down = batch_loss(params, batch);
            p[i] = saved;
            double numeric = (up - down) / (2.0 * eps);
            double rel = std::fabs(g[i] - numeric) /
                         std::max({std::fabs(g[i]), std::fabs(numeric), 1e-8});
            ++report.coords_checked;
            if (rel > report.max_rel_error) {
                report.max_rel_error = rel;
                report.worst_tensor = pt[t].name;
                report.worst_index = i;
            }
        }
    }
    return report;
}

} // namespace k12::model
