#include "k12/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/kvconfig.hpp"
#include "k12/log.hpp"
#include "k12/rng.hpp"

namespace k12::model {

void TrainConfig::validate() const {
    if (batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
    if (grad_accum_steps < 1) throw ConfigError("train: grad_accum_steps must be >= 1");
    if (epochs < 0) throw ConfigError("train: epochs must be >= 0");
    if (lr <= 0) throw ConfigError("train: learning rate must be > 0");
    if (beta1 < 0 || beta1 >= 1 || beta2 < 0 || beta2 >= 1)
        throw ConfigError("train: Adam betas must lie in [0, 1)");
    if (adam_eps <= 0) throw ConfigError("train: Adam epsilon must be > 0");
    if (warmup_steps < 0) throw ConfigError("train: warmup_steps must be >= 0");
    if (jobs < 1) throw ConfigError("train: jobs must be >= 1");
}

TrainState TrainState::fresh(const EncoderConfig& config) {
    TrainState s;
    s.params = init_params(config);
    s.adam_m = ModelParams::zeros(config);
    s.adam_v = ModelParams::zeros(config);
    return s;
}

TrainState TrainState::from_checkpoint(const std::string& path) {
    CheckpointData data = load_checkpoint(path);
    TrainState s;
    s.params = std::move(data.params);
    if (data.has_optimizer) {
        s.adam_m = std::move(data.adam_m);
        s.adam_v = std::move(data.adam_v);
    } else {
        s.adam_m = ModelParams::zeros(s.params.config);
        s.adam_v = ModelParams::zeros(s.params.config);
    }
    s.global_step = data.global_step;
    s.epochs_done = data.epochs_done;
    return s;
}

CheckpointData TrainState::to_checkpoint(bool include_optimizer) const {
    CheckpointData data;
    data.params = params;
    data.has_optimizer = include_optimizer;
    if (include_optimizer) {
        data.adam_m = adam_m;
        data.adam_v = adam_v;
    }
    data.global_step = global_step;
    data.epochs_done = epochs_done;
    return data;
}

namespace {

void adam_step(TrainState& s, ModelParams& grads, const TrainConfig& cfg, double lr_t) {
    std::vector<TensorRef> tp = s.params.tensors();
    std::vector<TensorRef> tg = grads.tensors();
    std::vector<TensorRef> tm = s.adam_m.tensors();
    std::vector<TensorRef> tv = s.adam_v.tensors();
    const double t = static_cast<double>(s.global_step);
    const double bc1 = 1.0 - std::pow(cfg.beta1, t);
    const double bc2 = 1.0 - std::pow(cfg.beta2, t);
    for (size_t k = 0; k < tp.size(); ++k) {
        double* p = tp[k].data();
        const double* g = tg[k].data();
        double* m = tm[k].data();
        double* v = tv[k].data();
        const int64_t n = tp[k].size();
        for (int64_t i = 0; i < n; ++i) {
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
            double mhat = m[i] / bc1;
            double vhat = v[i] / bc2;
            p[i] -= lr_t * mhat / (std::sqrt(vhat) + cfg.adam_eps);
        }
    }
}

std::string epoch_checkpoint_path(const std::string& dir, int epoch) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "epoch-%03d.ckpt", epoch);
    return dir + "/" + buf;
}

} // namespace

TrainResult train(TrainState& state, const std::vector<mlm::MlmExample>& data,
                  const TrainConfig& cfg) {
    cfg.validate();
    if (data.empty()) throw ConfigError("train: dataset is empty");
    state.params.config.validate();

    if (!cfg.checkpoint_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.checkpoint_dir, ec);
        if (ec)
            throw IoError("train: cannot create checkpoint dir " + cfg.checkpoint_dir + ": " +
                          ec.message());
    }

    TrainResult result;
    const size_t n = data.size();
    const size_t micros_per_group = static_cast<size_t>(cfg.grad_accum_steps);

    for (int epoch = state.epochs_done + 1; epoch <= cfg.epochs; ++epoch) {
        // Per-epoch shuffle fixed by (seed, epoch) so a resumed run walks
        // the same order as an uninterrupted one.
        std::vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i) order[i] = i;
        rng::Engine shuffle_eng(rng::derive(cfg.seed, static_cast<uint64_t>(epoch)));
        for (size_t i = n; i > 1; --i) {
            size_t j = shuffle_eng.uniform_int(i);
            std::swap(order[i - 1], order[j]);
        }

        const size_t micro_count = (n + cfg.batch_size - 1) / cfg.batch_size;
        size_t micro = 0;
        while (micro < micro_count) {
            size_t group_end = std::min(micro_count, micro + micros_per_group);
            ModelParams grads = ModelParams::zeros(state.params.config);
            int64_t total_masked = 0;
            double ce_weighted = 0.0, acc_weighted = 0.0;

            for (; micro < group_end; ++micro) {
                size_t lo = micro * static_cast<size_t>(cfg.batch_size);
                size_t hi = std::min(n, lo + static_cast<size_t>(cfg.batch_size));
                std::vector<mlm::MlmExample> batch;
                batch.reserve(hi - lo);
                for (size_t i = lo; i < hi; ++i) batch.push_back(data[order[i]]);

                BatchResult fw = forward_batch(state.params, batch, cfg.jobs);
                if (fw.stats.masked == 0) continue; // nothing to learn from
                backward_batch(state.params, batch, fw, 1.0, grads, cfg.jobs);
                total_masked += fw.stats.masked;
                ce_weighted += fw.stats.loss * static_cast<double>(fw.stats.masked);
                acc_weighted += fw.stats.accuracy * static_cast<double>(fw.stats.masked);
            }
            if (total_masked == 0) continue;

            double loss = ce_weighted / static_cast<double>(total_masked);
            double acc = acc_weighted / static_cast<double>(total_masked);
            if (!std::isfinite(loss))
                throw NumericError("loss", "train: non-finite loss at step " +
                                               std::to_string(state.global_step + 1) +
                                               "; last good checkpoint retained");

            grads.scale(1.0 / static_cast<double>(total_masked));
            ++state.global_step;
            double lr_t = cfg.lr;
            if (cfg.warmup_steps > 0 && state.global_step <= cfg.warmup_steps)
                lr_t = cfg.lr * static_cast<double>(state.global_step) /
                       static_cast<double>(cfg.warmup_steps);
            adam_step(state, grads, cfg, lr_t);

            result.trace.push_back({state.global_step, epoch, loss, acc});
        }

        // f32 is the canonical precision at epoch boundaries: what is
        // saved is exactly what stays in memory, so resume is bit-exact.
        state.params.round_to_f32();
        state.adam_m.round_to_f32();
        state.adam_v.round_to_f32();
        state.epochs_done = epoch;

        if (!state.params.all_finite())
            throw NumericError("params",
                               "train: non-finite parameters after epoch " +
                                   std::to_string(epoch) + "; last good checkpoint retained");

        if (!cfg.checkpoint_dir.empty()) {
            CheckpointData data_out = state.to_checkpoint(cfg.save_optimizer);
            std::string path = epoch_checkpoint_path(cfg.checkpoint_dir, epoch);
            save_checkpoint(data_out, path);
            save_checkpoint(data_out, cfg.checkpoint_dir + "/last.ckpt");
            result.last_checkpoint = path;
            log::info("train", "epoch " + std::to_string(epoch) + " done, checkpoint " + path);
        } else {
            log::info("train", "epoch " + std::to_string(epoch) + " done");
        }
    }
    return result;
}

void write_trace_csv(const std::vector<TraceRow>& rows, const std::string& path) {
    std::string out = "step,epoch,loss,masked_acc\n";
    char buf[128];
    for (const TraceRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%lld,%d,%.17g,%.17g\n",
                      static_cast<long long>(r.step), r.epoch, r.loss, r.masked_acc);
        out += buf;
    }
    binio::write_file(path, out);
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
    std::vector<TraceRow> rows;
    std::vector<std::string> lines = binio::read_lines(path);
    if (lines.empty() || trim(lines[0]) != "step,epoch,loss,masked_acc")
        throw FormatError("trace: missing header in " + path);
    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::vector<std::string> cols = split(lines[i], ',');
        if (cols.size() != 4) throw FormatError("trace: bad row in " + path);
        TraceRow r;
        try {
            r.step = std::stoll(cols[0]);
            r.epoch = std::stoi(cols[1]);
            r.loss = std::stod(cols[2]);
            r.masked_acc = std::stod(cols[3]);
        } catch (const std::exception&) {
            throw FormatError("trace: bad row in " + path);
        }
        rows.push_back(r);
    }
    return rows;
}

} // namespace k12::model
