#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k12/checkpoint.hpp"
#include "k12/mlm.hpp"
#include "k12/model.hpp"

namespace k12::model {

struct TrainConfig {
    int batch_size = 32;
    int grad_accum_steps = 4;
    int epochs = 10; // target epoch count; completed epochs never rerun
    double lr = 5e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    int warmup_steps = 0; // linear ramp of the learning rate, 0 = off
    uint64_t seed = 0;
    int jobs = 1;
    std::string checkpoint_dir; // empty keeps state in memory only
    bool save_optimizer = true;

    void validate() const;
};

struct TraceRow {
    int64_t step = 0;
    int epoch = 0;
    double loss = 0.0;
    double masked_acc = 0.0;
};

// Mutable training state: parameters, Adam moments, progress counters.
struct TrainState {
    ModelParams params;
    ModelParams adam_m, adam_v;
    int64_t global_step = 0;
    int epochs_done = 0;

    static TrainState fresh(const EncoderConfig& config);
    static TrainState from_checkpoint(const std::string& path);

    CheckpointData to_checkpoint(bool include_optimizer) const;
};

struct TrainResult {
    std::vector<TraceRow> trace;
    std::string last_checkpoint; // newest epoch file when checkpoint_dir set
};

// Runs epochs state.epochs_done+1 .. cfg.epochs. One optimizer step per
// grad_accum_steps micro-batches; gradients are summed weighted by masked
// counts and divided by the total, so (micro 8 x accum 4) steps match
// (batch 32 x accum 1) exactly up to float merge order. Every epoch ends
// by snapping params and moments to f32 and writing a checkpoint. A
// non-finite loss aborts; checkpoints already on disk stay put.
TrainResult train(TrainState& state, const std::vector<mlm::MlmExample>& data,
                  const TrainConfig& cfg);

void write_trace_csv(const std::vector<TraceRow>& rows, const std::string& path);
std::vector<TraceRow> read_trace_csv(const std::string& path);

} // namespace k12::model
