#pragma once

#include <cstdint>
#include <string>

#include "k12/model.hpp"

namespace k12::model {

// On-disk model state. Values are stored as f32; the in-memory doubles are
// snapped to f32 at every epoch boundary, so a save/load cycle at that
// point is bit-exact and training resumes identically.
struct CheckpointData {
    ModelParams params;
    bool has_optimizer = false;
    ModelParams adam_m, adam_v; // shaped like params when has_optimizer
    int64_t global_step = 0;
    int epochs_done = 0;
};

void save_checkpoint(CheckpointData& data, const std::string& path);
CheckpointData load_checkpoint(const std::string& path);

} // namespace k12::model
