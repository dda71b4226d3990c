#pragma once

#include <cstdint>
#include <string>

#include "k12/model.hpp"

namespace k12::model {

struct GradCheckReport {
    double max_rel_error = 0.0;
    int coords_checked = 0;
    std::string worst_tensor;
    int64_t worst_index = -1;
};

// Central finite differences against the analytic gradients on a synthetic
// batch, sampling at least min_coords coordinates with every tensor
// represented. Relative error is |ga - gn| / max(|ga|, |gn|, 1e-8).
GradCheckReport grad_check(const EncoderConfig& config, double eps = 1e-3,
                           int min_coords = 200, uint64_t seed = 0);

} // namespace k12::model
