#include <cmath>

#include "k12/errors.hpp"
#include "k12/mlm.hpp"

namespace k12::mlm {

void MaskingPolicy::validate() const {
    if (!(select_prob >= 0.0 && select_prob <= 1.0))
        throw ConfigError("masking: select_prob must lie in [0, 1]");
    if (mask_frac < 0 || random_frac < 0 || keep_frac < 0)
        throw ConfigError("masking: fractions must be non-negative");
    if (std::fabs(mask_frac + random_frac + keep_frac - 1.0) > 1e-9)
        throw ConfigError("masking: mask/random/keep fractions must sum to 1");
}

MlmExample mask_tokens(const tok::TokenSequence& seq, const Vocab& vocab,
                       const MaskingPolicy& policy, rng::Engine& eng) {
    policy.validate();

    // Pool for the "replace with a random id" branch: every non-special id.
    // Built per call; cheap next to the tokenization that precedes it.
    std::vector<int32_t> pool;
    pool.reserve(vocab.size());
    for (int32_t id = 0; id < static_cast<int32_t>(vocab.size()); ++id)
        if (!vocab.is_special(id)) pool.push_back(id);
    if (pool.empty()) throw ConfigError("masking: vocabulary has no maskable ids");

    const int L = seq.length();
    MlmExample ex;
    ex.input_ids.resize(L);
    ex.attention_mask.assign(seq.attention_mask.begin(), seq.attention_mask.end());
    ex.labels.assign(L, -1);

    for (int i = 0; i < L; ++i) {
        int32_t original = seq.input_ids[i];
        ex.input_ids[i] = static_cast<uint32_t>(original);
        bool maskable = seq.attention_mask[i] == 1 && !vocab.is_special(original);
        if (!maskable) continue;
        if (eng.uniform() >= policy.select_prob) continue;

        ex.labels[i] = original;
        double action = eng.uniform();
        if (action < policy.mask_frac) {
            ex.input_ids[i] = static_cast<uint32_t>(vocab.mask_id());
        } else if (action < policy.mask_frac + policy.random_frac) {
            uint64_t pick = eng.uniform_int(pool.size());
            ex.input_ids[i] = static_cast<uint32_t>(pool[pick]);
        } // else keep the original id
    }
    return ex;
}

} // namespace k12::mlm
