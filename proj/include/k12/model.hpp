#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "k12/mlm.hpp"

namespace k12::model {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct EncoderConfig {
    int layers = 2;
    int hidden = 128;
    int heads = 2;
    int ff_dim = 512;
    int max_len = 128;
    int vocab = 0;
    double dropout_prob = 0.0; // 0 keeps training fully deterministic
    double init_std = 0.02;
    uint64_t seed = 0;

    int head_dim() const { return hidden / heads; }
    void validate() const; // throws ConfigError
};

// Layernorm epsilon shared by forward and backward.
inline constexpr double kLnEps = 1e-12;

// View of one named parameter tensor. Rank 1 for biases and layernorm
// vectors, rank 2 otherwise. Containers built from the same config list
// tensors in the same order with identical raw layouts, so elementwise
// walks over data() line up between params, grads and Adam moments.
struct TensorRef {
    std::string name;
    MatrixXd* mat = nullptr;
    VectorXd* vec = nullptr;

    double* data() const { return mat ? mat->data() : vec->data(); }
    int64_t size() const { return mat ? mat->size() : vec->size(); }
    std::vector<uint32_t> dims() const;
};

struct LayerParams {
    // projections use the y = x*W + b convention, W is input x output
    MatrixXd wq, wk, wv, wo; // hidden x hidden
    VectorXd bq, bk, bv, bo;
    VectorXd ln1_scale, ln1_shift;
    MatrixXd w1; // hidden x ff_dim
    VectorXd b1;
    MatrixXd w2; // ff_dim x hidden
    VectorXd b2;
    VectorXd ln2_scale, ln2_shift;
};

// All weights of the encoder plus MLM head. The decoder that produces
// vocabulary logits is tied to tok_emb; there is no separate decoder
// matrix anywhere, so the tie cannot drift.
struct ModelParams {
    EncoderConfig config;

    MatrixXd tok_emb; // vocab x hidden, doubles as the tied decoder
    MatrixXd pos_emb; // max_len x hidden
    MatrixXd seg_emb; // 2 x hidden
    VectorXd emb_ln_scale, emb_ln_shift;
    std::vector<LayerParams> layers;
    MatrixXd mlm_w; // hidden x hidden
    VectorXd mlm_b;
    VectorXd mlm_ln_scale, mlm_ln_shift;
    VectorXd out_bias; // vocab

    static ModelParams zeros(const EncoderConfig& config);

    // Fixed declaration-order walk over every tensor.
    std::vector<TensorRef> tensors();

    void add_scaled(ModelParams& other, double factor); // this += factor*other
    void scale(double factor);
    void round_to_f32(); // snap every value to its float representation
    bool all_finite();
};

// Truncated-normal weights (cut at two sigma, rescaled so the sample
// standard deviation comes out at init_std), zero biases and shifts,
// unit layernorm scales. Deterministic in config.seed.
ModelParams init_params(const EncoderConfig& config);

// Everything backward needs from one example's forward pass.
struct LayerCache {
    MatrixXd x_in;               // layer input, L x H
    MatrixXd q, k, v;            // L x H
    std::vector<MatrixXd> probs; // per head, L x L attention rows
    MatrixXd attn_concat;        // heads reassembled, pre-Wo
    MatrixXd r1_hat;             // LN1 normalized rows
    VectorXd r1_inv_std;
    MatrixXd x_mid;              // LN1 output
    MatrixXd ff_u;               // pre-GELU, L x ff
    MatrixXd ff_g;               // post-GELU
    MatrixXd r2_hat;
    VectorXd r2_inv_std;
};

struct ExampleCache {
    std::vector<int32_t> ids;
    std::vector<uint8_t> mask;
    MatrixXd emb_hat; // normalized embedding rows
    VectorXd emb_inv_std;
    MatrixXd x0;      // embedding layernorm output
    std::vector<LayerCache> layers;
    MatrixXd x_final; // encoder output, input to the MLM head
    MatrixXd mlm_u;   // pre-GELU
    MatrixXd mlm_g;   // post-GELU
    MatrixXd mlm_hat;
    VectorXd mlm_inv_std;
    MatrixXd t;       // MLM transform output (feeds the tied decoder)
    MatrixXd logits;  // L x V
};

// Encoder + MLM head over one padded sequence. Throws NumericError naming
// the first layer whose activations go non-finite.
ExampleCache forward_example(const ModelParams& params, std::span<const int32_t> ids,
                             std::span<const uint8_t> attention_mask);

struct LossStats {
    double loss = 0.0;       // mean cross-entropy over labelled positions
    int64_t masked = 0;      // number of labelled positions
    double accuracy = 0.0;   // argmax hit rate over labelled positions
};

// Cross-entropy over positions whose label is not -1. masked = 0 yields
// loss 0 and marks the batch skippable for the trainer.
LossStats mlm_loss(const MatrixXd& logits, std::span<const int32_t> labels);

struct BatchResult {
    LossStats stats;                  // pooled over the whole batch
    std::vector<ExampleCache> caches; // one per example, in batch order
};

BatchResult forward_batch(const ModelParams& params,
                          std::span<const mlm::MlmExample> batch, int jobs = 1);

// Accumulates d(scale * total-cross-entropy-sum)/dtheta into grads. Pass
// scale = 1/masked for the gradient of the mean loss. jobs > 1 fans out
// over fixed example blocks and merges block results in index order.
void backward_batch(const ModelParams& params, std::span<const mlm::MlmExample> batch,
                    const BatchResult& fw, double scale, ModelParams& grads, int jobs = 1);

double gelu(double x);
double gelu_grad(double x);

} // namespace k12::model
