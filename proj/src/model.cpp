#include "k12/model.hpp"

#include <algorithm>
#include <cmath>

#include "k12/errors.hpp"
#include "k12/parallel.hpp"
#include "k12/rng.hpp"

namespace k12::model {

namespace {

// Standard deviation of a standard normal truncated to [-2, 2]. Draws are
// divided by this so the delivered sample std is init_std itself rather
// than the smaller post-truncation value.
constexpr double kTruncStd = 0.8796256610342398;

constexpr double kNegInf = -1e30; // additive mask for padded keys

} // namespace

void EncoderConfig::validate() const {
    if (layers < 1 || hidden < 1 || heads < 1 || ff_dim < 1 || max_len < 1 || vocab < 1)
        throw ConfigError("encoder: all dimensions must be >= 1");
    if (hidden % heads != 0) throw ConfigError("encoder: hidden must be divisible by heads");
    if (dropout_prob < 0.0 || dropout_prob >= 1.0)
        throw ConfigError("encoder: dropout_prob must lie in [0, 1)");
    if (init_std < 0.0) throw ConfigError("encoder: init_std must be >= 0");
}

std::vector<uint32_t> TensorRef::dims() const {
    if (mat)
        return {static_cast<uint32_t>(mat->rows()), static_cast<uint32_t>(mat->cols())};
    return {static_cast<uint32_t>(vec->size())};
}

ModelParams ModelParams::zeros(const EncoderConfig& config) {
    config.validate();
    ModelParams p;
    p.config = config;
    const int H = config.hidden, F = config.ff_dim, L = config.max_len, V = config.vocab;
    p.tok_emb = MatrixXd::Zero(V, H);
    p.pos_emb = MatrixXd::Zero(L, H);
    p.seg_emb = MatrixXd::Zero(2, H);
    p.emb_ln_scale = VectorXd::Zero(H);
    p.emb_ln_shift = VectorXd::Zero(H);
    p.layers.resize(config.layers);
    for (LayerParams& l : p.layers) {
        l.wq = MatrixXd::Zero(H, H);
        l.wk = MatrixXd::Zero(H, H);
        l.wv = MatrixXd::Zero(H, H);
        l.wo = MatrixXd::Zero(H, H);
        l.bq = VectorXd::Zero(H);
        l.bk = VectorXd::Zero(H);
        l.bv = VectorXd::Zero(H);
        l.bo = VectorXd::Zero(H);
        l.ln1_scale = VectorXd::Zero(H);
        l.ln1_shift = VectorXd::Zero(H);
        l.w1 = MatrixXd::Zero(H, F);
        l.b1 = VectorXd::Zero(F);
        l.w2 = MatrixXd::Zero(F, H);
        l.b2 = VectorXd::Zero(H);
        l.ln2_scale = VectorXd::Zero(H);
        l.ln2_shift = VectorXd::Zero(H);
    }
    p.mlm_w = MatrixXd::Zero(H, H);
    p.mlm_b = VectorXd::Zero(H);
    p.mlm_ln_scale = VectorXd::Zero(H);
    p.mlm_ln_shift = VectorXd::Zero(H);
    p.out_bias = VectorXd::Zero(V);
    return p;
}

std::vector<TensorRef> ModelParams::tensors() {
    std::vector<TensorRef> out;
    auto m = [&](const std::string& name, MatrixXd& t) { out.push_back({name, &t, nullptr}); };
    auto v = [&](const std::string& name, VectorXd& t) { out.push_back({name, nullptr, &t}); };
    m("embeddings.token", tok_emb);
    m("embeddings.position", pos_emb);
    m("embeddings.segment", seg_emb);
    v("embeddings.ln.scale", emb_ln_scale);
    v("embeddings.ln.shift", emb_ln_shift);
    for (size_t i = 0; i < layers.size(); ++i) {
        std::string pre = "layer" + std::to_string(i) + ".";
        LayerParams& l = layers[i];
        m(pre + "attn.wq", l.wq);
        v(pre + "attn.bq", l.bq);
        m(pre + "attn.wk", l.wk);
        v(pre + "attn.bk", l.bk);
        m(pre + "attn.wv", l.wv);
        v(pre + "attn.bv", l.bv);
        m(pre + "attn.wo", l.wo);
        v(pre + "attn.bo", l.bo);
        v(pre + "attn.ln.scale", l.ln1_scale);
        v(pre + "attn.ln.shift", l.ln1_shift);
        m(pre + "ff.w1", l.w1);
        v(pre + "ff.b1", l.b1);
        m(pre + "ff.w2", l.w2);
        v(pre + "ff.b2", l.b2);
        v(pre + "ff.ln.scale", l.ln2_scale);
        v(pre + "ff.ln.shift", l.ln2_shift);
    }
    m("mlm.transform.w", mlm_w);
    v("mlm.transform.b", mlm_b);
    v("mlm.ln.scale", mlm_ln_scale);
    v("mlm.ln.shift", mlm_ln_shift);
    v("mlm.output_bias", out_bias);
    return out;
}

void ModelParams::add_scaled(ModelParams& other, double factor) {
    std::vector<TensorRef> a = tensors(), b = other.tensors();
    for (size_t t = 0; t < a.size(); ++t) {
        double* x = a[t].data();
        const double* y = b[t].data();
        int64_t n = a[t].size();
        for (int64_t i = 0; i < n; ++i) x[i] += factor * y[i];
    }
}

void ModelParams::scale(double factor) {
    for (TensorRef& t : tensors()) {
        double* x = t.data();
        for (int64_t i = 0; i < t.size(); ++i) x[i] *= factor;
    }
}

void ModelParams::round_to_f32() {
    for (TensorRef& t : tensors()) {
        double* x = t.data();
        for (int64_t i = 0; i < t.size(); ++i) x[i] = static_cast<double>(static_cast<float>(x[i]));
    }
}

bool ModelParams::all_finite() {
    for (TensorRef& t : tensors()) {
        const double* x = t.data();
        for (int64_t i = 0; i < t.size(); ++i)
            if (!std::isfinite(x[i])) return false;
    }
    return true;
}

ModelParams init_params(const EncoderConfig& config) {
    ModelParams p = ModelParams::zeros(config);
    rng::Engine eng(rng::derive(config.seed, 0x1217));
    for (TensorRef& t : p.tensors()) {
        if (t.mat) {
            double* x = t.data();
            for (int64_t i = 0; i < t.size(); ++i)
                x[i] = eng.truncated_normal(2.0) / kTruncStd * config.init_std;
        } else if (t.name.size() >= 5 && t.name.rfind("scale") == t.name.size() - 5) {
            t.vec->setOnes();
        } // biases and shifts stay zero
    }
    return p;
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * 0.7071067811865476)); }

double gelu_grad(double x) {
    double cdf = 0.5 * (1.0 + std::erf(x * 0.7071067811865476));
    double pdf = 0.3989422804014327 * std::exp(-0.5 * x * x);
    return cdf + x * pdf;
}

namespace {

// y = scale .* xhat + shift per row; returns y and fills hat/inv_std.
MatrixXd ln_forward(const MatrixXd& x, const VectorXd& scale, const VectorXd& shift,
                    MatrixXd& hat, VectorXd& inv_std) {
    const auto rows = x.rows();
    const auto cols = x.cols();
    hat.resize(rows, cols);
    inv_std.resize(rows);
    MatrixXd y(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        double mu = x.row(i).mean();
        Eigen::RowVectorXd d = x.row(i).array() - mu;
        double var = d.squaredNorm() / static_cast<double>(cols);
        double inv = 1.0 / std::sqrt(var + kLnEps);
        inv_std(i) = inv;
        hat.row(i) = d * inv;
        y.row(i) = (hat.row(i).array() * scale.transpose().array()) + shift.transpose().array();
    }
    return y;
}

// Backward of ln_forward; accumulates into gscale/gshift, returns dx.
MatrixXd ln_backward(const MatrixXd& dy, const MatrixXd& hat, const VectorXd& inv_std,
                     const VectorXd& scale, VectorXd& gscale, VectorXd& gshift) {
    const auto rows = dy.rows();
    const auto cols = dy.cols();
    MatrixXd dx(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        Eigen::RowVectorXd dxhat = dy.row(i).array() * scale.transpose().array();
        double m1 = dxhat.mean();
        double m2 = (dxhat.array() * hat.row(i).array()).mean();
        dx.row(i) = inv_std(i) * (dxhat.array() - m1 - hat.row(i).array() * m2);
    }
    gscale += (dy.array() * hat.array()).colwise().sum().matrix().transpose();
    gshift += dy.colwise().sum().transpose();
    return dx;
}

void check_finite(const MatrixXd& x, const char* where) {
    if (!x.allFinite())
        throw NumericError(where, std::string("non-finite activations in ") + where);
}

} // namespace

ExampleCache forward_example(const ModelParams& params, std::span<const int32_t> ids,
                             std::span<const uint8_t> attention_mask) {
    const EncoderConfig& cfg = params.config;
    const int L = static_cast<int>(ids.size());
    if (L != cfg.max_len) throw RangeError("forward: sequence length != config max_len");
    if (attention_mask.size() != ids.size())
        throw RangeError("forward: attention mask length mismatch");
    const int H = cfg.hidden, A = cfg.heads, dh = cfg.head_dim();
    const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

    ExampleCache c;
    c.ids.assign(ids.begin(), ids.end());
    c.mask.assign(attention_mask.begin(), attention_mask.end());

    MatrixXd emb(L, H);
    for (int i = 0; i < L; ++i) {
        int32_t id = ids[i];
        if (id < 0 || id >= cfg.vocab) throw RangeError("forward: token id out of range");
        emb.row(i) = params.tok_emb.row(id) + params.pos_emb.row(i) + params.seg_emb.row(0);
    }
    c.x0 = ln_forward(emb, params.emb_ln_scale, params.emb_ln_shift, c.emb_hat, c.emb_inv_std);
    check_finite(c.x0, "embeddings");

    VectorXd key_mask(L);
    for (int j = 0; j < L; ++j) key_mask(j) = attention_mask[j] ? 0.0 : kNegInf;

    MatrixXd x = c.x0;
    c.layers.resize(cfg.layers);
    for (int l = 0; l < cfg.layers; ++l) {
        LayerCache& lc = c.layers[l];
        const LayerParams& lp = params.layers[l];
        lc.x_in = x;
        lc.q = (x * lp.wq).rowwise() + lp.bq.transpose();
        lc.k = (x * lp.wk).rowwise() + lp.bk.transpose();
        lc.v = (x * lp.wv).rowwise() + lp.bv.transpose();
        lc.probs.resize(A);
        lc.attn_concat.resize(L, H);
        for (int h = 0; h < A; ++h) {
            auto qh = lc.q.middleCols(h * dh, dh);
            auto kh = lc.k.middleCols(h * dh, dh);
            auto vh = lc.v.middleCols(h * dh, dh);
            MatrixXd scores = (qh * kh.transpose()) * inv_sqrt_dh;
            scores.rowwise() += key_mask.transpose();
            MatrixXd& prob = lc.probs[h];
            prob.resize(L, L);
            for (int i = 0; i < L; ++i) {
                double m = scores.row(i).maxCoeff();
                Eigen::RowVectorXd e = (scores.row(i).array() - m).exp();
                prob.row(i) = e / e.sum();
            }
            lc.attn_concat.middleCols(h * dh, dh) = prob * vh;
        }
        MatrixXd attn_out = (lc.attn_concat * lp.wo).rowwise() + lp.bo.transpose();
        MatrixXd r1 = x + attn_out;
        lc.x_mid = ln_forward(r1, lp.ln1_scale, lp.ln1_shift, lc.r1_hat, lc.r1_inv_std);
        lc.ff_u = (lc.x_mid * lp.w1).rowwise() + lp.b1.transpose();
        lc.ff_g = lc.ff_u.unaryExpr(&gelu);
        MatrixXd ff_out = (lc.ff_g * lp.w2).rowwise() + lp.b2.transpose();
        MatrixXd r2 = lc.x_mid + ff_out;
        x = ln_forward(r2, lp.ln2_scale, lp.ln2_shift, lc.r2_hat, lc.r2_inv_std);
        check_finite(x, ("layer" + std::to_string(l)).c_str());
    }
    c.x_final = x;

    c.mlm_u = (x * params.mlm_w).rowwise() + params.mlm_b.transpose();
    c.mlm_g = c.mlm_u.unaryExpr(&gelu);
    c.t = ln_forward(c.mlm_g, params.mlm_ln_scale, params.mlm_ln_shift, c.mlm_hat,
                     c.mlm_inv_std);
    check_finite(c.t, "mlm_head");
    c.logits = (c.t * params.tok_emb.transpose()).rowwise() + params.out_bias.transpose();
    check_finite(c.logits, "decoder");
    return c;
}

LossStats mlm_loss(const MatrixXd& logits, std::span<const int32_t> labels) {
    LossStats s;
    if (static_cast<size_t>(logits.rows()) != labels.size())
        throw RangeError("loss: labels length mismatch");
    double ce_sum = 0.0;
    int64_t hits = 0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        int32_t label = labels[i];
        if (label < 0) continue;
        if (label >= logits.cols()) throw RangeError("loss: label id out of range");
        double m = logits.row(i).maxCoeff();
        double lse = m + std::log((logits.row(i).array() - m).exp().sum());
        ce_sum += lse - logits(i, label);
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < logits.cols(); ++j)
            if (logits(i, j) > logits(i, best)) best = j;
        if (best == label) ++hits;
        ++s.masked;
    }
    if (s.masked > 0) {
        s.loss = ce_sum / static_cast<double>(s.masked);
        s.accuracy = static_cast<double>(hits) / static_cast<double>(s.masked);
    }
    return s;
}

BatchResult forward_batch(const ModelParams& params, std::span<const mlm::MlmExample> batch,
                          int jobs) {
    BatchResult r;
    r.caches.resize(batch.size());
    parallel_for(batch.size(), jobs, [&](size_t b) {
        const mlm::MlmExample& ex = batch[b];
        std::vector<int32_t> ids(ex.input_ids.begin(), ex.input_ids.end());
        r.caches[b] = forward_example(params, ids, ex.attention_mask);
    });

    double ce_weighted = 0.0, acc_weighted = 0.0;
    for (size_t b = 0; b < batch.size(); ++b) {
        LossStats s = mlm_loss(r.caches[b].logits, batch[b].labels);
        ce_weighted += s.loss * static_cast<double>(s.masked);
        acc_weighted += s.accuracy * static_cast<double>(s.masked);
        r.stats.masked += s.masked;
    }
    if (r.stats.masked > 0) {
        r.stats.loss = ce_weighted / static_cast<double>(r.stats.masked);
        r.stats.accuracy = acc_weighted / static_cast<double>(r.stats.masked);
    }
    return r;
}

namespace {

// Gradient of scale * (summed cross-entropy of this example) into grads.
void backward_example(const ModelParams& params, const ExampleCache& c,
                      std::span<const int32_t> labels, double scale, ModelParams& grads) {
    const EncoderConfig& cfg = params.config;
    const int L = cfg.max_len, H = cfg.hidden, A = cfg.heads, dh = cfg.head_dim();
    const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

    // d(loss)/d(logits): softmax minus one-hot at labelled rows.
    MatrixXd dlogits = MatrixXd::Zero(L, cfg.vocab);
    bool any = false;
    for (int i = 0; i < L; ++i) {
        int32_t label = labels[i];
        if (label < 0) continue;
        any = true;
        double m = c.logits.row(i).maxCoeff();
        Eigen::RowVectorXd e = (c.logits.row(i).array() - m).exp();
        dlogits.row(i) = (e / e.sum()) * scale;
        dlogits(i, label) -= scale;
    }
    if (!any) return;

    // decoder (tied to token embedding) and output bias
    grads.tok_emb.noalias() += dlogits.transpose() * c.t;
    grads.out_bias += dlogits.colwise().sum().transpose();
    MatrixXd dt = dlogits * params.tok_emb;

    MatrixXd dg = ln_backward(dt, c.mlm_hat, c.mlm_inv_std, params.mlm_ln_scale,
                              grads.mlm_ln_scale, grads.mlm_ln_shift);
    MatrixXd du = dg.array() * c.mlm_u.unaryExpr(&gelu_grad).array();
    grads.mlm_w.noalias() += c.x_final.transpose() * du;
    grads.mlm_b += du.colwise().sum().transpose();
    MatrixXd dx = du * params.mlm_w.transpose();

    for (int l = cfg.layers - 1; l >= 0; --l) {
        const LayerCache& lc = c.layers[l];
        const LayerParams& lp = params.layers[l];
        LayerParams& gl = grads.layers[l];

        MatrixXd dr2 = ln_backward(dx, lc.r2_hat, lc.r2_inv_std, lp.ln2_scale, gl.ln2_scale,
                                   gl.ln2_shift);
        MatrixXd dx_mid = dr2; // residual branch
        gl.w2.noalias() += lc.ff_g.transpose() * dr2;
        gl.b2 += dr2.colwise().sum().transpose();
        MatrixXd dg1 = dr2 * lp.w2.transpose();
        MatrixXd du1 = dg1.array() * lc.ff_u.unaryExpr(&gelu_grad).array();
        gl.w1.noalias() += lc.x_mid.transpose() * du1;
        gl.b1 += du1.colwise().sum().transpose();
        dx_mid.noalias() += du1 * lp.w1.transpose();

        MatrixXd dr1 = ln_backward(dx_mid, lc.r1_hat, lc.r1_inv_std, lp.ln1_scale,
                                   gl.ln1_scale, gl.ln1_shift);
        MatrixXd dx_in = dr1; // residual branch
        gl.wo.noalias() += lc.attn_concat.transpose() * dr1;
        gl.bo += dr1.colwise().sum().transpose();
        MatrixXd dA = dr1 * lp.wo.transpose();

        MatrixXd dQ(L, H), dK(L, H), dV(L, H);
        for (int h = 0; h < A; ++h) {
            auto dAh = dA.middleCols(h * dh, dh);
            const MatrixXd& P = lc.probs[h];
            auto qh = lc.q.middleCols(h * dh, dh);
            auto kh = lc.k.middleCols(h * dh, dh);
            auto vh = lc.v.middleCols(h * dh, dh);
            MatrixXd dP = dAh * vh.transpose();
            dV.middleCols(h * dh, dh).noalias() = P.transpose() * dAh;
            MatrixXd dS(L, L);
            for (int i = 0; i < L; ++i) {
                double dot = dP.row(i).dot(P.row(i));
                dS.row(i) = P.row(i).array() * (dP.row(i).array() - dot);
            }
            dS *= inv_sqrt_dh;
            dQ.middleCols(h * dh, dh).noalias() = dS * kh;
            dK.middleCols(h * dh, dh).noalias() = dS.transpose() * qh;
        }
        gl.wq.noalias() += lc.x_in.transpose() * dQ;
        gl.bq += dQ.colwise().sum().transpose();
        gl.wk.noalias() += lc.x_in.transpose() * dK;
        gl.bk += dK.colwise().sum().transpose();
        gl.wv.noalias() += lc.x_in.transpose() * dV;
        gl.bv += dV.colwise().sum().transpose();
        dx_in.noalias() += dQ * lp.wq.transpose();
        dx_in.noalias() += dK * lp.wk.transpose();
        dx_in.noalias() += dV * lp.wv.transpose();
        dx = std::move(dx_in);
    }

    MatrixXd de = ln_backward(dx, c.emb_hat, c.emb_inv_std, params.emb_ln_scale,
                              grads.emb_ln_scale, grads.emb_ln_shift);
    for (int i = 0; i < L; ++i) {
        grads.tok_emb.row(c.ids[i]) += de.row(i);
        grads.pos_emb.row(i) += de.row(i);
        grads.seg_emb.row(0) += de.row(i);
    }
}

} // namespace

void backward_batch(const ModelParams& params, std::span<const mlm::MlmExample> batch,
                    const BatchResult& fw, double scale, ModelParams& grads, int jobs) {
    if (fw.caches.size() != batch.size())
        throw RangeError("backward: cache/batch size mismatch");
    const size_t n = batch.size();
    if (jobs <= 1 || n <= 1) {
        for (size_t b = 0; b < n; ++b)
            backward_example(params, fw.caches[b], batch[b].labels, scale, grads);
        return;
    }
    // Fixed block partition: results depend on the job count only through
    // the merge grouping, never on scheduling.
    size_t workers = std::min<size_t>(static_cast<size_t>(jobs), n);
    size_t chunk = (n + workers - 1) / workers;
    std::vector<ModelParams> locals;
    locals.reserve(workers);
    for (size_t w = 0; w < workers; ++w) locals.push_back(ModelParams::zeros(params.config));
    parallel_for(workers, static_cast<int>(workers), [&](size_t w) {
        size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        for (size_t b = lo; b < hi; ++b)
            backward_example(params, fw.caches[b], batch[b].labels, scale, locals[w]);
    });
    for (size_t w = 0; w < workers; ++w) grads.add_scaled(locals[w], 1.0);
}

} // namespace k12::model
