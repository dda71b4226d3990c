#include "k12/embedder.hpp"

#include "k12/errors.hpp"
#include "k12/parallel.hpp"

namespace k12::model {

Pooling pooling_from_string(const std::string& name) {
    if (name == "mean") return Pooling::mean;
    if (name == "cls") return Pooling::cls;
    throw ConfigError("pooling must be 'mean' or 'cls', got '" + name + "'");
}

Eigen::VectorXd embed_text(const ModelParams& params, const tok::Tokenizer& tokenizer,
                           std::string_view text, Pooling pooling) {
    const tok::Vocab& vocab = tokenizer.vocab();
    if (static_cast<int>(vocab.size()) != params.config.vocab)
        throw ConfigError("embed: tokenizer vocabulary size does not match the model");

    tok::TokenSequence seq = tokenizer.encode(text, params.config.max_len);
    ExampleCache cache = forward_example(params, seq.input_ids, seq.attention_mask);

    Eigen::VectorXd out;
    if (pooling == Pooling::cls) {
        out = cache.x_final.row(0).transpose();
    } else {
        out = Eigen::VectorXd::Zero(params.config.hidden);
        int counted = 0;
        for (int i = 0; i < seq.length(); ++i) {
            if (!seq.attention_mask[i] || vocab.is_special(seq.input_ids[i])) continue;
            out += cache.x_final.row(i).transpose();
            ++counted;
        }
        if (counted > 0)
            out /= static_cast<double>(counted);
        else
            out = cache.x_final.row(0).transpose(); // [CLS]-only sequence
    }
    double norm = out.norm();
    if (norm > 0.0) out /= norm;
    return out;
}

std::vector<Eigen::VectorXd> embed_texts(const ModelParams& params,
                                         const tok::Tokenizer& tokenizer,
                                         const std::vector<std::string>& texts, Pooling pooling,
                                         int jobs) {
    std::vector<Eigen::VectorXd> out(texts.size());
    parallel_for(texts.size(), jobs,
                 [&](size_t i) { out[i] = embed_text(params, tokenizer, texts[i], pooling); });
    return out;
}

} // namespace k12::model
