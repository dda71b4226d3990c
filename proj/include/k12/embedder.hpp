#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "k12/model.hpp"
#include "k12/tokenizer.hpp"

namespace k12::model {

enum class Pooling { mean, cls };

Pooling pooling_from_string(const std::string& name); // throws ConfigError

// Encodes the text and pools final hidden states: `mean` averages over
// attended, non-special positions, `cls` takes position 0. The result is
// L2-normalized. Text with no poolable positions (for instance an empty
// string) falls back to the [CLS] state.
Eigen::VectorXd embed_text(const ModelParams& params, const tok::Tokenizer& tokenizer,
                           std::string_view text, Pooling pooling);

std::vector<Eigen::VectorXd> embed_texts(const ModelParams& params,
                                         const tok::Tokenizer& tokenizer,
                                         const std::vector<std::string>& texts, Pooling pooling,
                                         int jobs = 1);

} // namespace k12::model
