#include "k12/vocab.hpp"

#include <algorithm>

#include "k12/binio.hpp"
#include "k12/errors.hpp"

namespace k12::tok {

Vocab Vocab::load(const std::string& path) {
    return from_tokens(binio::read_lines(path));
}

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
    Vocab v;
    v.tokens_ = std::move(tokens);
    v.ids_.reserve(v.tokens_.size() * 2);
    for (size_t i = 0; i < v.tokens_.size(); ++i) {
        const std::string& tok = v.tokens_[i];
        if (tok.empty())
            throw FormatError("vocab: empty token at line " + std::to_string(i + 1));
        auto [it, inserted] = v.ids_.emplace(tok, static_cast<int>(i));
        if (!inserted)
            throw FormatError("vocab: duplicate token '" + tok + "' at line " + std::to_string(i + 1));
    }
    v.index_specials();
    return v;
}

void Vocab::index_specials() {
    auto req = [&](const char* name) {
        auto it = ids_.find(name);
        if (it == ids_.end())
            throw FormatError(std::string("vocab: missing special token ") + name);
        return it->second;
    };
    pad_id_ = req(kPadToken);
    unk_id_ = req(kUnkToken);
    cls_id_ = req(kClsToken);
    sep_id_ = req(kSepToken);
    mask_id_ = req(kMaskToken);
    special_ids_ = {pad_id_, unk_id_, cls_id_, sep_id_, mask_id_};
    std::sort(special_ids_.begin(), special_ids_.end());
}

int Vocab::id_of(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    return it == ids_.end() ? -1 : it->second;
}

const std::string& Vocab::token_of(int id) const {
    if (id < 0 || id >= size())
        throw RangeError("vocab: id " + std::to_string(id) + " out of range [0, " +
                         std::to_string(size()) + ")");
    return tokens_[static_cast<size_t>(id)];
}

} // namespace k12::tok
