#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace k12::tok {

inline constexpr const char* kPadToken = "[PAD]";
inline constexpr const char* kUnkToken = "[UNK]";
inline constexpr const char* kClsToken = "[CLS]";
inline constexpr const char* kSepToken = "[SEP]";
inline constexpr const char* kMaskToken = "[MASK]";

// Immutable token<->id map loaded from a vocabulary file (one token per
// line, line index = id, UTF-8, no BOM). All five special tokens must be
// present. Safe to share across threads after construction.
class Vocab {
public:
    static Vocab load(const std::string& path);
    static Vocab from_tokens(std::vector<std::string> tokens);

    int size() const { return static_cast<int>(tokens_.size()); }

    // Returns -1 when the token is not in the vocabulary.
    int id_of(std::string_view token) const;

    const std::string& token_of(int id) const; // RangeError when id is out of [0, V)

    int pad_id() const { return pad_id_; }
    int unk_id() const { return unk_id_; }
    int cls_id() const { return cls_id_; }
    int sep_id() const { return sep_id_; }
    int mask_id() const { return mask_id_; }

    bool is_special(int id) const {
        return id == pad_id_ || id == unk_id_ || id == cls_id_ || id == sep_id_ || id == mask_id_;
    }

    // Special-token ids in ascending order; used to draw random
    // replacement tokens that skip the specials.
    const std::vector<int>& special_ids() const { return special_ids_; }

private:
    Vocab() = default;
    void index_specials();

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> ids_;
    int pad_id_ = -1, unk_id_ = -1, cls_id_ = -1, sep_id_ = -1, mask_id_ = -1;
    std::vector<int> special_ids_;
};

} // namespace k12::tok
