#include <algorithm>
#include <map>

#include "k12/errors.hpp"
#include "k12/mlm.hpp"
#include "k12/parallel.hpp"

namespace k12::mlm {

std::vector<Segment> pack_segments(const std::vector<std::vector<int32_t>>& sentence_pieces,
                                   const std::string& doc_id, int max_len) {
    if (max_len < 3) throw ConfigError("pack: max_len must be at least 3");
    const size_t budget = static_cast<size_t>(max_len - 2);

    std::vector<Segment> out;
    std::vector<int32_t> cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back({std::move(cur), doc_id});
            cur.clear();
        }
    };

    for (const std::vector<int32_t>& pieces : sentence_pieces) {
        if (pieces.empty()) continue;
        if (pieces.size() > budget) {
            // Oversized sentence: emit full chunks, leave the tail open so
            // following sentences can still pack behind it.
            flush();
            size_t off = 0;
            while (pieces.size() - off > budget) {
                out.push_back(
                    {std::vector<int32_t>(pieces.begin() + off, pieces.begin() + off + budget),
                     doc_id});
                off += budget;
            }
            cur.assign(pieces.begin() + off, pieces.end());
            continue;
        }
        if (cur.size() + pieces.size() > budget) flush();
        cur.insert(cur.end(), pieces.begin(), pieces.end());
    }
    flush();
    return out;
}

std::vector<Segment> pack_corpus(const std::vector<corpus::SentenceRecord>& records,
                                 const tok::Tokenizer& tokenizer, int max_len, bool pack,
                                 int jobs) {
    // Tokenize in parallel, then walk records in order and group runs of
    // the same doc_id (corpus order already clusters documents).
    std::vector<std::vector<int32_t>> pieces(records.size());
    parallel_for(records.size(), jobs, [&](size_t i) {
        std::vector<int32_t> ids;
        for (const std::string& piece : tokenizer.tokenize(records[i].text)) {
            int id = tokenizer.vocab().id_of(piece);
            ids.push_back(id >= 0 ? id : tokenizer.vocab().unk_id());
        }
        pieces[i] = std::move(ids);
    });

    std::vector<Segment> segments;
    size_t i = 0;
    while (i < records.size()) {
        size_t j = i;
        while (j < records.size() && records[j].doc_id == records[i].doc_id) ++j;
        if (pack) {
            std::vector<std::vector<int32_t>> doc_pieces(pieces.begin() + i, pieces.begin() + j);
            std::vector<Segment> packed = pack_segments(doc_pieces, records[i].doc_id, max_len);
            segments.insert(segments.end(), std::make_move_iterator(packed.begin()),
                            std::make_move_iterator(packed.end()));
        } else {
            for (size_t k = i; k < j; ++k) {
                std::vector<Segment> single =
                    pack_segments({pieces[k]}, records[k].doc_id, max_len);
                segments.insert(segments.end(), std::make_move_iterator(single.begin()),
                                std::make_move_iterator(single.end()));
            }
        }
        i = j;
    }
    return segments;
}

tok::TokenSequence segment_to_sequence(const Segment& seg, const Vocab& vocab, int max_len) {
    if (static_cast<int>(seg.piece_ids.size()) > max_len - 2)
        throw RangeError("pack: segment exceeds max_len budget");
    tok::TokenSequence seq;
    seq.input_ids.reserve(max_len);
    seq.input_ids.push_back(vocab.cls_id());
    seq.input_ids.insert(seq.input_ids.end(), seg.piece_ids.begin(), seg.piece_ids.end());
    seq.input_ids.push_back(vocab.sep_id());
    int used = static_cast<int>(seq.input_ids.size());
    seq.input_ids.resize(max_len, vocab.pad_id());
    seq.attention_mask.assign(max_len, 0);
    std::fill(seq.attention_mask.begin(), seq.attention_mask.begin() + used, 1);
    seq.token_type_ids.assign(max_len, 0);
    return seq;
}

} // namespace k12::mlm
