#include <string>
#include <vector>

#include "doctest.h"
#include "k12/errors.hpp"
#include "k12/mlm.hpp"
#include "k12/tokenizer.hpp"
#include "test_util.hpp"

using namespace k12;
using namespace k12::mlm;

namespace {

std::vector<int32_t> run(int n, int32_t v = 7) { return std::vector<int32_t>(n, v); }

std::vector<int> lengths(const std::vector<Segment>& segs) {
    std::vector<int> out;
    for (const auto& s : segs) out.push_back(static_cast<int>(s.piece_ids.size()));
    return out;
}

} // namespace

TEST_CASE("packing greedily fills the budget") {
    // budget = max_len - 2 = 18: 5 + 6 + 7 fit exactly
    auto segs = pack_segments({run(5), run(6), run(7)}, "d", 20);
    CHECK(lengths(segs) == std::vector<int>{18});

    // 5 + 6 fit a budget of 12; the 7 flushes into its own segment
    segs = pack_segments({run(5), run(6), run(7)}, "d", 14);
    CHECK(lengths(segs) == std::vector<int>{11, 7});
    for (const auto& s : segs) CHECK(s.doc_id == "d");
}

TEST_CASE("packing splits an overlong sentence at the piece level") {
    // 300 pieces against max_len 128: two full 126-chunks and a 48 tail
    auto segs = pack_segments({run(300)}, "d", 128);
    CHECK(lengths(segs) == std::vector<int>{126, 126, 48});

    // the open tail keeps accepting following sentences
    segs = pack_segments({run(300), run(50)}, "d", 128);
    CHECK(lengths(segs) == std::vector<int>{126, 126, 98});

    // a following sentence that does not fit the tail flushes it
    segs = pack_segments({run(300), run(100)}, "d", 128);
    CHECK(lengths(segs) == std::vector<int>{126, 126, 48, 100});
}

TEST_CASE("packing keeps sentence order within a document") {
    std::vector<std::vector<int32_t>> pieces = {{1, 2}, {3, 4, 5}, {6}};
    auto segs = pack_segments(pieces, "d", 10);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].piece_ids == std::vector<int32_t>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("packing rejects impossible budgets and skips empties") {
    CHECK_THROWS_AS(pack_segments({run(3)}, "d", 2), ConfigError);
    CHECK(pack_segments({}, "d", 10).empty());
    CHECK(pack_segments({{}, {}}, "d", 10).empty());
}

TEST_CASE("pack_corpus never mixes documents and respects corpus order") {
    tok::Vocab vocab = tok::Vocab::load(testutil::fixture("fixture_vocab.txt"));
    tok::Tokenizer tokenizer(vocab);

    auto rec = [](std::string text, std::string doc, std::string source, int64_t seq) {
        corpus::SentenceRecord r;
        r.text = std::move(text);
        r.doc_id = std::move(doc);
        r.source = std::move(source);
        r.seq_no = seq;
        return r;
    };
    std::vector<corpus::SentenceRecord> records = {
        rec("the cat sat on the mat", "doc-a", "s", 0),
        rec("the dog ran", "doc-a", "s", 1),
        rec("atoms are small", "doc-b", "s", 0),
        rec("energy is the capacity to do work", "doc-b", "s", 1),
    };

    auto segs = pack_corpus(records, tokenizer, 64, /*pack=*/true);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].doc_id == "doc-a");
    CHECK(segs[1].doc_id == "doc-b");

    // concatenation matches tokenizing each sentence separately
    std::vector<int32_t> expect;
    for (int i = 0; i < 2; ++i)
        for (const std::string& p : tokenizer.tokenize(records[i].text))
            expect.push_back(vocab.id_of(p));
    CHECK(segs[0].piece_ids == expect);

    // pack=false keeps one segment per sentence
    auto loose = pack_corpus(records, tokenizer, 64, /*pack=*/false);
    CHECK(loose.size() == 4);
    CHECK(loose[2].doc_id == "doc-b");

    // parallel tokenization changes nothing
    auto par = pack_corpus(records, tokenizer, 64, true, 4);
    REQUIRE(par.size() == segs.size());
    for (size_t i = 0; i < segs.size(); ++i) CHECK(par[i].piece_ids == segs[i].piece_ids);
}

TEST_CASE("segment_to_sequence wraps with specials and padding") {
    tok::Vocab vocab = tok::Vocab::from_tokens(
        {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "x", "y"});
    Segment seg;
    seg.piece_ids = {5, 6, 5};
    seg.doc_id = "d";
    tok::TokenSequence s = segment_to_sequence(seg, vocab, 8);
    CHECK(s.input_ids == std::vector<int32_t>{2, 5, 6, 5, 3, 0, 0, 0});
    CHECK(s.attention_mask == std::vector<uint8_t>{1, 1, 1, 1, 1, 0, 0, 0});
    CHECK(s.token_type_ids == std::vector<uint8_t>(8, 0));

    seg.piece_ids = run(7, 5);
    CHECK_THROWS_AS(segment_to_sequence(seg, vocab, 8), RangeError);
}
