#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "k12/embeddings.hpp"
#include "k12/errors.hpp"
#include "test_util.hpp"

using namespace k12;
using namespace k12::tag;

TEST_CASE("adding normalizes and lookup returns the stored direction") {
    EmbeddingSet set;
    Eigen::VectorXd v(3);
    v << 3.0, 0.0, 4.0;
    set.add("a", v);
    CHECK(set.dim() == 3);
    CHECK(set.size() == 1);

    const Eigen::VectorXd* got = set.find("a");
    REQUIRE(got != nullptr);
    CHECK((*got)(0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK((*got)(1) == 0.0);
    CHECK((*got)(2) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(got->norm() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(set.find("missing") == nullptr);
}

TEST_CASE("the set rejects duplicates, mismatched widths, and zero vectors") {
    EmbeddingSet set(3);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(3);
    set.add("a", v);
    CHECK_THROWS_AS(set.add("a", v), FormatError);

    Eigen::VectorXd wide = Eigen::VectorXd::Ones(4);
    CHECK_THROWS_AS(set.add("b", wide), FormatError);

    Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(set.add("c", zero), FormatError);
    CHECK(set.size() == 1);
}

TEST_CASE("embedding files round trip through f32") {
    testutil::TempDir tmp("emb");
    std::string path = tmp.file("vecs.emb");

    std::vector<std::pair<std::string, Eigen::VectorXd>> entries;
    Eigen::VectorXd a(4), b(4);
    a << 0.25, -1.5, 2.0, 0.125;
    b << 1e-3, 7.0, -2.5, 0.75;
    entries.emplace_back("label:1", a);
    entries.emplace_back("label:2", b);
    save_embeddings(entries, path);

    EmbeddingSet set = load_embeddings(path);
    CHECK(set.dim() == 4);
    CHECK(set.size() == 2);
    for (const auto& [name, raw] : entries) {
        const Eigen::VectorXd* got = set.find(name);
        REQUIRE(got != nullptr);
        CHECK(got->norm() == doctest::Approx(1.0).epsilon(1e-7));
        Eigen::VectorXd expect = raw / raw.norm();
        // values pass through f32 once, so agreement is about 1e-7 relative
        CHECK((*got - expect).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("saving rejects empty and ragged input") {
    testutil::TempDir tmp("emb_bad");
    CHECK_THROWS_AS(save_embeddings({}, tmp.file("empty.emb")), FormatError);

    std::vector<std::pair<std::string, Eigen::VectorXd>> ragged;
    ragged.emplace_back("a", Eigen::VectorXd::Ones(3));
    ragged.emplace_back("b", Eigen::VectorXd::Ones(5));
    CHECK_THROWS_AS(save_embeddings(ragged, tmp.file("ragged.emb")), FormatError);
}

TEST_CASE("damaged embedding files are called out") {
    testutil::TempDir tmp("emb_corrupt");
    std::string good = tmp.file("good.emb");
    std::vector<std::pair<std::string, Eigen::VectorXd>> entries;
    entries.emplace_back("x", Eigen::VectorXd::Ones(4));
    entries.emplace_back("y", (Eigen::VectorXd(4) << 1, 2, 3, 4).finished());
    save_embeddings(entries, good);
    std::ifstream in(good, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    REQUIRE(bytes.size() > 12);

    SUBCASE("bad magic") {
        std::string mangled = bytes;
        mangled[0] = 'X';
        std::string path = tmp.file("magic.emb");
        std::ofstream(path, std::ios::binary).write(mangled.data(), mangled.size());
        CHECK_THROWS_AS(load_embeddings(path), CorruptError);
    }

    SUBCASE("truncated") {
        std::string path = tmp.file("short.emb");
        std::ofstream(path, std::ios::binary).write(bytes.data(), bytes.size() - 5);
        CHECK_THROWS_AS(load_embeddings(path), CorruptError);
    }

    SUBCASE("trailing garbage") {
        std::string padded = bytes + "junk";
        std::string path = tmp.file("long.emb");
        std::ofstream(path, std::ios::binary).write(padded.data(), padded.size());
        CHECK_THROWS_AS(load_embeddings(path), CorruptError);
    }

    SUBCASE("duplicate names inside the file") {
        // count says 2 but both records carry the same name
        std::string path = tmp.file("dup.emb");
        std::vector<std::pair<std::string, Eigen::VectorXd>> one;
        one.emplace_back("x", Eigen::VectorXd::Ones(4));
        save_embeddings(one, path);
        std::ifstream f(path, std::ios::binary);
        std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        f.close();
        std::string record = body.substr(12);  // one serialized entry
        std::string doubled = body + record;
        doubled[8] = 2;  // bump the little-endian count
        std::ofstream(path, std::ios::binary).write(doubled.data(), doubled.size());
        CHECK_THROWS_AS(load_embeddings(path), CorruptError);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_embeddings(tmp.path() + "/absent.emb"), IoError);
    }
}
