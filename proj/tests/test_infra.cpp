#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/kvconfig.hpp"
#include "k12/parallel.hpp"
#include "k12/rng.hpp"
#include "test_util.hpp"

using namespace k12;

TEST_CASE("config files parse comments, blanks, and spacing") {
    testutil::TempDir tmp("cfg");
    std::string path = tmp.file("run.cfg");
    std::ofstream(path) << "# pipeline settings\n"
                        << "\n"
                        << "paths.vocab = data/vocab.txt\n"
                        << "train.batch_size=32\n"
                        << "  mlm.select_prob =  0.15  \n"
                        << "ingest.include = a.jsonl, b.jsonl ,c.jsonl\n"
                        << "quiet = true\n";
    KvConfig cfg = KvConfig::load(path);
    CHECK(cfg.get_str("paths.vocab") == "data/vocab.txt");
    CHECK(cfg.get_int("train.batch_size", 0) == 32);
    CHECK(cfg.get_double("mlm.select_prob", 0) == doctest::Approx(0.15));
    CHECK(cfg.get_bool("quiet", false));
    auto list = cfg.get_list("ingest.include");
    REQUIRE(list.size() == 3);
    CHECK(list[0] == "a.jsonl");
    CHECK(list[1] == "b.jsonl");
    CHECK(list[2] == "c.jsonl");
    CHECK(cfg.get_list("missing.key").empty());
    CHECK(cfg.get_int("absent", 7) == 7);
}

TEST_CASE("config rejects malformed lines and values") {
    testutil::TempDir tmp("cfg_bad");
    std::string path = tmp.file("broken.cfg");
    std::ofstream(path) << "just a bare line\n";
    CHECK_THROWS_AS(KvConfig::load(path), ConfigError);
    CHECK_THROWS_AS(KvConfig::load(tmp.path() + "/ghost.cfg"), ConfigError);

    KvConfig cfg;
    cfg.set("n", "12x");
    CHECK_THROWS_AS(cfg.get_int("n", 0), ConfigError);
    cfg.set("f", "0.5er");
    CHECK_THROWS_AS(cfg.get_double("f", 0), ConfigError);
    cfg.set("b", "maybe");
    CHECK_THROWS_AS(cfg.get_bool("b", false), ConfigError);
}

TEST_CASE("command line overrides land on top of file values") {
    KvConfig cfg;
    cfg.set("train.lr", "1e-4");
    cfg.apply_override("--train.lr=5e-5");
    CHECK(cfg.get_double("train.lr", 0) == doctest::Approx(5e-5));
    cfg.apply_override("seed=99"); // bare form works too
    CHECK(cfg.get_int("seed", 0) == 99);
    cfg.apply_override("--paths.out=x=y"); // value may contain '='
    CHECK(cfg.get_str("paths.out") == "x=y");
    CHECK_THROWS_AS(cfg.apply_override("--no-equals"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_override("--=value"), ConfigError);
}

TEST_CASE("string helpers") {
    CHECK(trim("  a b \t\r\n") == "a b");
    CHECK(trim("") == "");
    CHECK(trim(" \t ") == "");
    auto parts = split("a, b,,c ,", ',');
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == "a");
    CHECK(parts[1] == "b");
    CHECK(parts[2] == "c");
    CHECK(split("", ',').empty());
}

TEST_CASE("seeded rng streams are reproducible and well ranged") {
    rng::Engine a(123), b(123), c(124);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        uint64_t x = a.next(), y = b.next(), z = c.next();
        all_equal = all_equal && (x == y);
        any_diff = any_diff || (x != z);
    }
    CHECK(all_equal);
    CHECK(any_diff);

    rng::Engine u(5);
    for (int i = 0; i < 10000; ++i) {
        double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }

    rng::Engine d(6);
    std::set<uint64_t> seen;
    for (int i = 0; i < 20000; ++i) {
        uint64_t v = d.uniform_int(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7); // every bucket hit

    // derive() separates streams by index
    CHECK(rng::derive(1, 0) != rng::derive(1, 1));
    CHECK(rng::derive(1, 0, 0) != rng::derive(1, 0, 1));
    CHECK(rng::derive(1, 0, 0) == rng::derive(1, 0, 0));
}

TEST_CASE("normal and truncated normal samples look right") {
    rng::Engine eng(77);
    const int n = 50000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        double v = eng.normal();
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);

    rng::Engine teng(78);
    for (int i = 0; i < 20000; ++i) {
        double v = teng.truncated_normal(2.0);
        CHECK(std::abs(v) <= 2.0);
    }
}

TEST_CASE("parallel loops cover every index once and forward exceptions") {
    const size_t n = 10000;
    std::vector<std::atomic<int>> hits(n);
    for (auto& h : hits) h.store(0);
    parallel_for(n, 8, [&](size_t i) { hits[i].fetch_add(1); });
    for (size_t i = 0; i < n; ++i) REQUIRE(hits[i].load() == 1);

    parallel_for(0, 4, [&](size_t) { FAIL("must not run for n == 0"); });

    CHECK_THROWS_AS(
        parallel_for(100, 4,
                     [&](size_t i) {
                         if (i == 57) throw RangeError("boom");
                     }),
        RangeError);
}

TEST_CASE("binary io round trips scalars and detects eof") {
    testutil::TempDir tmp("binio");
    std::string path = tmp.file("blob.bin");
    {
        binio::Writer w(path);
        w.u16(0xBEEF);
        w.u32(0xDEADBEEFu);
        w.u64(0x0123456789ABCDEFull);
        w.i32(-42);
        w.f32(1.5f);
        w.u8(0x7F);
        w.str("hello");
        w.close();
    }
    binio::Reader r(path);
    CHECK(r.u16() == 0xBEEF);
    CHECK(r.u32() == 0xDEADBEEFu);
    CHECK(r.u64() == 0x0123456789ABCDEFull);
    CHECK(r.i32() == -42);
    CHECK(r.f32() == 1.5f);
    CHECK(r.u8() == 0x7F);
    CHECK(r.str(5) == "hello");
    CHECK(r.at_eof());
    CHECK_THROWS_AS(r.u32(), CorruptError); // reading past the end

    CHECK_THROWS_AS(binio::read_file(tmp.path() + "/nope"), IoError);

    // little-endian layout on disk
    std::ifstream in(path, std::ios::binary);
    char first[2];
    in.read(first, 2);
    CHECK(static_cast<unsigned char>(first[0]) == 0xEF);
    CHECK(static_cast<unsigned char>(first[1]) == 0xBE);
}

TEST_CASE("text file helpers") {
    testutil::TempDir tmp("textio");
    std::string path = tmp.file("t.txt");
    binio::write_file(path, "one\ntwo\nthree");
    CHECK(binio::read_file(path) == "one\ntwo\nthree");
    auto lines = binio::read_lines(path);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "one");
    CHECK(lines[2] == "three");
}
