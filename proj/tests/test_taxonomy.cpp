#include <fstream>
#include <string>

#include "doctest.h"
#include "k12/errors.hpp"
#include "k12/taxonomy.hpp"
#include "test_util.hpp"

using namespace k12;
using namespace k12::tag;

TEST_CASE("flattening lowercases and joins the three levels") {
    TaxonomyLabel l = flatten_taxonomy(7, "Physics", "Waves", "Standing Waves");
    CHECK(l.label_id == 7);
    CHECK(l.subject == "Physics");
    CHECK(l.chapter == "Waves");
    CHECK(l.topic == "Standing Waves");
    CHECK(l.flat == "physics - waves - standing waves");
}

TEST_CASE("flattening collapses interior whitespace and trims the edges") {
    TaxonomyLabel l = flatten_taxonomy(1, "  Earth   Science ", "Rocks\tand\nMinerals", " Ores ");
    CHECK(l.flat == "earth science - rocks and minerals - ores");
}

TEST_CASE("flattening lowercases beyond ascii") {
    TaxonomyLabel l = flatten_taxonomy(2, "Équations", "Álgebra", "Ōmega Notation");
    CHECK(l.flat == "équations - álgebra - ōmega notation");
}

TEST_CASE("empty or whitespace-only levels are rejected") {
    CHECK_THROWS_AS(flatten_taxonomy(3, "", "Waves", "Sound"), FormatError);
    CHECK_THROWS_AS(flatten_taxonomy(3, "Physics", "   ", "Sound"), FormatError);
    CHECK_THROWS_AS(flatten_taxonomy(3, "Physics", "Waves", "\t\n"), FormatError);
}

TEST_CASE("taxonomy files load in order with blank lines skipped") {
    testutil::TempDir tmp("tax");
    std::string path = tmp.file("taxonomy.jsonl");
    {
        std::ofstream out(path);
        out << R"({"label_id": 10, "subject": "Physics", "chapter": "Optics", "topic": "Lenses"})"
            << "\n\n"
            << R"({"label_id": 11, "subject": "Biology", "chapter": "Cells", "topic": "Mitosis"})"
            << "\n";
    }
    auto labels = load_taxonomy(path);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0].label_id == 10);
    CHECK(labels[0].flat == "physics - optics - lenses");
    CHECK(labels[1].label_id == 11);
    CHECK(labels[1].flat == "biology - cells - mitosis");
}

TEST_CASE("taxonomy loader flags malformed input with the line number") {
    testutil::TempDir tmp("tax_bad");

    SUBCASE("duplicate label_id") {
        std::string path = tmp.file("dup.jsonl");
        std::ofstream(path)
            << R"({"label_id": 1, "subject": "A", "chapter": "B", "topic": "C"})" << "\n"
            << R"({"label_id": 1, "subject": "D", "chapter": "E", "topic": "F"})" << "\n";
        try {
            load_taxonomy(path);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find(":2") != std::string::npos);
        }
    }

    SUBCASE("missing field") {
        std::string path = tmp.file("missing.jsonl");
        std::ofstream(path) << R"({"label_id": 1, "subject": "A", "chapter": "B"})" << "\n";
        CHECK_THROWS_AS(load_taxonomy(path), FormatError);
    }

    SUBCASE("broken json") {
        std::string path = tmp.file("broken.jsonl");
        std::ofstream(path) << "{not json}\n";
        CHECK_THROWS_AS(load_taxonomy(path), FormatError);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_taxonomy(tmp.path() + "/nope.jsonl"), IoError);
    }
}

TEST_CASE("question files load and enforce unique ids") {
    testutil::TempDir tmp("questions");
    std::string path = tmp.file("q.jsonl");
    std::ofstream(path)
        << R"({"question_id": "q1", "text": "What is refraction?", "gold_label_id": 10})" << "\n"
        << R"({"question_id": "q2", "text": "Name the cell stages.", "gold_label_id": 11})" << "\n";
    auto qs = load_questions(path);
    REQUIRE(qs.size() == 2);
    CHECK(qs[0].question_id == "q1");
    CHECK(qs[0].text == "What is refraction?");
    CHECK(qs[0].gold_label_id == 10);
    CHECK(qs[1].gold_label_id == 11);

    std::string dup = tmp.file("dup.jsonl");
    std::ofstream(dup)
        << R"({"question_id": "q1", "text": "a", "gold_label_id": 1})" << "\n"
        << R"({"question_id": "q1", "text": "b", "gold_label_id": 2})" << "\n";
    CHECK_THROWS_AS(load_questions(dup), FormatError);
}

TEST_CASE("demo taxonomy and questions parse cleanly") {
    auto labels = load_taxonomy(testutil::demo_dir() + "/taxonomy.jsonl");
    auto questions = load_questions(testutil::demo_dir() + "/questions.jsonl");
    CHECK(labels.size() >= 30);
    CHECK(questions.size() >= 60);
    for (const auto& l : labels) CHECK(l.flat.find(" - ") != std::string::npos);
}
