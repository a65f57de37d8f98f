#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "ose/embedding.hpp"
#include "ose/errors.hpp"
#include "test_util.hpp"

using ose::Vec;

namespace {

ose::ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ose::Error& e) {
        return e.kind();
    }
    throw std::runtime_error("expected an error");
}

// Writes content to a scratch file and returns its path.
std::string scratch_file(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "ose_embedding_tests";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace

TEST_CASE("headerless file") {
    const std::string path = scratch_file("plain.vec", "alpha 1 0\nbeta 0 1\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path);
    CHECK(table.size() == 2);
    CHECK(table.dim == 2);
    CHECK(table.tokens[0] == "alpha");
    CHECK((*table.find("beta"))[1] == 1.0);
    CHECK(table.find("gamma") == nullptr);
    CHECK(table.zero_vector_count == 0);
    CHECK(table.source == path);
}

TEST_CASE("count-dim header is recognized and skipped") {
    const std::string path = scratch_file("header.vec", "2 3\na 1 0 0\nb 0 1 0\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path);
    CHECK(table.size() == 2);
    CHECK(table.dim == 3);
}

TEST_CASE("a two-field data line is not mistaken for a header") {
    // First line has a non-numeric token, so it must load as data.
    const std::string path = scratch_file("nothdr.vec", "a 1\nb 2\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path);
    CHECK(table.size() == 2);
    CHECK(table.dim == 1);
}

TEST_CASE("crlf and trailing blank lines") {
    const std::string path = scratch_file("crlf.vec", "a 1 0\r\nb 0 1\r\n\r\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path);
    CHECK(table.size() == 2);
    CHECK((*table.find("a"))[0] == 1.0);
}

TEST_CASE("duplicates keep the first occurrence") {
    const std::string path = scratch_file("dup.vec", "a 1 0\na 0 1\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path);
    CHECK(table.size() == 1);
    CHECK((*table.find("a"))[0] == 1.0);
}

TEST_CASE("limit stops the load early") {
    const std::string path = scratch_file("lim.vec", "a 1 0\nb 0 1\nc 1 1\n");
    CHECK(ose::load_embeddings(path, 2).size() == 2);
    CHECK(ose::load_embeddings(path, 0).size() == 3);
}

TEST_CASE("lowercase folding at load") {
    const std::string path = scratch_file("case.vec", "Apple 1 0\nBANANA 0 1\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path, 0, true);
    CHECK(table.find("apple") != nullptr);
    CHECK(table.find("banana") != nullptr);
    CHECK(table.find("Apple") == nullptr);
}

TEST_CASE("zero vectors are loaded but counted") {
    const std::string path = scratch_file("zero.vec", "z 0 0\na 1 0\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path);
    CHECK(table.size() == 2);
    CHECK(table.zero_vector_count == 1);
    // ...and never retrieved.
    const auto hits = ose::retrieve(table, {0.5, 0.5}, 5);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].first == "a");
}

TEST_CASE("load failures") {
    CHECK(kind_of([] { ose::load_embeddings("/nonexistent/embeddings.vec"); }) ==
          ose::ErrorKind::kIoError);

    const std::string empty = scratch_file("empty.vec", "");
    CHECK(kind_of([&] { ose::load_embeddings(empty); }) == ose::ErrorKind::kEmptyFile);

    const std::string blank = scratch_file("blank.vec", "\n\n");
    CHECK(kind_of([&] { ose::load_embeddings(blank); }) == ose::ErrorKind::kEmptyFile);

    const std::string headeronly = scratch_file("hdronly.vec", "5 3\n");
    CHECK(kind_of([&] { ose::load_embeddings(headeronly); }) == ose::ErrorKind::kEmptyFile);

    const std::string bad = scratch_file("bad.vec", "a 1 0\nb 0 oops\n");
    CHECK(kind_of([&] { ose::load_embeddings(bad); }) == ose::ErrorKind::kParseError);

    const std::string nan = scratch_file("nan.vec", "a nan 0\n");
    CHECK(kind_of([&] { ose::load_embeddings(nan); }) == ose::ErrorKind::kParseError);

    const std::string lonely = scratch_file("lonely.vec", "a 1 0\njusttoken\n");
    CHECK(kind_of([&] { ose::load_embeddings(lonely); }) == ose::ErrorKind::kParseError);

    const std::string ragged = scratch_file("ragged.vec", "a 1 0\nb 1 2 3\n");
    CHECK(kind_of([&] { ose::load_embeddings(ragged); }) == ose::ErrorKind::kInconsistentDim);
}

TEST_CASE("error message carries the file location") {
    const std::string bad = scratch_file("loc.vec", "a 1 0\nb 0 oops\n");
    try {
        ose::load_embeddings(bad);
        FAIL("expected ParseError");
    } catch (const ose::Error& e) {
        const std::string what = e.what();
        CHECK(what.find("loc.vec") != std::string::npos);
        CHECK(what.find("2") != std::string::npos);
        CHECK(e.is_io() == true);
    }
}

TEST_CASE("retrieval ranks by cosine distance") {
    ose::EmbeddingTable table;
    table.dim = 2;
    table.tokens = {"a", "b"};
    table.vectors = {{1, 0}, {0, 1}};
    table.index = {{"a", 0}, {"b", 1}};

    const auto hits = ose::retrieve(table, {0.9, 0.1}, 2);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].first == "a");
    CHECK(hits[0].second == doctest::Approx(1.0 - 0.9 / std::sqrt(0.82)).epsilon(1e-12));
    CHECK(hits[1].first == "b");
    CHECK(hits[1].second == doctest::Approx(1.0 - 0.1 / std::sqrt(0.82)).epsilon(1e-12));

    // Identical direction comes back at distance zero, scale ignored.
    const auto exact = ose::retrieve(table, {42.0, 0.0}, 1);
    CHECK(exact[0].first == "a");
    CHECK(exact[0].second == 0.0);

    // Requesting more than the vocabulary returns the whole ranking.
    CHECK(ose::retrieve(table, {1, 1}, 10).size() == 2);
}

TEST_CASE("retrieval ties break by token") {
    ose::EmbeddingTable table;
    table.dim = 2;
    table.tokens = {"b", "a"};
    table.vectors = {{2, 0}, {1, 0}};
    table.index = {{"b", 0}, {"a", 1}};
    const auto hits = ose::retrieve(table, {1, 0}, 2);
    CHECK(hits[0].first == "a");
    CHECK(hits[1].first == "b");
    CHECK(ose::classify_by_partition(table, {1, 0}) == "a");
}

TEST_CASE("retrieval validation") {
    ose::EmbeddingTable table;
    table.dim = 2;
    table.tokens = {"a"};
    table.vectors = {{1, 0}};
    table.index = {{"a", 0}};

    CHECK(kind_of([&] { ose::retrieve(table, {1, 0}, 0); }) == ose::ErrorKind::kInvalidArgument);
    CHECK(kind_of([&] { ose::retrieve(table, {0, 0}, 1); }) == ose::ErrorKind::kZeroVector);
    CHECK(kind_of([&] { ose::retrieve(table, {1, 0, 0}, 1); }) == ose::ErrorKind::kDimMismatch);

    ose::EmbeddingTable empty;
    CHECK(kind_of([&] { ose::retrieve(empty, {1, 0}, 1); }) == ose::ErrorKind::kEmptyTable);

    ose::EmbeddingTable zeros;
    zeros.dim = 2;
    zeros.tokens = {"z"};
    zeros.vectors = {{0, 0}};
    zeros.index = {{"z", 0}};
    zeros.zero_vector_count = 1;
    CHECK(kind_of([&] { ose::retrieve(zeros, {1, 0}, 1); }) == ose::ErrorKind::kEmptyTable);
}

TEST_CASE("nearest-token partition agrees with a direct scan") {
    const std::string path = scratch_file(
        "part.vec", "n 0 1\ne 1 0\nw -1 0\ns 0 -1\nne 1 1\nnw -1 1\nse 1 -1\nsw -1 -1\n");
    const ose::EmbeddingTable table = ose::load_embeddings(path);
    ose::Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec x = testutil::random_unit(rng, 2);
        std::string best;
        double best_d = 1e300;
        for (std::size_t i = 0; i < table.size(); ++i) {
            const double d = ose::cosine_distance(x, table.vectors[i]);
            if (d < best_d || (d == best_d && table.tokens[i] < best)) {
                best_d = d;
                best = table.tokens[i];
            }
        }
        CHECK(ose::classify_by_partition(table, x) == best);
    }
}

TEST_CASE("save and reload round trip") {
    ose::EmbeddingTable table;
    table.dim = 3;
    table.tokens = {"a", "b"};
    table.vectors = {{1.0 / 3.0, 0, 0}, {0, std::sqrt(2.0), -1}};
    table.index = {{"a", 0}, {"b", 1}};

    std::ostringstream first;
    ose::save_embeddings(table, first);
    CHECK(first.str().substr(0, 4) == "2 3\n");

    const std::string path = scratch_file("round.vec", first.str());
    const ose::EmbeddingTable reloaded = ose::load_embeddings(path);
    CHECK(reloaded.size() == 2);
    CHECK(reloaded.dim == 3);
    CHECK((*reloaded.find("a"))[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-7));

    // Re-saving the reloaded table reproduces the bytes exactly.
    std::ostringstream second;
    ose::save_embeddings(reloaded, second);
    CHECK(first.str() == second.str());
}
