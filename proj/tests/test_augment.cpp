#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "ose/augment.hpp"
#include "ose/errors.hpp"
#include "ose/synthesis.hpp"
#include "test_util.hpp"

using ose::LabeledDataset;
using ose::LabeledRecord;
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

std::string scratch_file(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "ose_augment_tests";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

LabeledDataset class_of(const std::string& label, const std::vector<Vec>& vectors) {
    LabeledDataset data;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        data.records.push_back({label, label + std::to_string(i), vectors[i]});
    }
    return data;
}

LabeledDataset merge(const LabeledDataset& a, const LabeledDataset& b) {
    LabeledDataset out = a;
    out.records.insert(out.records.end(), b.records.begin(), b.records.end());
    return out;
}

ose::AugmentationConfig config(std::size_t k, std::size_t draws, ose::ComposeMethod method) {
    ose::AugmentationConfig c;
    c.k = k;
    c.draws = draws;
    c.method = method;
    return c;
}

bool same_vectors(const LabeledDataset& a, const LabeledDataset& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.records[i].label != b.records[i].label) return false;
        if (a.records[i].key != b.records[i].key) return false;
        if (a.records[i].vector != b.records[i].vector) return false;
    }
    return true;
}

} // namespace

TEST_CASE("forced pair synthesizes the equidistant direction") {
    const LabeledDataset train = class_of("X", {{1, 0}, {0, 1}});
    const LabeledDataset out = ose::augment(train, config(2, 1, ose::ComposeMethod::kOse));
    REQUIRE(out.size() == 3);
    const LabeledRecord& added = out.records.back();
    CHECK(added.label == "X");
    CHECK(added.key == "aug:X:0");
    CHECK(added.vector[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(added.vector[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("mean method synthesizes the average of the drawn subset") {
    const LabeledDataset train = class_of("X", {{1, 0}, {0, 1}});
    const LabeledDataset out = ose::augment(train, config(2, 1, ose::ComposeMethod::kBov));
    CHECK(out.records.back().vector[0] == 0.5);
    CHECK(out.records.back().vector[1] == 0.5);
}

TEST_CASE("every class gains exactly K records with sequential keys") {
    ose::Rng rng(3);
    LabeledDataset x = class_of("X", {testutil::random_vec(rng, 4), testutil::random_vec(rng, 4),
                                      testutil::random_vec(rng, 4), testutil::random_vec(rng, 4)});
    LabeledDataset y = class_of("Y", {testutil::random_vec(rng, 4), testutil::random_vec(rng, 4),
                                      testutil::random_vec(rng, 4)});
    const LabeledDataset train = merge(x, y);
    const LabeledDataset out = ose::augment(train, config(2, 3, ose::ComposeMethod::kOse));
    CHECK(out.size() == train.size() + 2 * 3);

    std::set<std::string> keys;
    for (std::size_t i = train.size(); i < out.size(); ++i) keys.insert(out.records[i].key);
    const std::set<std::string> expected = {"aug:X:0", "aug:X:1", "aug:X:2",
                                            "aug:Y:0", "aug:Y:1", "aug:Y:2"};
    CHECK(keys == expected);

    // Original records are untouched, in their original order.
    for (std::size_t i = 0; i < train.size(); ++i) {
        CHECK(out.records[i].key == train.records[i].key);
    }
}

TEST_CASE("synthesized rows are equidistant from their seeds") {
    // With exactly k members per class the drawn subset is forced, so the
    // invariant can be checked against the known seeds.
    ose::Rng rng(7);
    std::vector<Vec> members;
    for (int i = 0; i < 4; ++i) members.push_back(testutil::random_vec(rng, 8));
    const LabeledDataset train = class_of("C", members);
    const LabeledDataset out = ose::augment(train, config(4, 1, ose::ComposeMethod::kOse));
    const Vec& synth = out.records.back().vector;
    const double d0 = ose::cosine_distance(synth, members[0]);
    for (const Vec& m : members) {
        CHECK(std::abs(ose::cosine_distance(synth, m) - d0) <= 1e-9);
    }
}

TEST_CASE("draw limits and argument validation") {
    ose::Rng rng(11);
    std::vector<Vec> five;
    for (int i = 0; i < 5; ++i) five.push_back(testutil::random_vec(rng, 6));
    const LabeledDataset train = class_of("C", five);

    // C(5, 2) = 10 distinct pairs: exactly 10 draws succeed, 11 cannot.
    const LabeledDataset maxed = ose::augment(train, config(2, 10, ose::ComposeMethod::kBov));
    CHECK(maxed.size() == 15);
    std::set<Vec> distinct;
    for (std::size_t i = 5; i < 15; ++i) distinct.insert(maxed.records[i].vector);
    CHECK(distinct.size() == 10);

    CHECK(kind_of([&] { ose::augment(train, config(2, 11, ose::ComposeMethod::kBov)); }) ==
          ose::ErrorKind::kExhaustedSubsets);
    CHECK(kind_of([&] { ose::augment(train, config(6, 1, ose::ComposeMethod::kBov)); }) ==
          ose::ErrorKind::kClassTooSmall);
    CHECK(kind_of([&] { ose::augment(train, config(1, 1, ose::ComposeMethod::kBov)); }) ==
          ose::ErrorKind::kInvalidArgument);
    CHECK(kind_of([&] { ose::augment(train, config(2, 0, ose::ComposeMethod::kBov)); }) ==
          ose::ErrorKind::kInvalidArgument);
}

TEST_CASE("augmentation is deterministic in the seed") {
    ose::Rng rng(13);
    std::vector<Vec> members;
    for (int i = 0; i < 6; ++i) members.push_back(testutil::random_vec(rng, 5));
    const LabeledDataset train = class_of("C", members);

    const auto cfg = config(3, 4, ose::ComposeMethod::kOse);
    CHECK(same_vectors(ose::augment(train, cfg), ose::augment(train, cfg)));

    auto other = cfg;
    other.seed = 1;
    CHECK(!same_vectors(ose::augment(train, cfg), ose::augment(train, other)));
}

TEST_CASE("synthesis failure is reported with its class") {
    // Differences of the three planar directions span the whole plane.
    const LabeledDataset train = class_of("P", {{1, 0}, {0, 1}, {1, 1}});
    try {
        ose::augment(train, config(3, 1, ose::ComposeMethod::kOse));
        FAIL("expected SynthesisFailed");
    } catch (const ose::Error& e) {
        CHECK(e.kind() == ose::ErrorKind::kSynthesisFailed);
        CHECK(std::string(e.what()).find("'P'") != std::string::npos);
    }
}

TEST_CASE("stratified split respects per-class shares") {
    ose::Rng rng(17);
    std::vector<Vec> ten, seven;
    for (int i = 0; i < 10; ++i) ten.push_back(testutil::random_vec(rng, 3));
    for (int i = 0; i < 7; ++i) seven.push_back(testutil::random_vec(rng, 3));
    const LabeledDataset data = merge(class_of("A", ten), class_of("B", seven));

    const auto [train, test] = ose::split_dataset(data, 0.5, 0);
    std::map<std::string, int> train_counts, test_counts;
    for (const auto& r : train.records) ++train_counts[r.label];
    for (const auto& r : test.records) ++test_counts[r.label];
    CHECK(train_counts["A"] == 5);
    CHECK(test_counts["A"] == 5);
    CHECK(train_counts["B"] == 4);  // floor(7 * 0.5) = 3 records go to test
    CHECK(test_counts["B"] == 3);

    // Disjoint halves, nothing lost, input order preserved within halves.
    std::set<std::string> seen;
    for (const auto& r : train.records) seen.insert(r.key);
    for (const auto& r : test.records) {
        CHECK(seen.insert(r.key).second);
    }
    CHECK(seen.size() == data.size());

    const auto [train2, test2] = ose::split_dataset(data, 0.5, 0);
    CHECK(same_vectors(train, train2));
    CHECK(same_vectors(test, test2));
}

TEST_CASE("split validation") {
    const LabeledDataset tiny = class_of("A", {{1, 0}});
    CHECK(kind_of([&] { ose::split_dataset(tiny, 0.5, 0); }) == ose::ErrorKind::kClassTooSmall);

    const LabeledDataset pair = class_of("A", {{1, 0}, {0, 1}});
    CHECK(kind_of([&] { ose::split_dataset(pair, 0.0, 0); }) == ose::ErrorKind::kInvalidArgument);
    CHECK(kind_of([&] { ose::split_dataset(pair, 1.0, 0); }) == ose::ErrorKind::kInvalidArgument);
    // A fraction so high that no record reaches the test half also fails.
    CHECK(kind_of([&] { ose::split_dataset(pair, 0.9, 0); }) == ose::ErrorKind::kClassTooSmall);
}

TEST_CASE("preprocessing dedupes and enforces class size") {
    LabeledDataset data;
    data.records.push_back({"A", "w1", {1, 0}});
    data.records.push_back({"A", "w1", {9, 9}});  // duplicate key, dropped
    data.records.push_back({"A", "w2", {0, 1}});
    data.records.push_back({"B", "w1", {1, 1}});  // same key, other class: kept

    const LabeledDataset deduped = ose::preprocess_dataset(data, 1);
    REQUIRE(deduped.size() == 3);
    CHECK(deduped.records[0].vector[0] == 1.0);

    const LabeledDataset filtered = ose::preprocess_dataset(data, 2);
    CHECK(filtered.size() == 2);
    CHECK(filtered.labels() == std::set<std::string>{"A"});
}

TEST_CASE("word dataset loader") {
    ose::EmbeddingTable table;
    table.dim = 2;
    table.tokens = {"apple", "banana", "husk"};
    table.vectors = {{1, 0}, {0, 1}, {0, 0}};
    for (std::size_t i = 0; i < table.tokens.size(); ++i) table.index.emplace(table.tokens[i], i);

    const std::string path = scratch_file(
        "words.csv", "label,word\nfruit,apple\nfruit,banana\nveg,zzz\nveg,husk\nveg,apple\n");
    const LabeledDataset data = ose::load_word_dataset(path, table);
    REQUIRE(data.size() == 3);  // zzz is OOV, husk is a zero vector
    CHECK(data.records[0].label == "fruit");
    CHECK(data.records[0].key == "apple");
    CHECK(data.records[0].vector[0] == 1.0);
    CHECK(data.records[2].label == "veg");

    const std::string upper = scratch_file("upper.csv", "label,word\nfruit,APPLE\n");
    CHECK(ose::load_word_dataset(upper, table, true).size() == 1);

    const std::string bad = scratch_file("bad.csv", "label,word\nnocomma\n");
    CHECK(kind_of([&] { ose::load_word_dataset(bad, table); }) == ose::ErrorKind::kParseError);

    const std::string oov = scratch_file("oov.csv", "label,word\nx,zzz\n");
    CHECK(kind_of([&] { ose::load_word_dataset(oov, table); }) ==
          ose::ErrorKind::kEmptyAfterFiltering);

    CHECK(kind_of([&] { ose::load_word_dataset("/nonexistent.csv", table); }) ==
          ose::ErrorKind::kIoError);
}

TEST_CASE("sentence dataset loader composes each line") {
    ose::EmbeddingTable table;
    table.dim = 3;
    table.tokens = {"good", "movie", "bad"};
    table.vectors = {{1, 0, 0}, {0, 1, 0}, {-1, 0.2, 0}};
    for (std::size_t i = 0; i < table.tokens.size(); ++i) table.index.emplace(table.tokens[i], i);

    const std::string path = scratch_file(
        "sents.tsv", "label\tsentence\npos\tgood movie\nneg\tbad movie\nskip\tzzz qqq\n");
    const LabeledDataset data =
        ose::load_sentence_dataset(path, table, ose::ComposeMethod::kBov);
    REQUIRE(data.size() == 2);  // the all-OOV sentence is skipped
    CHECK(data.records[0].label == "pos");
    CHECK(data.records[0].key == "good movie");
    CHECK(data.records[0].vector[0] == 0.5);
    CHECK(data.records[0].vector[1] == 0.5);

    const std::string bad = scratch_file("bad.tsv", "label\tsentence\nnotab\n");
    CHECK(kind_of([&] { ose::load_sentence_dataset(bad, table, ose::ComposeMethod::kBov); }) ==
          ose::ErrorKind::kParseError);
}

TEST_CASE("dataset serialization quotes awkward fields") {
    LabeledDataset data;
    data.records.push_back({"A", "plain", {1, 0.5}});
    data.records.push_back({"B,1", "say \"hi\"", {0, 0}});

    std::ostringstream out;
    ose::save_dataset(data, out);
    CHECK(out.str() ==
          "label,key,vector\n"
          "A,plain,1.0 0.5\n"
          "\"B,1\",\"say \"\"hi\"\"\",0.0 0.0\n");
}
