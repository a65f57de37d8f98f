#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ose/compose.hpp"
#include "ose/embedding.hpp"
#include "ose/linalg.hpp"

namespace ose {

/// Name of the generator behind every seeded draw; recorded in run
/// manifests so results reproduce across platforms.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

struct LabeledRecord {
    std::string label;
    std::string key;  // source word, sentence, or generated id
    Vec vector;
};

struct LabeledDataset {
    std::vector<LabeledRecord> records;

    std::size_t size() const noexcept { return records.size(); }
    std::size_t dim() const noexcept { return records.empty() ? 0 : records.front().vector.size(); }
    std::set<std::string> labels() const;
};

struct AugmentationConfig {
    std::size_t k = 5;      // records seeded into each synthesis, >= 2
    std::size_t draws = 1;  // syntheses added per class (K), >= 1
    ComposeMethod method = ComposeMethod::kOse;
    std::uint64_t seed = 0;
    double rank_tol = kDefaultRankTol;
};

/// Appends, per class, `draws` synthesized vectors, each built from a
/// uniformly drawn k-subset of that class's records; no subset is reused
/// within a class. New records carry keys "aug:<label>:<i>". Classes are
/// processed in sorted label order off one seeded generator, so identical
/// inputs give bit-identical output. Throws ClassTooSmall, Exhausted-
/// Subsets (draws exceeds the number of distinct subsets), SynthesisFailed.
LabeledDataset augment(const LabeledDataset& train, const AugmentationConfig& config);

/// Per-class stratified shuffle split; `fraction` is the train share, and
/// each class sends floor(size * (1 - fraction)) records to test. Record
/// order within each half follows the input. Throws ClassTooSmall when a
/// class would leave either half empty.
std::pair<LabeledDataset, LabeledDataset> split_dataset(const LabeledDataset& data,
                                                        double fraction, std::uint64_t seed);

/// Keep-first key dedup within each class, then drop classes with fewer
/// than min_class_size records. Record order is preserved.
LabeledDataset preprocess_dataset(const LabeledDataset& data, std::size_t min_class_size);

/// CSV "label,word" records (header line tolerated) resolved through the
/// table. Out-of-vocabulary words and zero vectors are skipped with a
/// summary warning.
LabeledDataset load_word_dataset(const std::string& path, const EmbeddingTable& table,
                                 bool lowercase = false);

/// TSV "label<TAB>sentence" records; each sentence is tokenized and
/// composed through the table. Sentences that fail to compose are skipped
/// with a summary warning.
LabeledDataset load_sentence_dataset(const std::string& path, const EmbeddingTable& table,
                                     ComposeMethod method, Fallback fallback = Fallback::kNone,
                                     bool lowercase = false, double rank_tol = kDefaultRankTol);

/// CSV rows "label,key,<space-separated components>" with a header; fields
/// containing delimiters are quoted.
void save_dataset(const LabeledDataset& data, std::ostream& out);

} // namespace ose
