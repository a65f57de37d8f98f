#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "ose/augment.hpp"
#include "ose/linalg.hpp"

namespace ose {

enum class Classifier { kKnn, kNearestCentroid };

const char* to_string(Classifier c) noexcept;

struct EvalReport {
    double accuracy = 0;
    std::map<std::string, double> per_class_accuracy;
    std::map<std::string, std::string> config_echo;
    std::size_t n_test = 0;
};

/// Majority label among the k nearest training records by cosine
/// distance. Distance ties keep insertion order; vote ties go to the
/// label with the closest member, then the lexicographically smaller
/// label. Zero-vector training records cannot score and are ignored.
std::string knn_predict(const LabeledDataset& train, const Vec& x, std::size_t k_neighbors);

/// Label of the class centroid (mean of raw class vectors) nearest to x.
/// Zero centroids are excluded with a warning; distance ties go to the
/// lexicographically smaller label.
std::string centroid_predict(const LabeledDataset& train, const Vec& x);

/// Predicts every test record and reports overall and per-class accuracy.
/// Deterministic for identical inputs.
EvalReport run_benchmark(const LabeledDataset& train, const LabeledDataset& test,
                         Classifier classifier, std::size_t k_neighbors = 5);

} // namespace ose
