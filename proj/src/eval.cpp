#include "ose/eval.hpp"

#include <algorithm>
#include <limits>

#include "ose/errors.hpp"
#include "ose/log.hpp"

namespace ose {

namespace {

struct VoteStats {
    std::size_t votes = 0;
    double nearest = std::numeric_limits<double>::infinity();
};

// Mean vector per label, insertion-ordered labels not needed: sorted map
// makes downstream tie-breaks lexicographic for free.
std::map<std::string, Vec> class_centroids(const LabeledDataset& train) {
    std::map<std::string, std::pair<Vec, std::size_t>> sums;
    for (const LabeledRecord& r : train.records) {
        auto& [sum, count] = sums[r.label];
        if (sum.empty()) sum.assign(r.vector.size(), 0.0);
        axpy(sum, 1.0, r.vector);
        ++count;
    }
    std::map<std::string, Vec> out;
    for (auto& [label, entry] : sums) {
        out.emplace(label, scaled(entry.first, 1.0 / static_cast<double>(entry.second)));
    }
    return out;
}

std::string nearest_centroid_label(const std::map<std::string, Vec>& centroids, const Vec& x) {
    std::string best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& [label, centroid] : centroids) {
        if (norm(centroid) == 0.0) {
            log::warn("class '" + label + "' has a zero centroid; excluded from prediction");
            continue;
        }
        const double d = cosine_distance(x, centroid);
        if (d < best_distance) {
            best_distance = d;
            best = label;
        }
    }
    if (best.empty()) {
        throw Error(ErrorKind::kEmptyTrainSet, "every class centroid is zero");
    }
    return best;
}

} // namespace

const char* to_string(Classifier c) noexcept {
    return c == Classifier::kKnn ? "knn" : "nearest_centroid";
}

std::string knn_predict(const LabeledDataset& train, const Vec& x, std::size_t k_neighbors) {
    if (k_neighbors < 1) {
        throw Error(ErrorKind::kInvalidArgument, "k_neighbors must be at least 1");
    }
    if (train.records.empty()) {
        throw Error(ErrorKind::kEmptyTrainSet, "no training records");
    }
    if (norm(x) == 0.0) {
        throw Error(ErrorKind::kZeroVector, "query vector is zero");
    }

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (norm(train.records[i].vector) == 0.0) continue;
        scored.emplace_back(cosine_distance(x, train.records[i].vector), i);
    }
    if (scored.empty()) {
        throw Error(ErrorKind::kEmptyTrainSet, "every training vector is zero");
    }
    // (distance, insertion index) pairs: sorting by both keeps distance
    // ties in record order.
    std::sort(scored.begin(), scored.end());

    const std::size_t k = std::min(k_neighbors, scored.size());
    std::map<std::string, VoteStats> tally;
    for (std::size_t i = 0; i < k; ++i) {
        VoteStats& stats = tally[train.records[scored[i].second].label];
        ++stats.votes;
        stats.nearest = std::min(stats.nearest, scored[i].first);
    }

    const std::string* best = nullptr;
    for (const auto& [label, stats] : tally) {
        if (best == nullptr || stats.votes > tally.at(*best).votes ||
            (stats.votes == tally.at(*best).votes && stats.nearest < tally.at(*best).nearest)) {
            best = &label;
        }
    }
    return *best;
}

std::string centroid_predict(const LabeledDataset& train, const Vec& x) {
    if (train.records.empty()) {
        throw Error(ErrorKind::kEmptyTrainSet, "no training records");
    }
    if (norm(x) == 0.0) {
        throw Error(ErrorKind::kZeroVector, "query vector is zero");
    }
    return nearest_centroid_label(class_centroids(train), x);
}

EvalReport run_benchmark(const LabeledDataset& train, const LabeledDataset& test,
                         Classifier classifier, std::size_t k_neighbors) {
    if (test.records.empty()) {
        throw Error(ErrorKind::kEmptyInput, "no test records");
    }
    std::map<std::string, Vec> centroids;
    if (classifier == Classifier::kNearestCentroid) centroids = class_centroids(train);

    std::map<std::string, std::pair<std::size_t, std::size_t>> per_class;  // correct, total
    std::size_t correct = 0;
    for (const LabeledRecord& r : test.records) {
        const std::string predicted = classifier == Classifier::kKnn
                                          ? knn_predict(train, r.vector, k_neighbors)
                                          : nearest_centroid_label(centroids, r.vector);
        auto& [class_correct, class_total] = per_class[r.label];
        ++class_total;
        if (predicted == r.label) {
            ++correct;
            ++class_correct;
        }
    }

    EvalReport report;
    report.n_test = test.size();
    report.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
    for (const auto& [label, counts] : per_class) {
        report.per_class_accuracy[label] =
            static_cast<double>(counts.first) / static_cast<double>(counts.second);
    }
    report.config_echo["classifier"] = to_string(classifier);
    if (classifier == Classifier::kKnn) {
        report.config_echo["k_neighbors"] = std::to_string(k_neighbors);
    }
    report.config_echo["n_train"] = std::to_string(train.size());
    report.config_echo["n_test"] = std::to_string(test.size());
    return report;
}

} // namespace ose
