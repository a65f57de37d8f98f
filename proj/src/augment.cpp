#include "ose/augment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "ose/errors.hpp"
#include "ose/log.hpp"
#include "ose/rng.hpp"
#include "ose/synthesis.hpp"
#include "ose/text.hpp"

namespace ose {

namespace {

std::map<std::string, std::vector<std::size_t>> group_by_label(const LabeledDataset& data) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        groups[data.records[i].label].push_back(i);
    }
    return groups;
}

// C(n, k), saturating well above any usable draw count.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k) {
    constexpr std::uint64_t kCap = std::uint64_t(1) << 62;
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t f = n - k + i;
        if (c > kCap / f) return kCap;
        c = c * f / i;
    }
    return c;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        quoted += c;
        if (c == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
}

} // namespace

std::set<std::string> LabeledDataset::labels() const {
    std::set<std::string> out;
    for (const LabeledRecord& r : records) out.insert(r.label);
    return out;
}

LabeledDataset augment(const LabeledDataset& train, const AugmentationConfig& config) {
    if (config.k < 2) {
        throw Error(ErrorKind::kInvalidArgument, "group size k must be at least 2");
    }
    if (config.draws < 1) {
        throw Error(ErrorKind::kInvalidArgument, "draws per class K must be at least 1");
    }

    const auto groups = group_by_label(train);
    for (const auto& [label, members] : groups) {
        if (members.size() < config.k) {
            throw Error(ErrorKind::kClassTooSmall, "class '" + label + "' has " +
                                                       std::to_string(members.size()) +
                                                       " records, fewer than k = " +
                                                       std::to_string(config.k));
        }
        const std::uint64_t available = binomial_capped(members.size(), config.k);
        if (config.draws > available) {
            throw Error(ErrorKind::kExhaustedSubsets,
                        "class '" + label + "' admits only " + std::to_string(available) +
                            " distinct k-subsets, fewer than K = " + std::to_string(config.draws));
        }
    }

    LabeledDataset out = train;
    out.records.reserve(train.size() + groups.size() * config.draws);
    Rng rng(config.seed);
    for (const auto& [label, members] : groups) {
        std::set<std::vector<std::size_t>> used;
        for (std::size_t i = 0; i < config.draws; ++i) {
            std::vector<std::size_t> subset;
            do {
                subset = sample_indices(rng, members.size(), config.k);
                std::sort(subset.begin(), subset.end());
            } while (!used.insert(subset).second);

            std::vector<Vec> seeds;
            seeds.reserve(config.k);
            for (std::size_t j : subset) seeds.push_back(train.records[members[j]].vector);

            Vec synthesized;
            try {
                synthesized = config.method == ComposeMethod::kOse
                                  ? ose(seeds, config.rank_tol).solution
                                  : compose_bov(seeds);
            } catch (const Error& e) {
                throw Error(ErrorKind::kSynthesisFailed, "class '" + label + "' draw " +
                                                             std::to_string(i) + ": " + e.what());
            }
            out.records.push_back(
                {label, "aug:" + label + ":" + std::to_string(i), std::move(synthesized)});
        }
    }
    return out;
}

std::pair<LabeledDataset, LabeledDataset> split_dataset(const LabeledDataset& data,
                                                        double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw Error(ErrorKind::kInvalidArgument, "split fraction must lie strictly in (0, 1)");
    }
    const auto groups = group_by_label(data);
    std::vector<bool> in_test(data.size(), false);
    Rng rng(seed);
    for (const auto& [label, members] : groups) {
        const double share = static_cast<double>(members.size()) * (1.0 - fraction);
        const auto n_test = static_cast<std::size_t>(std::floor(share + 1e-12));
        const std::size_t n_train = members.size() - n_test;
        if (n_train == 0 || n_test == 0) {
            throw Error(ErrorKind::kClassTooSmall, "class '" + label + "' with " +
                                                       std::to_string(members.size()) +
                                                       " records cannot be split at this fraction");
        }
        const std::vector<std::size_t> perm = sample_indices(rng, members.size(), members.size());
        for (std::size_t i = n_train; i < perm.size(); ++i) in_test[members[perm[i]]] = true;
    }

    std::pair<LabeledDataset, LabeledDataset> out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        (in_test[i] ? out.second : out.first).records.push_back(data.records[i]);
    }
    return out;
}

LabeledDataset preprocess_dataset(const LabeledDataset& data, std::size_t min_class_size) {
    std::set<std::pair<std::string, std::string>> seen;
    LabeledDataset deduped;
    for (const LabeledRecord& r : data.records) {
        if (seen.emplace(r.label, r.key).second) deduped.records.push_back(r);
    }
    std::map<std::string, std::size_t> counts;
    for (const LabeledRecord& r : deduped.records) ++counts[r.label];

    LabeledDataset out;
    std::size_t dropped_classes = 0;
    for (const auto& [label, count] : counts) {
        if (count < min_class_size) ++dropped_classes;
    }
    for (LabeledRecord& r : deduped.records) {
        if (counts[r.label] >= min_class_size) out.records.push_back(std::move(r));
    }
    if (dropped_classes > 0) {
        log::info(std::to_string(dropped_classes) + " class(es) below " +
                  std::to_string(min_class_size) + " records dropped");
    }
    return out;
}

LabeledDataset load_word_dataset(const std::string& path, const EmbeddingTable& table,
                                 bool lowercase) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kIoError, "cannot open dataset file: " + path);
    }
    LabeledDataset out;
    std::string line;
    std::size_t line_no = 0;
    std::size_t oov = 0;
    std::size_t zero = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        if (line_no == 1 && ascii_lower(trim(line)) == "label,word") continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorKind::kParseError,
                        path + ":" + std::to_string(line_no) + ": expected 'label,word'");
        }
        const std::string label = trim(line.substr(0, comma));
        std::string word = trim(line.substr(comma + 1));
        if (label.empty() || word.empty()) {
            throw Error(ErrorKind::kParseError,
                        path + ":" + std::to_string(line_no) + ": empty label or word");
        }
        if (lowercase) word = ascii_lower(word);
        const Vec* v = table.find(word);
        if (v == nullptr) {
            ++oov;
            continue;
        }
        if (norm(*v) == 0.0) {
            ++zero;
            continue;
        }
        out.records.push_back({label, word, *v});
    }
    if (oov > 0) log::warn(std::to_string(oov) + " out-of-vocabulary word(s) skipped in " + path);
    if (zero > 0) log::warn(std::to_string(zero) + " zero-vector word(s) skipped in " + path);
    if (out.records.empty()) {
        throw Error(ErrorKind::kEmptyAfterFiltering, "no dataset records resolved from " + path);
    }
    return out;
}

LabeledDataset load_sentence_dataset(const std::string& path, const EmbeddingTable& table,
                                     ComposeMethod method, Fallback fallback, bool lowercase,
                                     double rank_tol) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kIoError, "cannot open dataset file: " + path);
    }
    LabeledDataset out;
    std::string line;
    std::size_t line_no = 0;
    std::size_t skipped = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        if (line_no == 1 && ascii_lower(trim(line)) == "label\tsentence") continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw Error(ErrorKind::kParseError,
                        path + ":" + std::to_string(line_no) + ": expected 'label<TAB>sentence'");
        }
        const std::string label = trim(line.substr(0, tab));
        const std::string sentence = trim(line.substr(tab + 1));
        if (label.empty() || sentence.empty()) {
            throw Error(ErrorKind::kParseError,
                        path + ":" + std::to_string(line_no) + ": empty label or sentence");
        }
        CompositionRequest request;
        request.tokens = tokenize(sentence, lowercase);
        request.method = method;
        request.fallback = fallback;
        request.rank_tol = rank_tol;
        try {
            out.records.push_back({label, sentence, compose_sentence(table, request).first});
        } catch (const Error& e) {
            ++skipped;
            log::warn(path + ":" + std::to_string(line_no) + ": " + e.what() + "; record skipped");
        }
    }
    if (skipped > 0) {
        log::warn(std::to_string(skipped) + " sentence(s) skipped in " + path);
    }
    if (out.records.empty()) {
        throw Error(ErrorKind::kEmptyAfterFiltering, "no dataset records resolved from " + path);
    }
    return out;
}

void save_dataset(const LabeledDataset& data, std::ostream& out) {
    out << "label,key,vector\n";
    for (const LabeledRecord& r : data.records) {
        out << csv_field(r.label) << ',' << csv_field(r.key) << ',';
        for (std::size_t i = 0; i < r.vector.size(); ++i) {
            if (i > 0) out << ' ';
            out << format_float8(r.vector[i]);
        }
        out << '\n';
    }
}

} // namespace ose
