#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ose/augment.hpp"
#include "ose/compose.hpp"
#include "ose/distance_solver.hpp"
#include "ose/embedding.hpp"
#include "ose/errors.hpp"
#include "ose/eval.hpp"
#include "ose/log.hpp"
#include "ose/synthesis.hpp"
#include "ose/text.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string embeddings;
    std::string input;
    std::string output;
    std::string method = "ose";
    std::string format = "csv";
    std::string fallback = "none";
    std::size_t k = 5;
    std::size_t big_k = 1;
    std::size_t knn = 5;
    std::uint64_t seed = 0;
    double rank_tol = ose::kDefaultRankTol;
    bool lowercase = false;
    bool strict = false;
    std::size_t top_k = 5;
    std::size_t min_class_size = 100;
    double split_fraction = 0.5;
};

ose::ComposeMethod parse_method(const std::string& name) {
    return name == "bov" ? ose::ComposeMethod::kBov : ose::ComposeMethod::kOse;
}

ose::Fallback parse_fallback(const std::string& name) {
    return name == "bov" ? ose::Fallback::kBov : ose::Fallback::kNone;
}

// Routes command output to --output or stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw ose::Error(ose::ErrorKind::kIoError, "cannot open output file: " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ose::Error(ose::ErrorKind::kIoError, "cannot open input file: " + path);
    }
    return in;
}

json vec_to_json(const ose::Vec& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(ose::round8(x));
    return arr;
}

void write_vector_csv(std::ostream& out, const ose::Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out << ' ';
        out << ose::format_float8(v[i]);
    }
    out << '\n';
}

json report_to_json(const ose::CompositionReport& report) {
    json j;
    j["token_count"] = report.token_count;
    j["oov_count"] = report.oov_count;
    j["zero_count"] = report.zero_count;
    j["method"] = ose::to_string(report.method_used);
    j["fallback_applied"] = report.fallback_applied;
    return j;
}

void write_compose_line(std::ostream& out, const std::string& format, const ose::Vec& v,
                        const ose::CompositionReport& report, std::size_t line_no) {
    if (format == "json") {
        json j = report_to_json(report);
        j["vector"] = vec_to_json(v);
        out << j.dump() << '\n';
    } else {
        write_vector_csv(out, v);
        ose::log::info("line " + std::to_string(line_no) + ": tokens=" +
                       std::to_string(report.token_count) + " oov=" +
                       std::to_string(report.oov_count) + " method=" +
                       ose::to_string(report.method_used));
    }
}

// Handles one failed sentence: logs, emits a placeholder line (alignment
// with the input is kept), or aborts the run under --strict.
bool handle_line_failure(std::ostream& out, const Options& opt, std::size_t line_no,
                         const ose::Error& e) {
    if (opt.strict) {
        ose::log::error("line " + std::to_string(line_no) + ": " + e.what());
        return false;
    }
    ose::log::warn("line " + std::to_string(line_no) + ": " + e.what());
    if (opt.format == "json") {
        json j;
        j["error"] = e.what();
        out << j.dump() << '\n';
    } else {
        out << '\n';
    }
    return true;
}

// Sentences given as precomputed token vectors: blank-line separated
// blocks of "<token> <f1> ... <fn>" lines (the contextual-vector path).
int compose_blocks(const Options& opt, std::ostream& out) {
    std::ifstream in = open_input(opt.input);
    const ose::ComposeMethod method = parse_method(opt.method);
    const ose::Fallback fallback = parse_fallback(opt.fallback);

    std::vector<ose::Vec> block;
    std::size_t block_no = 0;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;

    auto flush = [&]() -> bool {
        if (block.empty()) return true;
        ++block_no;
        ose::CompositionReport report;
        report.token_count = block.size();
        report.method_used = method;
        try {
            ose::Vec v;
            if (method == ose::ComposeMethod::kBov) {
                v = ose::compose_bov(block);
            } else {
                try {
                    v = ose::ose(block, opt.rank_tol).solution;
                } catch (const ose::Error& e) {
                    if (e.kind() != ose::ErrorKind::kInfeasible ||
                        fallback != ose::Fallback::kBov) {
                        throw;
                    }
                    report.method_used = ose::ComposeMethod::kBov;
                    report.fallback_applied = true;
                    v = ose::compose_bov(block);
                }
            }
            write_compose_line(out, opt.format, v, report, block_no);
        } catch (const ose::Error& e) {
            if (!handle_line_failure(out, opt, block_no, e)) return false;
        }
        block.clear();
        return true;
    };

    while (std::getline(in, line)) {
        ++line_no;
        ose::strip_cr(line);
        if (ose::trim(line).empty()) {
            if (!flush()) return 2;
            continue;
        }
        const std::vector<std::string> fields = ose::split_whitespace(line);
        if (fields.size() < 2) {
            throw ose::Error(ose::ErrorKind::kParseError,
                             opt.input + ":" + std::to_string(line_no) +
                                 ": expected '<token> <components>'");
        }
        ose::Vec v;
        v.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            double value = 0.0;
            if (!ose::parse_double(fields[i], value)) {
                throw ose::Error(ose::ErrorKind::kParseError,
                                 opt.input + ":" + std::to_string(line_no) + ": bad component '" +
                                     fields[i] + "'");
            }
            v.push_back(value);
        }
        if (dim == 0) dim = v.size();
        if (v.size() != dim) {
            throw ose::Error(ose::ErrorKind::kInconsistentDim,
                             opt.input + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(dim) + " components, got " +
                                 std::to_string(v.size()));
        }
        block.push_back(std::move(v));
    }
    if (!flush()) return 2;
    return 0;
}

int cmd_compose(const Options& opt) {
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    if (opt.embeddings.empty()) {
        return compose_blocks(opt, out);
    }

    const ose::EmbeddingTable table = ose::load_embeddings(opt.embeddings, 0, opt.lowercase);
    std::ifstream in = open_input(opt.input);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ose::strip_cr(line);
        ose::CompositionRequest request;
        request.tokens = ose::tokenize(line, opt.lowercase);
        request.method = parse_method(opt.method);
        request.fallback = parse_fallback(opt.fallback);
        request.rank_tol = opt.rank_tol;
        try {
            const auto [v, report] = ose::compose_sentence(table, request);
            write_compose_line(out, opt.format, v, report, line_no);
        } catch (const ose::Error& e) {
            if (!handle_line_failure(out, opt, line_no, e)) return 2;
        }
    }
    return 0;
}

int cmd_retrieve(const Options& opt) {
    const ose::EmbeddingTable table = ose::load_embeddings(opt.embeddings, 0, opt.lowercase);
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    std::ifstream in = open_input(opt.input);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ose::strip_cr(line);
        if (ose::trim(line).empty()) continue;
        const std::vector<std::string> fields = ose::split_whitespace(line);
        ose::Vec x;
        x.reserve(fields.size());
        for (const std::string& f : fields) {
            double value = 0.0;
            if (!ose::parse_double(f, value)) {
                throw ose::Error(ose::ErrorKind::kParseError,
                                 opt.input + ":" + std::to_string(line_no) + ": bad component '" +
                                     f + "'");
            }
            x.push_back(value);
        }
        if (x.size() != table.dim) {
            throw ose::Error(ose::ErrorKind::kDimMismatch,
                             opt.input + ":" + std::to_string(line_no) + ": query has " +
                                 std::to_string(x.size()) + " components, table dimension is " +
                                 std::to_string(table.dim));
        }
        const auto results = ose::retrieve(table, x, opt.top_k);
        if (opt.format == "json") {
            json arr = json::array();
            for (const auto& [token, distance] : results) {
                json entry;
                entry["token"] = token;
                entry["distance"] = ose::round8(distance);
                arr.push_back(entry);
            }
            json j;
            j["results"] = arr;
            out << j.dump() << '\n';
        } else {
            for (std::size_t i = 0; i < results.size(); ++i) {
                if (i > 0) out << ' ';
                out << results[i].first << ' ' << ose::format_float8(results[i].second);
            }
            out << '\n';
        }
    }
    return 0;
}

int cmd_solve(const Options& opt) {
    std::ifstream in = open_input(opt.input);
    json j_in;
    try {
        in >> j_in;
    } catch (const json::exception& e) {
        throw ose::Error(ose::ErrorKind::kParseError,
                         opt.input + ": invalid JSON: " + std::string(e.what()));
    }

    ose::DistanceSpec spec;
    try {
        for (const auto& row : j_in.at("vectors")) {
            spec.vectors.push_back(row.get<ose::Vec>());
        }
        spec.targets = j_in.at("targets").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ose::Error(ose::ErrorKind::kParseError,
                         opt.input + ": expected {\"vectors\": [[...]], \"targets\": [...]}: " +
                             std::string(e.what()));
    }

    Sink sink(opt.output);
    json j_out;
    int rc = 0;

    const ose::DistanceSpec reduced = ose::reduce_dependent_rows(spec, opt.rank_tol);
    const ose::FeasibleInterval interval =
        ose::equal_distance_interval(reduced.vectors, opt.rank_tol);
    j_out["interval"]["lower"] = ose::round8(interval.lower);
    j_out["interval"]["upper"] = ose::round8(interval.upper);
    j_out["gram_norm"] = ose::round8(interval.gram_norm);

    try {
        j_out["solution"] = vec_to_json(ose::solve_at_distances(spec, opt.rank_tol));
        j_out["feasible"] = true;
    } catch (const ose::Error& e) {
        if (e.kind() != ose::ErrorKind::kInfeasible &&
            e.kind() != ose::ErrorKind::kNullspaceEmpty) {
            throw;
        }
        ose::log::warn(e.what());
        j_out["solution"] = nullptr;
        j_out["feasible"] = false;
        rc = 2;
    }
    sink.stream() << j_out.dump() << '\n';
    return rc;
}

// Word datasets are CSV "label,word"; sentence datasets are TSV
// "label<TAB>sentence". The first data line decides.
bool sniff_sentence_mode(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        ose::strip_cr(line);
        if (ose::trim(line).empty()) continue;
        if (first) {
            first = false;
            const std::string lowered = ose::ascii_lower(ose::trim(line));
            if (lowered == "label,word" || lowered == "label\tsentence") {
                return lowered == "label\tsentence";
            }
        }
        return line.find('\t') != std::string::npos;
    }
    throw ose::Error(ose::ErrorKind::kEmptyFile, "no dataset records in " + path);
}

ose::LabeledDataset load_dataset(const Options& opt, const ose::EmbeddingTable& table) {
    if (sniff_sentence_mode(opt.input)) {
        return ose::load_sentence_dataset(opt.input, table, parse_method(opt.method),
                                          parse_fallback(opt.fallback), opt.lowercase,
                                          opt.rank_tol);
    }
    return ose::load_word_dataset(opt.input, table, opt.lowercase);
}

json config_echo_json(const ose::EvalReport& report) {
    json j = json::object();
    for (const auto& [key, value] : report.config_echo) j[key] = value;
    return j;
}

json eval_report_json(const ose::EvalReport& report) {
    json j;
    j["accuracy"] = ose::round8(report.accuracy);
    j["n_test"] = report.n_test;
    json per_class = json::object();
    for (const auto& [label, acc] : report.per_class_accuracy) per_class[label] = ose::round8(acc);
    j["per_class_accuracy"] = per_class;
    j["config"] = config_echo_json(report);
    return j;
}

int cmd_eval(const Options& opt) {
    const ose::EmbeddingTable table = ose::load_embeddings(opt.embeddings, 0, opt.lowercase);
    const bool sentence_mode = sniff_sentence_mode(opt.input);
    ose::LabeledDataset data = load_dataset(opt, table);
    data = ose::preprocess_dataset(data, opt.min_class_size);
    if (data.records.empty()) {
        throw ose::Error(ose::ErrorKind::kEmptyAfterFiltering,
                         "no classes reach " + std::to_string(opt.min_class_size) + " records");
    }

    auto [train, test] = ose::split_dataset(data, opt.split_fraction, opt.seed);
    const bool augmented = opt.big_k > 0;
    if (augmented) {
        ose::AugmentationConfig config;
        config.k = opt.k;
        config.draws = opt.big_k;
        config.method = parse_method(opt.method);
        config.seed = opt.seed;
        config.rank_tol = opt.rank_tol;
        train = ose::augment(train, config);
    }

    const ose::EvalReport knn = ose::run_benchmark(train, test, ose::Classifier::kKnn, opt.knn);
    const ose::EvalReport centroid =
        ose::run_benchmark(train, test, ose::Classifier::kNearestCentroid);

    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    if (opt.format == "json") {
        json config;
        config["mode"] = sentence_mode ? "sentence" : "word";
        config["method"] = opt.method;
        config["augmented"] = augmented;
        config["k"] = opt.k;
        config["K"] = opt.big_k;
        config["knn"] = opt.knn;
        config["seed"] = opt.seed;
        config["split_fraction"] = ose::round8(opt.split_fraction);
        config["min_class_size"] = opt.min_class_size;
        config["rank_tol"] = ose::round8(opt.rank_tol);
        config["rng"] = ose::kRngAlgorithm;
        json j;
        j["config"] = config;
        j["reports"]["knn"] = eval_report_json(knn);
        j["reports"]["nearest_centroid"] = eval_report_json(centroid);
        out << j.dump() << '\n';
    } else {
        out << "classifier,accuracy,n_test\n";
        out << "knn," << ose::format_float8(knn.accuracy) << ',' << knn.n_test << '\n';
        out << "nearest_centroid," << ose::format_float8(centroid.accuracy) << ','
            << centroid.n_test << '\n';
    }
    return 0;
}

int cmd_augment(const Options& opt) {
    const ose::EmbeddingTable table = ose::load_embeddings(opt.embeddings, 0, opt.lowercase);
    ose::LabeledDataset data = load_dataset(opt, table);
    data = ose::preprocess_dataset(data, opt.min_class_size);
    if (data.records.empty()) {
        throw ose::Error(ose::ErrorKind::kEmptyAfterFiltering,
                         "no classes reach " + std::to_string(opt.min_class_size) + " records");
    }

    ose::AugmentationConfig config;
    config.k = opt.k;
    config.draws = opt.big_k;
    config.method = parse_method(opt.method);
    config.seed = opt.seed;
    config.rank_tol = opt.rank_tol;
    const ose::LabeledDataset augmented = ose::augment(data, config);

    std::ofstream out(opt.output);
    if (!out) {
        throw ose::Error(ose::ErrorKind::kIoError, "cannot open output file: " + opt.output);
    }
    if (opt.format == "json") {
        for (const ose::LabeledRecord& r : augmented.records) {
            json j;
            j["label"] = r.label;
            j["key"] = r.key;
            j["vector"] = vec_to_json(r.vector);
            out << j.dump() << '\n';
        }
    } else {
        ose::save_dataset(augmented, out);
    }

    json manifest;
    manifest["command"] = "augment";
    manifest["embeddings"] = opt.embeddings;
    manifest["input"] = opt.input;
    manifest["output"] = opt.output;
    manifest["format"] = opt.format;
    manifest["method"] = opt.method;
    manifest["k"] = opt.k;
    manifest["K"] = opt.big_k;
    manifest["seed"] = opt.seed;
    manifest["rank_tol"] = ose::round8(opt.rank_tol);
    manifest["min_class_size"] = opt.min_class_size;
    manifest["lowercase"] = opt.lowercase;
    manifest["rng"] = ose::kRngAlgorithm;
    manifest["records_in"] = data.size();
    manifest["records_out"] = augmented.size();
    manifest["classes"] = data.labels().size();
    std::ofstream manifest_out(opt.output + ".manifest.json");
    if (!manifest_out) {
        throw ose::Error(ose::ErrorKind::kIoError,
                         "cannot open manifest file: " + opt.output + ".manifest.json");
    }
    manifest_out << manifest.dump(2) << '\n';
    return 0;
}

int cmd_inspect(const Options& opt) {
    const ose::EmbeddingTable table = ose::load_embeddings(opt.embeddings, 0, opt.lowercase);
    // Stats go to stdout; --output is reserved for the re-serialized table.
    std::ostream& out = std::cout;
    if (opt.format == "json") {
        json j;
        j["entries"] = table.size();
        j["dim"] = table.dim;
        j["zero_vectors"] = table.zero_vector_count;
        j["source"] = table.source;
        out << j.dump() << '\n';
    } else {
        out << "entries,dim,zero_vectors\n";
        out << table.size() << ',' << table.dim << ',' << table.zero_vector_count << '\n';
    }
    if (!opt.output.empty()) {
        std::ofstream dump(opt.output);
        if (!dump) {
            throw ose::Error(ose::ErrorKind::kIoError, "cannot open output file: " + opt.output);
        }
        ose::save_embeddings(table, dump);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equidistant embedding synthesis toolkit"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* sub, bool with_embeddings, bool embeddings_required) {
        if (with_embeddings) {
            auto* o = sub->add_option("--embeddings", opt.embeddings,
                                      "embedding file (optional header '<count> <dim>')");
            if (embeddings_required) o->required();
        }
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--lowercase", opt.lowercase, "fold ASCII case on load/tokenize");
    };

    CLI::App* compose = app.add_subcommand(
        "compose", "build one vector per input sentence (mean or equidistant synthesis)");
    add_common(compose, true, false);
    compose->add_option("--input", opt.input, "sentence file, or token-vector blocks")->required();
    compose->add_option("--output", opt.output, "output path (default stdout)");
    compose->add_option("--method", opt.method, "composition method")
        ->check(CLI::IsMember({"ose", "bov"}));
    compose->add_option("--fallback", opt.fallback, "fallback when synthesis is infeasible")
        ->check(CLI::IsMember({"none", "bov"}));
    compose->add_option("--rank-tol", opt.rank_tol, "rank-decision tolerance");
    compose->add_flag("--strict", opt.strict, "stop with exit code 2 on the first failed line");

    CLI::App* augment = app.add_subcommand("augment", "append synthesized per-class records");
    add_common(augment, true, true);
    augment->add_option("--input", opt.input, "dataset file (CSV words or TSV sentences)")
        ->required();
    augment->add_option("--output", opt.output, "augmented dataset path")->required();
    augment->add_option("--method", opt.method, "synthesis method")
        ->check(CLI::IsMember({"ose", "bov"}));
    augment->add_option("--k", opt.k, "records seeded into each synthesis");
    augment->add_option("--K", opt.big_k, "syntheses added per class");
    augment->add_option("--seed", opt.seed, "RNG seed");
    augment->add_option("--rank-tol", opt.rank_tol, "rank-decision tolerance");
    augment->add_option("--min-class-size", opt.min_class_size,
                        "drop classes with fewer records");
    augment->add_option("--fallback", opt.fallback, "fallback for sentence composition")
        ->check(CLI::IsMember({"none", "bov"}));

    CLI::App* solve = app.add_subcommand(
        "solve", "find a unit vector at prescribed cosine distances from given vectors");
    solve->add_option("--input", opt.input, "JSON file {\"vectors\": [[...]], \"targets\": [...]}")
        ->required();
    solve->add_option("--output", opt.output, "output path (default stdout)");
    solve->add_option("--rank-tol", opt.rank_tol, "rank-decision tolerance");

    CLI::App* retrieve =
        app.add_subcommand("retrieve", "nearest vocabulary tokens for query vectors");
    add_common(retrieve, true, true);
    retrieve->add_option("--input", opt.input, "query vectors, one per line")->required();
    retrieve->add_option("--output", opt.output, "output path (default stdout)");
    retrieve->add_option("--top-k", opt.top_k, "number of results per query")
        ->check(CLI::PositiveNumber);

    CLI::App* eval =
        app.add_subcommand("eval", "split/augment/classify benchmark over a labeled dataset");
    add_common(eval, true, true);
    eval->add_option("--input", opt.input, "dataset file (CSV words or TSV sentences)")
        ->required();
    eval->add_option("--output", opt.output, "output path (default stdout)");
    eval->add_option("--method", opt.method, "augmentation/composition method")
        ->check(CLI::IsMember({"ose", "bov"}));
    eval->add_option("--k", opt.k, "records seeded into each synthesis");
    eval->add_option("--K", opt.big_k, "syntheses added per class (0 disables augmentation)");
    eval->add_option("--knn", opt.knn, "neighbor count for the KNN classifier")
        ->check(CLI::PositiveNumber);
    eval->add_option("--seed", opt.seed, "RNG seed");
    eval->add_option("--split-fraction", opt.split_fraction, "train share of the split");
    eval->add_option("--min-class-size", opt.min_class_size, "drop classes with fewer records");
    eval->add_option("--rank-tol", opt.rank_tol, "rank-decision tolerance");
    eval->add_option("--fallback", opt.fallback, "fallback for sentence composition")
        ->check(CLI::IsMember({"none", "bov"}));

    CLI::App* inspect = app.add_subcommand("inspect", "embedding table stats and re-serialization");
    add_common(inspect, true, true);
    inspect->add_option("--output", opt.output, "re-serialize the table to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (compose->parsed()) return cmd_compose(opt);
        if (augment->parsed()) return cmd_augment(opt);
        if (solve->parsed()) return cmd_solve(opt);
        if (retrieve->parsed()) return cmd_retrieve(opt);
        if (eval->parsed()) return cmd_eval(opt);
        if (inspect->parsed()) return cmd_inspect(opt);
    } catch (const ose::Error& e) {
        ose::log::error(e.what());
        return e.is_io() ? 1 : 2;
    } catch (const std::exception& e) {
        ose::log::error(e.what());
        return 1;
    }
    return 0;
}
