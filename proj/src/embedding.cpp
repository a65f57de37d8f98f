#include "ose/embedding.hpp"

#include <algorithm>
#include <fstream>

#include "ose/errors.hpp"
#include "ose/log.hpp"
#include "ose/text.hpp"

namespace ose {

namespace {

bool looks_like_header(const std::vector<std::string>& fields) {
    if (fields.size() != 2) return false;
    unsigned long long a = 0, b = 0;
    return parse_uint(fields[0], a) && parse_uint(fields[1], b);
}

} // namespace

EmbeddingTable load_embeddings(const std::string& path, std::size_t limit, bool lowercase) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kIoError, "cannot open embedding file: " + path);
    }

    EmbeddingTable table;
    table.source = path;

    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_whitespace(line);
        if (fields.empty()) continue;

        if (first_content_line) {
            first_content_line = false;
            // word2vec-style exports open with "<count> <dim>".
            if (looks_like_header(fields)) continue;
        }

        if (fields.size() < 2) {
            throw Error(ErrorKind::kParseError,
                        path + ":" + std::to_string(line_no) + ": no vector components");
        }
        Vec v;
        v.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            double value = 0.0;
            if (!parse_double(fields[i], value)) {
                throw Error(ErrorKind::kParseError, path + ":" + std::to_string(line_no) +
                                                        ": bad component '" + fields[i] + "'");
            }
            v.push_back(value);
        }
        if (table.dim == 0) {
            table.dim = v.size();
        } else if (v.size() != table.dim) {
            throw Error(ErrorKind::kInconsistentDim,
                        path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.dim) + " components, got " +
                            std::to_string(v.size()));
        }

        std::string token = lowercase ? ascii_lower(fields[0]) : fields[0];
        if (table.index.count(token) != 0) {
            log::debug("duplicate token '" + token + "' at line " + std::to_string(line_no) +
                       " ignored");
            continue;
        }
        if (norm(v) == 0.0) ++table.zero_vector_count;
        table.index.emplace(token, table.tokens.size());
        table.tokens.push_back(std::move(token));
        table.vectors.push_back(std::move(v));
        if (limit != 0 && table.tokens.size() >= limit) break;
    }

    if (table.tokens.empty()) {
        throw Error(ErrorKind::kEmptyFile, "no embedding entries in " + path);
    }
    if (table.zero_vector_count > 0) {
        log::warn(std::to_string(table.zero_vector_count) + " zero vector(s) in " + path +
                  " excluded from retrieval");
    }
    return table;
}

void save_embeddings(const EmbeddingTable& table, std::ostream& out) {
    out << table.size() << ' ' << table.dim << '\n';
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << table.tokens[i];
        for (double v : table.vectors[i]) out << ' ' << format_float8(v);
        out << '\n';
    }
}

std::vector<std::pair<std::string, double>> retrieve(const EmbeddingTable& table, const Vec& x,
                                                     std::size_t top_k) {
    if (top_k < 1) {
        throw Error(ErrorKind::kInvalidArgument, "top_k must be at least 1");
    }
    if (table.size() == 0) {
        throw Error(ErrorKind::kEmptyTable, "embedding table has no entries");
    }
    if (norm(x) == 0.0) {
        throw Error(ErrorKind::kZeroVector, "query vector is zero");
    }

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (norm(table.vectors[i]) == 0.0) continue;
        scored.emplace_back(cosine_distance(x, table.vectors[i]), i);
    }
    if (scored.empty()) {
        throw Error(ErrorKind::kEmptyTable, "every table entry is a zero vector");
    }
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return table.tokens[a.second] < table.tokens[b.second];
    });

    const std::size_t k = std::min(top_k, scored.size());
    std::vector<std::pair<std::string, double>> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.emplace_back(table.tokens[scored[i].second], scored[i].first);
    }
    return out;
}

std::string classify_by_partition(const EmbeddingTable& table, const Vec& x) {
    return retrieve(table, x, 1).front().first;
}

} // namespace ose
