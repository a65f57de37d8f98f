#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ose/linalg.hpp"

namespace ose {

/// Immutable token -> vector table in file order. Zero vectors are kept
/// (so lookups still resolve) but never act as retrieval candidates,
/// since cosine distance is undefined for them.
struct EmbeddingTable {
    std::vector<std::string> tokens;
    std::vector<Vec> vectors;  // parallel to tokens
    std::unordered_map<std::string, std::size_t> index;
    std::size_t dim = 0;
    std::string source;
    std::size_t zero_vector_count = 0;

    std::size_t size() const noexcept { return tokens.size(); }

    /// Pointer to the stored vector, or nullptr when the token is absent.
    const Vec* find(const std::string& token) const {
        const auto it = index.find(token);
        return it == index.end() ? nullptr : &vectors[it->second];
    }
};

/// Parses the common word-embedding text export: an optional first line
/// "<count> <dim>", then one "<token> <f1> ... <fn>" line per entry.
/// Duplicate tokens keep their first occurrence; limit = 0 means no limit;
/// lowercase folds ASCII case at load. LF and CRLF both accepted.
EmbeddingTable load_embeddings(const std::string& path, std::size_t limit = 0,
                               bool lowercase = false);

/// Writes the canonical form: "<count> <dim>" header, then entries in
/// table order with 8-significant-digit components. Reloading reproduces
/// the table (and re-saving is byte-identical).
void save_embeddings(const EmbeddingTable& table, std::ostream& out);

/// The top_k tokens nearest to x in cosine distance, ascending; exact
/// linear scan. Ties broken by token. Zero-vector entries are skipped.
std::vector<std::pair<std::string, double>> retrieve(const EmbeddingTable& table, const Vec& x,
                                                     std::size_t top_k);

/// Label of the partition cell containing x: the nearest token.
std::string classify_by_partition(const EmbeddingTable& table, const Vec& x);

} // namespace ose
