#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ose/embedding.hpp"
#include "ose/linalg.hpp"

namespace ose {

enum class ComposeMethod { kBov, kOse };
enum class OovPolicy { kSkip, kError };
enum class Fallback { kNone, kBov };

const char* to_string(ComposeMethod m) noexcept;

struct CompositionRequest {
    std::vector<std::string> tokens;
    ComposeMethod method = ComposeMethod::kOse;
    OovPolicy oov_policy = OovPolicy::kSkip;
    Fallback fallback = Fallback::kNone;
    double rank_tol = kDefaultRankTol;
};

struct CompositionReport {
    std::size_t token_count = 0;  // tokens in the request
    std::size_t oov_count = 0;    // tokens missing from the table
    std::size_t zero_count = 0;   // tokens whose stored vector is zero
    ComposeMethod method_used = ComposeMethod::kOse;
    bool fallback_applied = false;
};

/// Arithmetic mean of the raw vectors; duplicates weigh in as given.
Vec compose_bov(const std::vector<Vec>& vectors);

/// Resolves tokens through the table and composes one sentence vector by
/// the requested method. Resolved tokens are put in a canonical order
/// first, so any permutation of the same tokens yields a bit-identical
/// result. OOV and zero-vector tokens are skipped (and counted) or raise,
/// per policy; an infeasible equidistant synthesis falls back to the mean
/// when the request allows it.
std::pair<Vec, CompositionReport> compose_sentence(const EmbeddingTable& table,
                                                   const CompositionRequest& request);

/// Splits on whitespace (ASCII plus common Unicode spaces), strips
/// leading/trailing ASCII punctuation from each token, drops empties,
/// and optionally lowercases ASCII letters. Interior punctuation stays.
std::vector<std::string> tokenize(const std::string& text, bool lowercase);

} // namespace ose
