#include "ose/compose.hpp"

#include <algorithm>
#include <cctype>

#include "ose/errors.hpp"
#include "ose/log.hpp"
#include "ose/synthesis.hpp"

namespace ose {

namespace {

// Byte length of the whitespace sequence at text[i], or 0. Covers ASCII
// whitespace and the common Unicode space code points seen in corpora
// (NBSP, U+2000..U+200A, line/paragraph separators, NNBSP, U+205F, U+3000).
std::size_t whitespace_len(const std::string& text, std::size_t i) {
    const unsigned char c0 = static_cast<unsigned char>(text[i]);
    if (std::isspace(c0)) return 1;
    const std::size_t left = text.size() - i;
    auto byte = [&](std::size_t off) { return static_cast<unsigned char>(text[i + off]); };
    if (left >= 2 && c0 == 0xC2 && byte(1) == 0xA0) return 2;
    if (left >= 3 && c0 == 0xE2 && byte(1) == 0x80) {
        const unsigned char b2 = byte(2);
        if ((b2 >= 0x80 && b2 <= 0x8A) || b2 == 0xA8 || b2 == 0xA9 || b2 == 0xAF) return 3;
    }
    if (left >= 3 && c0 == 0xE2 && byte(1) == 0x81 && byte(2) == 0x9F) return 3;
    if (left >= 3 && c0 == 0xE3 && byte(1) == 0x80 && byte(2) == 0x80) return 3;
    return 0;
}

std::string strip_punct(const std::string& token) {
    std::size_t b = 0;
    std::size_t e = token.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(token[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(token[e - 1]))) --e;
    return token.substr(b, e - b);
}

} // namespace

const char* to_string(ComposeMethod m) noexcept {
    return m == ComposeMethod::kBov ? "bov" : "ose";
}

Vec compose_bov(const std::vector<Vec>& vectors) {
    if (vectors.empty()) {
        throw Error(ErrorKind::kEmptyInput, "no vectors to average");
    }
    const std::size_t dim = vectors.front().size();
    Vec mean(dim, 0.0);
    for (const Vec& v : vectors) {
        if (v.size() != dim) {
            throw Error(ErrorKind::kDimMismatch, "input vectors have mixed dimensions");
        }
        axpy(mean, 1.0 / static_cast<double>(vectors.size()), v);
    }
    return mean;
}

std::pair<Vec, CompositionReport> compose_sentence(const EmbeddingTable& table,
                                                   const CompositionRequest& request) {
    CompositionReport report;
    report.token_count = request.tokens.size();
    report.method_used = request.method;

    std::vector<std::pair<std::string, const Vec*>> resolved;
    resolved.reserve(request.tokens.size());
    for (const std::string& token : request.tokens) {
        const Vec* v = table.find(token);
        if (v == nullptr) {
            if (request.oov_policy == OovPolicy::kError) {
                throw Error(ErrorKind::kOovToken, "token '" + token + "' not in vocabulary");
            }
            ++report.oov_count;
            continue;
        }
        if (norm(*v) == 0.0) {
            if (request.oov_policy == OovPolicy::kError) {
                throw Error(ErrorKind::kZeroVector, "token '" + token + "' has a zero vector");
            }
            ++report.zero_count;
            continue;
        }
        resolved.emplace_back(token, v);
    }
    if (resolved.empty()) {
        throw Error(ErrorKind::kEmptyAfterFiltering, "no usable tokens remain in the sentence");
    }

    // Canonical order: composition is order-free mathematically, and a fixed
    // order keeps the floating-point result identical across permutations.
    std::sort(resolved.begin(), resolved.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Vec> vectors;
    vectors.reserve(resolved.size());
    for (const auto& [token, v] : resolved) vectors.push_back(*v);

    if (request.method == ComposeMethod::kBov) {
        return {compose_bov(vectors), report};
    }
    try {
        return {ose(vectors, request.rank_tol).solution, report};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::kInfeasible && request.fallback == Fallback::kBov) {
            log::warn(std::string(e.what()) + "; falling back to the mean");
            report.method_used = ComposeMethod::kBov;
            report.fallback_applied = true;
            return {compose_bov(vectors), report};
        }
        throw;
    }
}

std::vector<std::string> tokenize(const std::string& text, bool lowercase) {
    std::vector<std::string> out;
    std::string current;
    std::size_t i = 0;
    auto flush = [&] {
        if (current.empty()) return;
        std::string token = strip_punct(current);
        current.clear();
        if (token.empty()) return;
        if (lowercase) {
            for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        out.push_back(std::move(token));
    };
    while (i < text.size()) {
        const std::size_t ws = whitespace_len(text, i);
        if (ws > 0) {
            flush();
            i += ws;
        } else {
            current.push_back(text[i]);
            ++i;
        }
    }
    flush();
    return out;
}

} // namespace ose
