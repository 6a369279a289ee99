#pragma once

/**
 * @file operators.hpp
 * @brief Log-convexity / log-concavity operators, their iteration, strong
 *        q-log-convexity, and triangle transforms and convolutions.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "families.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "positivity.hpp"

namespace lcsm {

/// c_k = a_k a_{k+2} - a_{k+1}^2 for k = 0..len-3. Never pads.
inline std::vector<QPoly> op_logconvex(std::span<const QPoly> seq) {
    if (seq.size() < 3) throw error(errc::too_short, "log-convexity operator needs at least 3 terms");
    std::vector<QPoly> out;
    out.reserve(seq.size() - 2);
    for (std::size_t k = 0; k + 2 < seq.size(); ++k) out.push_back(seq[k] * seq[k + 2] - seq[k + 1] * seq[k + 1]);
    return out;
}

inline std::vector<QPoly> op_logconvex(const std::vector<QPoly>& seq) {
    return op_logconvex(std::span<const QPoly>(seq));
}

/// b_0 = a_0^2, b_{k+1} = a_{k+1}^2 - a_k a_{k+2}, with a_j = 0 past the end.
/// The output has the same length as the input.
inline std::vector<QPoly> op_logconcave(std::span<const QPoly> seq) {
    std::vector<QPoly> out;
    if (seq.empty()) return out;
    out.reserve(seq.size());
    out.push_back(seq[0] * seq[0]);
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        QPoly b = seq[k + 1] * seq[k + 1];
        if (k + 2 < seq.size()) b -= seq[k] * seq[k + 2];
        out.push_back(std::move(b));
    }
    return out;
}

inline std::vector<QPoly> op_logconcave(const std::vector<QPoly>& seq) {
    return op_logconcave(std::span<const QPoly>(seq));
}

/// Strictly positive: a nonzero q-nonnegative polynomial (for constants, > 0).
inline bool is_positive(const QPoly& p) { return !p.is_zero() && is_nonneg(p); }

enum class positivity_mode { nonnegative, strict };

struct level_report {
    std::size_t level = 0;  // i for L^i
    std::vector<QPoly> terms;
    bool nonnegative = true;
    bool strictly_positive = true;
    std::optional<std::size_t> first_negative;     // first index that is not q-nonnegative
    std::optional<std::size_t> first_nonpositive;  // first index that is zero or not q-nonnegative

    bool passed(positivity_mode mode) const { return mode == positivity_mode::strict ? strictly_positive : nonnegative; }
};

struct iteration_report {
    std::size_t depth = 0;
    std::size_t input_terms = 0;
    positivity_mode mode = positivity_mode::nonnegative;
    std::vector<level_report> levels;  // L^1 .. L^depth

    bool passed() const {
        for (const auto& l : levels)
            if (!l.passed(mode)) return false;
        return true;
    }

    std::string verified() const {
        return "verified to depth " + std::to_string(depth) + " on " + std::to_string(input_terms) + " terms";
    }
};

/// Applies the log-convexity operator depth times; level i keeps
/// input_terms - 2i terms.
inline iteration_report iterate_logconvex(std::span<const QPoly> seq, std::size_t depth,
                                          positivity_mode mode = positivity_mode::nonnegative) {
    if (depth == 0) throw error(errc::invalid_params, "depth must be positive");
    if (seq.size() < 2 * depth + 1)
        throw error(errc::insufficient_terms, "depth " + std::to_string(depth) + " needs " +
                                                  std::to_string(2 * depth + 1) + " terms, got " +
                                                  std::to_string(seq.size()));
    iteration_report rep;
    rep.depth = depth;
    rep.input_terms = seq.size();
    rep.mode = mode;
    std::vector<QPoly> current(seq.begin(), seq.end());
    for (std::size_t i = 1; i <= depth; ++i) {
        level_report level;
        level.level = i;
        level.terms = op_logconvex(current);
        for (std::size_t k = 0; k < level.terms.size(); ++k) {
            const QPoly& t = level.terms[k];
            if (!is_nonneg(t) && !level.first_negative) level.first_negative = k;
            if (!is_positive(t) && !level.first_nonpositive) level.first_nonpositive = k;
        }
        level.nonnegative = !level.first_negative;
        level.strictly_positive = !level.first_nonpositive;
        current = level.terms;
        rep.levels.push_back(std::move(level));
    }
    return rep;
}

inline iteration_report iterate_logconvex(const std::vector<QPoly>& seq, std::size_t depth,
                                          positivity_mode mode = positivity_mode::nonnegative) {
    return iterate_logconvex(std::span<const QPoly>(seq), depth, mode);
}

/// Same report for the log-concavity operator. Its levels keep the input
/// length, because terms past the end count as zero.
inline iteration_report iterate_logconcave(std::span<const QPoly> seq, std::size_t depth,
                                           positivity_mode mode = positivity_mode::nonnegative) {
    if (depth == 0) throw error(errc::invalid_params, "depth must be positive");
    if (seq.empty()) throw error(errc::insufficient_terms, "empty sequence");
    iteration_report rep;
    rep.depth = depth;
    rep.input_terms = seq.size();
    rep.mode = mode;
    std::vector<QPoly> current(seq.begin(), seq.end());
    for (std::size_t i = 1; i <= depth; ++i) {
        level_report level;
        level.level = i;
        level.terms = op_logconcave(current);
        for (std::size_t k = 0; k < level.terms.size(); ++k) {
            if (!is_nonneg(level.terms[k]) && !level.first_negative) level.first_negative = k;
            if (!is_positive(level.terms[k]) && !level.first_nonpositive) level.first_nonpositive = k;
        }
        level.nonnegative = !level.first_negative;
        level.strictly_positive = !level.first_nonpositive;
        current = level.terms;
        rep.levels.push_back(std::move(level));
    }
    return rep;
}

inline iteration_report iterate_logconcave(const std::vector<QPoly>& seq, std::size_t depth,
                                           positivity_mode mode = positivity_mode::nonnegative) {
    return iterate_logconcave(std::span<const QPoly>(seq), depth, mode);
}

/// m-log-convexity certificate summarizing an iteration report.
inline certificate to_certificate(const iteration_report& rep) {
    certificate cert;
    cert.prop = property::m_log_convex;
    cert.matrix_size = rep.input_terms;
    cert.minor_order = rep.depth;
    cert.verified = rep.verified();
    for (const auto& level : rep.levels) {
        if (level.passed(rep.mode)) continue;
        const std::size_t k = rep.mode == positivity_mode::strict ? *level.first_nonpositive : *level.first_negative;
        cert.result = verdict::fail;
        cert.wit = witness{{}, {}, level.terms[k], {}, {level.level, k}, "level"};
        break;
    }
    if (rep.mode == positivity_mode::strict) cert.note = "strict positivity required at every level";
    return cert;
}

/// a_k a_{k+2} >= a_{k+1}^2 (q-nonnegative differences) on the whole prefix.
inline certificate check_log_convex(std::span<const QPoly> seq) {
    const auto diffs = op_logconvex(seq);
    certificate cert;
    cert.prop = property::log_convex;
    cert.matrix_size = seq.size();
    cert.minor_order = 2;
    cert.verified = "verified on " + std::to_string(seq.size()) + " terms";
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        if (is_nonneg(diffs[k])) continue;
        cert.result = verdict::fail;
        cert.wit = witness{{}, {}, diffs[k], {}, {k}, "log_convexity"};
        break;
    }
    return cert;
}

/// a_{n+1} a_{m-1} >=_q a_n a_m for 1 <= m <= n with n+1 inside the prefix.
/// The m = 0 case would need a_{-1} and is not checked.
inline certificate check_q_slcx(std::span<const QPoly> seq) {
    if (seq.size() < 2) throw error(errc::too_short, "strong q-log-convexity needs at least 2 terms");
    certificate cert;
    cert.prop = property::strong_q_log_convex;
    cert.matrix_size = seq.size();
    cert.minor_order = 2;
    cert.verified = "verified on a prefix of " + std::to_string(seq.size()) + " terms";
    cert.note = "pairs with m >= 1 only (a_{-1} undefined)";
    for (std::size_t n = 1; n + 1 < seq.size(); ++n) {
        for (std::size_t m = 1; m <= n; ++m) {
            QPoly diff = seq[n + 1] * seq[m - 1] - seq[n] * seq[m];
            if (is_nonneg(diff)) continue;
            cert.result = verdict::fail;
            cert.wit = witness{{}, {}, std::move(diff), {}, {n, m}, "slcx_pair"};
            return cert;
        }
    }
    return cert;
}

inline certificate check_q_slcx(const std::vector<QPoly>& seq) { return check_q_slcx(std::span<const QPoly>(seq)); }

namespace detail {

inline void require_triangle_input(const ExactMatrix& A, std::size_t have, const char* what) {
    if (!A.is_square()) throw error(errc::shape_mismatch, "triangle must be square");
    if (have < A.rows())
        throw error(errc::insufficient_terms, std::string(what) + " supplies " + std::to_string(have) + " terms, " +
                                                  std::to_string(A.rows()) + " needed");
}

}  // namespace detail

/// z_n = sum_{k<=n} a_{n,k} x_k for every row of A.
inline std::vector<QPoly> apply_transform(const ExactMatrix& A, std::span<const QPoly> x) {
    detail::require_triangle_input(A, x.size(), "x");
    std::vector<QPoly> z(A.rows());
    for (std::size_t n = 0; n < A.rows(); ++n)
        for (std::size_t k = 0; k <= n; ++k) z[n] += A(n, k) * x[k];
    return z;
}

inline std::vector<QPoly> apply_transform(const triangle_spec& A, std::span<const QPoly> x, std::size_t rows) {
    return apply_transform(gen_triangle(A, rows), x);
}

/// z_n = sum_{k<=n} a_{n,k} x_k y_{n-k}.
inline std::vector<QPoly> apply_convolution(const ExactMatrix& A, std::span<const QPoly> x, std::span<const QPoly> y) {
    detail::require_triangle_input(A, x.size(), "x");
    detail::require_triangle_input(A, y.size(), "y");
    std::vector<QPoly> z(A.rows());
    for (std::size_t n = 0; n < A.rows(); ++n)
        for (std::size_t k = 0; k <= n; ++k) z[n] += A(n, k) * x[k] * y[n - k];
    return z;
}

inline std::vector<QPoly> apply_convolution(const triangle_spec& A, std::span<const QPoly> x,
                                            std::span<const QPoly> y, std::size_t rows) {
    return apply_convolution(gen_triangle(A, rows), x, y);
}

/// The Pascal special case.
inline std::vector<QPoly> binomial_convolution(std::span<const QPoly> x, std::span<const QPoly> y, std::size_t rows) {
    return apply_convolution(gen_triangle("pascal", rows), x, y);
}

}  // namespace lcsm
