#pragma once

/**
 * @file positivity.hpp
 * @brief Finite, exact certificates of total positivity and moment properties.
 *
 * A certificate never claims more than the finite range it checked: the
 * matrix size, the largest minor order, and for pointwise checks the exact
 * grid of q values. A failing certificate carries the offending minor.
 *
 * Strictness: positive definiteness (and therefore check_sm) needs strictly
 * positive leading principal minors, while TP only needs nonnegative minors.
 * A sequence with a singular Hankel section fails check_sm; the certificate
 * note marks such a failure as indeterminate for the moment property.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "families.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace lcsm {

enum class property { tp2, tp, pos_def, sm, q_tp, q_sm, psm, log_convex, m_log_convex, strong_q_log_convex };

constexpr std::string_view to_string(property p) {
    switch (p) {
        case property::tp2: return "TP2";
        case property::tp: return "TP";
        case property::pos_def: return "PosDef";
        case property::sm: return "SM";
        case property::q_tp: return "qTP";
        case property::q_sm: return "qSM";
        case property::psm: return "PSM";
        case property::log_convex: return "LogConvex";
        case property::m_log_convex: return "mLogConvex";
        case property::strong_q_log_convex: return "StrongQLogConvex";
    }
    return "?";
}

enum class verdict { pass, fail };

struct witness {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    QPoly value;
    std::optional<Rational> q;       // pointwise checks: the failing q
    std::vector<std::size_t> index;  // sequence-level checks: offending indices
    std::string matrix;              // which matrix the rows/cols refer to
};

struct certificate {
    property prop = property::tp;
    std::size_t matrix_size = 0;
    std::size_t minor_order = 0;
    std::optional<std::vector<Rational>> q_grid;
    verdict result = verdict::pass;
    std::optional<witness> wit;
    std::string verified;
    std::string note;

    bool passed() const noexcept { return result == verdict::pass; }
};

namespace detail {

/// Calls fn(indices) for each k-subset of {0..n-1} in lexicographic order,
/// stopping early when fn returns false. Returns false if stopped.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(std::span<const std::size_t>(idx))) return false;
        if (k == 0) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

inline std::string order_text(std::size_t order) { return "verified to order " + std::to_string(order); }

inline void require_constant(const ExactMatrix& m) {
    for (const auto& e : m.entries())
        if (!e.is_constant()) throw error(errc::non_constant, "numeric check on a matrix with polynomial entries");
}

}  // namespace detail

/// All minors of order <= max_order must be q-nonnegative (for constant
/// entries this is ordinary nonnegativity). Minors are visited by order, then
/// row set, then column set, each lexicographically; the first violation is
/// the witness.
inline certificate check_tp(const ExactMatrix& m, std::size_t max_order) {
    if (max_order == 0 || max_order > std::min(m.rows(), m.cols()))
        throw error(errc::invalid_params, "minor order " + std::to_string(max_order) + " not in 1.." +
                                              std::to_string(std::min(m.rows(), m.cols())));
    certificate cert;
    cert.prop = property::tp;
    cert.matrix_size = std::max(m.rows(), m.cols());
    cert.minor_order = max_order;
    for (std::size_t order = 1; order <= max_order && cert.passed(); ++order) {
        detail::for_each_combination(m.rows(), order, [&](std::span<const std::size_t> rows) {
            return detail::for_each_combination(m.cols(), order, [&](std::span<const std::size_t> cols) {
                QPoly v = order == 1 ? m(rows[0], cols[0]) : minor(m, rows, cols);
                if (is_nonneg(v)) return true;
                cert.result = verdict::fail;
                cert.wit = witness{{rows.begin(), rows.end()}, {cols.begin(), cols.end()}, std::move(v), {}, {}, {}};
                return false;
            });
        });
    }
    cert.verified = detail::order_text(max_order) + ": every minor of order <= " + std::to_string(max_order) +
                    " of the " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix";
    return cert;
}

inline certificate check_tp2(const ExactMatrix& m) {
    certificate cert = check_tp(m, std::min<std::size_t>(2, std::min(m.rows(), m.cols())));
    cert.prop = property::tp2;
    return cert;
}

/// Strictly positive leading principal minors of a symmetric constant matrix.
inline certificate check_pos_def(const ExactMatrix& m) {
    if (!m.is_square()) throw error(errc::not_square, "positive definiteness of a non-square matrix");
    if (!m.is_symmetric()) throw error(errc::not_symmetric, "positive definiteness needs a symmetric matrix");
    detail::require_constant(m);
    const auto numeric = m.map([](const QPoly& p) { return p.constant_term(); });
    const auto minors = leading_principal_minors(numeric);

    certificate cert;
    cert.prop = property::pos_def;
    cert.matrix_size = m.rows();
    cert.minor_order = m.rows();
    for (std::size_t k = 0; k < minors.size(); ++k) {
        if (minors[k] > 0) continue;
        const auto idx = detail::iota(k + 1);
        cert.result = verdict::fail;
        cert.wit = witness{idx, idx, QPoly(minors[k]), {}, {}, {}};
        if (minors[k] == 0) cert.note = "singular leading principal minor of order " + std::to_string(k + 1);
        break;
    }
    cert.verified = detail::order_text(m.rows()) + ": leading principal minors of orders 1.." + std::to_string(m.rows());
    return cert;
}

/// Finite Stieltjes moment test: H_n(seq) and H_n(shift(seq)) positive
/// definite. Needs 2n+2 terms.
inline certificate check_sm(std::span<const Rational> seq, std::size_t n) {
    if (seq.size() < 2 * n + 2)
        throw error(errc::insufficient_terms, "SM order " + std::to_string(n) + " needs " + std::to_string(2 * n + 2) +
                                                  " terms, got " + std::to_string(seq.size()));
    const auto base = hankel(seq, n);
    const auto shifted_terms = shift(seq);
    const auto shifted = hankel(std::span<const Rational>(shifted_terms), n);
    const auto m0 = leading_principal_minors(base);
    const auto m1 = leading_principal_minors(shifted);

    certificate cert;
    cert.prop = property::sm;
    cert.matrix_size = n + 1;
    cert.minor_order = n + 1;
    cert.verified = detail::order_text(n) + ": leading principal minors of H_" + std::to_string(n) + " and shifted H_" +
                    std::to_string(n) + " (" + std::to_string(2 * n + 2) + " terms)";
    for (std::size_t k = 0; k <= n; ++k) {
        for (int which = 0; which < 2; ++which) {
            const auto& minors = which == 0 ? m0 : m1;
            if (k >= minors.size() || minors[k] > 0) continue;
            const auto idx = detail::iota(k + 1);
            cert.result = verdict::fail;
            cert.wit = witness{idx, idx, QPoly(minors[k]), {}, {}, which == 0 ? "hankel" : "shifted_hankel"};
            if (minors[k] == 0)
                cert.note = "indeterminate at this order: a Hankel leading principal minor vanishes, so the "
                            "positive-definiteness test fails without deciding the moment property";
            return cert;
        }
    }
    return cert;
}

inline certificate check_sm(const std::vector<Rational>& seq, std::size_t n) {
    return check_sm(std::span<const Rational>(seq), n);
}

/// q-TP of H_n(seq) up to minor order max_order.
inline certificate check_q_sm(std::span<const QPoly> seq, std::size_t n, std::size_t max_order) {
    certificate cert = check_tp(hankel(seq, n), max_order);
    cert.prop = property::q_sm;
    if (cert.wit) cert.wit->matrix = "hankel";
    return cert;
}

inline certificate check_q_sm(const std::vector<QPoly>& seq, std::size_t n, std::size_t max_order) {
    return check_q_sm(std::span<const QPoly>(seq), n, max_order);
}

inline const std::vector<Rational>& default_psm_grid() {
    static const std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 2),
                                            Rational(1), Rational(2),    Rational(4)};
    return grid;
}

/// check_sm at each fixed q of the grid. Where the strict test fails only
/// through a vanishing minor, the point is decided by full minor enumeration
/// of both Hankel sections (the TP definition) instead.
inline certificate check_psm(std::span<const QPoly> seq, std::size_t n, std::span<const Rational> qvalues) {
    for (const auto& q : qvalues)
        if (q < 0) throw error(errc::negative_q_value, "q = " + format_rational(q) + " is negative");
    if (seq.size() < 2 * n + 2)
        throw error(errc::insufficient_terms, "PSM order " + std::to_string(n) + " needs " + std::to_string(2 * n + 2) +
                                                  " terms");

    certificate cert;
    cert.prop = property::psm;
    cert.matrix_size = n + 1;
    cert.minor_order = n + 1;
    cert.q_grid = std::vector<Rational>(qvalues.begin(), qvalues.end());
    std::vector<std::string> degenerate;
    for (const auto& q : qvalues) {
        const auto values = specialize(seq, q);
        certificate point = check_sm(values, n);
        if (!point.passed() && point.wit && point.wit->value.is_zero()) {
            const auto vq = as_constants(values);
            const auto sq = shift(std::span<const QPoly>(vq));
            for (const auto& [h, label] : {std::pair{hankel(std::span<const QPoly>(vq), n), "hankel"},
                                           std::pair{hankel(std::span<const QPoly>(sq), n), "shifted_hankel"}}) {
                point = check_tp(h, n + 1);
                if (!point.passed()) {
                    point.wit->matrix = label;
                    break;
                }
            }
            if (point.passed()) degenerate.push_back(format_rational(q));
        }
        if (!point.passed()) {
            cert.result = verdict::fail;
            cert.wit = point.wit;
            cert.wit->q = q;
            break;
        }
    }
    std::string grid;
    for (const auto& q : qvalues) grid += (grid.empty() ? "" : ", ") + format_rational(q);
    cert.verified = detail::order_text(n) + " at q in {" + grid + "} only";
    if (!degenerate.empty()) {
        std::string pts;
        for (const auto& d : degenerate) pts += (pts.empty() ? "" : ", ") + d;
        cert.note = "singular Hankel sections at q in {" + pts + "} certified by full minor enumeration";
    }
    return cert;
}

inline certificate check_psm(const std::vector<QPoly>& seq, std::size_t n, const std::vector<Rational>& qvalues) {
    return check_psm(std::span<const QPoly>(seq), n, std::span<const Rational>(qvalues));
}

}  // namespace lcsm
