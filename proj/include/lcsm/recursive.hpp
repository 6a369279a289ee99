#pragma once

/**
 * @file recursive.hpp
 * @brief q-recursive matrices, their coefficient (Jacobi) matrices and
 *        bidiagonal factorizations.
 *
 * For generator sequences s_k(q) (k >= 0) and t_k(q) (k >= 1) the recursive
 * matrix R = [r_{n,k}] is lower triangular with
 *
 *   r_{0,0} = 1,  r_{n+1,k} = r_{n,k-1} + s_k r_{n,k} + t_{k+1} r_{n,k+1}
 *
 * and its first column r_{n,0} gives the q-Catalan-like numbers. The Jacobi
 * matrix carries s_k on the diagonal, 1 above it and t_{k+1} below it.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace lcsm {

using poly_generator = std::function<QPoly(std::size_t)>;

struct recursive_spec {
    std::string name;
    poly_generator sigma;  // k -> s_k, k >= 0
    poly_generator tau;    // k -> t_k, k >= 1
};

namespace detail {

inline QPoly affine(const QPoly& a, const QPoly& b, std::size_t k) {
    return a + b * QPoly(static_cast<long>(k));
}

}  // namespace detail

inline const std::vector<std::string>& recursive_preset_names() {
    static const std::vector<std::string> names{"bell_poly", "eulerian_poly", "q_schroder", "q_delannoy",
                                                "narayana",  "narayana_B",    "morgan_voyce"};
    return names;
}

/// Builtin (sigma, tau) for the families whose q-Catalan-like numbers are the
/// named polynomials.
inline recursive_spec recursive_preset(std::string_view name) {
    const QPoly q = QPoly::q();
    const QPoly one(1);
    if (name == "bell_poly")
        return {"bell_poly", [q](std::size_t k) { return detail::affine(q, 1, k); },
                [q](std::size_t k) { return detail::affine(0, q, k); }};
    if (name == "eulerian_poly")
        return {"eulerian_poly", [q](std::size_t k) { return detail::affine(q, q + QPoly(1), k); },
                [q](std::size_t k) { return q * QPoly(static_cast<long>(k * k)); }};
    if (name == "q_schroder")
        return {"q_schroder", [q](std::size_t k) { return k == 0 ? q + QPoly(1) : QPoly(2) * q + QPoly(1); },
                [q](std::size_t) { return q * (q + QPoly(1)); }};
    if (name == "q_delannoy")
        return {"q_delannoy", [q](std::size_t) { return QPoly(1) + QPoly(2) * q; },
                [q](std::size_t k) { return (k == 1 ? QPoly(2) * q : q) * (QPoly(1) + q); }};
    if (name == "narayana")
        return {"narayana", [q](std::size_t k) { return k == 0 ? q : QPoly(1) + q; },
                [q](std::size_t) { return q; }};
    if (name == "narayana_B")
        return {"narayana_B", [q](std::size_t) { return QPoly(1) + q; },
                [q](std::size_t k) { return k == 1 ? QPoly(2) * q : q; }};
    if (name == "morgan_voyce")
        return {"morgan_voyce", [q](std::size_t k) { return k == 0 ? q + QPoly(1) : QPoly(1); },
                [q](std::size_t k) { return k == 1 ? q : QPoly(); }};
    throw error(errc::unknown_family, "no recursive preset named '" + std::string(name) + "'");
}

/// (n+1) x (n+1) lower-triangular recursive matrix.
inline ExactMatrix build_recursive(const recursive_spec& spec, std::size_t n) {
    const std::size_t size = n + 1;
    std::vector<QPoly> s(size), t(size + 1);
    for (std::size_t k = 0; k < size; ++k) s[k] = spec.sigma(k);
    for (std::size_t k = 1; k <= size; ++k) t[k] = spec.tau(k);

    std::vector<std::vector<QPoly>> r(size, std::vector<QPoly>(size));
    r[0][0] = QPoly(1);
    for (std::size_t m = 0; m + 1 < size; ++m) {
        for (std::size_t k = 0; k <= m + 1; ++k) {
            QPoly v;
            if (k >= 1) v += r[m][k - 1];
            if (k <= m) v += s[k] * r[m][k];
            if (k + 1 <= m) v += t[k + 1] * r[m][k + 1];
            r[m + 1][k] = std::move(v);
        }
    }
    return ExactMatrix(size, size, [&](std::size_t i, std::size_t j) { return r[i][j]; });
}

/// r_{0,0}, ..., r_{count-1,0}.
inline std::vector<QPoly> catalan_like(const recursive_spec& spec, std::size_t count) {
    if (count == 0) throw error(errc::invalid_params, "count must be positive");
    const auto R = build_recursive(spec, count - 1);
    std::vector<QPoly> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(R(i, 0));
    return out;
}

/// n x n leading section of the coefficient matrix.
inline ExactMatrix jacobi_of(const recursive_spec& spec, std::size_t n) {
    if (n == 0) throw error(errc::invalid_params, "Jacobi size must be positive");
    return ExactMatrix(n, n, [&](std::size_t i, std::size_t j) -> QPoly {
        if (i == j) return spec.sigma(i);
        if (j == i + 1) return QPoly(1);
        if (i == j + 1) return spec.tau(i);
        return {};
    });
}

// --- bidiagonal factorizations ----------------------------------------------

/// Which bidiagonal factor comes first and which generator sits where.
/// U(x) is upper bidiagonal with diagonal x_1, x_2, ... and unit superdiagonal;
/// L(y) is unit lower bidiagonal with subdiagonal y_1, y_2, ...
enum class factor_combo {
    upper_b_lower_c,  // J = U(b) L(c): diagonal b_k + c_k, subdiagonal b_{k+1} c_k
    upper_c_lower_b,  // J = U(c) L(b)
    lower_c_upper_b,  // J = L(c) U(b)
    lower_b_upper_c,  // J = L(b) U(c)
};

inline constexpr factor_combo all_factor_combos[] = {factor_combo::upper_b_lower_c, factor_combo::upper_c_lower_b,
                                                     factor_combo::lower_c_upper_b, factor_combo::lower_b_upper_c};

constexpr std::string_view to_string(factor_combo c) {
    switch (c) {
        case factor_combo::upper_b_lower_c: return "U(b)L(c)";
        case factor_combo::upper_c_lower_b: return "U(c)L(b)";
        case factor_combo::lower_c_upper_b: return "L(c)U(b)";
        case factor_combo::lower_b_upper_c: return "L(b)U(c)";
    }
    return "?";
}

struct bidiagonal_certificate {
    poly_generator b;  // k -> b_k, k >= 1
    poly_generator c;  // k -> c_k, k >= 1
    factor_combo combo = factor_combo::upper_b_lower_c;
};

namespace detail {

inline ExactMatrix upper_bidiagonal(const poly_generator& diag, std::size_t n) {
    return ExactMatrix(n, n, [&](std::size_t i, std::size_t j) -> QPoly {
        if (i == j) return diag(i + 1);
        if (j == i + 1) return QPoly(1);
        return {};
    });
}

inline ExactMatrix lower_bidiagonal(const poly_generator& sub, std::size_t n) {
    return ExactMatrix(n, n, [&](std::size_t i, std::size_t j) -> QPoly {
        if (i == j) return QPoly(1);
        if (i == j + 1) return sub(i);
        return {};
    });
}

}  // namespace detail

/// Leading n x n block of the infinite product of the two bidiagonal factors.
inline ExactMatrix tridiag_from_bc(const bidiagonal_certificate& cert, std::size_t n) {
    if (n == 0) throw error(errc::invalid_params, "size must be positive");
    // One extra row/column so U*L picks up the c_n / b_n term of the last diagonal entry.
    const std::size_t m = n + 1;
    ExactMatrix product;
    switch (cert.combo) {
        case factor_combo::upper_b_lower_c:
            product = detail::upper_bidiagonal(cert.b, m) * detail::lower_bidiagonal(cert.c, m);
            break;
        case factor_combo::upper_c_lower_b:
            product = detail::upper_bidiagonal(cert.c, m) * detail::lower_bidiagonal(cert.b, m);
            break;
        case factor_combo::lower_c_upper_b:
            product = detail::lower_bidiagonal(cert.c, m) * detail::upper_bidiagonal(cert.b, m);
            break;
        case factor_combo::lower_b_upper_c:
            product = detail::lower_bidiagonal(cert.b, m) * detail::upper_bidiagonal(cert.c, m);
            break;
    }
    return ExactMatrix(n, n, [&](std::size_t i, std::size_t j) { return product(i, j); });
}

/// (b, c) pairs as printed for the families' coefficient matrices, all
/// stated for the U(b)L(c) order. narayana_B has none.
inline std::optional<bidiagonal_certificate> printed_bidiagonal(std::string_view name) {
    const QPoly q = QPoly::q();
    auto lin = [](long k) { return QPoly(k); };
    if (name == "bell_poly")
        return bidiagonal_certificate{[lin](std::size_t k) { return lin(static_cast<long>(k) - 1); },
                                      [q](std::size_t) { return q; }};
    if (name == "eulerian_poly")
        return bidiagonal_certificate{[q, lin](std::size_t k) { return lin(static_cast<long>(k) - 1) * q; },
                                      [lin](std::size_t k) { return lin(static_cast<long>(k)); }};
    if (name == "q_schroder")
        return bidiagonal_certificate{[q](std::size_t k) { return k == 1 ? QPoly() : q; },
                                      [q](std::size_t) { return q + QPoly(1); }};
    if (name == "q_delannoy")
        return bidiagonal_certificate{[q](std::size_t k) { return k == 1 ? QPoly(1) : q + QPoly(1); },
                                      [q](std::size_t k) { return k == 1 ? QPoly(2) * q : q; }};
    if (name == "narayana")
        return bidiagonal_certificate{[](std::size_t) { return QPoly(1); }, [q](std::size_t) { return q; }};
    if (name == "morgan_voyce")
        return bidiagonal_certificate{[](std::size_t) { return QPoly(1); },
                                      [q](std::size_t k) { return k == 1 ? q : QPoly(); }};
    return std::nullopt;
}

/// The two tridiagonal determinants that decide the q-TP of the type-B
/// Narayana coefficient matrix: diagonal q+1, superdiagonal 1, subdiagonal q,
/// except that the second form has 2q in position (1,0).
/// Closed forms: d1 = 1 + q + ... + q^n, d2 = 1 + q^n.
inline std::pair<QPoly, QPoly> narayana_b_minors(std::size_t n) {
    if (n == 0) throw error(errc::invalid_params, "n must be positive");
    const QPoly q = QPoly::q();
    auto form = [&](bool first_sub_doubled) {
        return ExactMatrix(n, n, [&](std::size_t i, std::size_t j) -> QPoly {
            if (i == j) return q + QPoly(1);
            if (j == i + 1) return QPoly(1);
            if (i == j + 1) return (first_sub_doubled && i == 1) ? QPoly(2) * q : q;
            return {};
        });
    };
    return {det_bareiss(form(false)), det_bareiss(form(true))};
}

}  // namespace lcsm
