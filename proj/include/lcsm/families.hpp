#pragma once

/**
 * @file families.hpp
 * @brief Closed-form generators for the combinatorial sequences, polynomial
 *        families and triangles used throughout lcsm.
 *
 * Every generator here is a direct binomial / Stirling / Eulerian sum or a
 * classical recurrence for the numbers themselves. None of them goes through
 * the q-recursive matrix, so the two constructions can validate each other.
 *
 * Conventions:
 *  - eulerian_poly follows the q-recursive matrix with s_0 = q, so
 *    A_0 = 1 and A_n(q) = sum_k E(n,k) q^(k+1) for n >= 1, where E(n,k) counts
 *    permutations of n with k descents. A_3 = q + 4q^2 + q^3.
 *  - narayana has N_0 = 1 and N_n(q) = sum_{k=1}^n (1/n) C(n,k) C(n,k-1) q^k.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "recursive.hpp"

namespace lcsm {

/// Pascal-recurrence binomial table covering 0 <= k <= n <= max_n.
class binomial_table {
public:
    explicit binomial_table(std::size_t max_n) : rows_(max_n + 1) {
        for (std::size_t n = 0; n <= max_n; ++n) {
            rows_[n].resize(n + 1);
            rows_[n][0] = rows_[n][n] = 1;
            for (std::size_t k = 1; k < n; ++k) rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
        }
    }

    /// C(n,k), zero when k > n.
    const Integer& operator()(std::size_t n, std::size_t k) const {
        static const Integer zero(0);
        if (n >= rows_.size()) throw error(errc::invalid_params, "binomial table too small");
        return k > n ? zero : rows_[n][k];
    }

    std::size_t max_n() const noexcept { return rows_.size() - 1; }

private:
    std::vector<std::vector<Integer>> rows_;
};

enum class seq_kind { closed_form, literal, recursive_matrix_ref };

struct seq_spec {
    std::string name;
    seq_kind kind = seq_kind::closed_form;
    std::map<std::string, Rational> params;
    std::vector<QPoly> terms;  // literal kind only

    static seq_spec named(std::string name) { return {std::move(name), seq_kind::closed_form, {}, {}}; }

    static seq_spec apery(long r, long s) {
        seq_spec spec{"apery_general", seq_kind::closed_form, {}, {}};
        spec.params["r"] = r;
        spec.params["s"] = s;
        return spec;
    }

    static seq_spec literal(std::string name, std::vector<QPoly> terms) {
        return {std::move(name), seq_kind::literal, {}, std::move(terms)};
    }
};

struct triangle_spec {
    std::string name;
    std::vector<std::vector<QPoly>> rows;  // used only for file-supplied triangles

    static triangle_spec named(std::string name) { return {std::move(name), {}}; }
};

inline const std::vector<std::string>& polynomial_family_names() {
    static const std::vector<std::string> names{"bell_poly", "eulerian_poly", "q_schroder", "q_delannoy",
                                                "narayana",  "narayana_B",    "morgan_voyce", "apery_general"};
    return names;
}

inline const std::vector<std::string>& number_family_names() {
    static const std::vector<std::string> names{"catalan",   "central_binomial", "bell_numbers", "factorial",
                                                "schroder",  "delannoy",         "fibonacci_odd"};
    return names;
}

inline const std::vector<std::string>& triangle_names() {
    static const std::vector<std::string> names{"pascal",     "stirling2",   "eulerian_A",
                                                "narayana_T", "narayana_B_T", "shifted_binomial"};
    return names;
}

inline bool is_known_family(std::string_view name) {
    const auto& p = polynomial_family_names();
    const auto& n = number_family_names();
    return std::find(p.begin(), p.end(), name) != p.end() || std::find(n.begin(), n.end(), name) != n.end();
}

namespace detail {

inline std::vector<std::vector<Integer>> stirling2_rows(std::size_t rows) {
    std::vector<std::vector<Integer>> s(rows);
    for (std::size_t n = 0; n < rows; ++n) {
        s[n].assign(n + 1, 0);
        if (n == 0) {
            s[0][0] = 1;
            continue;
        }
        for (std::size_t k = 1; k <= n; ++k) {
            Integer v = Integer(static_cast<unsigned long>(k)) * (k < n ? s[n - 1][k] : Integer(0));
            v += s[n - 1][k - 1];
            s[n][k] = v;
        }
    }
    return s;
}

/// Descent-indexed Eulerian numbers E(n,k) = (k+1)E(n-1,k) + (n-k)E(n-1,k-1),
/// with E(0,0) = 1 and row n >= 1 holding k = 0..n-1.
inline std::vector<std::vector<Integer>> eulerian_descent_rows(std::size_t rows) {
    std::vector<std::vector<Integer>> e(rows);
    if (rows == 0) return e;
    e[0] = {Integer(1)};
    for (std::size_t n = 1; n < rows; ++n) {
        const auto& prev = e[n - 1];
        e[n].assign(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            Integer v(0);
            if (k < prev.size()) v += Integer(static_cast<unsigned long>(k + 1)) * prev[k];
            if (k >= 1 && k - 1 < prev.size()) v += Integer(static_cast<unsigned long>(n - k)) * prev[k - 1];
            e[n][k] = v;
        }
    }
    return e;
}

inline QPoly poly_of(const std::vector<Integer>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (const auto& x : coeffs) c.emplace_back(x);
    return QPoly(std::move(c));
}

/// Narayana number (1/n) C(n,k) C(n,k-1), 1 <= k <= n.
inline Integer narayana_number(const binomial_table& C, std::size_t n, std::size_t k) {
    Integer v = C(n, k) * C(n, k - 1);
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n));
    return v;
}

inline long positive_integer_param(const seq_spec& spec, const std::string& key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end()) throw error(errc::invalid_params, spec.name + " requires parameter " + key);
    const Rational& v = it->second;
    if (!is_integral(v) || v < 1 || !v.get_num().fits_slong_p())
        throw error(errc::invalid_params, key + " must be a positive integer");
    return v.get_num().get_si();
}

}  // namespace detail

/// Builtin polynomial family terms a_0(q)..a_{count-1}(q). Number families
/// return constant polynomials.
inline std::vector<QPoly> gen_closed_form(const seq_spec& spec, std::size_t count) {
    const std::string& name = spec.name;
    std::vector<QPoly> out;
    out.reserve(count);
    const binomial_table C(2 * count + 2);
    auto ul = [](std::size_t v) { return Integer(static_cast<unsigned long>(v)); };

    if (name == "bell_poly") {
        for (const auto& row : detail::stirling2_rows(count)) out.push_back(detail::poly_of(row));
    } else if (name == "eulerian_poly") {
        const auto e = detail::eulerian_descent_rows(count);
        for (std::size_t n = 0; n < count; ++n) {
            if (n == 0) {
                out.emplace_back(1);
                continue;
            }
            std::vector<Integer> shifted(n + 1, 0);
            for (std::size_t k = 0; k < n; ++k) shifted[k + 1] = e[n][k];
            out.push_back(detail::poly_of(shifted));
        }
    } else if (name == "q_schroder" || name == "q_delannoy" || name == "morgan_voyce") {
        for (std::size_t n = 0; n < count; ++n) {
            std::vector<Integer> c(n + 1);
            for (std::size_t k = 0; k <= n; ++k) {
                Integer v = C(n + k, n - k);
                if (name != "morgan_voyce") v *= C(2 * k, k);
                if (name == "q_schroder") mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k + 1));
                c[k] = v;
            }
            out.push_back(detail::poly_of(c));
        }
    } else if (name == "narayana") {
        for (std::size_t n = 0; n < count; ++n) {
            if (n == 0) {
                out.emplace_back(1);
                continue;
            }
            std::vector<Integer> c(n + 1, 0);
            for (std::size_t k = 1; k <= n; ++k) c[k] = detail::narayana_number(C, n, k);
            out.push_back(detail::poly_of(c));
        }
    } else if (name == "narayana_B") {
        for (std::size_t n = 0; n < count; ++n) {
            std::vector<Integer> c(n + 1);
            for (std::size_t k = 0; k <= n; ++k) c[k] = C(n, k) * C(n, k);
            out.push_back(detail::poly_of(c));
        }
    } else if (name == "apery_general") {
        const long r = detail::positive_integer_param(spec, "r");
        const long s = detail::positive_integer_param(spec, "s");
        for (std::size_t n = 0; n < count; ++n) {
            std::vector<Integer> c(n + 1);
            for (std::size_t k = 0; k <= n; ++k) {
                Integer a, b;
                mpz_pow_ui(a.get_mpz_t(), C(n, k).get_mpz_t(), static_cast<unsigned long>(r));
                mpz_pow_ui(b.get_mpz_t(), C(n + k, k).get_mpz_t(), static_cast<unsigned long>(s));
                c[k] = a * b;
            }
            out.push_back(detail::poly_of(c));
        }
    } else if (name == "catalan") {
        for (std::size_t n = 0; n < count; ++n) {
            Integer v = C(2 * n, n);
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n + 1));
            out.emplace_back(Rational(v));
        }
    } else if (name == "central_binomial") {
        for (std::size_t n = 0; n < count; ++n) out.emplace_back(Rational(C(2 * n, n)));
    } else if (name == "bell_numbers") {
        // Bell triangle: each row starts with the last entry of the previous row.
        std::vector<Integer> row{1};
        for (std::size_t n = 0; n < count; ++n) {
            out.emplace_back(Rational(row.front()));
            std::vector<Integer> next{row.back()};
            for (const auto& x : row) next.push_back(next.back() + x);
            row = std::move(next);
        }
    } else if (name == "factorial") {
        Integer f(1);
        for (std::size_t n = 0; n < count; ++n) {
            if (n > 0) f *= ul(n);
            out.emplace_back(Rational(f));
        }
    } else if (name == "schroder") {
        // (n+1) r_n = 3(2n-1) r_{n-1} - (n-2) r_{n-2}
        std::vector<Integer> r;
        for (std::size_t n = 0; n < count; ++n) {
            if (n == 0) r.emplace_back(1);
            else if (n == 1) r.emplace_back(2);
            else {
                Integer v = Integer(3) * ul(2 * n - 1) * r[n - 1] - ul(n - 2) * r[n - 2];
                mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n + 1));
                r.push_back(v);
            }
            out.emplace_back(Rational(r.back()));
        }
    } else if (name == "delannoy") {
        for (std::size_t n = 0; n < count; ++n) {
            Integer v(0);
            for (std::size_t k = 0; k <= n; ++k) v += C(n, k) * C(n + k, k);
            out.emplace_back(Rational(v));
        }
    } else if (name == "fibonacci_odd") {
        // F_{2n+1}: F_1 = 1, F_2 = 1, ...
        Integer a(1), b(1);  // F_1, F_2
        for (std::size_t n = 0; n < count; ++n) {
            out.emplace_back(Rational(a));
            Integer f3 = a + b;
            Integer f4 = b + f3;
            a = f3;
            b = f4;
        }
    } else {
        throw error(errc::unknown_family, "no family named '" + name + "'");
    }
    return out;
}

/// Terms of a literal sequence, checked for length and q-nonnegativity.
inline std::vector<QPoly> gen_literal(const seq_spec& spec, std::size_t count) {
    if (spec.terms.size() < count)
        throw error(errc::insufficient_terms, "literal sequence '" + spec.name + "' has " +
                                                  std::to_string(spec.terms.size()) + " terms, " +
                                                  std::to_string(count) + " requested");
    return std::vector<QPoly>(spec.terms.begin(), spec.terms.begin() + static_cast<std::ptrdiff_t>(count));
}

/// Evaluates every term at q = x.
inline std::vector<Rational> specialize(std::span<const QPoly> seq, const Rational& x) {
    std::vector<Rational> out;
    out.reserve(seq.size());
    for (const auto& p : seq) out.push_back(p(x));
    return out;
}

inline std::vector<Rational> specialize(const std::vector<QPoly>& seq, const Rational& x) {
    return specialize(std::span<const QPoly>(seq), x);
}

/// Constant terms of a sequence of constant polynomials; throws NonConstant otherwise.
inline std::vector<Rational> constants_of(std::span<const QPoly> seq) {
    std::vector<Rational> out;
    out.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!seq[i].is_constant()) throw error(errc::non_constant, "term " + std::to_string(i) + " is not constant");
        out.push_back(seq[i].constant_term());
    }
    return out;
}

inline std::vector<QPoly> as_constants(std::span<const Rational> seq) {
    return std::vector<QPoly>(seq.begin(), seq.end());
}

/// rows x rows lower-triangular matrix of a builtin or file-supplied triangle.
inline ExactMatrix gen_triangle(const triangle_spec& spec, std::size_t rows) {
    if (rows == 0) throw error(errc::invalid_params, "triangle needs at least one row");
    const std::string& name = spec.name;
    std::vector<std::vector<QPoly>> out(rows);
    if (!spec.rows.empty()) {
        if (spec.rows.size() < rows)
            throw error(errc::insufficient_terms, "triangle '" + name + "' has " + std::to_string(spec.rows.size()) +
                                                      " rows, " + std::to_string(rows) + " requested");
        for (std::size_t n = 0; n < rows; ++n) {
            if (spec.rows[n].size() > n + 1)
                throw error(errc::shape_mismatch, "triangle row " + std::to_string(n) + " extends past the diagonal");
            out[n] = spec.rows[n];
        }
        return ExactMatrix(rows, rows, [&](std::size_t i, std::size_t j) {
            return j < out[i].size() ? out[i][j] : QPoly();
        });
    }

    const binomial_table C(2 * rows + 2);
    auto put = [&](std::size_t n, std::size_t k, const Integer& v) {
        if (out[n].size() < n + 1) out[n].assign(n + 1, QPoly());
        out[n][k] = QPoly(Rational(v));
    };
    if (name == "pascal") {
        for (std::size_t n = 0; n < rows; ++n)
            for (std::size_t k = 0; k <= n; ++k) put(n, k, C(n, k));
    } else if (name == "stirling2") {
        const auto s = detail::stirling2_rows(rows);
        for (std::size_t n = 0; n < rows; ++n)
            for (std::size_t k = 0; k <= n; ++k) put(n, k, s[n][k]);
    } else if (name == "eulerian_A") {
        const auto e = detail::eulerian_descent_rows(rows);
        put(0, 0, 1);
        for (std::size_t n = 1; n < rows; ++n) {
            put(n, 0, 0);
            for (std::size_t k = 1; k <= n; ++k) put(n, k, e[n][k - 1]);
        }
    } else if (name == "narayana_T") {
        put(0, 0, 1);
        for (std::size_t n = 1; n < rows; ++n) {
            put(n, 0, 0);
            for (std::size_t k = 1; k <= n; ++k) put(n, k, detail::narayana_number(C, n, k));
        }
    } else if (name == "narayana_B_T") {
        for (std::size_t n = 0; n < rows; ++n)
            for (std::size_t k = 0; k <= n; ++k) put(n, k, C(n, k) * C(n, k));
    } else if (name == "shifted_binomial") {
        for (std::size_t n = 0; n < rows; ++n)
            for (std::size_t k = 0; k <= n; ++k) put(n, k, C(n + k, n - k));
    } else {
        throw error(errc::unknown_triangle, "no triangle named '" + name + "'");
    }
    return ExactMatrix(rows, rows, [&](std::size_t i, std::size_t j) { return j <= i ? out[i][j] : QPoly(); });
}

inline ExactMatrix gen_triangle(std::string_view name, std::size_t rows) {
    return gen_triangle(triangle_spec::named(std::string(name)), rows);
}

/// a_0(q) .. a_{count-1}(q) for any kind of sequence spec.
inline std::vector<QPoly> gen_sequence(const seq_spec& spec, std::size_t count) {
    if (count == 0) throw error(errc::invalid_params, "count must be positive");
    switch (spec.kind) {
        case seq_kind::closed_form: return gen_closed_form(spec, count);
        case seq_kind::literal: return gen_literal(spec, count);
        case seq_kind::recursive_matrix_ref: return catalan_like(recursive_preset(spec.name), count);
    }
    throw error(errc::unknown_family, spec.name);
}

inline std::vector<QPoly> gen_sequence(std::string_view name, std::size_t count) {
    return gen_sequence(seq_spec::named(std::string(name)), count);
}

}  // namespace lcsm
