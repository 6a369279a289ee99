#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's determinant, binomial tables or family generators.

#include <cstddef>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include <lcsm/exact.hpp>
#include <lcsm/matrix.hpp>
#include <lcsm/poly.hpp>

namespace oracle {

using lcsm::Integer;
using lcsm::QPoly;
using lcsm::Rational;

// --- determinants -------------------------------------------------------------

/// Laplace expansion along the first row.
template <class T>
T cofactor_det(const std::vector<std::vector<T>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return T(1);
    if (n == 1) return a[0][0];
    T sum(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<T>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<T> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            sub.push_back(std::move(row));
        }
        T term = a[0][j] * cofactor_det(sub);
        if (j % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

template <class T>
T cofactor_det(const lcsm::matrix<T>& m) {
    std::vector<std::vector<T>> a(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) a[i].assign(m.row(i).begin(), m.row(i).end());
    return cofactor_det(a);
}

template <class T>
T brute_minor(const lcsm::matrix<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    std::vector<std::vector<T>> a;
    for (auto i : rows) {
        std::vector<T> row;
        for (auto j : cols) row.push_back(m(i, j));
        a.push_back(std::move(row));
    }
    return cofactor_det(a);
}

/// All k-subsets of {0..n-1}, generated by bitmask.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountl(mask)) != k) continue;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1UL) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

/// Every minor of order <= max_order is >= 0 (constant matrices).
inline bool brute_tp(const lcsm::matrix<Rational>& m, std::size_t max_order) {
    for (std::size_t k = 1; k <= max_order; ++k)
        for (const auto& r : subsets(m.rows(), k))
            for (const auto& c : subsets(m.cols(), k))
                if (brute_minor(m, r, c) < 0) return false;
    return true;
}

/// Every minor of order <= max_order has nonnegative coefficients.
inline bool brute_q_tp(const lcsm::matrix<QPoly>& m, std::size_t max_order) {
    for (std::size_t k = 1; k <= max_order; ++k)
        for (const auto& r : subsets(m.rows(), k))
            for (const auto& c : subsets(m.cols(), k)) {
                const QPoly v = brute_minor(m, r, c);
                for (const auto& coeff : v.coefficients())
                    if (coeff < 0) return false;
            }
    return true;
}

inline lcsm::matrix<Rational> hankel_of(const std::vector<Rational>& a, std::size_t n, std::size_t offset = 0) {
    return lcsm::matrix<Rational>(n + 1, n + 1, [&](std::size_t i, std::size_t j) { return a[i + j + offset]; });
}

/// Hankel STP criterion: H_n and the shifted H_n are TP with strictly
/// positive leading principal minors.
inline bool hankel_strict_tp(const std::vector<Rational>& a, std::size_t n) {
    for (std::size_t offset : {0, 1}) {
        const auto h = hankel_of(a, n, offset);
        if (!brute_tp(h, n + 1)) return false;
        for (std::size_t k = 1; k <= n + 1; ++k) {
            std::vector<std::size_t> idx(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            if (brute_minor(h, idx, idx) <= 0) return false;
        }
    }
    return true;
}

// --- numbers ------------------------------------------------------------------

inline Integer binom(unsigned long n, unsigned long k) {
    Integer r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

/// S(n,k) = (1/k!) sum_j (-1)^j C(k,j) (k-j)^n
inline Integer stirling2(unsigned long n, unsigned long k) {
    Integer s = 0;
    for (unsigned long j = 0; j <= k; ++j) {
        Integer t = binom(k, j) * ipow(Integer(k - j), n);
        if (j % 2) s -= t;
        else s += t;
    }
    return s / factorial(k);
}

/// Permutations of n with k descents: sum_j (-1)^j C(n+1,j) (k+1-j)^n
inline Integer eulerian(unsigned long n, unsigned long k) {
    if (n == 0) return k == 0 ? 1 : 0;
    Integer s = 0;
    for (unsigned long j = 0; j <= k + 1; ++j) {
        Integer t = binom(n + 1, j) * ipow(Integer(k + 1 - j), n);
        if (j % 2) s -= t;
        else s += t;
    }
    return s;
}

inline Integer catalan(unsigned long n) { return binom(2 * n, n) / (n + 1); }

inline Integer narayana(unsigned long n, unsigned long k) {
    if (n == 0) return k == 0 ? 1 : 0;
    if (k == 0) return 0;
    return binom(n, k) * binom(n, k - 1) / n;
}

// --- sequences and polynomial families ----------------------------------------

inline QPoly poly(const std::vector<Integer>& c) {
    std::vector<Rational> r(c.begin(), c.end());
    return QPoly(std::move(r));
}

/// Schroder paths (U, D, H=(2,0)) from 0 to 2n, q marking up steps.
inline QPoly schroder_paths(unsigned long n) {
    // state: (x, height) -> polynomial
    std::map<std::pair<unsigned long, unsigned long>, QPoly> f;
    f[{0, 0}] = QPoly(1);
    const QPoly q = QPoly::q();
    for (unsigned long x = 0; x < 2 * n; ++x)
        for (unsigned long h = 0; h <= 2 * n; ++h) {
            auto it = f.find({x, h});
            if (it == f.end()) continue;
            const QPoly w = it->second;
            f[{x + 1, h + 1}] += w * q;
            if (h > 0) f[{x + 1, h - 1}] += w;
            if (x + 2 <= 2 * n) f[{x + 2, h}] += w;
        }
    return f[{2 * n, 0}];
}

/// Lattice paths (0,0)->(n,n) with E, N, diagonal steps; q marks E steps.
inline QPoly delannoy_paths(unsigned long n) {
    std::vector<std::vector<QPoly>> f(n + 1, std::vector<QPoly>(n + 1));
    f[0][0] = QPoly(1);
    const QPoly q = QPoly::q();
    for (unsigned long i = 0; i <= n; ++i)
        for (unsigned long j = 0; j <= n; ++j) {
            if (i > 0) f[i][j] += f[i - 1][j] * q;
            if (j > 0) f[i][j] += f[i][j - 1];
            if (i > 0 && j > 0) f[i][j] += f[i - 1][j - 1];
        }
    return f[n][n];
}

/// Dyck paths of semilength n, q marking peaks.
inline QPoly dyck_by_peaks(unsigned long n) {
    // (x, height, last step was up)
    std::map<std::tuple<unsigned long, unsigned long, bool>, QPoly> f;
    f[{0, 0, false}] = QPoly(1);
    const QPoly q = QPoly::q();
    for (unsigned long x = 0; x < 2 * n; ++x)
        for (unsigned long h = 0; h <= n; ++h)
            for (bool up : {false, true}) {
                auto it = f.find({x, h, up});
                if (it == f.end()) continue;
                const QPoly w = it->second;
                f[{x + 1, h + 1, true}] += w;
                if (h > 0) f[{x + 1, h - 1, false}] += up ? w * q : w;
            }
    QPoly r = f[{2 * n, 0, false}];
    return n == 0 ? QPoly(1) : r;
}

/// b_n(q) = (q+2) b_{n-1} - b_{n-2}, b_0 = 1, b_1 = 1 + q.
inline std::vector<QPoly> morgan_voyce(std::size_t count) {
    std::vector<QPoly> b;
    const QPoly q = QPoly::q();
    for (std::size_t n = 0; n < count; ++n) {
        if (n == 0) b.emplace_back(1);
        else if (n == 1) b.push_back(QPoly(1) + q);
        else b.push_back((q + QPoly(2)) * b[n - 1] - b[n - 2]);
    }
    return b;
}

/// Reference terms for a builtin family name, count terms.
inline std::vector<QPoly> family(const std::string& name, std::size_t count, long r = 0, long s = 0) {
    std::vector<QPoly> out;
    if (name == "morgan_voyce") return morgan_voyce(count);
    for (unsigned long n = 0; n < count; ++n) {
        std::vector<Integer> c(n + 1, 0);
        if (name == "bell_poly") {
            for (unsigned long k = 0; k <= n; ++k) c[k] = stirling2(n, k);
            out.push_back(poly(c));
        } else if (name == "eulerian_poly") {
            if (n == 0) c[0] = 1;
            else
                for (unsigned long k = 0; k < n; ++k) c[k + 1] = eulerian(n, k);
            out.push_back(poly(c));
        } else if (name == "q_schroder") {
            out.push_back(schroder_paths(n));
        } else if (name == "q_delannoy") {
            out.push_back(delannoy_paths(n));
        } else if (name == "narayana") {
            out.push_back(dyck_by_peaks(n));
        } else if (name == "narayana_B") {
            for (unsigned long k = 0; k <= n; ++k) c[k] = binom(n, k) * binom(n, k);
            out.push_back(poly(c));
        } else if (name == "apery_general") {
            for (unsigned long k = 0; k <= n; ++k)
                c[k] = ipow(binom(n, k), static_cast<unsigned long>(r)) * ipow(binom(n + k, k), static_cast<unsigned long>(s));
            out.push_back(poly(c));
        } else {
            Integer v = 0;
            if (name == "catalan") v = catalan(n);
            else if (name == "central_binomial") v = binom(2 * n, n);
            else if (name == "factorial") v = factorial(n);
            else if (name == "bell_numbers")
                for (unsigned long k = 0; k <= n; ++k) v += stirling2(n, k);
            else if (name == "schroder")
                for (unsigned long k = 0; k <= n; ++k) v += binom(n + k, n - k) * catalan(k);
            else if (name == "delannoy")
                for (unsigned long k = 0; k <= n; ++k) v += ipow(2, k) * binom(n, k) * binom(n, k);
            else if (name == "fibonacci_odd")
                for (unsigned long k = 0; k <= n; ++k) v += binom(n + k, 2 * k);
            else throw std::invalid_argument("oracle has no family " + name);
            out.emplace_back(Rational(v));
        }
    }
    return out;
}

/// Reference entry a_{n,k} of a builtin triangle.
inline Integer triangle(const std::string& name, unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (name == "pascal") return binom(n, k);
    if (name == "stirling2") return stirling2(n, k);
    if (name == "eulerian_A") return n == 0 ? Integer(k == 0 ? 1 : 0) : (k == 0 ? Integer(0) : eulerian(n, k - 1));
    if (name == "narayana_T") return narayana(n, k);
    if (name == "narayana_B_T") return binom(n, k) * binom(n, k);
    if (name == "shifted_binomial") return binom(n + k, n - k);
    throw std::invalid_argument("oracle has no triangle " + name);
}

// --- random inputs ------------------------------------------------------------

inline std::vector<Rational> random_sequence(std::mt19937_64& rng, std::size_t len, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    std::vector<Rational> v;
    for (std::size_t i = 0; i < len; ++i) v.emplace_back(d(rng));
    return v;
}

/// Moments sum_i w_i x_i^k of a discrete measure with `atoms` positive atoms.
inline std::vector<Rational> random_moments(std::mt19937_64& rng, std::size_t len, std::size_t atoms) {
    std::uniform_int_distribution<long> w(1, 9), num(1, 12), den(1, 4);
    std::vector<std::pair<Rational, Rational>> measure;
    for (std::size_t i = 0; i < atoms; ++i) {
        Rational x(num(rng), den(rng));
        x.canonicalize();
        measure.emplace_back(Rational(w(rng)), x);
    }
    std::vector<Rational> m;
    for (std::size_t k = 0; k < len; ++k) {
        Rational s = 0;
        for (const auto& [wt, x] : measure) {
            Rational p = 1;
            for (std::size_t e = 0; e < k; ++e) p *= x;
            s += wt * p;
        }
        m.push_back(s);
    }
    return m;
}

inline lcsm::matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return lcsm::matrix<Rational>(n, n, [&](std::size_t, std::size_t) { return Rational(d(rng)); });
}

inline QPoly random_poly(std::mt19937_64& rng, std::size_t max_degree, long lo, long hi) {
    std::uniform_int_distribution<std::size_t> deg(0, max_degree);
    std::uniform_int_distribution<long> d(lo, hi);
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c) x = d(rng);
    return QPoly(std::move(c));
}

inline std::vector<QPoly> as_polys(const std::vector<Rational>& v) { return {v.begin(), v.end()}; }

}  // namespace oracle
