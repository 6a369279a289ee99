#pragma once

/**
 * @file matrix.hpp
 * @brief Immutable exact matrices, structured constructors and determinants.
 *
 * Entries are any exact ring with an exact_div overload (Rational, QPoly).
 * Determinants use fraction-free Bareiss elimination: every division in the
 * elimination is exact over an integral domain, so no rounding ever occurs.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "poly.hpp"

namespace lcsm {

template <class T>
class matrix {
public:
    using value_type = T;

    matrix() = default;

    /// rows x cols matrix of zeros.
    matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    matrix(std::size_t rows, std::size_t cols, std::vector<T> row_major)
        : rows_(rows), cols_(cols), data_(std::move(row_major)) {
        if (data_.size() != rows_ * cols_) throw error(errc::shape_mismatch, "entry count does not match dimensions");
    }

    template <class Gen>
        requires std::invocable<Gen&, std::size_t, std::size_t>
    matrix(std::size_t rows, std::size_t cols, Gen&& gen) : rows_(rows), cols_(cols) {
        data_.reserve(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) data_.push_back(T(gen(i, j)));
    }

    /// Ragged rows are padded with zeros on the right (triangles are stored this way).
    static matrix from_rows(const std::vector<std::vector<T>>& rows) {
        std::size_t width = 0;
        for (const auto& r : rows) width = std::max(width, r.size());
        return matrix(rows.size(), width, [&](std::size_t i, std::size_t j) {
            return j < rows[i].size() ? rows[i][j] : T(0);
        });
    }

    static matrix identity(std::size_t n) {
        return matrix(n, n, [](std::size_t i, std::size_t j) { return T(i == j ? 1 : 0); });
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> entries() const noexcept { return data_; }

    std::span<const T> row(std::size_t i) const { return std::span<const T>(data_).subspan(i * cols_, cols_); }

    matrix transpose() const {
        return matrix(cols_, rows_, [&](std::size_t i, std::size_t j) { return (*this)(j, i); });
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    template <class Fn>
    auto map(Fn&& fn) const {
        using U = std::decay_t<decltype(fn(std::declval<const T&>()))>;
        return matrix<U>(rows_, cols_, [&](std::size_t i, std::size_t j) { return fn((*this)(i, j)); });
    }

    friend matrix operator*(const matrix& a, const matrix& b) {
        if (a.cols_ != b.rows_) throw error(errc::shape_mismatch, "inner dimensions differ");
        return matrix(a.rows_, b.cols_, [&](std::size_t i, std::size_t j) {
            T sum(0);
            for (std::size_t k = 0; k < a.cols_; ++k) sum += a(i, k) * b(k, j);
            return sum;
        });
    }

    friend bool operator==(const matrix& a, const matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = matrix<QPoly>;
using RationalMatrix = matrix<Rational>;

/// Row pair (first, second) with first < second; orders lexicographically.
struct IndexPair {
    std::size_t first;
    std::size_t second;

    auto operator<=>(const IndexPair&) const = default;
};

// --- structured constructors ----------------------------------------------

/// (n+1) x (n+1) Hankel matrix [a_{i+j}], needs 2n+1 terms.
template <class T>
matrix<T> hankel(std::span<const T> seq, std::size_t n) {
    if (seq.size() < 2 * n + 1)
        throw error(errc::insufficient_terms, "hankel of order " + std::to_string(n) + " needs " +
                                                  std::to_string(2 * n + 1) + " terms, got " +
                                                  std::to_string(seq.size()));
    return matrix<T>(n + 1, n + 1, [&](std::size_t i, std::size_t j) { return seq[i + j]; });
}

template <class T>
matrix<T> hankel(const std::vector<T>& seq, std::size_t n) {
    return hankel(std::span<const T>(seq), n);
}

/// (n+1) x (n+1) Toeplitz matrix [a_{i-j}], zero above the diagonal.
template <class T>
matrix<T> toeplitz(std::span<const T> seq, std::size_t n) {
    if (seq.size() < n + 1)
        throw error(errc::insufficient_terms, "toeplitz of order " + std::to_string(n) + " needs " +
                                                  std::to_string(n + 1) + " terms");
    return matrix<T>(n + 1, n + 1, [&](std::size_t i, std::size_t j) { return i >= j ? seq[i - j] : T(0); });
}

template <class T>
matrix<T> toeplitz(const std::vector<T>& seq, std::size_t n) {
    return toeplitz(std::span<const T>(seq), n);
}

/// Drops the first term.
template <class T>
std::vector<T> shift(std::span<const T> seq) {
    if (seq.empty()) throw error(errc::empty_sequence, "cannot shift an empty sequence");
    return std::vector<T>(seq.begin() + 1, seq.end());
}

template <class T>
std::vector<T> shift(const std::vector<T>& seq) {
    return shift(std::span<const T>(seq));
}

// --- determinants -----------------------------------------------------------

/// Fraction-free determinant. A zero pivot is replaced by a row swap (sign
/// tracked); if the whole remaining column is zero the determinant is zero.
template <class T>
T det_bareiss(const matrix<T>& m) {
    if (!m.is_square()) throw error(errc::not_square, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return T(1);
    std::vector<T> a(m.entries().begin(), m.entries().end());
    auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };
    bool negate = false;
    T prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(at(k, k))) {
            std::size_t r = k + 1;
            while (r < n && is_zero(at(r, k))) ++r;
            if (r == n) return T(0);
            for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(r, j));
            negate = !negate;
        }
        const T& pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                T t = at(i, j) * pivot - at(i, k) * at(k, j);
                at(i, j) = exact_div(t, prev);
            }
            at(i, k) = T(0);
        }
        prev = pivot;
    }
    T d = at(n - 1, n - 1);
    if (negate) d = -d;
    return d;
}

/// Leading principal minors det(m[0..k, 0..k]) for k = 0..n-1, read off the
/// Bareiss pivots with no pivoting. Stops after the first zero minor, since
/// later pivots are undefined without a swap.
template <class T>
std::vector<T> leading_principal_minors(const matrix<T>& m) {
    if (!m.is_square()) throw error(errc::not_square, "leading minors of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<T> out;
    if (n == 0) return out;
    std::vector<T> a(m.entries().begin(), m.entries().end());
    auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };
    T prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(at(k, k));
        if (is_zero(at(k, k)) || k + 1 == n) break;
        const T& pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                T t = at(i, j) * pivot - at(i, k) * at(k, j);
                at(i, j) = exact_div(t, prev);
            }
        prev = pivot;
    }
    return out;
}

namespace detail {

inline void check_index_set(std::span<const std::size_t> idx, std::size_t bound) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= bound) throw error(errc::bad_index_sets, "index " + std::to_string(idx[i]) + " out of range");
        if (i > 0 && idx[i] <= idx[i - 1]) throw error(errc::bad_index_sets, "index set must be strictly increasing");
    }
}

}  // namespace detail

template <class T>
matrix<T> submatrix(const matrix<T>& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    detail::check_index_set(rows, m.rows());
    detail::check_index_set(cols, m.cols());
    return matrix<T>(rows.size(), cols.size(), [&](std::size_t i, std::size_t j) { return m(rows[i], cols[j]); });
}

/// Determinant of the submatrix on strictly increasing row/column index sets.
template <class T>
T minor(const matrix<T>& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    if (rows.size() != cols.size()) throw error(errc::bad_index_sets, "row and column sets differ in size");
    return det_bareiss(submatrix(m, rows, cols));
}

template <class T>
T minor(const matrix<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    return minor(m, std::span<const std::size_t>(rows), std::span<const std::size_t>(cols));
}

template <class T>
matrix<T> principal_submatrix(const matrix<T>& m, std::span<const std::size_t> idx) {
    return submatrix(m, idx, idx);
}

template <class T>
matrix<T> principal_submatrix(const matrix<T>& m, const std::vector<std::size_t>& idx) {
    return principal_submatrix(m, std::span<const std::size_t>(idx));
}

// --- compound matrices ------------------------------------------------------

/// All pairs i < j from {0..n-1} in lexicographic order.
inline std::vector<IndexPair> index_pairs(std::size_t n) {
    std::vector<IndexPair> out;
    if (n >= 2) out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

/// Position of p in index_pairs(n).
inline std::size_t pair_position(std::size_t n, IndexPair p) {
    if (p.first >= p.second || p.second >= n) throw error(errc::bad_index_sets, "invalid index pair");
    // pairs starting with i < p.first contribute (n-1-i) each
    const std::size_t before = p.first * (2 * n - p.first - 1) / 2;
    return before + (p.second - p.first - 1);
}

/// Positions of the consecutive pairs (i, i+1), 0 <= i <= n-2, in index_pairs(n).
inline std::vector<std::size_t> consecutive_pair_positions(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(pair_position(n, {i, i + 1}));
    return out;
}

/// Second compound: the C(n,2) x C(n,2) matrix of 2x2 minors, rows and
/// columns indexed by index_pairs(n).
template <class T>
matrix<T> compound2(const matrix<T>& m) {
    if (!m.is_square()) throw error(errc::not_square, "compound of a non-square matrix");
    if (m.rows() < 2) throw error(errc::too_small, "compound needs at least 2 rows");
    const auto pairs = index_pairs(m.rows());
    return matrix<T>(pairs.size(), pairs.size(), [&](std::size_t r, std::size_t c) {
        const auto [i, j] = pairs[r];
        const auto [k, l] = pairs[c];
        return T(m(i, k) * m(j, l) - m(i, l) * m(j, k));
    });
}

}  // namespace lcsm
