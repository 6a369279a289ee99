#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials in q over an exact field.
 *
 * Coefficients are stored in ascending degree order. The highest stored
 * coefficient is always nonzero; the zero polynomial has no coefficients.
 */

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "exact.hpp"

namespace lcsm {

/// Degree reported for the zero polynomial. Never feed it into arithmetic.
inline constexpr std::ptrdiff_t zero_degree = std::numeric_limits<std::ptrdiff_t>::min();

template <class F>
class polynomial {
public:
    using coefficient_type = F;

    polynomial() = default;

    polynomial(const F& constant) {
        if (constant != 0) coeffs_.push_back(constant);
    }

    template <std::integral I>
    polynomial(I constant) : polynomial(F(static_cast<long>(constant))) {}

    polynomial(std::initializer_list<F> coeffs) : coeffs_(coeffs) { normalize(); }

    explicit polynomial(std::vector<F> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static polynomial monomial(const F& c, std::size_t degree) {
        std::vector<F> coeffs(degree + 1, F(0));
        coeffs[degree] = c;
        return polynomial(std::move(coeffs));
    }

    /// The indeterminate q.
    static polynomial q() { return monomial(F(1), 1); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    std::ptrdiff_t degree() const noexcept {
        return coeffs_.empty() ? zero_degree : static_cast<std::ptrdiff_t>(coeffs_.size()) - 1;
    }

    const std::vector<F>& coefficients() const noexcept { return coeffs_; }

    F coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : F(0); }
    F constant_term() const { return coefficient(0); }
    F leading_coefficient() const { return coeffs_.empty() ? F(0) : coeffs_.back(); }

    /// Horner evaluation.
    F operator()(const F& x) const {
        F acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    polynomial& operator+=(const polynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), F(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
        normalize();
        return *this;
    }

    polynomial& operator-=(const polynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), F(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
        normalize();
        return *this;
    }

    polynomial& operator*=(const polynomial& rhs) { return *this = *this * rhs; }

    friend polynomial operator+(polynomial lhs, const polynomial& rhs) { return lhs += rhs; }
    friend polynomial operator-(polynomial lhs, const polynomial& rhs) { return lhs -= rhs; }

    friend polynomial operator-(polynomial p) {
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }

    friend polynomial operator*(const polynomial& lhs, const polynomial& rhs) {
        if (lhs.is_zero() || rhs.is_zero()) return {};
        std::vector<F> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, F(0));
        for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
            if (lhs.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
        return polynomial(std::move(out));
    }

    friend bool operator==(const polynomial& a, const polynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<F> coeffs_;
};

using QPoly = polynomial<Rational>;

template <class F>
polynomial<F> pow(polynomial<F> base, unsigned exponent) {
    polynomial<F> result(F(1));
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base *= base;
    }
    return result;
}

/// Quotient of p by d, which must divide p exactly. Any remainder throws
/// NonExactDivision: in fraction-free elimination that is a logic error.
template <class F>
polynomial<F> exact_div(const polynomial<F>& p, const polynomial<F>& d) {
    if (d.is_zero()) throw error(errc::non_exact_division, "division by the zero polynomial");
    if (p.is_zero()) return {};
    if (p.degree() < d.degree()) throw error(errc::non_exact_division, "divisor degree exceeds dividend degree");

    const auto& dc = d.coefficients();
    const std::size_t dn = dc.size() - 1;
    std::vector<F> rem = p.coefficients();
    std::vector<F> quot(rem.size() - dn, F(0));
    const F& lead = dc.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        F c = rem[k + dn] / lead;
        if (c == 0) continue;
        quot[k] = c;
        for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= c * dc[j];
    }
    for (std::size_t j = 0; j < dn; ++j)
        if (rem[j] != 0) throw error(errc::non_exact_division, "nonzero remainder");
    return polynomial<F>(std::move(quot));
}

/// Field division, so that generic elimination code can call exact_div on scalars.
inline Rational exact_div(const Rational& p, const Rational& d) {
    if (d == 0) throw error(errc::non_exact_division, "division by zero");
    return p / d;
}

inline bool is_zero(const Rational& r) { return r == 0; }

template <class F>
bool is_zero(const polynomial<F>& p) {
    return p.is_zero();
}

/// q-nonnegativity: every coefficient is >= 0. The zero polynomial qualifies.
template <class F>
bool is_nonneg(const polynomial<F>& p) {
    return std::all_of(p.coefficients().begin(), p.coefficients().end(), [](const F& c) { return c >= 0; });
}

inline bool is_nonneg(const Rational& r) { return r >= 0; }

/// f >=_q g.
template <class F>
bool geq_q(const polynomial<F>& f, const polynomial<F>& g) {
    return is_nonneg(f - g);
}

template <class F>
F eval(const polynomial<F>& p, const F& x) {
    return p(x);
}

/// Human-readable form, e.g. "1 + 3q + q^2".
inline std::string to_string(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        Rational mag = abs(c[k]);
        if (out.empty()) {
            if (c[k] < 0) out += "-";
        } else {
            out += c[k] < 0 ? " - " : " + ";
        }
        if (k == 0 || mag != 1) out += format_rational(mag);
        if (k >= 1) out += "q";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << to_string(p); }

}  // namespace lcsm
