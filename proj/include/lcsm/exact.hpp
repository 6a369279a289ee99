#pragma once

/**
 * @file exact.hpp
 * @brief Arbitrary-precision integer and rational scalars.
 *
 * Integer and Rational are the GMP C++ classes. mpq_class keeps values in
 * lowest terms with a positive denominator as long as every value is built
 * through its arithmetic operators or canonicalized after raw construction;
 * the helpers here always canonicalize.
 */

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "error.hpp"

namespace lcsm {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw error(errc::invalid_params, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q" (surrounding whitespace not allowed).
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw error(errc::parse_error, "empty rational");
    auto valid_int = [](std::string_view s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string_view s) {
        return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_int(text)) throw error(errc::parse_error, "bad rational '" + std::string(text) + "'");
        return Rational(Integer(strip_plus(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw error(errc::parse_error, "bad rational '" + std::string(text) + "'");
    return make_rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
}

/// "p" for integers, "p/q" otherwise.
inline std::string format_rational(Rational r) {
    r.canonicalize();
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integral(const Rational& r) { return mpz_divisible_p(r.get_num_mpz_t(), r.get_den_mpz_t()) != 0; }

}  // namespace lcsm
