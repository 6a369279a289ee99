#pragma once

/**
 * @file error.hpp
 * @brief Error codes shared by every lcsm module.
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcsm {

enum class errc {
    non_exact_division,
    unknown_family,
    unknown_triangle,
    invalid_params,
    insufficient_terms,
    empty_sequence,
    too_short,
    too_small,
    not_square,
    not_symmetric,
    bad_index_sets,
    negative_q_value,
    shape_mismatch,
    non_constant,
    parse_error,
};

constexpr std::string_view to_string(errc code) {
    switch (code) {
        case errc::non_exact_division: return "NonExactDivision";
        case errc::unknown_family: return "UnknownFamily";
        case errc::unknown_triangle: return "UnknownTriangle";
        case errc::invalid_params: return "InvalidParams";
        case errc::insufficient_terms: return "InsufficientTerms";
        case errc::empty_sequence: return "EmptySequence";
        case errc::too_short: return "TooShort";
        case errc::too_small: return "TooSmall";
        case errc::not_square: return "NotSquare";
        case errc::not_symmetric: return "NotSymmetric";
        case errc::bad_index_sets: return "BadIndexSets";
        case errc::negative_q_value: return "NegativeQValue";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::non_constant: return "NonConstant";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace lcsm
