#pragma once

/**
 * @file io.hpp
 * @brief JSON encodings for polynomials, matrices, certificates and the
 *        sequence / triangle / recursive-spec input files.
 *
 * A polynomial is an ascending coefficient array, e.g. [1, 3, 1] for
 * 1 + 3q + q^2. A coefficient is a JSON integer when it fits in 64 bits and
 * a string ("123456789012345678901" or "p/q") otherwise. Inputs accept
 * either form, and a bare scalar wherever a constant polynomial is expected.
 */

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "error.hpp"
#include "exact.hpp"
#include "families.hpp"
#include "jacobi.hpp"
#include "matrix.hpp"
#include "operators.hpp"
#include "poly.hpp"
#include "positivity.hpp"
#include "recursive.hpp"

namespace lcsm::io {

using json = nlohmann::ordered_json;

inline json rational_to_json(Rational r) {
    r.canonicalize();
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return json(static_cast<std::int64_t>(r.get_num().get_si()));
    return json(format_rational(r));
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw error(errc::parse_error, "expected an integer or a rational string, got " + j.dump());
}

inline json poly_to_json(const QPoly& p) {
    json arr = json::array();
    for (const auto& c : p.coefficients()) arr.push_back(rational_to_json(c));
    return arr;
}

/// Coefficient array, or a scalar meaning a constant polynomial.
inline QPoly poly_from_json(const json& j) {
    if (!j.is_array()) return QPoly(rational_from_json(j));
    std::vector<Rational> c;
    c.reserve(j.size());
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return QPoly(std::move(c));
}

inline json sequence_to_json(const std::vector<QPoly>& seq) {
    json arr = json::array();
    for (const auto& p : seq) arr.push_back(poly_to_json(p));
    return arr;
}

inline json matrix_to_json(const ExactMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(poly_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ExactMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw error(errc::parse_error, "matrix must be an array of rows");
    std::vector<std::vector<QPoly>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw error(errc::parse_error, "matrix row must be an array");
        std::vector<QPoly> row;
        for (const auto& e : r) row.push_back(poly_from_json(e));
        rows.push_back(std::move(row));
    }
    return ExactMatrix::from_rows(rows);
}

inline json witness_to_json(const witness& w) {
    json j;
    j["rows"] = w.rows;
    j["cols"] = w.cols;
    j["value"] = poly_to_json(w.value);
    if (w.q) j["q"] = format_rational(*w.q);
    if (!w.index.empty()) j["index"] = w.index;
    if (!w.matrix.empty()) j["matrix"] = w.matrix;
    return j;
}

inline json certificate_to_json(const certificate& c) {
    json j;
    j["property"] = std::string(to_string(c.prop));
    j["matrix_size"] = c.matrix_size;
    j["minor_order"] = c.minor_order;
    if (c.q_grid) {
        json grid = json::array();
        for (const auto& q : *c.q_grid) grid.push_back(format_rational(q));
        j["q_grid"] = grid;
    } else {
        j["q_grid"] = nullptr;
    }
    j["result"] = c.passed() ? "pass" : "fail";
    j["witness"] = c.wit ? witness_to_json(*c.wit) : json(nullptr);
    j["verified"] = c.verified;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

/// Per-level term arrays are truncated to max_terms entries.
inline json iteration_report_to_json(const iteration_report& rep, std::size_t max_terms = 6) {
    json j;
    j["depth"] = rep.depth;
    j["input_terms"] = rep.input_terms;
    j["mode"] = rep.mode == positivity_mode::strict ? "strict" : "nonnegative";
    json levels = json::array();
    for (const auto& l : rep.levels) {
        json lj;
        lj["level"] = l.level;
        lj["terms"] = l.terms.size();
        json vals = json::array();
        for (std::size_t k = 0; k < l.terms.size() && k < max_terms; ++k) vals.push_back(poly_to_json(l.terms[k]));
        lj["values"] = vals;
        lj["values_truncated"] = l.terms.size() > max_terms;
        lj["nonnegative"] = l.nonnegative;
        lj["strictly_positive"] = l.strictly_positive;
        const auto& first = rep.mode == positivity_mode::strict ? l.first_nonpositive : l.first_negative;
        lj["first_failing_index"] = first ? json(*first) : json(nullptr);
        lj["result"] = l.passed(rep.mode) ? "pass" : "fail";
        levels.push_back(std::move(lj));
    }
    j["levels"] = levels;
    j["result"] = rep.passed() ? "pass" : "fail";
    j["verified"] = rep.verified();
    return j;
}

inline json jacobi_report_to_json(const jacobi_report& r) {
    json j;
    j["family"] = r.family;
    j["size"] = r.size;
    j["has_printed_certificate"] = r.has_printed;
    j["printed_validates"] = r.printed_validates;
    j["validating_combo"] = r.validating_combo ? json(std::string(to_string(*r.validating_combo))) : json(nullptr);
    j["enumeration_fallback"] = r.enumeration_fallback;
    j["discrepancy"] = r.discrepancy;
    j["summary"] = r.summary;
    j["certificate"] = certificate_to_json(r.cert);
    return j;
}

// --- input files ------------------------------------------------------------

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw error(errc::parse_error, path + ": " + e.what());
    }
}

/// {"name": str, "terms": [coeff-array | integer, ...]}; terms must be
/// q-nonnegative.
inline seq_spec sequence_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw error(errc::parse_error, "sequence document needs a \"terms\" array");
    std::vector<QPoly> terms;
    for (const auto& t : j["terms"]) terms.push_back(poly_from_json(t));
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (!is_nonneg(terms[i]))
            throw error(errc::invalid_params, "term " + std::to_string(i) + " has a negative coefficient");
    return seq_spec::literal(j.value("name", std::string("literal")), std::move(terms));
}

inline seq_spec load_sequence_file(const std::string& path) { return sequence_from_json(read_json_file(path)); }

/// {"name": str, "rows": [[entry, ...], ...]}, row n holding entries k = 0..n.
inline triangle_spec triangle_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw error(errc::parse_error, "triangle document needs a \"rows\" array");
    triangle_spec spec;
    spec.name = j.value("name", std::string("literal_triangle"));
    for (const auto& r : j["rows"]) {
        if (!r.is_array()) throw error(errc::parse_error, "triangle row must be an array");
        std::vector<QPoly> row;
        for (const auto& e : r) {
            row.push_back(poly_from_json(e));
            if (!is_nonneg(row.back())) throw error(errc::invalid_params, "triangle entries must be q-nonnegative");
        }
        spec.rows.push_back(std::move(row));
    }
    if (spec.rows.empty()) throw error(errc::parse_error, "triangle has no rows");
    return spec;
}

inline triangle_spec load_triangle_file(const std::string& path) { return triangle_from_json(read_json_file(path)); }

namespace detail {

/// Either a per-index array (first_index is the index of element 0) or
/// {"affine": {"a": p, "b": p}, "overrides": {"k": p}} meaning a + b k.
inline poly_generator generator_from_json(const json& j, std::size_t first_index, const std::string& what) {
    if (j.is_array()) {
        std::vector<QPoly> values;
        for (const auto& e : j) values.push_back(poly_from_json(e));
        return [values, first_index, what](std::size_t k) {
            if (k < first_index || k - first_index >= values.size())
                throw error(errc::insufficient_terms, what + " has no entry for index " + std::to_string(k));
            return values[k - first_index];
        };
    }
    if (j.is_object() && j.contains("affine")) {
        const auto& aff = j["affine"];
        const QPoly a = poly_from_json(aff.at("a"));
        const QPoly b = poly_from_json(aff.at("b"));
        std::map<std::size_t, QPoly> overrides;
        if (j.contains("overrides"))
            for (const auto& [key, val] : j["overrides"].items()) overrides[std::stoul(key)] = poly_from_json(val);
        return [a, b, overrides](std::size_t k) {
            if (auto it = overrides.find(k); it != overrides.end()) return it->second;
            return a + b * QPoly(static_cast<long>(k));
        };
    }
    throw error(errc::parse_error, what + " must be an array or an affine template");
}

}  // namespace detail

/// {"name": str, "sigma": gen, "tau": gen}. sigma arrays start at s_0, tau
/// arrays at t_1.
inline recursive_spec recursive_from_json(const json& j) {
    if (!j.is_object() || !j.contains("sigma") || !j.contains("tau"))
        throw error(errc::parse_error, "recursive spec needs \"sigma\" and \"tau\"");
    return {j.value("name", std::string("custom")), detail::generator_from_json(j["sigma"], 0, "sigma"),
            detail::generator_from_json(j["tau"], 1, "tau")};
}

inline recursive_spec load_recursive_file(const std::string& path) { return recursive_from_json(read_json_file(path)); }

}  // namespace lcsm::io
