#pragma once

// Command-line front end for lcsm. Kept header-only so the test suite can
// drive it in-process through run().

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <lcsm/lcsm.hpp>

namespace lcsm::cli {

using io::json;

inline constexpr const char* tool_version = "0.1.0";

namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int operational = 1;
inline constexpr int usage = 2;
inline constexpr int fail = 3;
}  // namespace exit_code

struct caps {
    std::size_t max_n = 64;           // generated terms
    std::size_t max_depth = 6;        // operator iterations
    std::size_t max_hankel = 12;      // Hankel order n
    std::size_t max_minor_order = 5;  // order of enumerated minors
    std::size_t max_tp_matrix = 10;   // side of a matrix whose minors are enumerated
};

struct run_config {
    std::string command;
    std::string family;
    std::string family_y;
    std::string seq_file;
    std::string triangle;
    std::string triangle_file;
    std::string recursive;
    std::string recursive_file;
    std::string property;
    std::string matrix = "hankel";
    std::string op = "logconvex";
    long r = 0;
    long s = 0;
    std::optional<std::size_t> n;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> max_order;
    std::optional<std::size_t> sm_order;
    std::optional<std::size_t> q_sm_order;
    std::optional<std::size_t> slcx_prefix;
    std::optional<std::size_t> check_sm;
    std::optional<std::string> q;
    bool symbolic_q = false;
    std::vector<std::string> q_grid;
    bool strict = false;
    std::string format;
    std::size_t show_terms = 6;
    caps limits;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- config (de)serialization -------------------------------------------------

namespace detail {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<T>();
}

}  // namespace detail

inline json config_to_json(const run_config& c) {
    json j;
    j["command"] = c.command;
    j["family"] = c.family;
    j["family_y"] = c.family_y;
    j["seq_file"] = c.seq_file;
    j["triangle"] = c.triangle;
    j["triangle_file"] = c.triangle_file;
    j["recursive"] = c.recursive;
    j["recursive_file"] = c.recursive_file;
    j["property"] = c.property;
    j["matrix"] = c.matrix;
    j["operator"] = c.op;
    j["r"] = c.r;
    j["s"] = c.s;
    j["n"] = detail::opt(c.n);
    j["depth"] = detail::opt(c.depth);
    j["max_order"] = detail::opt(c.max_order);
    j["sm_order"] = detail::opt(c.sm_order);
    j["q_sm_order"] = detail::opt(c.q_sm_order);
    j["slcx_prefix"] = detail::opt(c.slcx_prefix);
    j["check_sm"] = detail::opt(c.check_sm);
    j["q"] = detail::opt(c.q);
    j["symbolic_q"] = c.symbolic_q;
    j["q_grid"] = c.q_grid;
    j["strict"] = c.strict;
    j["format"] = c.format;
    j["show_terms"] = c.show_terms;
    j["caps"] = {{"max_n", c.limits.max_n},
                 {"max_depth", c.limits.max_depth},
                 {"max_hankel", c.limits.max_hankel},
                 {"max_minor_order", c.limits.max_minor_order},
                 {"max_tp_matrix", c.limits.max_tp_matrix}};
    return j;
}

inline run_config config_from_json(const json& j) {
    run_config c;
    try {
        c.command = j.at("command").get<std::string>();
        c.family = j.value("family", std::string());
        c.family_y = j.value("family_y", std::string());
        c.seq_file = j.value("seq_file", std::string());
        c.triangle = j.value("triangle", std::string());
        c.triangle_file = j.value("triangle_file", std::string());
        c.recursive = j.value("recursive", std::string());
        c.recursive_file = j.value("recursive_file", std::string());
        c.property = j.value("property", std::string());
        c.matrix = j.value("matrix", std::string("hankel"));
        c.op = j.value("operator", std::string("logconvex"));
        c.r = j.value("r", 0L);
        c.s = j.value("s", 0L);
        c.n = detail::get_opt<std::size_t>(j, "n");
        c.depth = detail::get_opt<std::size_t>(j, "depth");
        c.max_order = detail::get_opt<std::size_t>(j, "max_order");
        c.sm_order = detail::get_opt<std::size_t>(j, "sm_order");
        c.q_sm_order = detail::get_opt<std::size_t>(j, "q_sm_order");
        c.slcx_prefix = detail::get_opt<std::size_t>(j, "slcx_prefix");
        c.check_sm = detail::get_opt<std::size_t>(j, "check_sm");
        c.q = detail::get_opt<std::string>(j, "q");
        c.symbolic_q = j.value("symbolic_q", false);
        c.q_grid = j.value("q_grid", std::vector<std::string>{});
        c.strict = j.value("strict", false);
        c.format = j.value("format", std::string());
        c.show_terms = j.value("show_terms", std::size_t{6});
        if (j.contains("caps")) {
            const auto& k = j["caps"];
            c.limits.max_n = k.value("max_n", c.limits.max_n);
            c.limits.max_depth = k.value("max_depth", c.limits.max_depth);
            c.limits.max_hankel = k.value("max_hankel", c.limits.max_hankel);
            c.limits.max_minor_order = k.value("max_minor_order", c.limits.max_minor_order);
            c.limits.max_tp_matrix = k.value("max_tp_matrix", c.limits.max_tp_matrix);
        }
    } catch (const json::exception& e) {
        throw usage_error(std::string("bad config: ") + e.what());
    }
    return c;
}

// --- rendering ----------------------------------------------------------------

namespace detail {

inline std::string coeff_array_text(const QPoly& p) {
    std::string s = "[";
    const auto& c = p.coefficients();
    if (c.empty()) s += "0";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + format_rational(c[i]);
    return s + "]";
}

inline bool all_constant(const std::vector<QPoly>& seq) {
    return std::all_of(seq.begin(), seq.end(), [](const QPoly& p) { return p.is_constant(); });
}

/// "1 1 2 5" for constant sequences, "[1],[1,1],[1,4,1]" otherwise.
inline std::string terms_text(const std::vector<QPoly>& seq) {
    std::string s;
    const bool constant = all_constant(seq);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) s += constant ? " " : ",";
        s += constant ? format_rational(seq[i].constant_term()) : coeff_array_text(seq[i]);
    }
    return s;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string index_list(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

inline const char* csv_cert_header = "property,matrix_size,minor_order,q_grid,result,witness_rows,witness_cols,witness_value,verified";

inline std::string csv_cert_row(const certificate& c) {
    std::string grid;
    if (c.q_grid)
        for (const auto& q : *c.q_grid) grid += (grid.empty() ? "" : ",") + format_rational(q);
    std::ostringstream os;
    os << to_string(c.prop) << ',' << c.matrix_size << ',' << c.minor_order << ',' << csv_quote(grid) << ','
       << (c.passed() ? "pass" : "fail") << ',' << csv_quote(c.wit ? index_list(c.wit->rows) : "") << ','
       << csv_quote(c.wit ? index_list(c.wit->cols) : "") << ','
       << csv_quote(c.wit ? coeff_array_text(c.wit->value) : "") << ',' << csv_quote(c.verified);
    return os.str();
}

inline std::string cert_text(const certificate& c) {
    std::ostringstream os;
    os << to_string(c.prop) << ": " << (c.passed() ? "pass" : "fail") << " (" << c.verified << ")\n";
    if (c.wit) {
        const auto& w = *c.wit;
        os << "  witness:";
        if (!w.matrix.empty()) os << " matrix=" << w.matrix;
        if (!w.rows.empty()) os << " rows=" << index_list(w.rows) << " cols=" << index_list(w.cols);
        if (!w.index.empty()) os << " index=" << index_list(w.index);
        if (w.q) os << " q=" << format_rational(*w.q);
        os << " value=" << coeff_array_text(w.value) << "\n";
    }
    if (!c.note.empty()) os << "  note: " << c.note << "\n";
    return os.str();
}

inline json report_header(const run_config& c) {
    json j;
    j["config"] = config_to_json(c);
    j["tool_version"] = tool_version;
    return j;
}

inline json merged_certificate(const run_config& c, const certificate& cert) {
    json j = report_header(c);
    const json body = io::certificate_to_json(cert);
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j;
}

}  // namespace detail

// --- command implementations ----------------------------------------------------

struct outcome {
    std::string text;
    int code = exit_code::pass;
};

namespace detail {

inline void require_cap(bool ok, const std::string& what) {
    if (!ok) throw cap_violation("cap exceeded: " + what);
}

inline std::optional<Rational> q_value(const run_config& c) {
    if (!c.q) return std::nullopt;
    return parse_rational(*c.q);
}

inline seq_spec resolve_spec(const run_config& c, bool second) {
    if (!second && !c.seq_file.empty()) return io::load_sequence_file(c.seq_file);
    const std::string& name = second && !c.family_y.empty() ? c.family_y : c.family;
    if (second && c.family_y.empty() && !c.seq_file.empty()) return io::load_sequence_file(c.seq_file);
    if (name.empty()) throw usage_error("a sequence is required: --family NAME or --seq-file FILE");
    if (!is_known_family(name)) throw error(errc::unknown_family, "no family named '" + name + "'");
    seq_spec spec = seq_spec::named(name);
    if (name == "apery_general") {
        spec.params["r"] = c.r;
        spec.params["s"] = c.s;
    }
    return spec;
}

/// count terms of the configured sequence, specialized at --q when given.
inline std::vector<QPoly> sequence_terms(const run_config& c, std::size_t count, bool second = false) {
    require_cap(count <= c.limits.max_n,
                std::to_string(count) + " terms requested, --max-n is " + std::to_string(c.limits.max_n));
    const seq_spec spec = resolve_spec(c, second);
    auto terms = gen_sequence(spec, count);
    if (const auto q = q_value(c)) terms = as_constants(specialize(terms, *q));
    return terms;
}

inline std::vector<Rational> numeric_terms(const run_config& c, std::size_t count) {
    const auto terms = sequence_terms(c, count);
    try {
        return constants_of(terms);
    } catch (const error&) {
        throw error(errc::non_constant, "sequence has polynomial terms; pass --q VALUE for a numeric check");
    }
}

inline triangle_spec resolve_triangle(const run_config& c) {
    if (!c.triangle_file.empty()) return io::load_triangle_file(c.triangle_file);
    if (c.triangle.empty()) throw usage_error("a triangle is required: --triangle NAME or --triangle-file FILE");
    const auto& names = triangle_names();
    if (std::find(names.begin(), names.end(), c.triangle) == names.end())
        throw error(errc::unknown_triangle, "no triangle named '" + c.triangle + "'");
    return triangle_spec::named(c.triangle);
}

inline recursive_spec resolve_recursive(const run_config& c) {
    if (!c.recursive_file.empty()) return io::load_recursive_file(c.recursive_file);
    if (c.recursive.empty()) throw usage_error("--recursive NAME or --recursive-file FILE is required");
    const auto& names = recursive_preset_names();
    if (std::find(names.begin(), names.end(), c.recursive) == names.end())
        throw error(errc::unknown_family, "no recursive preset named '" + c.recursive + "'");
    return recursive_preset(c.recursive);
}

inline std::vector<Rational> q_grid_of(const run_config& c) {
    if (c.q_grid.empty()) return default_psm_grid();
    std::vector<Rational> grid;
    for (const auto& s : c.q_grid) grid.push_back(parse_rational(s));
    return grid;
}

inline std::string render_sequence(const run_config& c, const std::string& label, const std::vector<QPoly>& terms,
                                   const certificate* cert = nullptr) {
    if (c.format == "json") {
        json j = report_header(c);
        j["sequence"] = label;
        j["terms"] = io::sequence_to_json(terms);
        if (cert) j["certificate"] = io::certificate_to_json(*cert);
        return j.dump(2) + "\n";
    }
    if (c.format == "csv") {
        std::string s = "n,value\n";
        for (std::size_t i = 0; i < terms.size(); ++i) s += std::to_string(i) + "," + csv_quote(coeff_array_text(terms[i])) + "\n";
        if (cert) s += std::string(csv_cert_header) + "\n" + csv_cert_row(*cert) + "\n";
        return s;
    }
    std::string s = terms_text(terms) + "\n";
    if (cert) s += cert_text(*cert);
    return s;
}

inline std::string render_certificate(const run_config& c, const certificate& cert, const json* extra = nullptr,
                                      const std::string& extra_key = {}) {
    if (c.format == "json") {
        json j = merged_certificate(c, cert);
        if (extra) j[extra_key] = *extra;
        return j.dump(2) + "\n";
    }
    if (c.format == "csv") return std::string(csv_cert_header) + "\n" + csv_cert_row(cert) + "\n";
    return cert_text(cert);
}

}  // namespace detail

inline outcome cmd_generate(const run_config& c) {
    const std::size_t n = c.n.value_or(10);
    if (!c.triangle.empty() || !c.triangle_file.empty()) {
        detail::require_cap(n <= c.limits.max_n, "rows exceed --max-n");
        const auto tri = detail::resolve_triangle(c);
        const auto m = gen_triangle(tri, n);
        if (c.format == "json") {
            json j = detail::report_header(c);
            j["triangle"] = tri.name;
            json rows = json::array();
            for (std::size_t i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (std::size_t k = 0; k <= i; ++k) row.push_back(io::poly_to_json(m(i, k)));
                rows.push_back(row);
            }
            j["rows"] = rows;
            return {j.dump(2) + "\n"};
        }
        std::string s;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<QPoly> row(m.row(i).begin(), m.row(i).begin() + static_cast<std::ptrdiff_t>(i + 1));
            s += (c.format == "csv" ? std::to_string(i) + "," + detail::csv_quote(detail::terms_text(row))
                                    : detail::terms_text(row)) +
                 "\n";
        }
        return {s};
    }
    const auto terms = detail::sequence_terms(c, n);
    return {detail::render_sequence(c, detail::resolve_spec(c, false).name, terms)};
}

inline outcome cmd_check(const run_config& c) {
    const std::string& p = c.property;
    const std::size_t n = c.n.value_or(4);
    const auto& lim = c.limits;
    certificate cert;
    std::optional<json> extra;
    std::string extra_key;

    auto hankel_cap = [&] {
        detail::require_cap(n <= lim.max_hankel, "Hankel order " + std::to_string(n) + " exceeds " +
                                                     std::to_string(lim.max_hankel));
    };
    auto minor_order_for = [&](std::size_t side) {
        const std::size_t order = c.max_order.value_or(std::min(side, lim.max_minor_order));
        detail::require_cap(order <= lim.max_minor_order, "minor order " + std::to_string(order) + " exceeds " +
                                                              std::to_string(lim.max_minor_order));
        detail::require_cap(side <= lim.max_tp_matrix, "matrix side " + std::to_string(side) + " exceeds " +
                                                           std::to_string(lim.max_tp_matrix));
        return order;
    };

    if (p == "sm") {
        hankel_cap();
        cert = check_sm(detail::numeric_terms(c, 2 * n + 2), n);
    } else if (p == "pos-def") {
        hankel_cap();
        cert = check_pos_def(hankel(as_constants(detail::numeric_terms(c, 2 * n + 1)), n));
    } else if (p == "psm") {
        hankel_cap();
        const auto grid = detail::q_grid_of(c);
        if (c.q) throw usage_error("--property psm samples its own q values; use --q-grid");
        cert = check_psm(detail::sequence_terms(c, 2 * n + 2), n, grid);
    } else if (p == "q-sm") {
        hankel_cap();
        const std::size_t order = minor_order_for(n + 1);
        cert = check_q_sm(detail::sequence_terms(c, 2 * n + 1), n, order);
    } else if (p == "tp" || p == "tp2") {
        const bool toep = c.matrix == "toeplitz";
        if (c.matrix != "hankel" && !toep) throw usage_error("--matrix must be hankel or toeplitz");
        const auto terms = detail::sequence_terms(c, toep ? n + 1 : 2 * n + 1);
        const auto m = toep ? toeplitz(terms, n) : hankel(terms, n);
        if (p == "tp2") {
            detail::require_cap(n + 1 <= lim.max_tp_matrix, "matrix side exceeds cap");
            cert = check_tp2(m);
        } else {
            cert = check_tp(m, minor_order_for(n + 1));
        }
    } else if (p == "log-convex") {
        cert = check_log_convex(detail::sequence_terms(c, n));
    } else if (p == "q-slcx") {
        cert = check_q_slcx(detail::sequence_terms(c, n));
    } else if (p == "m-log-convex") {
        const std::size_t depth = c.depth.value_or(2);
        detail::require_cap(depth <= lim.max_depth, "depth exceeds --max-depth");
        cert = to_certificate(iterate_logconvex(detail::sequence_terms(c, n), depth,
                                                c.strict ? positivity_mode::strict : positivity_mode::nonnegative));
    } else if (p == "q-tp") {
        const std::size_t order = minor_order_for(n);
        const auto rep = certify_jacobi(detail::resolve_recursive(c), n, order);
        cert = rep.cert;
        extra = io::jacobi_report_to_json(rep);
        extra_key = "jacobi";
    } else if (p.empty()) {
        throw usage_error("--property is required");
    } else {
        throw usage_error("unknown property '" + p + "'");
    }
    return {detail::render_certificate(c, cert, extra ? &*extra : nullptr, extra_key),
            cert.passed() ? exit_code::pass : exit_code::fail};
}

inline outcome cmd_iterate(const run_config& c) {
    const std::size_t n = c.n.value_or(20);
    const std::size_t depth = c.depth.value_or(2);
    detail::require_cap(depth <= c.limits.max_depth, "depth " + std::to_string(depth) + " exceeds --max-depth " +
                                                         std::to_string(c.limits.max_depth));
    const auto terms = detail::sequence_terms(c, n);
    const auto mode = c.strict ? positivity_mode::strict : positivity_mode::nonnegative;
    iteration_report rep;
    if (c.op == "logconvex") rep = iterate_logconvex(terms, depth, mode);
    else if (c.op == "logconcave") rep = iterate_logconcave(terms, depth, mode);
    else throw usage_error("--operator must be logconvex or logconcave");

    std::string text;
    if (c.format == "json") {
        json j = detail::report_header(c);
        j["operator"] = c.op;
        j["report"] = io::iteration_report_to_json(rep, c.show_terms);
        text = j.dump(2) + "\n";
    } else if (c.format == "csv") {
        text = "level,terms,nonnegative,strictly_positive,first_failing_index,result\n";
        for (const auto& l : rep.levels) {
            const auto& first = rep.mode == positivity_mode::strict ? l.first_nonpositive : l.first_negative;
            text += std::to_string(l.level) + "," + std::to_string(l.terms.size()) + "," +
                    (l.nonnegative ? "true" : "false") + "," + (l.strictly_positive ? "true" : "false") + "," +
                    (first ? std::to_string(*first) : "") + "," + (l.passed(rep.mode) ? "pass" : "fail") + "\n";
        }
    } else {
        for (const auto& l : rep.levels) {
            text += "level " + std::to_string(l.level) + " (" + std::to_string(l.terms.size()) +
                    " terms): " + (l.passed(rep.mode) ? "pass" : "fail");
            const auto& first = rep.mode == positivity_mode::strict ? l.first_nonpositive : l.first_negative;
            if (first) text += " at k=" + std::to_string(*first);
            text += "\n";
        }
        text += std::string(rep.passed() ? "pass" : "fail") + " (" + rep.verified() + ")\n";
    }
    return {text, rep.passed() ? exit_code::pass : exit_code::fail};
}

namespace detail {

inline outcome transform_like(const run_config& c, bool convolution) {
    std::size_t n = c.n.value_or(8);
    // SM at order k reads 2k + 2 terms of the output
    if (c.check_sm) n = std::max(n, 2 * *c.check_sm + 2);
    const auto tri = resolve_triangle(c);
    const auto x = sequence_terms(c, n);
    std::vector<QPoly> z;
    if (convolution) {
        const auto y = sequence_terms(c, n, true);
        z = apply_convolution(tri, x, y, n);
    } else {
        z = apply_transform(tri, x, n);
    }
    std::optional<certificate> cert;
    if (c.check_sm) {
        const std::size_t order = *c.check_sm;
        require_cap(order <= c.limits.max_hankel, "Hankel order exceeds cap");
        std::vector<Rational> vals;
        try {
            vals = constants_of(z);
        } catch (const error&) {
            throw error(errc::non_constant, "--check-sm needs numeric output; pass --q VALUE");
        }
        cert = check_sm(vals, order);
    }
    std::string label = tri.name + "(" + resolve_spec(c, false).name +
                        (convolution ? ", " + resolve_spec(c, true).name : std::string()) + ")";
    return {render_sequence(c, label, z, cert ? &*cert : nullptr),
            !cert || cert->passed() ? exit_code::pass : exit_code::fail};
}

}  // namespace detail

inline outcome cmd_transform(const run_config& c) { return detail::transform_like(c, false); }
inline outcome cmd_convolve(const run_config& c) { return detail::transform_like(c, true); }

/// Finite exploration of A_n(r,s;q): iterated log-convexity and SM at a fixed
/// q, or q-SLCX / q-SM of the polynomials themselves.
inline outcome cmd_explore(const run_config& c) {
    if (c.r < 1 || c.s < 1) throw error(errc::invalid_params, "--r and --s must be positive integers");
    if (c.symbolic_q == c.q.has_value()) throw usage_error("explore needs exactly one of --q VALUE or --symbolic-q");
    const auto& lim = c.limits;
    const std::size_t n = c.n.value_or(24);
    const auto mode = c.strict ? positivity_mode::strict : positivity_mode::nonnegative;

    std::optional<std::size_t> depth = c.depth;
    if (!c.symbolic_q && !depth) depth = 3;
    const std::optional<std::size_t> slcx = c.symbolic_q ? std::optional<std::size_t>(c.slcx_prefix.value_or(8))
                                                         : c.slcx_prefix;
    std::size_t needed = 0;
    if (depth) {
        detail::require_cap(*depth <= lim.max_depth, "depth exceeds --max-depth");
        needed = std::max(needed, n);
    }
    if (c.sm_order) {
        if (c.symbolic_q) throw usage_error("--sm-order is a numeric check; use --q VALUE");
        detail::require_cap(*c.sm_order <= lim.max_hankel, "SM order exceeds Hankel cap");
        needed = std::max(needed, 2 * *c.sm_order + 2);
    }
    std::size_t q_sm_minor = 0;
    if (c.q_sm_order) {
        detail::require_cap(*c.q_sm_order <= lim.max_hankel, "q-SM order exceeds Hankel cap");
        q_sm_minor = c.max_order.value_or(std::min(*c.q_sm_order + 1, lim.max_minor_order));
        detail::require_cap(q_sm_minor <= lim.max_minor_order, "minor order exceeds cap");
        detail::require_cap(*c.q_sm_order + 1 <= lim.max_tp_matrix, "matrix side exceeds cap");
        needed = std::max(needed, 2 * *c.q_sm_order + 1);
    }
    if (slcx) needed = std::max(needed, *slcx);
    if (needed == 0) throw usage_error("nothing to explore");
    detail::require_cap(needed <= lim.max_n, std::to_string(needed) + " terms needed, --max-n is " +
                                                 std::to_string(lim.max_n));

    const auto polys = gen_sequence(seq_spec::apery(c.r, c.s), needed);
    std::vector<QPoly> at_q = polys;
    if (c.q) at_q = as_constants(specialize(polys, parse_rational(*c.q)));

    struct check_result {
        std::string id;
        certificate cert;
        double wall_ms = 0;
    };
    using task = std::function<certificate()>;
    std::vector<std::pair<std::string, task>> tasks;
    if (depth) {
        std::vector<QPoly> prefix(at_q.begin(), at_q.begin() + static_cast<std::ptrdiff_t>(n));
        const std::size_t d = *depth;
        tasks.emplace_back("iterate", [prefix, d, mode] { return to_certificate(iterate_logconvex(prefix, d, mode)); });
    }
    if (c.sm_order) {
        const std::size_t order = *c.sm_order;
        tasks.emplace_back("sm", [&at_q, order] { return check_sm(constants_of(at_q), order); });
    }
    if (slcx) {
        std::vector<QPoly> prefix(at_q.begin(), at_q.begin() + static_cast<std::ptrdiff_t>(*slcx));
        tasks.emplace_back("q_slcx", [prefix] { return check_q_slcx(prefix); });
    }
    if (c.q_sm_order) {
        const std::size_t order = *c.q_sm_order;
        tasks.emplace_back("q_sm", [&at_q, order, q_sm_minor] { return check_q_sm(at_q, order, q_sm_minor); });
    }

    std::vector<std::future<check_result>> futures;
    for (auto& [id, fn] : tasks)
        futures.push_back(std::async(std::launch::async, [id = id, fn = fn] {
            const auto t0 = std::chrono::steady_clock::now();
            certificate cert = fn();
            const auto t1 = std::chrono::steady_clock::now();
            return check_result{id, std::move(cert), std::chrono::duration<double, std::milli>(t1 - t0).count()};
        }));
    std::vector<check_result> results;
    for (auto& f : futures) results.push_back(f.get());
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    const bool all_pass = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.cert.passed(); });
    std::string family = "A_n(" + std::to_string(c.r) + "," + std::to_string(c.s) + ";" +
                         (c.q ? format_rational(parse_rational(*c.q)) : std::string("q")) + ")";
    std::string text;
    if (c.format == "json") {
        json j = detail::report_header(c);
        j["family"] = {{"name", "apery_general"},
                       {"r", c.r},
                       {"s", c.s},
                       {"q", c.q ? json(format_rational(parse_rational(*c.q))) : json("symbolic")}};
        json checks = json::array();
        for (const auto& r : results)
            checks.push_back({{"id", r.id}, {"certificate", io::certificate_to_json(r.cert)}, {"wall_ms", r.wall_ms}});
        j["checks"] = checks;
        j["result"] = all_pass ? "pass" : "fail";
        j["summary"] = family + ": finite verification only, not a proof";
        text = j.dump(2) + "\n";
    } else if (c.format == "csv") {
        text = std::string("id,") + detail::csv_cert_header + ",wall_ms\n";
        for (const auto& r : results) {
            std::ostringstream ms;
            ms << r.wall_ms;
            text += r.id + "," + detail::csv_cert_row(r.cert) + "," + ms.str() + "\n";
        }
    } else {
        text = family + "\n";
        for (const auto& r : results) text += "[" + r.id + "] " + detail::cert_text(r.cert);
        text += std::string(all_pass ? "pass" : "fail") + ": finite verification only, not a proof\n";
    }
    return {text, all_pass ? exit_code::pass : exit_code::fail};
}

inline outcome dispatch(const run_config& c) {
    if (c.format != "json" && c.format != "csv" && c.format != "text")
        throw usage_error("--format must be json, csv or text");
    if (c.command == "generate") return cmd_generate(c);
    if (c.command == "check") return cmd_check(c);
    if (c.command == "iterate") return cmd_iterate(c);
    if (c.command == "transform") return cmd_transform(c);
    if (c.command == "convolve") return cmd_convolve(c);
    if (c.command == "explore") return cmd_explore(c);
    throw usage_error("unknown command '" + c.command + "'");
}

/// Parses argv-style arguments (without the program name) and runs the
/// command. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact certification of log-convexity, total positivity and Stieltjes moment properties", "lcsm"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", tool_version);

    run_config c;
    std::string format, config_file, out_file;
    std::string q_text, grid_text;
    app.add_option("--format", format, "Output format: json, csv or text");
    app.add_option("--out", out_file, "Write the report to FILE instead of stdout");
    app.add_option("--config", config_file, "Re-run the config embedded in a JSON report");
    app.add_option("--max-n", c.limits.max_n, "Cap on generated terms");
    app.add_option("--max-depth", c.limits.max_depth, "Cap on operator iterations");
    app.add_option("--hankel-cap", c.limits.max_hankel, "Cap on Hankel order");
    app.add_option("--minor-cap", c.limits.max_minor_order, "Cap on enumerated minor order");
    app.add_option("--tp-matrix-cap", c.limits.max_tp_matrix, "Cap on the side of enumerated matrices");
    auto* max_order = app.add_option("--max-order", "Largest minor order to enumerate");
    app.add_option("--seq-file", c.seq_file, "Sequence JSON file");
    app.add_option("--triangle-file", c.triangle_file, "Triangle JSON file");
    app.add_option("--recursive-file", c.recursive_file, "Recursive spec JSON file");
    app.add_option("--family", c.family, "Sequence family");
    app.add_option("--family-y", c.family_y, "Second sequence for convolve (defaults to --family)");
    app.add_option("--triangle", c.triangle, "Triangle name");
    app.add_option("--recursive", c.recursive, "Recursive preset for --property q-tp");
    app.add_option("--property", c.property,
                   "sm, pos-def, psm, q-sm, tp, tp2, log-convex, q-slcx, m-log-convex, q-tp");
    app.add_option("--matrix", c.matrix, "hankel or toeplitz (tp, tp2)");
    app.add_option("--operator", c.op, "logconvex or logconcave (iterate)");
    app.add_option("--r", c.r, "Apery exponent r");
    app.add_option("--s", c.s, "Apery exponent s");
    auto* n_opt = app.add_option("--n", "Order or number of terms");
    auto* depth_opt = app.add_option("--depth", "Operator iterations");
    auto* sm_opt = app.add_option("--sm-order", "SM Hankel order (explore)");
    auto* qsm_opt = app.add_option("--q-sm-order", "q-SM Hankel order (explore)");
    auto* slcx_opt = app.add_option("--slcx-prefix", "q-SLCX prefix length (explore)");
    auto* check_sm_opt = app.add_option("--check-sm", "Certify the transform output SM at this order");
    auto* q_opt = app.add_option("--q", q_text, "Evaluate at q = VALUE (rational)");
    app.add_option("--q-grid", grid_text, "Comma-separated q values for psm");
    app.add_flag("--symbolic-q", c.symbolic_q, "Keep q symbolic (explore)");
    app.add_flag("--strict", c.strict, "Require strict positivity at every level");
    app.add_option("--show-terms", c.show_terms, "Terms shown per iteration level");

    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const char* name : {"generate", "check", "iterate", "transform", "convolve", "explore"})
        subs.emplace_back(name, app.add_subcommand(name));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_code::usage;
    }

    auto size_opt = [](CLI::Option* o) -> std::optional<std::size_t> {
        if (o->count() == 0) return std::nullopt;
        return o->as<std::size_t>();
    };
    try {
        if (!config_file.empty()) {
            const json report = io::read_json_file(config_file);
            c = config_from_json(report.contains("config") ? report["config"] : report);
            if (!format.empty()) c.format = format;
        } else {
            for (const auto& [name, sub] : subs)
                if (sub->parsed()) c.command = name;
            if (c.command.empty()) {
                err << app.help();
                return exit_code::usage;
            }
            c.n = size_opt(n_opt);
            c.depth = size_opt(depth_opt);
            c.max_order = size_opt(max_order);
            c.sm_order = size_opt(sm_opt);
            c.q_sm_order = size_opt(qsm_opt);
            c.slcx_prefix = size_opt(slcx_opt);
            c.check_sm = size_opt(check_sm_opt);
            if (q_opt->count()) c.q = q_text;
            if (!grid_text.empty()) {
                std::stringstream ss(grid_text);
                std::string item;
                while (std::getline(ss, item, ',')) c.q_grid.push_back(item);
            }
            const bool numeric_report = c.command == "check" || c.command == "explore";
            c.format = !format.empty() ? format : (numeric_report ? "json" : "text");
        }

        const outcome result = dispatch(c);
        if (!out_file.empty()) {
            std::ofstream f(out_file);
            if (!f) throw error(errc::parse_error, "cannot write '" + out_file + "'");
            f << result.text;
        } else {
            out << result.text;
        }
        return result.code;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const cap_violation& e) {
        err << e.what() << "\n";
        return exit_code::operational;
    } catch (const error& e) {
        err << e.what() << "\n";
        const bool usage = e.code() == errc::unknown_family || e.code() == errc::unknown_triangle;
        return usage ? exit_code::usage : exit_code::operational;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::operational;
    }
}

}  // namespace lcsm::cli
