#pragma once

/**
 * @file io.hpp
 * @brief JSON file formats.
 *
 *   Quaternion      [w, x, y, z]
 *   QVector         [[w,x,y,z], ...]
 *   QMatrix         {"n": n, "entries": [[[w,x,y,z], ...], ...]}   (row-major)
 *   basis           {"scalars": "H" | "C_iota", "iota": [...]?, "vectors": [QVector, ...]}
 *   spectrum        [{"re": a, "im": b, "mult": m, "kind": "point"}, ...]
 *   decomposition   {"iota": [...], "basis": [QVector, ...], "lambdas": [[w,x,y,z], ...], "residual": r}
 *   compact model   {"head": QMatrix | null, "tail": {"family", "params", "slice", ...} | null, "N": n}
 *
 * Doubles are written with 17 significant digits so that reading back
 * restores every bit.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspectral/compact.hpp"
#include "qspectral/error.hpp"
#include "qspectral/hilbert.hpp"
#include "qspectral/linalg.hpp"
#include "qspectral/quaternion.hpp"
#include "qspectral/spectral.hpp"

namespace qspectral::io {

using json = nlohmann::ordered_json;

/// Malformed or semantically invalid input document.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

inline Quaternion quaternion_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw format_error("quaternion must be a 4-array [w, x, y, z]");
    for (const auto& e : j)
        if (!e.is_number()) throw format_error("quaternion components must be numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline ImaginaryUnit imaginary_unit_from_json(const json& j) {
    try {
        return ImaginaryUnit::from(quaternion_from_json(j), 1e-9);
    } catch (const domain_error& e) {
        throw format_error(std::string("slice: ") + e.what());
    }
}

inline json to_json(const QVector& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(to_json(e));
    return a;
}

inline QVector vector_from_json(const json& j) {
    if (!j.is_array()) throw format_error("vector must be a list of quaternions");
    QVector v(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) v[k] = quaternion_from_json(j[k]);
    return v;
}

inline json to_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"n", m.rows()}, {"entries", std::move(rows)}};
}

inline QMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries")) throw format_error("matrix needs \"n\" and \"entries\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0) throw format_error("matrix \"n\" must be a non-negative integer");
    const auto n = j["n"].get<std::size_t>();
    const json& e = j["entries"];
    if (!e.is_array() || e.size() != n) throw format_error("matrix \"entries\" must have n rows");
    QMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!e[r].is_array() || e[r].size() != n) throw format_error("matrix row " + std::to_string(r) + " must have n entries");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = quaternion_from_json(e[r][c]);
    }
    return m;
}

inline json to_json(const HilbertBasis& b) {
    json vs = json::array();
    for (const auto& v : b.vectors) vs.push_back(to_json(v));
    return {{"scalars", "H"}, {"vectors", std::move(vs)}};
}

inline json to_json(const SliceBasis& b) {
    json vs = json::array();
    for (const auto& v : b.plus_vectors) vs.push_back(to_json(v));
    return {{"scalars", "C_iota"}, {"iota", to_json(b.iota.value())}, {"vectors", std::move(vs)}};
}

/// Accepts a bare list of vectors or a {"scalars": "H", "vectors": [...]} object.
inline HilbertBasis basis_from_json(const json& j) {
    const json* vs = &j;
    if (j.is_object()) {
        if (j.contains("scalars") && j["scalars"] != "H") throw format_error("a Hilbert basis needs scalars \"H\"");
        if (!j.contains("vectors")) throw format_error("basis object needs \"vectors\"");
        vs = &j["vectors"];
    }
    if (!vs->is_array()) throw format_error("basis must be a list of vectors");
    std::vector<QVector> out;
    for (const auto& v : *vs) out.push_back(vector_from_json(v));
    try {
        return HilbertBasis::make(std::move(out));
    } catch (const dimension_error& e) {
        throw format_error(e.what());
    }
}

inline json to_json(const CircularPoint& p) { return {{"re", p.re}, {"im", p.im}, {"mult", p.multiplicity}}; }

inline CircularPoint circular_point_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j.contains("mult"))
        throw format_error("circular point needs \"re\", \"im\", \"mult\"");
    CircularPoint p{j["re"].get<double>(), j["im"].get<double>(), j["mult"].get<int>()};
    if (p.im < 0.0 || p.multiplicity < 1) throw format_error("circular point needs im >= 0 and mult >= 1");
    return p;
}

inline json to_json(const CircularSet& s) {
    json a = json::array();
    for (const auto& p : s) {
        json e = to_json(p);
        e["kind"] = "point";
        a.push_back(std::move(e));
    }
    return a;
}

inline CircularSet circular_set_from_json(const json& j, double tol = default_tol) {
    if (!j.is_array()) throw format_error("spectrum must be a list of points");
    std::vector<CircularPoint> pts;
    for (const auto& e : j) pts.push_back(circular_point_from_json(e));
    return CircularSet::from_points(pts, tol);
}

inline json to_json(const SpectralDecomposition& d) {
    json basis = json::array();
    for (const auto& v : d.basis.vectors) basis.push_back(to_json(v));
    json lambdas = json::array();
    for (const auto& l : d.lambdas) lambdas.push_back(to_json(l));
    return {{"iota", to_json(d.iota.value())}, {"basis", std::move(basis)}, {"lambdas", std::move(lambdas)}, {"residual", d.residual}};
}

inline SpectralDecomposition decomposition_from_json(const json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("lambdas"))
        throw format_error("decomposition needs \"basis\" and \"lambdas\"");
    SpectralDecomposition d;
    d.basis = basis_from_json(j["basis"]);
    if (!j["lambdas"].is_array()) throw format_error("\"lambdas\" must be a list of quaternions");
    for (const auto& l : j["lambdas"]) d.lambdas.push_back(quaternion_from_json(l));
    if (d.lambdas.size() != d.basis.dim()) throw format_error("need one lambda per basis vector");
    if (j.contains("iota")) d.iota = imaginary_unit_from_json(j["iota"]);
    if (j.contains("residual") && j["residual"].is_number()) d.residual = j["residual"].get<double>();
    return d;
}

inline json to_json(const AJBDecomposition& d) {
    return {{"A", to_json(d.A)}, {"B", to_json(d.B)}, {"J", to_json(d.J)}, {"residual", d.residual}};
}

inline json to_json(const OperatorClass& c) {
    return {{"normal", c.normal},         {"self_adjoint", c.self_adjoint}, {"anti_self_adjoint", c.anti_self_adjoint},
            {"unitary", c.unitary},       {"positive", c.positive},         {"tol", c.tol}};
}

namespace detail {

inline std::complex<double> complex_param(const json& p, const char* key, std::complex<double> fallback) {
    if (!p.contains(key)) return fallback;
    const json& v = p[key];
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw format_error(std::string("tail parameter \"") + key + "\" must be a number or [re, im]");
}

}  // namespace detail

/**
 * Tail params: "c" is a real number or [re, im] meaning re + slice * im
 * (default [0, 1]); geometric tails also take a real "r" with |r| < 1.
 * Optional "rotate": bool and "seed": int scatter the tail over eigenspheres.
 */
inline CompactModel model_from_json(const json& j) {
    if (!j.is_object()) throw format_error("model must be a JSON object");
    CompactModel m;
    if (j.contains("head") && !j["head"].is_null()) m.head = matrix_from_json(j["head"]);
    if (j.contains("tail") && !j["tail"].is_null()) {
        const json& t = j["tail"];
        if (!t.is_object() || !t.contains("family")) throw format_error("tail needs a \"family\"");
        const auto fam = t["family"].get<std::string>();
        if (fam == "harmonic") m.tail.family = TailFamily::harmonic;
        else if (fam == "geometric") m.tail.family = TailFamily::geometric;
        else if (fam == "none") m.tail.family = TailFamily::none;
        else throw format_error("unknown tail family \"" + fam + "\"");
        const json params = t.value("params", json::object());
        if (!params.is_object()) throw format_error("tail \"params\" must be an object");
        m.tail.c = detail::complex_param(params, "c", {0.0, 1.0});
        if (params.contains("r")) {
            if (!params["r"].is_number()) throw format_error("tail parameter \"r\" must be a real number");
            m.tail.r = params["r"].get<double>();
        }
        if (t.contains("slice")) m.tail.slice = imaginary_unit_from_json(t["slice"]);
        m.tail.rotate = t.value("rotate", false);
        m.tail.seed = t.value("seed", std::uint64_t{0});
        try {
            m.tail.validate();
        } catch (const domain_error& e) {
            throw format_error(e.what());
        }
    }
    if (j.contains("N")) {
        if (!j["N"].is_number_integer() || j["N"].get<long long>() < 1) throw format_error("\"N\" must be an integer >= 1");
        m.N = j["N"].get<std::size_t>();
    }
    return m;
}

inline json to_json(const CompactModel& m) {
    json out;
    out["head"] = m.head ? to_json(*m.head) : json(nullptr);
    if (m.tail.family == TailFamily::none) {
        out["tail"] = nullptr;
    } else {
        json params = {{"c", json::array({m.tail.c.real(), m.tail.c.imag()})}};
        if (m.tail.family == TailFamily::geometric) params["r"] = m.tail.r;
        out["tail"] = {{"family", m.tail.family == TailFamily::harmonic ? "harmonic" : "geometric"},
                       {"params", std::move(params)},
                       {"slice", to_json(m.tail.slice.value())},
                       {"rotate", m.tail.rotate},
                       {"seed", m.tail.seed}};
    }
    out["N"] = m.N;
    return out;
}

inline json to_json(const TruncationReport& r) {
    return {{"N", r.N},
            {"tail_norm", r.tail_norm},
            {"spectrum", to_json(r.spectrum)},
            {"min_modulus", r.min_modulus},
            {"operator_norm", r.operator_norm},
            {"max_modulus", r.max_modulus},
            {"norm_law", r.norm_law},
            {"min_modulus_monotone", r.min_modulus_monotone},
            {"multiplicities_stable", r.multiplicities_stable}};
}

/// "%.17g"; non-finite values have no JSON form and become null.
inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write(std::ostream& os, const json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) { os << "{}"; return; }
            const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << (flat && indent >= 0 ? ", " : ",");
                first = false;
                if (!flat) newline(depth + 1);
                os << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
                write(os, it.value(), indent, depth + 1);
            }
            if (!flat) newline(depth);
            os << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) { os << "[]"; return; }
            // arrays of scalars stay on one line
            const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
            os << '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) os << (flat && indent >= 0 ? ", " : ",");
                first = false;
                if (!flat) newline(depth + 1);
                write(os, e, indent, depth + 1);
            }
            if (!flat) newline(depth);
            os << ']';
            return;
        }
        case json::value_t::number_float: os << format_double(j.get<double>()); return;
        default: os << j.dump(); return;
    }
}

}  // namespace detail

/// Serializes with 17 significant digits; indent < 0 gives a single line.
inline void write_json(std::ostream& os, const json& j, int indent = 2) {
    detail::write(os, j, indent, 0);
    os << '\n';
}

inline std::string dump(const json& j, int indent = -1) {
    std::ostringstream os;
    detail::write(os, j, indent, 0);
    return os.str();
}

}  // namespace qspectral::io
