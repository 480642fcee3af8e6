#ifndef LOGCONN_JSON_IO_HPP
#define LOGCONN_JSON_IO_HPP

// Shared JSON encoding. A polynomial is an array of terms {"c": "num/den",
// "e": [exponents]}; matrices are row-major nested arrays. Rationals are
// strings "n" or "n/d" (integers may also be plain JSON numbers).

#include "logconn/castling.hpp"
#include "logconn/extension.hpp"
#include "logconn/filtrations.hpp"
#include "logconn/jordan.hpp"
#include "logconn/laurent.hpp"
#include "logconn/matrix.hpp"
#include "logconn/polynomial.hpp"
#include "logconn/saito.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace logconn::io {

using json = nlohmann::json;

/// Malformed input, with a JSON-pointer style location.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& path, const std::string& msg)
        : std::runtime_error((path.empty() ? "/" : path) + ": " + msg), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(path, "missing field \"" + key + "\"");
    return *it;
}

inline const json& array_at(const json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected an array");
    return j;
}

inline long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path, "expected an integer");
    return j.get<long>();
}

inline std::vector<long> integers(const json& j, const std::string& path) {
    std::vector<long> out;
    for (std::size_t i = 0; i < array_at(j, path).size(); ++i) out.push_back(integer(j[i], child(path, i)));
    return out;
}

inline void check_schema(const json& j) {
    if (!j.is_object()) throw InputError("", "expected a JSON object");
    auto it = j.find("schema");
    if (it != j.end() && !(it->is_number_integer() && it->get<long>() == 1))
        throw InputError("/schema", "unsupported schema version (expected 1)");
}

// ---------------------------------------------------------------------------
// Scalars and polynomials.

inline json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const AlgebraError& e) {
            throw InputError(path, e.what());
        }
    }
    throw InputError(path, "expected a rational (string \"n/d\" or integer)");
}

template <bool L>
json to_json(const BasicPoly<L>& p) {
    json arr = json::array();
    for (const auto& [e, c] : p.terms()) arr.push_back({{"c", to_string(c)}, {"e", e}});
    return arr;
}

/// Polynomial over nvars variables: a term array, or a rational literal for a constant.
template <bool L>
BasicPoly<L> poly_from(const json& j, std::size_t nvars, const std::string& path) {
    if (!j.is_array()) return BasicPoly<L>(rational_from(j, path), nvars);
    BasicPoly<L> p(Rational(0), nvars);
    for (std::size_t t = 0; t < j.size(); ++t) {
        std::string tp = child(path, t);
        Rational c = rational_from(field(j[t], "c", tp), child(tp, "c"));
        std::vector<long> e = integers(field(j[t], "e", tp), child(tp, "e"));
        if (e.size() != nvars) throw InputError(child(tp, "e"), "exponent vector length differs from the variable count");
        Exponents ex(e.begin(), e.end());
        if constexpr (!L) {
            for (int v : ex)
                if (v < 0) throw InputError(child(tp, "e"), "negative exponent in a polynomial");
        }
        p += BasicPoly<L>::monomial(ex, c);
    }
    return p;
}

inline MultiPoly multipoly_from(const json& j, std::size_t nvars, const std::string& path) {
    return poly_from<false>(j, nvars, path);
}
inline LaurentMultiPoly laurent2_from(const json& j, const std::string& path) { return poly_from<true>(j, 2, path); }

inline json to_json(const LaurentPoly& p) {
    json arr = json::array();
    for (const auto& [k, c] : p.terms()) arr.push_back({{"c", to_string(c)}, {"e", json::array({k})}});
    return arr;
}

inline LaurentPoly laurent_from(const json& j, const std::string& path) {
    if (!j.is_array()) return LaurentPoly(rational_from(j, path));
    LaurentPoly p;
    for (std::size_t t = 0; t < j.size(); ++t) {
        std::string tp = child(path, t);
        Rational c = rational_from(field(j[t], "c", tp), child(tp, "c"));
        const json& e = field(j[t], "e", tp);
        long k;
        if (e.is_array()) {
            if (e.size() != 1) throw InputError(child(tp, "e"), "univariate exponent expected");
            k = integer(e[0], child(child(tp, "e"), 0));
        } else {
            k = integer(e, child(tp, "e"));
        }
        p += LaurentPoly::monomial(static_cast<int>(k), c);
    }
    return p;
}

inline json to_json(const CycloNumber& c) {
    json arr = json::array();
    const auto& co = c.residue().coeffs();
    for (std::size_t k = 0; k < co.size(); ++k)
        if (co[k] != 0) arr.push_back({{"c", to_string(co[k])}, {"e", json::array({k})}});
    return arr;
}

// ---------------------------------------------------------------------------
// Matrices.

template <class R>
json to_json(const Matrix<R>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class R, class F>
Matrix<R> matrix_from(const json& j, const std::string& path, F&& entry, bool square = true) {
    array_at(j, path);
    std::size_t rows = j.size();
    std::size_t cols = 0;
    std::vector<R> data;
    for (std::size_t i = 0; i < rows; ++i) {
        std::string rp = child(path, i);
        const json& row = array_at(j[i], rp);
        if (i == 0) cols = row.size();
        if (row.size() != cols) throw InputError(rp, "ragged matrix row");
        for (std::size_t k = 0; k < cols; ++k) data.push_back(entry(row[k], child(rp, k)));
    }
    if (square && rows != cols) throw InputError(path, "expected a square matrix");
    return Matrix<R>(rows, cols, std::move(data));
}

inline QMatrix qmatrix_from(const json& j, const std::string& path, bool square = true) {
    return matrix_from<Rational>(j, path, [](const json& e, const std::string& p) { return rational_from(e, p); }, square);
}

inline PolyMatrix polymatrix_from(const json& j, std::size_t nvars, const std::string& path) {
    return matrix_from<MultiPoly>(j, path, [nvars](const json& e, const std::string& p) { return multipoly_from(e, nvars, p); });
}

inline LaurentMatrix laurent_matrix_from(const json& j, const std::string& path) {
    return matrix_from<LaurentPoly>(j, path, [](const json& e, const std::string& p) { return laurent_from(e, p); });
}

inline Laurent2Matrix laurent2_matrix_from(const json& j, const std::string& path) {
    return matrix_from<LaurentMultiPoly>(j, path, [](const json& e, const std::string& p) { return laurent2_from(e, p); });
}

// ---------------------------------------------------------------------------
// Module inputs.

inline std::vector<std::string> vars_from(const json& j, const std::string& path) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
        if (!j[i].is_string()) throw InputError(child(path, i), "expected a variable name");
        names.push_back(j[i].get<std::string>());
    }
    if (names.empty()) throw InputError(path, "need at least one variable");
    return names;
}

/// {"vars": [...], "divisor": poly, "fields": [[poly, ...], ...]}
inline SaitoSystem saito_system_from(const json& j) {
    SaitoSystem s;
    s.names = vars_from(field(j, "vars", ""), "/vars");
    std::size_t n = s.names.size();
    s.divisor = multipoly_from(field(j, "divisor", ""), n, "/divisor");
    const json& fs = array_at(field(j, "fields", ""), "/fields");
    if (fs.size() != n) throw InputError("/fields", "expected one field per variable");
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::string fp = child("/fields", i);
        if (!fs[i].is_array() || fs[i].size() != n) throw InputError(fp, "expected one coefficient per variable");
        VectorField v;
        for (std::size_t k = 0; k < n; ++k) v.coeffs.push_back(multipoly_from(fs[i][k], n, child(fp, k)));
        s.fields.push_back(std::move(v));
    }
    return s;
}

inline json to_json(const SaitoSystem& s) {
    json fields = json::array();
    for (const auto& f : s.fields) {
        json row = json::array();
        for (const auto& c : f.coeffs) row.push_back(to_json(c));
        fields.push_back(std::move(row));
    }
    json vars = s.names;
    if (s.names.empty())
        for (std::size_t i = 0; i < s.dim(); ++i) vars.push_back("x" + std::to_string(i + 1));
    return {{"schema", 1}, {"vars", vars}, {"divisor", to_json(s.divisor)}, {"fields", fields}};
}

/// Saito system plus {"omegas": [matrix, ...]}.
inline LogConnection log_connection_from(const json& j) {
    LogConnection c;
    c.system = saito_system_from(j);
    const json& om = array_at(field(j, "omegas", ""), "/omegas");
    for (std::size_t i = 0; i < om.size(); ++i)
        c.omegas.push_back(polymatrix_from(om[i], c.system.dim(), child("/omegas", i)));
    try {
        c.validate();
    } catch (const AlgebraError& e) {
        throw InputError("/omegas", e.what());
    }
    return c;
}

inline json to_json(const LogConnection& c) {
    json j = to_json(c.system);
    json om = json::array();
    for (const auto& o : c.omegas) om.push_back(to_json(o));
    j["omegas"] = om;
    return j;
}

inline Subspace subspace_from(const json& j, std::size_t m, const std::string& path) {
    array_at(j, path);
    if (j.empty()) return Subspace(m);
    QMatrix rows = qmatrix_from(j, path, false);
    if (rows.cols() != m) throw InputError(path, "basis vectors must have length " + std::to_string(m));
    return Subspace::span(rows);
}

/// {"dim": m, "filtrations": [[{"j": idx, "basis": [[...]]}, ...], ...]}
inline std::vector<Filtration> filtrations_from(const json& j) {
    long m = integer(field(j, "dim", ""), "/dim");
    if (m < 1) throw InputError("/dim", "dimension must be positive");
    const json& fs = array_at(field(j, "filtrations", ""), "/filtrations");
    if (fs.empty()) throw InputError("/filtrations", "need at least one filtration");
    std::vector<Filtration> out;
    for (std::size_t f = 0; f < fs.size(); ++f) {
        std::string fp = child("/filtrations", f);
        std::vector<Filtration::Step> steps;
        for (std::size_t s = 0; s < array_at(fs[f], fp).size(); ++s) {
            std::string sp = child(fp, s);
            long idx = integer(field(fs[f][s], "j", sp), child(sp, "j"));
            steps.push_back({idx, subspace_from(field(fs[f][s], "basis", sp), static_cast<std::size_t>(m), child(sp, "basis"))});
        }
        try {
            out.emplace_back(static_cast<std::size_t>(m), std::move(steps));
        } catch (const AlgebraError& e) {
            throw InputError(fp, e.what());
        }
    }
    return out;
}

inline json to_json(const Filtration& f) {
    json steps = json::array();
    for (const auto& s : f.steps()) steps.push_back({{"j", s.index}, {"basis", to_json(s.space.basis())}});
    return steps;
}

inline json vectors_to_json(const std::vector<QVector>& vs) {
    json out = json::array();
    for (const auto& v : vs) {
        json row = json::array();
        for (const auto& c : v) row.push_back(to_string(c));
        out.push_back(std::move(row));
    }
    return out;
}

inline json to_json(const AdaptedBasis& b) { return {{"vectors", vectors_to_json(b.vectors)}, {"depths", b.depths}}; }

inline json to_json(const NotSplittable& c) {
    json table = json::array();
    for (const auto& r : c.table)
        table.push_back({{"index", r.index}, {"dimIntersection", r.dim_intersection}, {"dimLower", r.dim_lower}});
    return {{"multiIndex", c.multi_index}, {"complementTotal", c.total}, {"table", table}};
}

inline ChartData chart_from(const json& j, std::size_t m, const std::string& path) {
    ChartData c;
    c.characters = integers(field(j, "characters", path), child(path, "characters"));
    if (c.characters.size() != m) throw InputError(child(path, "characters"), "one character per frame vector expected");
    const json& om = array_at(field(j, "omegas", path), child(path, "omegas"));
    if (om.size() != 2) throw InputError(child(path, "omegas"), "expected [Omega_E, Omega_H]");
    for (std::size_t i = 0; i < 2; ++i) {
        std::string op = child(child(path, "omegas"), i);
        c.omegas.push_back(laurent2_matrix_from(om[i], op));
        if (c.omegas.back().rows() != m) throw InputError(op, "connection matrix has the wrong size");
    }
    return c;
}

/// {"p", "q", "f": poly in (x, y), "rank", "chart0": {...}, "chartInf": {...}, "transition": matrix}
inline ConnectionData connection_data_from(const json& j) {
    ConnectionData d;
    d.p = integer(field(j, "p", ""), "/p");
    d.q = integer(field(j, "q", ""), "/q");
    if (d.p < 1 || d.q < 1) throw InputError("/p", "weights must be positive");
    d.f = multipoly_from(field(j, "f", ""), 2, "/f");
    long m = integer(field(j, "rank", ""), "/rank");
    if (m < 1) throw InputError("/rank", "rank must be positive");
    d.rank = static_cast<std::size_t>(m);
    d.chart0 = chart_from(field(j, "chart0", ""), d.rank, "/chart0");
    d.chart_inf = chart_from(field(j, "chartInf", ""), d.rank, "/chartInf");
    d.transition = laurent2_matrix_from(field(j, "transition", ""), "/transition");
    if (d.transition.rows() != d.rank) throw InputError("/transition", "transition has the wrong size");
    return d;
}

inline json to_json(const ChartData& c) {
    return {{"characters", c.characters}, {"omegas", json::array({to_json(c.omegas[0]), to_json(c.omegas[1])})}};
}

inline json to_json(const ConnectionData& d) {
    return {{"schema", 1},          {"p", d.p},
            {"q", d.q},             {"f", to_json(d.f.widened(2))},
            {"rank", d.rank},       {"chart0", to_json(d.chart0)},
            {"chartInf", to_json(d.chart_inf)}, {"transition", to_json(d.transition)}};
}

inline GroupFactor group_factor_from(const json& j, const std::string& path) {
    std::string kind = field(j, "kind", path).is_string() ? field(j, "kind", path).get<std::string>() : "";
    long size = integer(field(j, "size", path), child(path, "size"));
    if (size < 1) throw InputError(child(path, "size"), "size must be positive");
    if (kind == "torus") return GroupFactor::torus(size);
    if (kind == "sl") return GroupFactor::sl(size);
    if (kind == "abstract") {
        const json& name = field(j, "name", path);
        if (!name.is_string()) throw InputError(child(path, "name"), "expected a name");
        return GroupFactor::abstract(name.get<std::string>(), size);
    }
    throw InputError(child(path, "kind"), "expected \"torus\", \"sl\" or \"abstract\"");
}

inline json to_json(const GroupFactor& f) {
    static const char* kinds[] = {"torus", "sl", "abstract"};
    json j = {{"kind", kinds[static_cast<int>(f.kind)]}, {"size", f.size}};
    if (f.kind == GroupFactor::Kind::Abstract) j["name"] = f.name;
    return j;
}

/// {"n", "r", "factors": [{"kind", "size"[, "name"]}], "side": "primal" | "dual"}
inline PrehomDescriptor descriptor_from(const json& j) {
    PrehomDescriptor d;
    d.n = integer(field(j, "n", ""), "/n");
    d.r = integer(field(j, "r", ""), "/r");
    const json& fs = array_at(field(j, "factors", ""), "/factors");
    for (std::size_t i = 0; i < fs.size(); ++i) d.factors.push_back(group_factor_from(fs[i], child("/factors", i)));
    auto it = j.find("side");
    if (it != j.end()) {
        if (*it == "primal") d.side = Side::Primal;
        else if (*it == "dual") d.side = Side::Dual;
        else throw InputError("/side", "expected \"primal\" or \"dual\"");
    }
    if (d.r < 1 || d.r >= d.n) throw InputError("/r", "need 1 <= r < n");
    return d;
}

inline json to_json(const PrehomDescriptor& d) {
    json fs = json::array(), group = json::array();
    for (const auto& f : d.factors) fs.push_back(to_json(f));
    for (const auto& f : d.group()) group.push_back(f.to_string());
    return {{"schema", 1},
            {"n", d.n},
            {"r", d.r},
            {"factors", fs},
            {"side", d.side == Side::Primal ? "primal" : "dual"},
            {"group", group},
            {"ambientDim", d.ambient_dim()}};
}

inline json to_json(const WeightData& w) {
    json entries = json::array();
    for (const auto& e : w.entries)
        entries.push_back({{"order", e.order}, {"exponent", e.exponent}, {"multiplicity", e.multiplicity},
                           {"weight", to_string(e.weight)}});
    return {{"fieldOrder", w.field_order}, {"entries", entries}};
}

inline json to_json(const UPoly& p) { return to_json(to_multipoly(p)); }

/// FNV-1a 64-bit digest of the raw input bytes.
inline std::string digest(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int s = 60; s >= 0; s -= 4) out += hex[(h >> s) & 0xF];
    return out;
}

}  // namespace logconn::io

#endif  // LOGCONN_JSON_IO_HPP
