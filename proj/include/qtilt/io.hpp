#pragma once

#include "qtilt/complex.hpp"
#include "qtilt/nakayama.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qtilt {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// A presented algebra kQ/I as read from a file. Modules are right kQ/I-modules.
struct AlgebraSpec {
    std::string name;
    Quiver quiver;
    std::vector<Relation> relations;

    Algebra path_algebra(std::size_t max_path_len = 30) const {
        return build_path_algebra(quiver, relations, max_path_len);
    }
    AlgebraPtr module_algebra(std::size_t max_path_len = 30) const {
        return std::make_shared<const Algebra>(build_module_algebra(quiver, relations, max_path_len));
    }
};

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline std::string text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    bad("expected a string or integer, got " + j.dump());
}

inline void check_format(const Json& j, const char* kind) {
    if (!j.is_object()) bad("top level must be an object");
    if (!j.contains("format") || !j.at("format").is_number_integer() || j.at("format").get<int>() != kFormatVersion)
        bad("unsupported or missing \"format\" (expected 1)");
    if (j.contains("kind") && j.at("kind") != kind) bad(std::string("expected kind \"") + kind + "\"");
}

inline Scalar scalar_of(const Json& j) {
    if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const std::exception&) {
            bad("bad rational " + j.dump());
        }
    }
    bad("coefficient must be an integer or a rational string, got " + j.dump());
}

inline Json scalar_json(const Scalar& x) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) return Json(x.get_num().get_si());
    return Json(format_scalar(x));
}

inline std::vector<std::string> word_of(const Json& j) {
    if (!j.is_array()) bad("path must be an array of arrow names");
    std::vector<std::string> w;
    for (const auto& a : j) w.push_back(text(a));
    return w;
}

}  // namespace detail

// ---- algebras -----------------------------------------------------------------------

/// {"format":1, "kind":"algebra", "name", "vertices":[...],
///  "arrows":[{"name","source","target"}...],
///  "relations":[["a","b"], [{"coeff":1,"path":["a","b"]}, {"coeff":-1,"path":["c","d"]}], ...]}
inline AlgebraSpec parse_algebra(const Json& j) {
    detail::check_format(j, "algebra");
    AlgebraSpec s;
    s.name = j.contains("name") ? detail::text(j.at("name")) : "";
    for (const auto& v : detail::field(j, "vertices")) s.quiver.vertices.push_back(detail::text(v));
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows"))
            s.quiver.arrows.push_back(Arrow{detail::text(detail::field(a, "name")),
                                            s.quiver.vertex_index(detail::text(detail::field(a, "source"))),
                                            s.quiver.vertex_index(detail::text(detail::field(a, "target")))});
    s.quiver.validate();
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) {
            if (!r.is_array() || r.empty()) detail::bad("relation must be a non-empty array");
            std::vector<std::pair<Scalar, std::vector<std::string>>> terms;
            if (r.front().is_string()) {
                terms.push_back({Scalar(1), detail::word_of(r)});
            } else {
                for (const auto& t : r)
                    terms.push_back({t.contains("coeff") ? detail::scalar_of(t.at("coeff")) : Scalar(1),
                                     detail::word_of(detail::field(t, "path"))});
            }
            Relation rel = make_relation(s.quiver, terms);
            relation_endpoints(s.quiver, rel);
            s.relations.push_back(std::move(rel));
        }
    return s;
}

inline Json relation_json(const Quiver& q, const Relation& r) {
    Json out = Json::array();
    for (const auto& t : r) {
        Json path = Json::array();
        for (auto a : t.arrows) path.push_back(q.arrows[a].name);
        out.push_back(Json{{"coeff", detail::scalar_json(t.coeff)}, {"path", path}});
    }
    return out;
}

inline std::string relation_text(const Quiver& q, const Relation& r) {
    std::string s;
    for (std::size_t k = 0; k < r.size(); ++k) {
        const auto& t = r[k];
        Scalar c = t.coeff;
        if (k) {
            s += sgn(c) < 0 ? " - " : " + ";
            c = abs(c);
        } else if (sgn(c) < 0) {
            s += "-";
            c = -c;
        }
        if (c != 1) s += format_scalar(c) + " ";
        for (std::size_t i = 0; i < t.arrows.size(); ++i) s += (i ? " " : "") + q.arrows[t.arrows[i]].name;
    }
    return s;
}

inline Json algebra_json(const AlgebraSpec& s) {
    Json j{{"format", kFormatVersion}, {"kind", "algebra"}, {"name", s.name}};
    j["vertices"] = s.quiver.vertices;
    Json arrows = Json::array();
    for (const auto& a : s.quiver.arrows)
        arrows.push_back(Json{{"name", a.name}, {"source", s.quiver.vertices[a.source]}, {"target", s.quiver.vertices[a.target]}});
    j["arrows"] = arrows;
    Json rels = Json::array();
    for (const auto& r : s.relations) rels.push_back(relation_json(s.quiver, r));
    j["relations"] = rels;
    return j;
}

// ---- elements of e_b A e_a (maps P(a) -> P(b)) ------------------------------------------

/// [{"coeff":c, "path":[arrows of kQ, left to right]}, {"coeff":c, "vertex":"v"}]
inline Vec element_from_json(const Algebra& module_alg, const Quiver& q, const Json& j) {
    Vec x = zero_vec(module_alg.dim());
    const Json terms = j.is_array() ? j : Json::array({j});
    for (const auto& t : terms) {
        Scalar c = t.contains("coeff") ? detail::scalar_of(t.at("coeff")) : Scalar(1);
        std::vector<std::string> w = t.contains("path") ? detail::word_of(t.at("path")) : std::vector<std::string>{};
        if (w.empty()) {
            axpy(x, c, module_alg.idempotent(q.vertex_index(detail::text(detail::field(t, "vertex")))));
        } else {
            axpy(x, Scalar(1), path_element(module_alg, w, c));
        }
    }
    return x;
}

inline Json element_json(const Algebra& module_alg, const Quiver& q, const Vec& x) {
    Json out = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        const Path& p = module_alg.path(i);
        Json t{{"coeff", detail::scalar_json(x[i])}};
        if (p.trivial()) {
            t["vertex"] = q.vertices[p.start];
        } else {
            Json path = Json::array();
            for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) path.push_back(q.arrows[*it].name);
            t["path"] = path;
        }
        out.push_back(t);
    }
    return out;
}

// ---- complexes ------------------------------------------------------------------------

/// {"format":1, "kind":"complex", "algebra":name, "terms":{"-1":["2","2","3"], "0":["1"]},
///  "differentials":[{"degree":-1, "row":0, "col":0, "entry":<element>}, ...]}
/// Entry (row, col) of the differential at degree d maps summand row of T^d to summand
/// col of T^{d+1}; it is left multiplication by a path from the col vertex to the row vertex.
inline ProjComplex parse_complex(const Json& j, const AlgebraSpec& s, const AlgebraPtr& a) {
    detail::check_format(j, "complex");
    if (j.contains("algebra") && detail::text(j.at("algebra")) != s.name)
        detail::bad("complex refers to algebra \"" + detail::text(j.at("algebra")) + "\", not \"" + s.name + "\"");
    std::map<int, std::vector<std::size_t>> terms;
    for (const auto& [k, v] : detail::field(j, "terms").items()) {
        int d = 0;
        try {
            d = std::stoi(k);
        } catch (const std::exception&) {
            detail::bad("degree key \"" + k + "\" is not an integer");
        }
        for (const auto& lab : v) terms[d].push_back(s.quiver.vertex_index(detail::text(lab)));
    }
    auto labels = [&](int d) -> const std::vector<std::size_t>& {
        static const std::vector<std::size_t> none;
        auto it = terms.find(d);
        return it == terms.end() ? none : it->second;
    };
    std::map<int, LabelMatrix> diffs;
    if (j.contains("differentials"))
        for (const auto& e : j.at("differentials")) {
            int d = detail::field(e, "degree").get<int>();
            auto r = detail::field(e, "row").get<std::size_t>(), c = detail::field(e, "col").get<std::size_t>();
            if (r >= labels(d).size() || c >= labels(d + 1).size())
                detail::bad("differential entry (" + std::to_string(r) + "," + std::to_string(c) + ") at degree " +
                            std::to_string(d) + " out of range");
            auto it = diffs.find(d);
            if (it == diffs.end()) it = diffs.emplace(d, LabelMatrix(labels(d).size(), labels(d + 1).size(), a->dim())).first;
            axpy(it->second.at(r, c), Scalar(1), element_from_json(*a, s.quiver, detail::field(e, "entry")));
        }
    return ProjComplex(a, terms, diffs);
}

inline Json complex_json(const ProjComplex& x, const AlgebraSpec& s) {
    Json j{{"format", kFormatVersion}, {"kind", "complex"}, {"algebra", s.name}};
    Json terms = Json::object();
    for (const auto& [d, l] : x.terms()) {
        Json labs = Json::array();
        for (auto v : l) labs.push_back(s.quiver.vertices[v]);
        terms[std::to_string(d)] = labs;
    }
    j["terms"] = terms;
    Json diffs = Json::array();
    for (const auto& [d, m] : x.diffs())
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!is_zero(m.at(r, c)))
                    diffs.push_back(Json{{"degree", d}, {"row", r}, {"col", c},
                                         {"entry", element_json(x.algebra(), s.quiver, m.at(r, c))}});
    j["differentials"] = diffs;
    return j;
}

// ---- modules --------------------------------------------------------------------------

/// Right kQ/I-module. Either {"standard":"simple"|"projective"|"injective", "vertex":v},
/// {"direct_sum":[module, ...]}, or explicit {"dims":{v:n}, "arrows":{name:[[...]]}}
/// where the matrix of a: s -> t has dim M_s rows and dim M_t columns (m |-> m A_a).
inline Representation parse_module_body(const Json& j, const AlgebraSpec& s, const AlgebraPtr& a) {
    if (j.contains("standard")) {
        std::string kind = detail::text(j.at("standard"));
        std::size_t v = s.quiver.vertex_index(detail::text(detail::field(j, "vertex")));
        if (kind == "simple") return simple(a, v);
        if (kind == "projective") return projective(a, v);
        if (kind == "injective") return injective(a, v);
        detail::bad("unknown standard module \"" + kind + "\"");
    }
    if (j.contains("direct_sum")) {
        std::vector<Representation> parts;
        for (const auto& m : j.at("direct_sum")) parts.push_back(parse_module_body(m, s, a));
        return direct_sum(a, parts);
    }
    std::vector<std::size_t> dims(s.quiver.num_vertices(), 0);
    if (j.contains("dims"))
        for (const auto& [k, v] : j.at("dims").items()) dims[s.quiver.vertex_index(k)] = v.get<std::size_t>();
    std::vector<Matrix> arrows;
    for (const auto& ar : s.quiver.arrows) {
        Matrix m(dims[ar.source], dims[ar.target]);
        if (j.contains("arrows") && j.at("arrows").contains(ar.name)) {
            const Json& rows = j.at("arrows").at(ar.name);
            if (!rows.is_array() || rows.size() != m.rows()) detail::bad("matrix of " + ar.name + " has wrong row count");
            for (std::size_t r = 0; r < m.rows(); ++r) {
                if (!rows[r].is_array() || rows[r].size() != m.cols())
                    detail::bad("matrix of " + ar.name + " has wrong column count");
                for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = detail::scalar_of(rows[r][c]);
            }
        }
        arrows.push_back(std::move(m));
    }
    return Representation(a, dims, arrows);
}

inline Representation parse_module(const Json& j, const AlgebraSpec& s, const AlgebraPtr& a) {
    detail::check_format(j, "module");
    if (j.contains("algebra") && detail::text(j.at("algebra")) != s.name)
        detail::bad("module refers to algebra \"" + detail::text(j.at("algebra")) + "\", not \"" + s.name + "\"");
    return parse_module_body(j, s, a);
}

inline Json matrix_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(detail::scalar_json(m(r, c)));
        out.push_back(row);
    }
    return out;
}

/// Explicit form of a module over the algebra presented by quiver q.
inline Json module_body_json(const Representation& m, const Quiver& q) {
    Json dims = Json::object();
    for (std::size_t v = 0; v < q.num_vertices(); ++v) dims[q.vertices[v]] = m.dim(v);
    Json arrows = Json::object();
    for (std::size_t k = 0; k < q.num_arrows(); ++k) arrows[q.arrows[k].name] = matrix_json(m.arrow(k));
    return Json{{"dims", dims}, {"arrows", arrows}};
}

// ---- files ----------------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) detail::bad("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        detail::bad(path + ": " + e.what());
    }
}

inline std::string label_list(const Quiver& q, const std::vector<std::size_t>& labels) {
    std::string s;
    for (std::size_t k = 0; k < labels.size(); ++k) s += (k ? "," : "") + q.vertices[labels[k]];
    return s;
}

/// Comma separated vertex names -> indices ("" -> none).
inline std::vector<std::size_t> parse_label_list(const Quiver& q, const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(q.vertex_index(item));
    }
    return out;
}

}  // namespace qtilt
