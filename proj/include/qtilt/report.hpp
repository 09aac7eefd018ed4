#pragma once

#include "qtilt/io.hpp"
#include "qtilt/tilting.hpp"

namespace qtilt {

struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t max_path_len = 30;
};

namespace detail {

inline Json labels_json(const Quiver& q, const std::vector<std::size_t>& labels) {
    Json out = Json::array();
    for (auto v : labels) out.push_back(q.vertices[v]);
    return out;
}

inline Json dims_json(const Quiver& q, const std::vector<std::size_t>& dims) {
    Json out = Json::object();
    for (std::size_t v = 0; v < dims.size(); ++v) out[q.vertices[v]] = dims[v];
    return out;
}

/// "1" for a single vertex, "{1,3}" for several.
inline std::string layer_text(const Quiver& q, const DimVector& d) {
    std::vector<std::string> parts;
    for (std::size_t v = 0; v < d.size(); ++v)
        for (std::size_t k = 0; k < d[v]; ++k) parts.push_back(q.vertices[v]);
    if (parts.size() == 1) return parts[0];
    std::string s = "{";
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "," : "") + parts[k];
    return s + "}";
}

inline std::string loewy_text(const Quiver& q, const Representation& m) {
    std::string s;
    for (const auto& layer : radical_layers(m)) s += (s.empty() ? "" : "/") + layer_text(q, layer);
    return s;
}

inline Json int_matrix_json(const Matrix& m) { return matrix_json(m); }

inline Json profile_json(const Quiver& q, const HomologyProfile& p) {
    Json out = Json::object();
    for (const auto& [i, d] : p) out[std::to_string(i)] = dims_json(q, d);
    return out;
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InternalDisagreement, "recheck failed: " + what);
}

}  // namespace detail

// ---- alg check --------------------------------------------------------------------------

inline Json alg_check_report(const AlgebraSpec& s, const RunConfig& cfg) {
    const Quiver& q = s.quiver;
    Algebra a = s.path_algebra(cfg.max_path_len);
    AlgebraPtr m = s.module_algebra(cfg.max_path_len);
    Json j{{"format", kFormatVersion}, {"report", "alg-check"}, {"algebra", s.name}};
    j["dim"] = a.dim();
    j["vertices"] = q.num_vertices();
    j["arrows"] = q.num_arrows();
    Json rels = Json::array();
    for (const auto& r : s.relations) rels.push_back(relation_text(q, r));
    j["relations"] = rels;
    // entry (i, j) = dim e_i A e_j = dim Hom(P(j), P(i))
    Matrix c(q.num_vertices(), q.num_vertices());
    for (std::size_t i = 0; i < q.num_vertices(); ++i)
        for (std::size_t k = 0; k < q.num_vertices(); ++k) c(i, k) = static_cast<long>(a.between(i, k).size());
    j["cartan"] = Json{{"convention", "entry (i,j) = dim e_i A e_j"}, {"matrix", detail::int_matrix_json(c)}};
    Json proj = Json::object(), inj = Json::object();
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        Representation p = projective(m, v), i = injective(m, v);
        Json layers = Json::array();
        for (const auto& l : radical_layers(p)) layers.push_back(detail::dims_json(q, l));
        proj[q.vertices[v]] = Json{{"dim", p.total_dim()}, {"loewy", detail::loewy_text(q, p)}, {"radical_layers", layers}};
        inj[q.vertices[v]] = Json{{"dim", i.total_dim()}, {"loewy", detail::loewy_text(q, i)}};
    }
    j["projectives"] = proj;
    j["injectives"] = inj;
    Representation reg = projective_sum(m, all_vertices(*m));
    Json layers = Json::array();
    for (const auto& l : radical_layers(reg)) layers.push_back(detail::dims_json(q, l));
    j["radical_layers"] = layers;
    j["loewy_length"] = layers.size();
    return j;
}

inline void recheck_alg_check(const Json& rep, const AlgebraSpec& s, const RunConfig& cfg) {
    Algebra a = s.path_algebra(cfg.max_path_len);
    detail::require(rep.at("dim") == a.dim(), "dimension");
    std::size_t total = 0;
    for (const auto& row : rep.at("cartan").at("matrix"))
        for (const auto& x : row) total += x.get<std::size_t>();
    detail::require(total == a.dim(), "Cartan entries do not sum to dim A");
    std::size_t proj_total = 0;
    for (const auto& [v, p] : rep.at("projectives").items()) {
        std::size_t layer_sum = 0;
        for (const auto& l : p.at("radical_layers"))
            for (const auto& [w, d] : l.items()) layer_sum += d.get<std::size_t>();
        detail::require(layer_sum == p.at("dim").get<std::size_t>(), "Loewy layers of P(" + v + ")");
        proj_total += layer_sum;
    }
    detail::require(proj_total == a.dim(), "projective dimensions do not sum to dim A");
}

// ---- nust ---------------------------------------------------------------------------------

inline Json nust_json(const Quiver& q, const NuStableReport& r) {
    Json j = Json::object();
    Json nak = Json::object();
    for (std::size_t v = 0; v < r.nakayama.size(); ++v)
        nak[q.vertices[v]] = r.nakayama[v] ? Json(q.vertices[*r.nakayama[v]]) : Json(nullptr);
    j["nakayama"] = nak;
    Json ps = Json::array();
    for (const auto& p : r.projectives)
        ps.push_back(Json{{"vertex", q.vertices[p.vertex]},
                          {"projective_injective", p.projective_injective},
                          {"in_E", p.in_e},
                          {"orbit", detail::labels_json(q, p.orbit)}});
    j["projectives"] = ps;
    j["E"] = detail::labels_json(q, r.e_labels);
    std::string e;
    for (auto v : r.e_labels) e += (e.empty() ? "" : " + ") + ("P(" + q.vertices[v] + ")");
    j["E_text"] = e.empty() ? "0" : e;
    return j;
}

inline Json nust_report(const AlgebraSpec& s, const AlgebraPtr& a) {
    Json j{{"format", kFormatVersion}, {"report", "nust"}, {"algebra", s.name}};
    j.update(nust_json(s.quiver, maximal_nu_stable(a)));
    return j;
}

/// Re-derives every orbit step of the certificate with explicit isomorphism tests.
inline void recheck_nust(const Json& rep, const AlgebraSpec& s, const AlgebraPtr& a) {
    const Quiver& q = s.quiver;
    const std::size_t n = q.num_vertices();
    auto proj_inj = [&](std::size_t v) {
        for (std::size_t w = 0; w < n; ++w)
            if (is_isomorphic(projective(a, v), injective(a, w))) return true;
        return false;
    };
    for (const auto& p : rep.at("projectives")) {
        std::vector<std::size_t> orbit;
        for (const auto& v : p.at("orbit")) orbit.push_back(q.vertex_index(v.get<std::string>()));
        detail::require(!orbit.empty(), "empty orbit");
        for (std::size_t k = 0; k + 1 < orbit.size(); ++k) {
            detail::require(proj_inj(orbit[k]), "orbit element not projective-injective");
            detail::require(is_isomorphic(injective(a, orbit[k]), projective(a, orbit[k + 1])).has_value(),
                            "nu P(" + q.vertices[orbit[k]] + ") is not P(" + q.vertices[orbit[k + 1]] + ")");
        }
        if (p.at("in_E").get<bool>()) {
            detail::require(proj_inj(orbit.back()), "orbit end not projective-injective");
            detail::require(std::count(orbit.begin(), orbit.end(), orbit.back()) == 2, "orbit of an E member does not close");
        } else {
            bool fails = !proj_inj(orbit.back());
            if (!fails) {
                bool nu_proj = false;
                for (std::size_t w = 0; w < n && !nu_proj; ++w)
                    nu_proj = is_isomorphic(injective(a, orbit.back()), projective(a, w)).has_value();
                fails = !nu_proj;
            }
            detail::require(fails, "orbit of a non-member never leaves the projective-injectives");
        }
    }
}

// ---- tilting verify / construct -------------------------------------------------------

inline Json summands_json(const ComplexDecomposition& d, const AlgebraSpec& s) {
    Json out = Json::array();
    for (std::size_t k = 0; k < d.pieces.size(); ++k) {
        Json c = complex_json(d.pieces[k].complex, s);
        out.push_back(Json{{"class", d.class_of[k]}, {"complex", c}});
    }
    return out;
}

inline Json tilting_json(const TiltingReport& r, const AlgebraSpec& s) {
    Json j = Json::object();
    Json dims = Json::object();
    for (const auto& [n, d] : r.hom_dims) dims[std::to_string(n)] = d;
    j["hom_dims"] = dims;
    j["self_orthogonal"] = r.self_orthogonal;
    Json k0 = Json::array();
    for (const auto& row : r.k0_classes) k0.push_back(row);
    j["k0"] = Json{{"classes", k0}, {"determinant", detail::scalar_json(r.k0_determinant)}, {"unimodular", r.k0_unimodular}};
    j["generation_status"] = to_string(r.generation);
    j["multiplicities"] = r.multiplicities;
    j["basic"] = r.basic;
    j["tilting"] = r.tilting();
    j["summands"] = summands_json(r.decomposition, s);
    return j;
}

inline Json tilting_verify_report(const AlgebraSpec& s, const ProjComplex& t, const RunConfig& cfg,
                                  bool constructed = false) {
    Json j{{"format", kFormatVersion}, {"report", "tilting-verify"}, {"algebra", s.name}};
    TiltingReport r = verify_tilting(t, constructed, cfg.seed);
    j.update(tilting_json(r, s));
    j["verdict"] = r.tilting() && r.basic;
    return j;
}

/// From the certificate: the summands re-assemble T, their K0 classes and determinant are
/// recomputed, and the shifted Hom dimensions are recomputed summand by summand.
inline void recheck_tilting(const Json& rep, const AlgebraSpec& s, const AlgebraPtr& a, const ProjComplex& t) {
    std::vector<ProjComplex> pieces;
    std::vector<std::size_t> cls;
    for (const auto& p : rep.at("summands")) {
        pieces.push_back(parse_complex(p.at("complex"), s, a));
        cls.push_back(p.at("class").get<std::size_t>());
    }
    ProjComplex sum(a);
    for (const auto& p : pieces) sum = direct_sum(sum, p);
    detail::require(is_isomorphic_complex(minimize(t, false).complex, sum).has_value(), "summands do not re-assemble T");
    std::map<int, std::size_t> dims;
    for (const auto& [key, d] : rep.at("hom_dims").items()) {
        int n = std::stoi(key);
        std::size_t total = 0;
        for (const auto& x : pieces)
            for (const auto& y : pieces) total += homotopy_hom(x, y, n).dim();
        detail::require(total == d.get<std::size_t>(), "dim Hom(T, T[" + key + "])");
        if (n != 0) detail::require(total == 0 || !rep.at("self_orthogonal").get<bool>(), "self-orthogonality flag");
    }
    std::size_t ncls = 0;
    for (auto c : cls) ncls = std::max(ncls, c + 1);
    const auto& classes = rep.at("k0").at("classes");
    detail::require(classes.size() == ncls, "number of K0 classes");
    for (std::size_t k = 0; k < pieces.size(); ++k)
        detail::require(classes.at(cls[k]).get<std::vector<long>>() == k0_class(pieces[k]), "K0 class of a summand");
    if (ncls == s.quiver.num_vertices()) {
        Matrix m(ncls, ncls);
        for (std::size_t i = 0; i < ncls; ++i)
            for (std::size_t k = 0; k < ncls; ++k) m(i, k) = classes[i][k].get<long>();
        Scalar det = determinant(m);
        detail::require(detail::scalar_json(det) == rep.at("k0").at("determinant"), "K0 determinant");
    }
}

inline Json tilting_construct_report(const AlgebraSpec& s, const AlgebraPtr& a, const std::vector<std::size_t>& p,
                                     const std::vector<std::size_t>& q, int r, int sdeg, const RunConfig& cfg,
                                     ProjComplex* out = nullptr) {
    TpqConstruction c = construct_tpq(a, p, q, r, sdeg, cfg.seed);
    Json j{{"format", kFormatVersion}, {"report", "tilting-construct"}, {"algebra", s.name}};
    j["parameters"] = Json{{"P", detail::labels_json(s.quiver, p)}, {"Q", detail::labels_json(s.quiver, q)}, {"r", r}, {"s", sdeg}};
    j["raw_terms"] = complex_json(c.raw, s).at("terms");
    j["complex"] = complex_json(c.complex, s);
    TiltingReport tr = verify_tilting(c.complex, true, cfg.seed);
    j.update(tilting_json(tr, s));
    j["verdict"] = tr.tilting() && tr.basic;
    if (out) *out = c.complex;
    return j;
}

// ---- end algebra ----------------------------------------------------------------------

inline AlgebraSpec presentation_spec(const Presentation& p, const std::string& name) {
    return AlgebraSpec{name, p.quiver, p.relations};
}

inline Json endalg_report(const AlgebraSpec& s, const ProjComplex& t, const RunConfig& cfg, EndAlgebra* keep = nullptr) {
    EndAlgebra e = end_algebra(t, cfg.seed);
    Json j{{"format", kFormatVersion}, {"report", "endalg"}, {"algebra", s.name}};
    j["dim"] = e.algebra.dim();
    j["basic"] = e.basic;
    j["summands"] = summands_json(e.decomposition, s);
    if (e.presentation) {
        Matrix c = cartan_matrix(e.algebra, e.idempotents);
        j["cartan"] = Json{{"convention", "entry (i,j) = dim e_j B e_i"}, {"matrix", detail::int_matrix_json(c)}};
        j["presentation"] = algebra_json(presentation_spec(*e.presentation, "End(" + s.name + ")"));
        Json rels = Json::array();
        for (const auto& r : e.presentation->relations) rels.push_back(relation_text(e.presentation->quiver, r));
        j["relations_text"] = rels;
    }
    if (keep) *keep = std::move(e);
    return j;
}

/// The presentation in the certificate spans an algebra of the reported dimension, and
/// its Cartan matrix equals the matrix of dim Hom_K(T_i, T_j) over the listed summands.
inline void recheck_endalg(const Json& rep, const AlgebraSpec& s, const AlgebraPtr& a, const ProjComplex& t,
                           const RunConfig& cfg) {
    std::vector<ProjComplex> pieces;
    for (const auto& p : rep.at("summands")) pieces.push_back(parse_complex(p.at("complex"), s, a));
    std::size_t total = 0;
    for (const auto& x : pieces)
        for (const auto& y : pieces) total += homotopy_hom(x, y, 0).dim();
    detail::require(total == rep.at("dim").get<std::size_t>(), "dim End(T) from summands");
    detail::require(homotopy_hom(t, t, 0).dim() == total, "dim End(T) from T");
    if (!rep.contains("presentation")) return;
    AlgebraSpec b = parse_algebra(rep.at("presentation"));
    Algebra pb = b.path_algebra(cfg.max_path_len);
    detail::require(pb.dim() == total, "presentation dimension");
    const auto& c = rep.at("cartan").at("matrix");
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            // dim e_k B e_i = dim Hom(T_i, T_k)
            detail::require(c[i][k].get<std::size_t>() == homotopy_hom(pieces[i], pieces[k], 0).dim(), "Cartan entry");
            detail::require(pb.between(k, i).size() == c[i][k].get<std::size_t>(), "presentation Cartan entry");
        }
}

// ---- iterated almost nu-stable --------------------------------------------------------

inline Json nustable_report(const AlgebraSpec& s, const AlgebraPtr& a, const ProjComplex& t, const RunConfig& cfg) {
    const Quiver& q = s.quiver;
    NuStableReport r = check_iterated_nu_stable(a, t, false, cfg.seed);
    Json j{{"format", kFormatVersion}, {"report", "nustable-check"}, {"algebra", s.name}};
    j["radical_form"] = complex_json(minimize(t, false).complex, s);
    j.update(nust_json(q, r));
    Json conds = Json::array();
    for (const auto& c : r.conditions)
        conds.push_back(Json{{"vertex", q.vertices[c.vertex]},
                             {"a_not_in_T_pm", c.not_in_t_pm},
                             {"multiplicity_in_T0", c.multiplicity_t0},
                             {"b_multiplicity_one", c.multiplicity_one}});
    j["conditions"] = conds;
    j["T_pm_in_add_E"] = r.t_pm_in_add_e;
    j["verdict"] = r.verdict;
    EndAlgebra e = end_algebra(t, cfg.seed);
    if (e.presentation) {
        SimpleImagesReport si = check_simple_images(a, e);
        Json checks = Json::array();
        for (const auto& c : si.checks)
            checks.push_back(Json{{"vertex", q.vertices[c.vertex]},
                                  {"profile", detail::profile_json(e.presentation->quiver, c.profile)},
                                  {"concentrated", c.concentrated},
                                  {"simple", c.simple}});
        j["simple_images"] = Json{{"checks", checks}, {"verdict", si.verdict}, {"agrees", si.verdict == r.verdict}};
        if (si.verdict != r.verdict)
            throw Error(ErrorKind::InternalDisagreement, "conditions (a)/(b) and the simple-image test disagree");
    }
    return j;
}

/// The emitted radical form is homotopy equivalent to T; (a) and (b) are re-read from it.
inline void recheck_nustable(const Json& rep, const AlgebraSpec& s, const AlgebraPtr& a, const ProjComplex& t) {
    ProjComplex x = parse_complex(rep.at("radical_form"), s, a);
    detail::require(validate(x).is_radical, "certificate complex is not radical");
    detail::require(is_isomorphic_complex(minimize(t, false).complex, x).has_value(), "radical form is not T");
    recheck_nust(rep, s, a);
    std::set<std::size_t> e;
    for (const auto& v : rep.at("E")) e.insert(s.quiver.vertex_index(v.get<std::string>()));
    bool verdict = true;
    for (std::size_t v = 0; v < s.quiver.num_vertices(); ++v) {
        if (e.count(v)) continue;
        std::size_t in0 = 0;
        bool elsewhere = false;
        for (const auto& [d, l] : x.terms()) {
            auto cnt = static_cast<std::size_t>(std::count(l.begin(), l.end(), v));
            if (d == 0) in0 = cnt;
            else if (cnt) elsewhere = true;
        }
        verdict = verdict && !elsewhere && in0 == 1;
    }
    detail::require(verdict == rep.at("verdict").get<bool>(), "verdict");
}

// ---- stable image ---------------------------------------------------------------------

struct StableImageOutcome {
    Json report;
    bool concentrated = false;
};

inline StableImageOutcome stable_image_report(const AlgebraSpec& s, const AlgebraPtr& a, const ProjComplex& t,
                                              const Representation& x, const RunConfig& cfg) {
    StableImageOutcome out;
    Json& j = out.report;
    j = Json{{"format", kFormatVersion}, {"report", "stable-image"}, {"algebra", s.name}};
    NuStableReport nu = check_iterated_nu_stable(a, t, false, cfg.seed);
    j["criterion"] = nu.verdict;
    if (!nu.verdict) {
        j["error"] = "T does not satisfy the iterated almost nu-stable criterion";
        return out;
    }
    EndAlgebra e = end_algebra(t, cfg.seed);
    if (!e.presentation) throw Error(ErrorKind::NotBasic, "End(T) is not basic");
    const Quiver& bq = e.presentation->quiver;
    j["input_dims"] = detail::dims_json(s.quiver, x.dims());
    j["end_algebra"] = algebra_json(presentation_spec(*e.presentation, "End(" + s.name + ")"));
    HomologyProfile prof = homology_profile(e, x);
    j["profile"] = detail::profile_json(bq, prof);
    out.concentrated = concentrated_in_zero(prof);
    j["concentrated"] = out.concentrated;
    if (out.concentrated) {
        StableImageCertificate c = stable_image(e, x);
        j["image"] = module_body_json(*c.image, bq);
        j["hom_dim"] = c.hom_dim;
        NuStableReport eb = maximal_nu_stable(e.module_algebra);
        auto labels = projective_labels(*c.image);
        bool in_eb = labels && std::all_of(labels->begin(), labels->end(), [&](std::size_t v) { return eb.in_e(v); });
        j["image_in_add_E_B"] = in_eb;
    } else {
        j["error"] = std::string("NotConcentrated: ") + format_profile(prof);
    }
    return out;
}

/// The emitted module is a valid module over the emitted presentation, of dimension
/// dim Hom_K(T, X) computed from T and X.
inline void recheck_stable_image(const Json& rep, const AlgebraPtr& a, const ProjComplex& t, const Representation& x,
                                 const RunConfig& cfg) {
    if (!rep.at("criterion").get<bool>()) {
        detail::require(!check_iterated_nu_stable(a, t, false, cfg.seed).verdict, "criterion verdict");
        return;
    }
    AlgebraSpec b = parse_algebra(rep.at("end_algebra"));
    AlgebraPtr bm = b.module_algebra(cfg.max_path_len);
    std::size_t total = 0;
    for (const auto& [i, d] : rep.at("profile").items())
        for (const auto& [v, n] : d.items()) total += n.get<std::size_t>();
    std::size_t expect = 0;
    for (int i : homology_degrees(t)) {
        // dim Hom_K(T, X[i]) straight from the definition, vertex by vertex of T
        const auto& l = t.labels(-i);
        std::size_t n = detail::hom_to_module_dim(x, l);
        if (n == 0) continue;
        Matrix k = detail::pullback_matrix(x, t.labels(-i - 1), l, t.diff(-i - 1));
        std::size_t cyc = k.cols() == 0 ? n : n - rank(k);
        std::size_t bnd = t.labels(-i + 1).empty() ? 0 : rank(detail::pullback_matrix(x, l, t.labels(-i + 1), t.diff(-i)));
        expect += cyc - bnd;
    }
    detail::require(total == expect, "total homology dimension");
    if (rep.contains("image")) {
        Json mj = rep.at("image");
        mj["format"] = kFormatVersion;
        mj["algebra"] = b.name;
        Representation m = parse_module(mj, b, bm);
        detail::require(m.total_dim() == rep.at("hom_dim").get<std::size_t>(), "image dimension");
        std::size_t h0 = 0;
        for (const auto& [v, n] : rep.at("profile").at("0").items()) h0 += n.get<std::size_t>();
        detail::require(m.total_dim() == h0, "image is not H^0");
    }
}

// ---- text rendering -----------------------------------------------------------------

inline void render_text(const Json& j, std::ostream& os, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar_like = [](const Json& x) {
        if (!x.is_array()) return !x.is_object();
        return std::all_of(x.begin(), x.end(), [](const Json& y) { return !y.is_object() && !y.is_array(); });
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (scalar_like(v)) {
                os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            } else {
                os << pad << k << ":\n";
                render_text(v, os, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (scalar_like(v)) {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            } else {
                os << pad << "-\n";
                render_text(v, os, indent + 2);
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace qtilt
