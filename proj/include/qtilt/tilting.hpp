#pragma once

#include "qtilt/approximation.hpp"
#include "qtilt/complex_decompose.hpp"
#include "qtilt/presentation.hpp"

#include <set>

namespace qtilt {

// ---- maximal nu-stable module ---------------------------------------------------

struct ProjectiveStatus {
    std::size_t vertex = 0;
    bool projective_injective = false;
    bool in_e = false;
    std::vector<std::size_t> orbit;  // v, sigma(v), ... up to the first repeat or failure
};

/// Conditions (a), (b) for a projective P(vertex) outside add(E).
struct ProjectiveCondition {
    std::size_t vertex = 0;
    bool not_in_t_pm = true;        // (a)
    std::size_t multiplicity_t0 = 0;
    bool multiplicity_one = true;   // (b)
};

struct NuStableReport {
    std::vector<std::optional<std::size_t>> nakayama;  // nu P(v) = P(sigma v) when projective
    std::vector<ProjectiveStatus> projectives;
    std::vector<std::size_t> e_labels;
    std::vector<ProjectiveCondition> conditions;
    bool t_pm_in_add_e = true;
    bool verdict = true;

    bool in_e(std::size_t v) const { return projectives.at(v).in_e; }
};

/// E: the P(v) with nu^i P(v) projective-injective for all i >= 0. The orbit under the
/// (injective) partial Nakayama permutation either closes up or leaves the
/// projective-injectives within #vertices + 1 steps.
inline NuStableReport maximal_nu_stable(const AlgebraPtr& a) {
    NuStableReport rep;
    rep.nakayama = nakayama_permutation(a);
    const std::size_t n = a->num_vertices();
    std::vector<bool> pi(n, false);
    for (const auto& s : rep.nakayama)
        if (s) pi[*s] = true;
    for (std::size_t v = 0; v < n; ++v) {
        ProjectiveStatus st;
        st.vertex = v;
        st.projective_injective = pi[v];
        std::set<std::size_t> seen;
        std::size_t cur = v;
        for (std::size_t step = 0; step <= n + 1; ++step) {
            st.orbit.push_back(cur);
            if (!pi[cur]) break;
            if (!seen.insert(cur).second) {
                st.in_e = true;
                break;
            }
            if (!rep.nakayama[cur]) break;
            cur = *rep.nakayama[cur];
        }
        if (st.in_e) rep.e_labels.push_back(v);
        rep.projectives.push_back(std::move(st));
    }
    return rep;
}

struct AddNuCheck {
    bool via_nakayama = false;  // add(X) = add(nu X), summands of nu X matched
    bool via_e = false;         // X in add(E) and add(top X) = add(soc X)
    std::optional<std::vector<std::size_t>> nu_labels;
};

/// Both routes for a projective X given by labels; they must agree.
inline AddNuCheck check_add_nu_equal(const AlgebraPtr& a, const std::vector<std::size_t>& labels) {
    for (auto v : labels)
        if (v >= a->num_vertices()) throw Error(ErrorKind::InvalidInput, "vertex label out of range");
    AddNuCheck out;
    auto set = detail::label_set(labels);

    Representation x = projective_sum(a, labels);
    out.nu_labels = projective_labels(nakayama(x));
    out.via_nakayama = out.nu_labels && detail::label_set(*out.nu_labels) == set;

    NuStableReport nu = maximal_nu_stable(a);
    bool in_e = std::all_of(labels.begin(), labels.end(), [&](std::size_t v) { return nu.in_e(v); });
    Submodule soc = socle(x);
    std::set<std::size_t> soc_set;
    for (std::size_t v = 0; v < a->num_vertices(); ++v)
        if (soc.module.dim(v) > 0) soc_set.insert(v);
    out.via_e = in_e && soc_set == set;

    if (out.via_nakayama != out.via_e)
        throw Error(ErrorKind::InternalDisagreement, "add(X) = add(nu X) routes disagree");
    return out;
}

inline AddNuCheck check_add_nu_equal(const Representation& x) {
    auto labels = projective_labels(x);
    if (!labels) throw Error(ErrorKind::NotProjective, "module is not projective");
    return check_add_nu_equal(x.algebra_ptr(), *labels);
}

// ---- tilting verification ---------------------------------------------------------

enum class GenerationStatus { ProvedByConstruction, K0NecessaryOnly };

inline const char* to_string(GenerationStatus g) {
    return g == GenerationStatus::ProvedByConstruction ? "ProvedByConstruction" : "K0NecessaryOnly";
}

/// Alternating label count sum_i (-1)^i [T^i] in the basis of the P(v).
inline std::vector<long> k0_class(const ProjComplex& x) {
    std::vector<long> c(x.algebra().num_vertices(), 0);
    for (const auto& [d, l] : x.terms())
        for (auto v : l) c[v] += (d % 2 == 0) ? 1 : -1;
    return c;
}

struct TiltingReport {
    std::map<int, std::size_t> hom_dims;  // n -> dim Hom_K(T, T[n]), n = 0 included
    bool self_orthogonal = false;
    std::vector<std::vector<long>> k0_classes;  // one row per isoclass of indecomposable summands
    Scalar k0_determinant = 0;
    bool k0_unimodular = false;
    GenerationStatus generation = GenerationStatus::K0NecessaryOnly;
    std::vector<std::size_t> multiplicities;
    bool basic = false;
    ComplexDecomposition decomposition;

    bool tilting() const { return self_orthogonal && k0_unimodular; }
};

inline void require_valid(const ProjComplex& t) {
    auto v = validate(t);
    if (!v.d_squared_zero) throw Error(ErrorKind::DSquaredNonzero, "d^2 != 0");
    if (!v.is_radical) throw Error(ErrorKind::NotRadical, "differential has a unit entry");
}

inline TiltingReport verify_tilting(const ProjComplex& t, bool constructed = false, std::uint64_t seed = 0) {
    require_valid(t);
    TiltingReport rep;
    rep.generation = constructed ? GenerationStatus::ProvedByConstruction : GenerationStatus::K0NecessaryOnly;
    if (t.empty()) return rep;
    const int w = t.hi() - t.lo();
    rep.self_orthogonal = true;
    for (int n = -w; n <= w; ++n) {
        rep.hom_dims[n] = homotopy_hom(t, t, n).dim();
        if (n != 0 && rep.hom_dims[n] != 0) rep.self_orthogonal = false;
    }
    ComplexDecomposition dec = decompose_complex(t, seed);
    rep.multiplicities = dec.multiplicity;
    rep.decomposition = dec;
    rep.basic = std::all_of(dec.multiplicity.begin(), dec.multiplicity.end(), [](std::size_t m) { return m == 1; });
    const std::size_t nv = t.algebra().num_vertices();
    Matrix k(dec.num_classes(), nv);
    for (std::size_t c = 0; c < dec.num_classes(); ++c) {
        rep.k0_classes.push_back(k0_class(dec.pieces[dec.representative[c]].complex));
        for (std::size_t v = 0; v < nv; ++v) k(c, v) = rep.k0_classes.back()[v];
    }
    if (k.rows() == k.cols()) {
        rep.k0_determinant = determinant(k);
        rep.k0_unimodular = abs(rep.k0_determinant) == 1;
    }
    return rep;
}

// ---- the T_{P,Q} construction -----------------------------------------------------

struct TpqConstruction {
    ProjComplex raw;      // T_{P,Q} + P[r] + Q[-s]
    ProjComplex complex;  // radical form of raw
    ComplexDecomposition decomposition;
};

/// 0 -> P^{-r} -> ... -> P^{-1} -> A -> Q^1 -> ... -> Q^s -> 0 from iterated minimal
/// approximations, plus the stalks P[r] and Q[-s].
inline TpqConstruction construct_tpq(const AlgebraPtr& a, const std::vector<std::size_t>& p,
                                     const std::vector<std::size_t>& q, int r, int s, std::uint64_t seed = 0) {
    if (r < 1 || s < 1) throw Error(ErrorKind::PreconditionFailed, "r and s must be at least 1");
    if (!check_add_nu_equal(a, p).via_nakayama) throw Error(ErrorKind::PreconditionFailed, "add(P) != add(nu P)");
    if (!check_add_nu_equal(a, q).via_nakayama) throw Error(ErrorKind::PreconditionFailed, "add(Q) != add(nu Q)");
    for (auto u : p)
        for (auto v : q)
            if (!a->between(u, v).empty()) throw Error(ErrorKind::PreconditionFailed, "Hom(P, Q) != 0");

    std::map<int, std::vector<std::size_t>> terms;
    std::map<int, ModuleMap> maps;  // degree d -> d + 1
    auto all = all_vertices(*a);
    Representation amod = projective_sum(a, all);
    terms[0] = all;

    Representation target = amod;
    ModuleMap target_inc = identity_map(amod);
    for (int i = 1; i <= r; ++i) {
        Approximation f = minimal_right_approximation(p, target);
        terms[-i] = f.labels;
        maps[-i] = compose(f.map, target_inc);
        Submodule k = kernel(f.object, f.map);
        target = k.module;
        target_inc = k.inclusion;
    }
    Representation src = amod;
    ModuleMap src_proj = identity_map(amod);
    for (int j = 1; j <= s; ++j) {
        Approximation g = minimal_left_approximation(q, src);
        terms[j] = g.labels;
        maps[j - 1] = compose(src_proj, g.map);
        Quotient c = cokernel(g.object, g.map);
        src = c.module;
        src_proj = c.projection;
    }
    std::map<int, LabelMatrix> diffs;
    for (const auto& [d, f] : maps)
        if (!terms[d].empty() && !terms[d + 1].empty()) diffs[d] = from_module_map(*a, terms[d], terms[d + 1], f);

    TpqConstruction out;
    out.raw = direct_sum(direct_sum(ProjComplex(a, terms, diffs), stalk(a, p, -r)), stalk(a, q, s));
    if (!validate(out.raw).d_squared_zero) throw Error(ErrorKind::InternalDisagreement, "assembled T_{P,Q} has d^2 != 0");
    out.complex = minimize(out.raw).complex;
    out.decomposition = decompose_complex(out.complex, seed);
    return out;
}

// ---- endomorphism algebra -------------------------------------------------------------

struct EndAlgebra {
    ProjComplex complex;
    HomotopyHom hom;   // basis b_0, ... of End_K(T)
    Algebra algebra;   // b_i b_j = b_i o b_j (b_j first)
    ComplexDecomposition decomposition;
    std::vector<Vec> idempotents;  // vertex k: projection onto piece k then inclusion
    bool basic = false;
    std::optional<Presentation> presentation;
    AlgebraPtr module_algebra;  // right End-modules as left modules (opposite quiver)

    ChainMap element(const Vec& x) const { return hom.combination(x); }
};

inline void require_self_orthogonal(const ProjComplex& t) {
    const int w = t.empty() ? 0 : t.hi() - t.lo();
    for (int n = -w; n <= w; ++n)
        if (n != 0 && homotopy_hom(t, t, n).dim() != 0)
            throw Error(ErrorKind::NotSelfOrthogonal, "Hom(T, T[" + std::to_string(n) + "]) != 0");
}

inline EndAlgebra end_algebra(const ProjComplex& t, std::uint64_t seed = 0) {
    require_valid(t);
    require_self_orthogonal(t);
    HomotopyHom h = homotopy_hom(t, t, 0);
    const std::size_t n = h.dim();
    const auto& b = h.basis();
    auto table = sparse_table(n, [&](std::size_t i, std::size_t j) { return h.coordinates(compose(t, t, t, b[j], b[i])); });
    Algebra e = algebra_from_structure_constants(n, std::move(table), h.coordinates(identity_chain_map(t)));
    EndAlgebra out{t, std::move(h), std::move(e), decompose_complex(t, seed), {}, false, std::nullopt, nullptr};
    for (const auto& piece : out.decomposition.pieces)
        out.idempotents.push_back(out.hom.coordinates(compose(t, piece.complex, t, piece.projection, piece.inclusion)));
    out.basic = std::all_of(out.decomposition.multiplicity.begin(), out.decomposition.multiplicity.end(),
                            [](std::size_t m) { return m == 1; });
    if (out.basic) {
        out.presentation = quiver_presentation(out.algebra, out.idempotents);
        out.module_algebra = std::make_shared<const Algebra>(
            build_module_algebra(out.presentation->quiver, out.presentation->relations,
                                 std::max<std::size_t>(out.presentation->nilpotency + 1, 2)));
    }
    return out;
}

// ---- iterated almost nu-stable criterion ---------------------------------------------

/// Conditions (a), (b) on the radical form of T for each P outside add(E).
inline NuStableReport check_iterated_nu_stable(const AlgebraPtr& a, const ProjComplex& t, bool constructed = false,
                                               std::uint64_t seed = 0) {
    if (!constructed) {
        TiltingReport tr = verify_tilting(t, false, seed);
        if (!tr.tilting()) throw Error(ErrorKind::NotTilting, "complex is not tilting");
    } else {
        require_valid(t);
    }
    ProjComplex x = minimize(t, false).complex;
    NuStableReport rep = maximal_nu_stable(a);
    for (const auto& [d, l] : x.terms())
        if (d != 0)
            for (auto v : l)
                if (!rep.in_e(v)) rep.t_pm_in_add_e = false;
    for (std::size_t v = 0; v < a->num_vertices(); ++v) {
        if (rep.in_e(v)) continue;
        ProjectiveCondition c;
        c.vertex = v;
        for (const auto& [d, l] : x.terms()) {
            auto cnt = static_cast<std::size_t>(std::count(l.begin(), l.end(), v));
            if (d == 0) c.multiplicity_t0 = cnt;
            else if (cnt) c.not_in_t_pm = false;
        }
        c.multiplicity_one = c.multiplicity_t0 == 1;
        if (!c.not_in_t_pm || !c.multiplicity_one) rep.verdict = false;
        rep.conditions.push_back(c);
    }
    return rep;
}

// ---- Hom_K(T, X[i]) as a module over End(T) ------------------------------------------

namespace detail {

/// Pullback Hom(T^k, X) -> Hom(T^j, X) along m: T^j -> T^k, on row vectors of
/// concatenated y_c in X_{cl[c]}.
inline Matrix pullback_matrix(const Representation& x, const std::vector<std::size_t>& rl,
                              const std::vector<std::size_t>& cl, const LabelMatrix& m) {
    std::vector<std::size_t> roff(rl.size() + 1, 0), coff(cl.size() + 1, 0);
    for (std::size_t r = 0; r < rl.size(); ++r) roff[r + 1] = roff[r] + x.dim(rl[r]);
    for (std::size_t c = 0; c < cl.size(); ++c) coff[c + 1] = coff[c] + x.dim(cl[c]);
    Matrix out(coff.back(), roff.back());
    for (std::size_t r = 0; r < rl.size(); ++r)
        for (std::size_t c = 0; c < cl.size(); ++c) {
            if (is_zero(m.at(r, c))) continue;
            Matrix act = x.act(m.at(r, c));
            Matrix blk = act.block(x.offset(cl[c]), x.offset(rl[r]), x.dim(cl[c]), x.dim(rl[r]));
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j) out(coff[c] + i, roff[r] + j) = blk(i, j);
        }
    return out;
}

inline std::size_t hom_to_module_dim(const Representation& x, const std::vector<std::size_t>& labels) {
    std::size_t n = 0;
    for (auto v : labels) n += x.dim(v);
    return n;
}

}  // namespace detail

struct HomologyModule {
    int degree = 0;
    std::vector<Vec> representatives;  // cycles in Hom(T^{-degree}, X), one per basis vector
    Representation module;             // over EndAlgebra::module_algebra
};

/// Hom_K(T, X[i]) with End(T) acting by precomposition.
inline HomologyModule f_homology(const EndAlgebra& e, const Representation& x, int i) {
    if (!e.presentation) throw Error(ErrorKind::NotBasic, "End(T) is not basic; no quiver presentation");
    const ProjComplex& t = e.complex;
    const auto& l = t.labels(-i);
    const std::size_t n = detail::hom_to_module_dim(x, l);
    HomologyModule out;
    out.degree = i;

    // cycles: u with (d^{-i-1} then u) = 0; boundaries: d^{-i} then h
    std::vector<Vec> cycles;
    if (n > 0) {
        Matrix k = detail::pullback_matrix(x, t.labels(-i - 1), l, t.diff(-i - 1));
        if (k.cols() == 0) {
            for (std::size_t j = 0; j < n; ++j) cycles.push_back(unit_vec(n, j));
        } else {
            Matrix z = left_kernel(k);
            for (std::size_t r = 0; r < z.rows(); ++r) cycles.push_back(z.row(r));
        }
    }
    CoordinateBasis cb(n);
    if (n > 0 && !t.labels(-i + 1).empty()) {
        Matrix bd = detail::pullback_matrix(x, l, t.labels(-i + 1), t.diff(-i));
        for (std::size_t r = 0; r < bd.rows(); ++r)
            cb.add(bd.row(r));
    }
    std::vector<std::size_t> rep_index;
    for (const auto& z : cycles) {
        std::size_t idx = cb.added();
        if (cb.add(z)) {
            rep_index.push_back(idx);
            out.representatives.push_back(z);
        }
    }
    const std::size_t h = out.representatives.size();
    auto reduce = [&](const Vec& u) {
        auto c = cb.coordinates(u);
        if (!c) throw Error(ErrorKind::InternalDisagreement, "precomposition left the cycle space");
        Vec r;
        for (auto idx : rep_index) r.push_back((*c)[idx]);
        return r;
    };
    // right action of an element of End(T) on H, as an h x h matrix on row vectors
    auto action = [&](const Vec& elem) {
        Matrix m(h, h);
        if (h == 0) return m;
        ChainMap b = e.element(elem);
        Matrix p = detail::pullback_matrix(x, l, l, component(t, t, b, -i));
        for (std::size_t k = 0; k < h; ++k) m.set_row(k, reduce(p.apply(out.representatives[k])));
        return m;
    };

    const Presentation& pres = *e.presentation;
    const std::size_t nv = pres.quiver.num_vertices();
    std::vector<Matrix> basis(nv);
    std::vector<std::size_t> dims(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        Matrix ev = action(e.idempotents[v]);
        basis[v] = h ? row_space(ev) : Matrix(0, 0);
        dims[v] = basis[v].rows();
    }
    std::vector<Matrix> arrows;
    for (std::size_t k = 0; k < pres.quiver.num_arrows(); ++k) {
        const auto& ar = pres.quiver.arrows[k];
        Matrix m(dims[ar.source], dims[ar.target]);
        if (dims[ar.source] && dims[ar.target]) {
            Matrix img = basis[ar.source] * action(pres.arrow_elements[k]);
            auto sol = solve(basis[ar.target].transpose(), img.transpose());
            if (!sol) throw Error(ErrorKind::InternalDisagreement, "arrow action leaves M e_t");
            m = sol->transpose();
        }
        arrows.push_back(std::move(m));
    }
    out.module = Representation(e.module_algebra, dims, arrows);
    return out;
}

/// Degree range where Hom_K(T, X[i]) can be nonzero.
inline std::vector<int> homology_degrees(const ProjComplex& t) {
    std::vector<int> out;
    for (int d : t.degrees()) out.push_back(-d);
    std::sort(out.begin(), out.end());
    return out;
}

using HomologyProfile = std::map<int, std::vector<std::size_t>>;  // i -> dim vector over B

inline HomologyProfile homology_profile(const EndAlgebra& e, const Representation& x) {
    HomologyProfile p;
    for (int i : homology_degrees(e.complex)) p[i] = f_homology(e, x, i).module.dims();
    return p;
}

inline bool concentrated_in_zero(const HomologyProfile& p) {
    for (const auto& [i, d] : p)
        if (i != 0 && total(d) != 0) return false;
    return true;
}

inline std::string format_profile(const HomologyProfile& p) {
    std::string s;
    for (const auto& [i, d] : p) {
        if (!s.empty()) s += ", ";
        s += "H" + std::to_string(i) + "=(";
        for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
        s += ")";
    }
    return s;
}

struct StableImageCertificate {
    HomologyProfile profile;
    std::optional<Representation> image;  // phi_F(X) = Hom_K(T, X) when concentrated
    std::size_t hom_dim = 0;              // dim Hom_K(T, X)
};

/// phi_F(X) for X whose image homology is concentrated in degree 0; throws
/// NotConcentrated (profile in the message) otherwise.
inline StableImageCertificate stable_image(const EndAlgebra& e, const Representation& x) {
    StableImageCertificate c;
    c.profile = homology_profile(e, x);
    if (!concentrated_in_zero(c.profile)) throw Error(ErrorKind::NotConcentrated, format_profile(c.profile));
    c.image = f_homology(e, x, 0).module;
    c.hom_dim = c.image->total_dim();
    return c;
}

struct SimpleImageCheck {
    std::size_t vertex = 0;
    HomologyProfile profile;
    bool concentrated = false;
    bool simple = false;
};

struct SimpleImagesReport {
    std::vector<SimpleImageCheck> checks;  // one per P outside add(E)
    bool verdict = true;
};

/// F(top P) simple for every indecomposable projective P outside add(E).
inline SimpleImagesReport check_simple_images(const AlgebraPtr& a, const EndAlgebra& e) {
    NuStableReport nu = maximal_nu_stable(a);
    SimpleImagesReport rep;
    for (std::size_t v = 0; v < a->num_vertices(); ++v) {
        if (nu.in_e(v)) continue;
        SimpleImageCheck c;
        c.vertex = v;
        Representation s = simple(a, v);
        c.profile = homology_profile(e, s);
        c.concentrated = concentrated_in_zero(c.profile);
        if (c.concentrated) {
            Representation h0 = f_homology(e, s, 0).module;
            c.simple = total(h0.dims()) == 1 && socle(h0).module.dims() == h0.dims();
        }
        if (!c.concentrated || !c.simple) rep.verdict = false;
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace qtilt
