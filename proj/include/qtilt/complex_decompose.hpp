#pragma once

#include "qtilt/decompose.hpp"
#include "qtilt/minimize.hpp"

#include <algorithm>

namespace qtilt {

/// Row of the total space of (sum of P(labels)) holding e_{labels[r]}; the ordering is
/// the vertex-major one used by to_module_map / projective_sum.
inline std::size_t generator_position(const Algebra& alg, const std::vector<std::size_t>& labels, std::size_t r) {
    std::size_t pos = 0;
    const std::size_t a = labels[r];
    for (std::size_t w = 0; w < a; ++w)
        for (auto l : labels) pos += alg.between(w, l).size();
    for (std::size_t k = 0; k < r; ++k) pos += alg.between(a, labels[k]).size();
    const auto& own = alg.between(a, a);
    return pos + static_cast<std::size_t>(std::find(own.begin(), own.end(), alg.trivial(a)) - own.begin());
}

inline std::size_t projective_sum_dim(const Algebra& alg, const std::vector<std::size_t>& labels) {
    std::size_t n = 0;
    for (std::size_t w = 0; w < alg.num_vertices(); ++w)
        for (auto l : labels) n += alg.between(w, l).size();
    return n;
}

/// Inverse of to_module_map: reads entry (r, c) off the image of e_{rl[r]}.
inline LabelMatrix from_module_map(const Algebra& alg, const std::vector<std::size_t>& rl,
                                   const std::vector<std::size_t>& cl, const ModuleMap& f) {
    LabelMatrix m(rl.size(), cl.size(), alg.dim());
    for (std::size_t r = 0; r < rl.size(); ++r) {
        const std::size_t a = rl[r];
        std::size_t row = 0;
        for (std::size_t k = 0; k < r; ++k) row += alg.between(a, rl[k]).size();
        const auto& own = alg.between(a, a);
        row += static_cast<std::size_t>(std::find(own.begin(), own.end(), alg.trivial(a)) - own.begin());
        std::size_t col = 0;
        for (std::size_t c = 0; c < cl.size(); ++c) {
            const auto& qs = alg.between(a, cl[c]);
            for (std::size_t j = 0; j < qs.size(); ++j) m.at(r, c)[qs[j]] = f[a](row, col + j);
            col += qs.size();
        }
    }
    return m;
}

/// Degree-0 endomorphism as one matrix on the direct sum (degrees ascending) of the
/// underlying vector spaces.
inline Matrix chain_total_matrix(const ProjComplex& x, const ProjComplex& y, const ChainMap& u) {
    std::vector<Matrix> blocks;
    for (int i : x.degrees()) blocks.push_back(total_matrix(component_module_map(x, y, u, i)));
    return block_diagonal(blocks);
}

inline ChainMap chain_from_total(const ProjComplex& x, const Matrix& t) {
    const Algebra& a = x.algebra();
    const AlgebraPtr& ap = x.algebra_ptr();
    ChainMap u{0, {}};
    std::size_t off = 0;
    for (int i : x.degrees()) {
        Representation p = projective_sum(ap, x.labels(i));
        std::size_t n = p.total_dim();
        ModuleMap f = from_total(p, p, t.block(off, off, n, n));
        LabelMatrix m = from_module_map(a, x.labels(i), x.labels(i), f);
        if (!m.is_zero()) u.comp[i] = m;
        off += n;
    }
    return u;
}

/// Solves L Y = B for Y with entries in e_{mid[k]} A e_{cl[j]} (L: rows x mid, B: rows x cl).
inline std::optional<LabelMatrix> solve_label(const Algebra& alg, const LabelMatrix& l, const std::vector<std::size_t>& mid,
                                              const std::vector<std::size_t>& cl, const LabelMatrix& b) {
    struct Slot {
        std::size_t k, j, p;
    };
    std::vector<Slot> slots;
    for (std::size_t k = 0; k < mid.size(); ++k)
        for (std::size_t j = 0; j < cl.size(); ++j)
            for (auto p : alg.between(mid[k], cl[j])) slots.push_back({k, j, p});
    const std::size_t n = alg.dim();
    const std::size_t rows = l.rows() * cl.size() * n;
    std::vector<Vec> cols;
    for (const auto& s : slots) {
        Vec col(rows, Scalar(0));
        for (std::size_t i = 0; i < l.rows(); ++i) {
            if (is_zero(l.at(i, s.k))) continue;
            Vec prod = alg.mul(l.at(i, s.k), alg.basis_vec(s.p));
            for (std::size_t q = 0; q < n; ++q) col[(i * cl.size() + s.j) * n + q] = prod[q];
        }
        cols.push_back(std::move(col));
    }
    Vec target(rows, Scalar(0));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < cl.size(); ++j)
            for (std::size_t q = 0; q < n; ++q) target[(i * cl.size() + j) * n + q] = b.at(i, j)[q];
    auto s = solve(Matrix::from_columns(cols, rows), Matrix::from_columns({target}, rows));
    if (!s) return std::nullopt;
    LabelMatrix y(mid.size(), cl.size(), n);
    for (std::size_t t = 0; t < slots.size(); ++t) y.at(slots[t].k, slots[t].j)[slots[t].p] = (*s)(t, 0);
    return y;
}

struct ComplexSummand {
    ProjComplex complex;
    ChainMap inclusion;   // summand -> original
    ChainMap projection;  // original -> summand
};

namespace detail {

/// Image of a strict idempotent e of a radical complex, split degree-wise.
inline ComplexSummand split_strict(const ProjComplex& x, const ChainMap& e) {
    const Algebra& a = x.algebra();
    std::map<int, std::vector<std::size_t>> terms;
    std::map<int, LabelMatrix> iota, pi;
    for (int i : x.degrees()) {
        const auto& l = x.labels(i);
        LabelMatrix ei = component(x, x, e, i);
        Matrix t = top_part(a, l, l, ei);
        CoordinateBasis cb(l.size(), false);
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < l.size(); ++r)
            if (cb.add(t.row(r))) rows.push_back(r);
        if (rows.empty()) continue;
        std::vector<std::size_t> nl;
        for (auto r : rows) nl.push_back(l[r]);
        LabelMatrix er = ei.select(rows, detail::all_indices(l.size()));
        auto y = solve_label(a, er, l, nl, identity_label_matrix(a, nl));
        if (!y) throw Error(ErrorKind::InternalDisagreement, "idempotent image is not generated by its top rows");
        terms[i] = nl;
        iota[i] = er;
        pi[i] = mul(a, ei, *y);
    }
    std::map<int, LabelMatrix> diffs;
    for (const auto& [i, l] : terms)
        if (terms.count(i + 1)) diffs[i] = mul(a, mul(a, iota[i], x.diff(i)), pi[i + 1]);
    ComplexSummand s{ProjComplex(x.algebra_ptr(), terms, diffs), ChainMap{0, iota}, ChainMap{0, pi}};
    if (!is_chain_map(s.complex, x, s.inclusion) || !is_chain_map(x, s.complex, s.projection))
        throw Error(ErrorKind::InternalDisagreement, "split idempotent maps are not chain maps");
    if (!chain_maps_equal(s.complex, s.complex, compose(s.complex, x, s.complex, s.inclusion, s.projection),
                          identity_chain_map(s.complex)))
        throw Error(ErrorKind::InternalDisagreement, "split idempotent: projection after inclusion is not identity");
    return s;
}

inline ChainMap strictify(const ProjComplex& x, ChainMap e) {
    for (int it = 0; it < 64; ++it) {
        ChainMap e2 = compose(x, x, x, e, e);
        if (chain_maps_equal(x, x, e2, e)) return e;
        ChainMap e3 = compose(x, x, x, e2, e);
        ChainMap next = add(x, x, ChainMap{0, {}}, e2, Scalar(3));
        e = add(x, x, next, e3, Scalar(-2));
    }
    throw Error(ErrorKind::NotIdempotent, "idempotent lifting did not converge");
}

}  // namespace detail

/// Summand of c cut out by a homotopy-idempotent e. The representative is transported to
/// the minimized complex, where e^2 - e is nilpotent, and replaced by the idempotent
/// polynomial in it (Newton step e <- 3e^2 - 2e^3).
inline ComplexSummand split_idempotent(const ProjComplex& c, const ChainMap& e) {
    if (e.shift != 0 || !is_chain_map(c, c, e)) throw Error(ErrorKind::NotIdempotent, "not a chain endomorphism");
    if (!is_null_homotopic(c, c, add(c, c, compose(c, c, c, e, e), e, Scalar(-1))))
        throw Error(ErrorKind::NotIdempotent, "e o e - e is not null-homotopic");
    Minimized m = minimize(c);
    const ProjComplex& x = m.complex;
    ChainMap ex = compose(x, c, x, compose(x, c, c, m.from, e), m.to);
    ComplexSummand s = detail::split_strict(x, detail::strictify(x, ex));
    return {s.complex, compose(s.complex, x, c, s.inclusion, m.from), compose(c, x, s.complex, m.to, s.projection)};
}

/// Invertible chain map between radical complexes: every component has invertible top.
inline bool is_chain_isomorphism(const ProjComplex& x, const ProjComplex& y, const ChainMap& f) {
    if (f.shift != 0) return false;
    if (x.degrees() != y.degrees()) return false;
    for (int i : x.degrees()) {
        if (x.labels(i).size() != y.labels(i).size()) return false;
        Matrix t = top_part(x.algebra(), x.labels(i), y.labels(i), component(x, y, f, i));
        if (rank(t) != t.rows()) return false;
    }
    return true;
}

inline ChainMap invert_chain_map(const ProjComplex& x, const ProjComplex& y, const ChainMap& f) {
    ChainMap g{0, {}};
    for (int i : x.degrees()) {
        auto inv = inverse(component_module_map(x, y, f, i));
        if (!inv) throw Error(ErrorKind::PreconditionFailed, "chain map is not invertible");
        g.comp[i] = from_module_map(x.algebra(), y.labels(i), x.labels(i), *inv);
    }
    return g;
}

namespace detail {

inline std::map<int, std::vector<std::size_t>> sorted_terms(const ProjComplex& x) {
    auto t = x.terms();
    for (auto& [d, l] : t) std::sort(l.begin(), l.end());
    return t;
}

/// Radical indecomposables: iso iff some basis composite f then g is invertible.
inline std::optional<std::pair<ChainMap, ChainMap>> indecomposable_complex_iso(const ProjComplex& x,
                                                                               const ProjComplex& y) {
    if (sorted_terms(x) != sorted_terms(y)) return std::nullopt;
    auto hxy = chain_map_basis(x, y, 0);
    auto hyx = chain_map_basis(y, x, 0);
    for (const auto& f : hxy)
        for (const auto& g : hyx)
            if (is_chain_isomorphism(x, x, compose(x, y, x, f, g)))
                return std::make_pair(f, invert_chain_map(x, y, f));
    return std::nullopt;
}

inline EndoAction complex_endo_action(const ProjComplex& x) {
    const Algebra& a = x.algebra();
    EndoAction act;
    std::map<std::pair<int, std::size_t>, std::vector<std::size_t>> groups;
    std::vector<std::size_t> tops;
    std::size_t off = 0;
    for (int i : x.degrees()) {
        const auto& l = x.labels(i);
        for (std::size_t r = 0; r < l.size(); ++r) {
            groups[{i, l[r]}].push_back(tops.size());
            tops.push_back(off + generator_position(a, l, r));
        }
        off += projective_sum_dim(a, l);
    }
    act.n = off;
    act.lift = Matrix(tops.size(), off);
    for (std::size_t k = 0; k < tops.size(); ++k) act.lift(k, tops[k]) = 1;
    act.top = act.lift.transpose();
    for (auto& [key, g] : groups) act.groups.push_back(g);
    for (const auto& u : chain_map_basis(x, x, 0)) act.basis.push_back(chain_total_matrix(x, x, u));
    return act;
}

}  // namespace detail

struct ComplexDecomposition {
    ProjComplex minimal;                      // radical form of the input
    std::vector<ComplexSummand> pieces;       // maps relative to the input complex
    std::vector<std::size_t> class_of;
    std::vector<std::size_t> multiplicity;
    std::vector<std::size_t> representative;

    std::size_t num_classes() const { return multiplicity.size(); }
};

/// Decomposition into indecomposable radical complexes, each piece cut out of the
/// minimized complex by a primitive idempotent of its chain endomorphism algebra.
inline ComplexDecomposition decompose_complex(const ProjComplex& c, std::uint64_t seed = 0) {
    Minimized m = minimize(c);
    const ProjComplex& x = m.complex;
    ComplexDecomposition out;
    out.minimal = x;
    if (x.empty()) return out;
    EndoAction act = detail::complex_endo_action(x);
    std::mt19937_64 rng(seed);
    std::vector<ComplexSummand> local;
    for (const Matrix& eps : primitive_idempotents(act, rng))
        local.push_back(detail::split_strict(x, chain_from_total(x, eps)));
    std::stable_sort(local.begin(), local.end(), [](const ComplexSummand& p, const ComplexSummand& q) {
        if (p.complex.num_summands() != q.complex.num_summands())
            return p.complex.num_summands() > q.complex.num_summands();
        return detail::sorted_terms(p.complex) < detail::sorted_terms(q.complex);
    });

    // certificate on the radical form: orthogonality and completeness
    ChainMap total{0, {}};
    for (std::size_t k = 0; k < local.size(); ++k) {
        for (std::size_t l = 0; l < local.size(); ++l) {
            ChainMap p = compose(local[k].complex, x, local[l].complex, local[k].inclusion, local[l].projection);
            ChainMap want = k == l ? identity_chain_map(local[k].complex) : ChainMap{0, {}};
            if (!chain_maps_equal(local[k].complex, local[l].complex, p, want)) throw Error(ErrorKind::InternalDisagreement, "complex summands are not orthogonal");
        }
        total = add(x, x, total, compose(x, local[k].complex, x, local[k].projection, local[k].inclusion));
    }
    if (!chain_maps_equal(x, x, total, identity_chain_map(x)))
        throw Error(ErrorKind::InternalDisagreement, "complex summand idempotents do not sum to the identity");

    for (auto& s : local) {
        s.inclusion = compose(s.complex, x, c, s.inclusion, m.from);
        s.projection = compose(c, x, s.complex, m.to, s.projection);
        std::size_t cls = out.representative.size();
        for (std::size_t k = 0; k < out.representative.size(); ++k)
            if (detail::indecomposable_complex_iso(s.complex, local[out.representative[k]].complex)) {
                cls = k;
                break;
            }
        if (cls == out.representative.size()) {
            out.representative.push_back(out.class_of.size());
            out.multiplicity.push_back(0);
        }
        ++out.multiplicity[cls];
        out.class_of.push_back(cls);
    }
    out.pieces = std::move(local);
    return out;
}

struct ComplexIso {
    ChainMap forward;   // X -> Y
    ChainMap backward;  // Y -> X
};

/// Homotopy equivalence test. Both sides are minimized; radical complexes are
/// homotopy equivalent iff isomorphic as complexes.
inline std::optional<ComplexIso> is_isomorphic_complex(const ProjComplex& x, const ProjComplex& y,
                                                       std::uint64_t seed = 0) {
    Minimized mx = minimize(x), my = minimize(y);
    const ProjComplex &a = mx.complex, &b = my.complex;
    if (detail::sorted_terms(a) != detail::sorted_terms(b)) return std::nullopt;
    auto wrap = [&](const ChainMap& f, const ChainMap& g) {
        return ComplexIso{compose(x, a, y, mx.to, compose(a, b, y, f, my.from)),
                          compose(y, b, x, my.to, compose(b, a, x, g, mx.from))};
    };
    if (a.empty()) return wrap(ChainMap{0, {}}, ChainMap{0, {}});
    auto hab = chain_map_basis(a, b, 0);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 8 && !hab.empty(); ++t) {
        Vec coeffs = detail::random_vec(hab.size(), rng);
        ChainMap f{0, {}};
        for (std::size_t k = 0; k < hab.size(); ++k) f = add(a, b, f, hab[k], coeffs[k]);
        if (is_chain_isomorphism(a, b, f)) return wrap(f, invert_chain_map(a, b, f));
    }
    // match indecomposable summands
    auto da = decompose_complex(a, seed), db = decompose_complex(b, seed);
    if (da.pieces.size() != db.pieces.size()) return std::nullopt;
    std::vector<bool> used(db.pieces.size(), false);
    ChainMap f{0, {}}, g{0, {}};
    for (const auto& p : da.pieces) {
        bool found = false;
        for (std::size_t k = 0; k < db.pieces.size() && !found; ++k) {
            if (used[k]) continue;
            auto iso = detail::indecomposable_complex_iso(p.complex, db.pieces[k].complex);
            if (!iso) continue;
            used[k] = found = true;
            const auto& q = db.pieces[k];
            f = add(a, b, f,
                    compose(a, p.complex, b, p.projection, compose(p.complex, q.complex, b, iso->first, q.inclusion)));
            g = add(b, a, g,
                    compose(b, q.complex, a, q.projection, compose(q.complex, p.complex, a, iso->second, p.inclusion)));
        }
        if (!found) return std::nullopt;
    }
    if (!is_chain_isomorphism(a, b, f)) throw Error(ErrorKind::InternalDisagreement, "summand matching is not an iso");
    return wrap(f, g);
}

/// H^i as a module: kernel of d^i modulo the image of d^{i-1}.
inline Representation homology(const ProjComplex& c, int i) {
    const AlgebraPtr& ap = c.algebra_ptr();
    Representation mi = projective_sum(ap, c.labels(i));
    Representation next = projective_sum(ap, c.labels(i + 1));
    Submodule k = kernel(mi, to_module_map(ap, c.labels(i), c.labels(i + 1), c.diff(i)));
    ModuleMap dprev = to_module_map(ap, c.labels(i - 1), c.labels(i), c.diff(i - 1));
    Subspaces im;
    for (std::size_t v = 0; v < mi.num_vertices(); ++v) {
        const Matrix& inc = k.inclusion[v];
        if (inc.rows() == 0 || dprev[v].rows() == 0) {
            im.push_back(Matrix(0, inc.rows()));
            continue;
        }
        auto y = solve(inc.transpose(), dprev[v].transpose());
        if (!y) throw Error(ErrorKind::DSquaredNonzero, "image of d is not inside the kernel");
        im.push_back(y->transpose());
    }
    return quotient(k.module, im).module;
}

}  // namespace qtilt
