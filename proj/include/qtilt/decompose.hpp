#pragma once

#include "qtilt/poly.hpp"
#include "qtilt/representation.hpp"

#include <cstdint>
#include <random>

namespace qtilt {

/// Finite-dimensional algebra of endomorphisms acting on a space V (row convention,
/// composition "f then g" = F G), together with a top quotient T of V on which the
/// radical of the object acts nilpotently. Every basis matrix must preserve ker(top).
struct EndoAction {
    std::size_t n = 0;
    std::vector<Matrix> basis;  // n x n, closed under product, identity in the span
    Matrix top;                 // n x t
    Matrix lift;                // t x n, lift * top = identity
    std::vector<std::vector<std::size_t>> groups;  // partition of the top coordinates
};

namespace detail {

inline Vec random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    Vec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

inline Matrix flatten(const Matrix& m) {
    Matrix f(1, m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) f(0, i * m.cols() + j) = m(i, j);
    return f;
}

inline Vec flat(const Matrix& m) { return m.data(); }

inline Scalar trace_product(const Matrix& a, const Matrix& b) {
    Scalar s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (sgn(a(i, k)) != 0 && sgn(b(k, i)) != 0) s += a(i, k) * b(k, i);
    return s;
}

inline Matrix power(Matrix m, std::size_t at_least) {
    std::size_t p = 1;
    while (p < at_least) {
        m = m * m;
        p *= 2;
    }
    return m;
}

inline bool is_nilpotent(const Matrix& m) { return m.rows() == 0 || power(m, m.rows()).is_zero(); }

/// Projection onto im(h^N) along ker(h^N) on row vectors.
inline Matrix fitting_projection(const Matrix& h) {
    Matrix k = power(h, h.rows());
    Matrix im = row_space(k);
    Matrix ker = left_kernel(k);
    Matrix b = vstack(im, ker);
    Matrix d(b.rows(), b.rows());
    for (std::size_t i = 0; i < im.rows(); ++i) d(i, i) = 1;
    return inverse(b).value() * d * b;
}

struct TopAlgebra {
    std::vector<Matrix> on_top;  // independent t x t images
    std::vector<Matrix> on_v;    // chosen preimages
    std::vector<Vec> radical;    // coefficient vectors (over on_top) spanning J
};

inline TopAlgebra top_algebra(const EndoAction& act, const Matrix& e) {
    TopAlgebra out;
    const std::size_t t = act.top.cols();
    CoordinateBasis seen(t * t, false);
    for (const auto& b : act.basis) {
        Matrix f = e * b * e;
        Matrix ft = act.lift * f * act.top;
        if (seen.add(flat(ft))) {
            out.on_top.push_back(std::move(ft));
            out.on_v.push_back(std::move(f));
        }
    }
    const std::size_t k = out.on_top.size();
    Matrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g(i, j) = trace_product(out.on_top[i], out.on_top[j]);
    Matrix kb = kernel_basis(g);
    for (std::size_t c = 0; c < kb.cols(); ++c) out.radical.push_back(kb.column(c));
    return out;
}

inline Matrix combo(const std::vector<Matrix>& ms, const Vec& c, std::size_t r, std::size_t cols) {
    Matrix out(r, cols);
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (sgn(c[i]) != 0) out += ms[i] * c[i];
    return out;
}

/// An element h of eEe (as a matrix on V) that is neither nilpotent nor invertible on eV.
inline std::optional<Matrix> splitting_element(const EndoAction& act, const Matrix& e, const TopAlgebra& ta,
                                               std::mt19937_64& rng) {
    const std::size_t t = act.top.cols();
    const std::size_t k = ta.on_top.size();
    Matrix et = act.lift * e * act.top;

    // T * J
    CoordinateBasis tj(t, false);
    for (const auto& c : ta.radical) {
        Matrix j = combo(ta.on_top, c, t, t);
        for (std::size_t r = 0; r < t; ++r) tj.add(j.row(r));
    }

    for (int round = 0; round < 24; ++round) {
        // Annihilator of a top vector modulo T*J.
        for (const auto& grp : act.groups) {
            Vec r(t, Scalar(0));
            std::uniform_int_distribution<int> d(-3, 3);
            for (auto i : grp) r[i] = (round < 2 && i != grp.front()) ? 0 : d(rng);
            Vec w = et.apply(r);
            if (is_zero(tj.reduce(w))) continue;
            Matrix rows(k, t);
            for (std::size_t i = 0; i < k; ++i) rows.set_row(i, tj.reduce(ta.on_top[i].apply(w)));
            Matrix ann = left_kernel(rows);
            if (ann.rows() == 0) continue;
            for (int tries = 0; tries < 4; ++tries) {
                Vec coeff = tries == 0 && ann.rows() == 1 ? ann.row(0) : Vec(k, Scalar(0));
                if (!(tries == 0 && ann.rows() == 1)) {
                    Vec mix = random_vec(ann.rows(), rng);
                    for (std::size_t a = 0; a < ann.rows(); ++a) axpy(coeff, mix[a], ann.row(a));
                }
                Matrix h = combo(ta.on_top, coeff, t, t);
                if (!is_nilpotent(h)) return combo(ta.on_v, coeff, act.n, act.n);
            }
        }
        // Rational eigenvalue of a random element on eT.
        Vec coeff = random_vec(k, rng);
        Matrix h = combo(ta.on_top, coeff, t, t);
        Matrix basis_rows = row_space(et);
        std::size_t dsub = basis_rows.rows();
        auto x = solve(basis_rows.transpose(), (basis_rows * h).transpose());
        if (!x) continue;
        Matrix restricted = x->transpose();
        Poly cp = charpoly(restricted);
        for (const auto& lambda : rational_roots(cp)) {
            Matrix shifted = restricted - Matrix::identity(dsub) * lambda;
            if (is_nilpotent(shifted)) continue;
            return combo(ta.on_v, coeff, act.n, act.n) - e * lambda;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Complete set of orthogonal primitive idempotents (strict, in the span of the basis)
/// summing to the identity. Throws DecompositionFailed when a semisimple block does not
/// split over the rationals within the search budget.
inline std::vector<Matrix> primitive_idempotents(const EndoAction& act, std::mt19937_64& rng) {
    std::vector<Matrix> out;
    if (act.n == 0) return out;
    std::vector<Matrix> stack{Matrix::identity(act.n)};
    while (!stack.empty()) {
        Matrix e = stack.back();
        stack.pop_back();
        auto ta = detail::top_algebra(act, e);
        if (ta.on_top.empty()) throw Error(ErrorKind::DecompositionFailed, "idempotent with zero top");
        if (ta.on_top.size() - ta.radical.size() == 1) {
            out.push_back(std::move(e));
            continue;
        }
        auto h = detail::splitting_element(act, e, ta, rng);
        if (!h) throw Error(ErrorKind::DecompositionFailed, "no rational splitting element found");
        Matrix eps = detail::fitting_projection(*h);
        if (!(eps * eps == eps) || !(eps * e == eps) || !(e * eps == eps) || eps.is_zero() || eps == e)
            throw Error(ErrorKind::InternalDisagreement, "Fitting projection is not a proper sub-idempotent");
        stack.push_back(e - eps);
        stack.push_back(std::move(eps));
    }
    return out;
}

/// True when the endomorphism algebra is local (single primitive idempotent).
inline bool is_local(const EndoAction& act) {
    if (act.n == 0) return false;
    auto ta = detail::top_algebra(act, Matrix::identity(act.n));
    return ta.on_top.size() - ta.radical.size() == 1;
}

// ---- modules -----------------------------------------------------------------

inline EndoAction module_endo_action(const Representation& m) {
    EndoAction act;
    act.n = m.total_dim();
    for (const auto& f : hom_space(m, m)) act.basis.push_back(total_matrix(f));
    Quotient t = top(m);
    act.top = total_matrix(t.projection);
    act.lift = total_matrix(t.section);
    std::size_t off = 0;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        std::vector<std::size_t> g;
        for (std::size_t i = 0; i < t.module.dim(v); ++i) g.push_back(off + i);
        off += t.module.dim(v);
        if (!g.empty()) act.groups.push_back(std::move(g));
    }
    return act;
}

inline bool is_indecomposable(const Representation& m) { return is_local(module_endo_action(m)); }

struct ModuleSummand {
    Representation module;
    ModuleMap inclusion;   // summand -> M
    ModuleMap projection;  // M -> summand
};

struct DecompositionCertificate {
    std::vector<ModuleSummand> pieces;
    std::vector<std::size_t> class_of;          // iso class index per piece
    std::vector<std::size_t> multiplicity;      // per class
    std::vector<std::size_t> representative;    // first piece of each class
    ModuleMap to_sum;    // M -> direct sum of pieces
    ModuleMap from_sum;  // direct sum of pieces -> M
    Representation sum;
};

namespace detail {

/// Indecomposables X, Y: iso iff some basis composite X -> Y -> X is invertible.
inline std::optional<std::pair<ModuleMap, ModuleMap>> indecomposable_iso(const Representation& x,
                                                                         const Representation& y) {
    if (x.dims() != y.dims()) return std::nullopt;
    auto hxy = hom_space(x, y);
    auto hyx = hom_space(y, x);
    for (const auto& f : hxy)
        for (const auto& g : hyx)
            if (is_invertible(compose(f, g))) {
                auto finv = inverse(f);
                if (finv) return std::make_pair(f, *finv);
            }
    return std::nullopt;
}

inline ModuleSummand summand_from_idempotent(const Representation& m, const ModuleMap& eps) {
    Subspaces sp;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) sp.push_back(eps[v]);
    Submodule s = submodule(m, sp);
    ModuleMap proj;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        const Matrix& b = s.inclusion[v];
        auto [red, piv] = rref(b);
        Matrix sel(m.dim(v), b.rows());
        for (std::size_t i = 0; i < piv.size(); ++i) sel(piv[i], i) = 1;
        proj.blocks.push_back(eps[v] * sel);
    }
    return {s.module, s.inclusion, proj};
}

}  // namespace detail

/// Krull-Schmidt decomposition with a verified iso pair to the direct sum of the pieces.
inline DecompositionCertificate decompose(const Representation& m, std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    DecompositionCertificate cert;
    EndoAction act = module_endo_action(m);
    auto idem = primitive_idempotents(act, rng);
    for (const auto& e : idem) cert.pieces.push_back(detail::summand_from_idempotent(m, from_total(m, m, e)));
    std::stable_sort(cert.pieces.begin(), cert.pieces.end(), [](const ModuleSummand& a, const ModuleSummand& b) {
        return a.module.dims() > b.module.dims();
    });
    for (std::size_t i = 0; i < cert.pieces.size(); ++i) {
        std::size_t cls = cert.representative.size();
        for (std::size_t c = 0; c < cert.representative.size(); ++c)
            if (detail::indecomposable_iso(cert.pieces[cert.representative[c]].module, cert.pieces[i].module)) {
                cls = c;
                break;
            }
        if (cls == cert.representative.size()) {
            cert.representative.push_back(i);
            cert.multiplicity.push_back(0);
        }
        cert.class_of.push_back(cls);
        ++cert.multiplicity[cls];
    }
    std::vector<Representation> mods;
    std::vector<ModuleMap> incs, projs;
    for (const auto& p : cert.pieces) mods.push_back(p.module);
    cert.sum = direct_sum(m.algebra_ptr(), mods);
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        Matrix to(m.dim(v), 0), from(0, m.dim(v));
        for (const auto& p : cert.pieces) {
            to = hstack(to, p.projection[v]);
            from = vstack(from, p.inclusion[v]);
        }
        cert.to_sum.blocks.push_back(to);
        cert.from_sum.blocks.push_back(from);
    }
    if (!(compose(cert.to_sum, cert.from_sum) == identity_map(m)) ||
        !(compose(cert.from_sum, cert.to_sum) == identity_map(cert.sum)) ||
        !is_homomorphism(m, cert.sum, cert.to_sum) || !is_homomorphism(cert.sum, m, cert.from_sum))
        throw Error(ErrorKind::InternalDisagreement, "decomposition certificate failed to verify");
    return cert;
}

/// Mutually inverse pair (f: M -> N, g: N -> M), verified exactly.
inline std::optional<std::pair<ModuleMap, ModuleMap>> is_isomorphic(const Representation& m, const Representation& n,
                                                                    std::uint64_t seed = 0) {
    if (m.dims() != n.dims()) return std::nullopt;
    auto basis = hom_space(m, n);
    if (basis.empty()) {
        if (m.total_dim() == 0) return std::make_pair(zero_map(m, n), zero_map(n, m));
        return std::nullopt;
    }
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        ModuleMap f = combine(basis, detail::random_vec(basis.size(), rng), m, n);
        if (auto g = inverse(f)) return std::make_pair(f, *g);
    }
    // Deterministic fallback: match indecomposable summands.
    auto dm = decompose(m, seed);
    auto dn = decompose(n, seed);
    if (dm.pieces.size() != dn.pieces.size()) return std::nullopt;
    std::vector<bool> used(dn.pieces.size(), false);
    ModuleMap f = zero_map(m, n);
    for (const auto& pm : dm.pieces) {
        bool matched = false;
        for (std::size_t j = 0; j < dn.pieces.size() && !matched; ++j) {
            if (used[j]) continue;
            auto iso = detail::indecomposable_iso(pm.module, dn.pieces[j].module);
            if (!iso) continue;
            used[j] = true;
            matched = true;
            f = f + compose(compose(pm.projection, iso->first), dn.pieces[j].inclusion);
        }
        if (!matched) return std::nullopt;
    }
    auto g = inverse(f);
    if (!g || !is_homomorphism(m, n, f)) throw Error(ErrorKind::InternalDisagreement, "assembled iso failed");
    return std::make_pair(f, *g);
}

}  // namespace qtilt
