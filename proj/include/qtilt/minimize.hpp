#pragma once

#include "qtilt/homotopy.hpp"

namespace qtilt {

/// Inverse of a unit x = l e_a + n in e_a A e_a (n radical): l^{-1} sum_k (-l^{-1} n)^k.
inline Vec unit_inverse(const Algebra& alg, std::size_t a, const Vec& x) {
    Scalar l = unit_part(alg, a, x);
    if (sgn(l) == 0) throw Error(ErrorKind::PreconditionFailed, "element is not a unit of e_a A e_a");
    Vec e = alg.idempotent(a);
    Vec n = x;
    axpy(n, -l, e);
    Vec step = scaled(n, -1 / l);
    Vec term = e, sum = e;
    for (std::size_t k = 0; k <= alg.dim(); ++k) {
        term = alg.mul(term, step);
        if (is_zero(term)) break;
        axpy(sum, Scalar(1), term);
    }
    return scaled(sum, 1 / l);
}

struct Minimized {
    ProjComplex complex;  // radical
    ChainMap to;          // original -> complex
    ChainMap from;        // complex -> original
};

namespace detail {

inline std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

inline std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i)
        if (i != skip) v.push_back(i);
    return v;
}

struct Elimination {
    ProjComplex reduced;
    ChainMap to, from;
};

/// Cancels summand r of degree i against summand c of degree i+1 (unit entry phi = d^i[r][c]).
inline Elimination eliminate(const ProjComplex& x, int i, std::size_t r, std::size_t c) {
    const Algebra& a = x.algebra();
    const auto& rl = x.labels(i);
    const auto& cl = x.labels(i + 1);
    LabelMatrix d = x.diff(i);
    Vec phi_inv = unit_inverse(a, rl[r], d.at(r, c));
    auto keep_r = all_but(rl.size(), r), keep_c = all_but(cl.size(), c);

    std::map<int, std::vector<std::size_t>> terms = x.terms();
    std::map<int, LabelMatrix> diffs = x.diffs();
    std::vector<std::size_t> nrl, ncl;
    for (auto k : keep_r) nrl.push_back(rl[k]);
    for (auto k : keep_c) ncl.push_back(cl[k]);
    terms[i] = nrl;
    terms[i + 1] = ncl;

    LabelMatrix nd(keep_r.size(), keep_c.size(), a.dim());
    // left[b] = d[b][c] phi^{-1}
    std::vector<Vec> left(rl.size());
    for (std::size_t b = 0; b < rl.size(); ++b) left[b] = a.mul(d.at(b, c), phi_inv);
    for (std::size_t b = 0; b < keep_r.size(); ++b)
        for (std::size_t k = 0; k < keep_c.size(); ++k) {
            Vec v = d.at(keep_r[b], keep_c[k]);
            axpy(v, Scalar(-1), a.mul(left[keep_r[b]], d.at(r, keep_c[k])));
            nd.at(b, k) = std::move(v);
        }
    diffs[i] = nd;
    if (x.labels(i - 1).size()) diffs[i - 1] = x.diff(i - 1).select(all_indices(x.labels(i - 1).size()), keep_r);
    if (x.labels(i + 2).size()) diffs[i + 1] = x.diff(i + 1).select(keep_c, all_indices(x.labels(i + 2).size()));
    ProjComplex y(x.algebra_ptr(), terms, diffs);

    ChainMap to{0, {}}, from{0, {}};
    for (const auto& [deg, l] : x.terms()) {
        if (deg == i || deg == i + 1) continue;
        to.comp[deg] = identity_label_matrix(a, l);
        from.comp[deg] = identity_label_matrix(a, l);
    }
    // degree i
    if (!nrl.empty()) {
        LabelMatrix t(rl.size(), nrl.size(), a.dim()), f(nrl.size(), rl.size(), a.dim());
        for (std::size_t b = 0; b < keep_r.size(); ++b) {
            t.at(keep_r[b], b) = a.idempotent(rl[keep_r[b]]);
            f.at(b, keep_r[b]) = a.idempotent(rl[keep_r[b]]);
            f.at(b, r) = scaled(left[keep_r[b]], Scalar(-1));
        }
        to.comp[i] = t;
        from.comp[i] = f;
    }
    // degree i+1
    if (!ncl.empty()) {
        LabelMatrix t(cl.size(), ncl.size(), a.dim()), f(ncl.size(), cl.size(), a.dim());
        for (std::size_t k = 0; k < keep_c.size(); ++k) {
            t.at(keep_c[k], k) = a.idempotent(cl[keep_c[k]]);
            t.at(c, k) = scaled(a.mul(phi_inv, d.at(r, keep_c[k])), Scalar(-1));
            f.at(k, keep_c[k]) = a.idempotent(cl[keep_c[k]]);
        }
        to.comp[i + 1] = t;
        from.comp[i + 1] = f;
    }
    return {y, to, from};
}

inline std::optional<std::tuple<int, std::size_t, std::size_t>> find_unit(const ProjComplex& x) {
    for (int i : x.degrees()) {
        if (x.labels(i + 1).empty()) continue;
        const auto& rl = x.labels(i);
        const auto& cl = x.labels(i + 1);
        LabelMatrix d = x.diff(i);
        for (std::size_t r = 0; r < rl.size(); ++r)
            for (std::size_t c = 0; c < cl.size(); ++c)
                if (rl[r] == cl[c] && sgn(unit_part(x.algebra(), rl[r], d.at(r, c))) != 0)
                    return std::make_tuple(i, r, c);
    }
    return std::nullopt;
}

}  // namespace detail

/// Gaussian elimination to a radical complex. Units are located scanning degrees
/// ascending, then rows, then columns. When verify is set the pair is checked:
/// from then to is the identity, to then from is homotopic to the identity.
inline Minimized minimize(const ProjComplex& x, bool verify = true) {
    ProjComplex cur = x;
    ChainMap to = identity_chain_map(x), from = identity_chain_map(x);
    while (auto u = detail::find_unit(cur)) {
        auto [i, r, c] = *u;
        auto step = detail::eliminate(cur, i, r, c);
        to = compose(x, cur, step.reduced, to, step.to);
        from = compose(step.reduced, cur, x, step.from, from);
        cur = std::move(step.reduced);
    }
    if (verify) {
        if (!is_chain_map(x, cur, to) || !is_chain_map(cur, x, from))
            throw Error(ErrorKind::InternalDisagreement, "minimize produced a non-chain map");
        if (!chain_maps_equal(cur, cur, compose(cur, x, cur, from, to), identity_chain_map(cur)))
            throw Error(ErrorKind::InternalDisagreement, "minimize: from then to is not the identity");
        ChainMap loop = add(x, x, compose(x, cur, x, to, from), identity_chain_map(x), Scalar(-1));
        if (!is_null_homotopic(x, x, loop))
            throw Error(ErrorKind::InternalDisagreement, "minimize: to then from is not homotopic to the identity");
    }
    return {cur, to, from};
}

}  // namespace qtilt
