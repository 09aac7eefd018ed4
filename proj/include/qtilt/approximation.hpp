#pragma once

#include "qtilt/nakayama.hpp"

#include <set>

namespace qtilt {

struct Approximation {
    std::vector<std::size_t> labels;  // summands P(v) of the approximating projective
    Representation object;            // direct sum of P(labels)
    ModuleMap map;                    // object -> X (right) or X -> object (left)
};

namespace detail {

inline std::set<std::size_t> label_set(const std::vector<std::size_t>& labels) {
    return std::set<std::size_t>(labels.begin(), labels.end());
}

inline Vec flatten_map(const ModuleMap& f) {
    Vec out;
    for (const auto& b : f.blocks) out.insert(out.end(), b.data().begin(), b.data().end());
    return out;
}

}  // namespace detail

/// Minimal right add(P)-approximation of X, P given by vertex labels. Generators at v
/// form a complement in X_v of the images b y of radical paths b: v -> w, y in X_w.
inline Approximation minimal_right_approximation(const std::vector<std::size_t>& p_labels, const Representation& x) {
    const Algebra& a = x.algebra();
    auto ps = detail::label_set(p_labels);
    std::vector<std::size_t> labels;
    std::vector<Vec> gens;
    for (auto v : ps) {
        std::vector<Vec> rad;
        for (auto w : ps)
            for (auto bi : a.between(v, w)) {
                const Path& b = a.path(bi);
                if (b.trivial()) continue;
                Matrix wm = x.word_matrix(b.arrows, b.start);  // X_w -> X_v
                for (std::size_t r = 0; r < wm.rows(); ++r) rad.push_back(wm.row(r));
            }
        std::vector<Vec> units;
        for (std::size_t i = 0; i < x.dim(v); ++i) units.push_back(unit_vec(x.dim(v), i));
        for (auto i : complement_indices(rad, units, x.dim(v))) {
            labels.push_back(v);
            gens.push_back(units[i]);
        }
    }
    return {labels, projective_sum(x.algebra_ptr(), labels), generators_map(x, labels, gens)};
}

inline Approximation minimal_right_approximation(const Representation& p, const Representation& x) {
    auto labels = projective_labels(p);
    if (!labels) throw Error(ErrorKind::NotProjective, "approximating module must be projective");
    return minimal_right_approximation(*labels, x);
}

/// Minimal left add(Q)-approximation of X, Q given by vertex labels. Generators of
/// Hom(X, P(w)) modulo composites X -> P(w') -> P(w) with radical second factor.
inline Approximation minimal_left_approximation(const std::vector<std::size_t>& q_labels, const Representation& x) {
    const AlgebraPtr& ap = x.algebra_ptr();
    const Algebra& a = *ap;
    auto qs = detail::label_set(q_labels);
    std::map<std::size_t, std::vector<ModuleMap>> homs;
    std::map<std::size_t, Representation> pw;
    for (auto w : qs) {
        pw.emplace(w, projective(ap, w));
        homs[w] = hom_space(x, pw.at(w));
    }
    std::vector<std::size_t> labels;
    std::vector<ModuleMap> gens;
    for (auto w : qs) {
        std::vector<Vec> rad;
        for (auto w2 : qs)
            for (auto bi : a.between(w2, w)) {
                if (a.path(bi).trivial()) continue;
                ModuleMap r = projective_map(ap, w2, w, a.basis_vec(bi));
                for (const auto& h : homs[w2]) rad.push_back(detail::flatten_map(compose(h, r)));
            }
        std::vector<Vec> cands;
        for (const auto& h : homs[w]) cands.push_back(detail::flatten_map(h));
        std::size_t len = cands.empty() ? 0 : cands[0].size();
        for (auto i : complement_indices(rad, cands, len)) {
            labels.push_back(w);
            gens.push_back(homs[w][i]);
        }
    }
    Representation target = projective_sum(ap, labels);
    ModuleMap g;
    for (std::size_t v = 0; v < x.num_vertices(); ++v) {
        Matrix b(x.dim(v), 0);
        for (const auto& h : gens) b = hstack(b, h[v]);
        g.blocks.push_back(std::move(b));
    }
    return {labels, target, g};
}

inline Approximation minimal_left_approximation(const Representation& q, const Representation& x) {
    auto labels = projective_labels(q);
    if (!labels) throw Error(ErrorKind::NotProjective, "approximating module must be projective");
    return minimal_left_approximation(*labels, x);
}

/// Is there phi: D -> Y with phi then f equal to h (h: D -> X, f: Y -> X)?
inline bool factors_through_right(const ModuleMap& h, const ModuleMap& f, const Representation& d,
                                  const Representation& y) {
    auto basis = hom_space(d, y);
    Vec target = detail::flatten_map(h);
    if (basis.empty()) return is_zero(target);
    std::vector<Vec> cols;
    for (const auto& phi : basis) cols.push_back(detail::flatten_map(compose(phi, f)));
    Matrix m = Matrix::from_columns(cols, target.size());
    return solve(m, Matrix::from_columns({target}, target.size())).has_value();
}

/// Is there phi: Y -> D with g then phi equal to h (h: X -> D, g: X -> Y)?
inline bool factors_through_left(const ModuleMap& h, const ModuleMap& g, const Representation& y,
                                 const Representation& d) {
    auto basis = hom_space(y, d);
    Vec target = detail::flatten_map(h);
    if (basis.empty()) return is_zero(target);
    std::vector<Vec> cols;
    for (const auto& phi : basis) cols.push_back(detail::flatten_map(compose(g, phi)));
    Matrix m = Matrix::from_columns(cols, target.size());
    return solve(m, Matrix::from_columns({target}, target.size())).has_value();
}

}  // namespace qtilt
