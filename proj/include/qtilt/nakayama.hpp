#pragma once

#include "qtilt/representation.hpp"

namespace qtilt {

/// Vertex labels of a projective cover of M's top, one per top dimension.
inline std::vector<std::size_t> top_labels(const Representation& m) {
    Quotient t = top(m);
    std::vector<std::size_t> labels;
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        for (std::size_t i = 0; i < t.module.dim(v); ++i) labels.push_back(v);
    return labels;
}

/// Map P(v) -> M sending e_v to y (y in M_v): p |-> p y.
inline ModuleMap generator_map(const Representation& m, std::size_t v, const Vec& y) {
    const Algebra& a = m.algebra();
    ModuleMap f;
    for (std::size_t w = 0; w < m.num_vertices(); ++w) {
        const auto& ps = a.between(w, v);
        Matrix b(ps.size(), m.dim(w));
        for (std::size_t r = 0; r < ps.size(); ++r) {
            const Path& p = a.path(ps[r]);
            b.set_row(r, m.word_matrix(p.arrows, p.start).apply(y));
        }
        f.blocks.push_back(std::move(b));
    }
    return f;
}

/// Sum of generator maps: (direct sum of P(labels[k])) -> M.
inline ModuleMap generators_map(const Representation& m, const std::vector<std::size_t>& labels,
                                const std::vector<Vec>& gens) {
    const std::size_t nv = m.num_vertices();
    std::vector<Matrix> blocks(nv);
    for (std::size_t w = 0; w < nv; ++w) blocks[w] = Matrix(0, m.dim(w));
    for (std::size_t k = 0; k < labels.size(); ++k) {
        ModuleMap g = generator_map(m, labels[k], gens[k]);
        for (std::size_t w = 0; w < nv; ++w) blocks[w] = vstack(blocks[w], g[w]);
    }
    return ModuleMap{blocks};
}

inline Representation projective_sum(const AlgebraPtr& a, const std::vector<std::size_t>& labels) {
    std::vector<Representation> ps;
    for (auto v : labels) ps.push_back(projective(a, v));
    return direct_sum(a, ps);
}

struct ProjectiveCover {
    std::vector<std::size_t> labels;
    Representation cover;
    ModuleMap map;  // cover -> M, surjective
};

inline ProjectiveCover projective_cover(const Representation& m) {
    Quotient t = top(m);
    std::vector<std::size_t> labels;
    std::vector<Vec> gens;
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        for (std::size_t i = 0; i < t.module.dim(v); ++i) {
            labels.push_back(v);
            gens.push_back(t.section[v].row(i));
        }
    return {labels, projective_sum(m.algebra_ptr(), labels), generators_map(m, labels, gens)};
}

/// Labels of M when M is projective (projective cover is an isomorphism), else nullopt.
inline std::optional<std::vector<std::size_t>> projective_labels(const Representation& m) {
    ProjectiveCover pc = projective_cover(m);
    if (pc.cover.dims() != m.dims()) return std::nullopt;
    if (!is_invertible(pc.map)) return std::nullopt;
    return pc.labels;
}

/// nu(P(i)) = I(i) is projective iff it is isomorphic to some P(j); returns j.
inline std::vector<std::optional<std::size_t>> nakayama_permutation(const AlgebraPtr& a) {
    std::vector<std::optional<std::size_t>> out;
    for (std::size_t i = 0; i < a->num_vertices(); ++i) {
        auto labels = projective_labels(injective(a, i));
        if (labels && labels->size() == 1)
            out.push_back((*labels)[0]);
        else
            out.push_back(std::nullopt);
    }
    return out;
}

/// nu on a projective module: direct sum of I(v) over its labels. Throws NotProjective.
inline Representation nakayama(const Representation& x) {
    auto labels = projective_labels(x);
    if (!labels) throw Error(ErrorKind::NotProjective, "nakayama functor is only defined on add(A)");
    std::vector<Representation> is;
    for (auto v : *labels) is.push_back(injective(x.algebra_ptr(), v));
    return direct_sum(x.algebra_ptr(), is);
}

/// nu of right multiplication by x in e_a A e_b: I(a) -> I(b), phi |-> phi(x -).
inline ModuleMap nakayama_map(const AlgebraPtr& alg, std::size_t a, std::size_t b, const Vec& x) {
    ModuleMap f;
    for (std::size_t w = 0; w < alg->num_vertices(); ++w) {
        const auto& ps = alg->between(a, w);
        const auto& qs = alg->between(b, w);
        Matrix m(ps.size(), qs.size());
        for (std::size_t c = 0; c < qs.size(); ++c) {
            Vec xq = alg->mul(x, alg->basis_vec(qs[c]));
            for (std::size_t r = 0; r < ps.size(); ++r) m(r, c) = xq[ps[r]];
        }
        f.blocks.push_back(std::move(m));
    }
    return f;
}

}  // namespace qtilt
