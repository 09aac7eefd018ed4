#pragma once

#include "qtilt/algebra.hpp"

#include <memory>

namespace qtilt {

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Left module over a path algebra, stored as a quiver representation.
///
/// M_v = e_v M. For an arrow a: s -> t the stored matrix is the action of a, which maps
/// M_t to M_s; it has shape dim M_t x dim M_s and acts on row vectors. A path
/// a1 ... ak therefore acts by L(ak) ... L(a1).
class Representation {
public:
    Representation() = default;

    Representation(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> arrows)
        : alg_(std::move(alg)), dims_(std::move(dims)), arrows_(std::move(arrows)) {
        const Quiver& q = alg_->quiver();
        if (dims_.size() != q.num_vertices()) throw Error(ErrorKind::InvalidInput, "dimension vector has wrong length");
        if (arrows_.size() != q.num_arrows()) throw Error(ErrorKind::InvalidInput, "wrong number of arrow matrices");
        for (std::size_t a = 0; a < q.num_arrows(); ++a) {
            const auto& ar = q.arrows[a];
            if (arrows_[a].rows() != dims_[ar.target] || arrows_[a].cols() != dims_[ar.source])
                throw Error(ErrorKind::InvalidInput, "arrow matrix " + ar.name + " has wrong shape");
        }
        offsets_.assign(dims_.size() + 1, 0);
        for (std::size_t v = 0; v < dims_.size(); ++v) offsets_[v + 1] = offsets_[v] + dims_[v];
        for (const auto& r : alg_->relations())
            if (!relation_matrix(r).is_zero()) throw Error(ErrorKind::InvalidInput, "relation does not vanish on module");
    }

    const Algebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    std::size_t num_vertices() const { return dims_.size(); }
    std::size_t dim(std::size_t v) const { return dims_[v]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const { return offsets_.empty() ? 0 : offsets_.back(); }
    std::size_t offset(std::size_t v) const { return offsets_[v]; }
    const Matrix& arrow(std::size_t a) const { return arrows_[a]; }
    const std::vector<Matrix>& arrows() const { return arrows_; }

    /// Map M_end -> M_start of a composable word (empty word: identity on M_start).
    Matrix word_matrix(const std::vector<std::size_t>& word, std::size_t start) const {
        if (word.empty()) return Matrix::identity(dims_[start]);
        Matrix m = arrows_[word.back()];
        for (std::size_t k = word.size() - 1; k-- > 0;) m = m * arrows_[word[k]];
        return m;
    }

    Matrix relation_matrix(const Relation& r) const {
        const Quiver& q = alg_->quiver();
        auto [s, t] = relation_endpoints(q, r);
        Matrix m(dims_[t], dims_[s]);
        for (const auto& term : r) m += word_matrix(term.arrows, s) * term.coeff;
        return m;
    }

    /// Total action matrix of an algebra element: m -> x m is m * act(x).
    Matrix act(const Vec& x) const {
        Matrix out(total_dim(), total_dim());
        for (std::size_t i = 0; i < alg_->dim(); ++i) {
            if (sgn(x[i]) == 0) continue;
            const Path& p = alg_->path(i);
            Matrix w = word_matrix(p.arrows, p.start);
            Matrix scaled = w * x[i];
            for (std::size_t r = 0; r < w.rows(); ++r)
                for (std::size_t c = 0; c < w.cols(); ++c)
                    if (sgn(scaled(r, c)) != 0) out(offsets_[p.end] + r, offsets_[p.start] + c) += scaled(r, c);
        }
        return out;
    }

    friend bool operator==(const Representation& a, const Representation& b) {
        return a.alg_ == b.alg_ && a.dims_ == b.dims_ && a.arrows_ == b.arrows_;
    }

private:
    AlgebraPtr alg_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> arrows_;
    std::vector<std::size_t> offsets_;
};

/// Module homomorphism M -> N given per vertex: F_v has shape dim M_v x dim N_v.
/// Composition "f then g" is the blockwise product F G.
struct ModuleMap {
    std::vector<Matrix> blocks;

    const Matrix& operator[](std::size_t v) const { return blocks[v]; }
    Matrix& operator[](std::size_t v) { return blocks[v]; }

    bool is_zero() const {
        for (const auto& b : blocks)
            if (!b.is_zero()) return false;
        return true;
    }
    friend bool operator==(const ModuleMap& a, const ModuleMap& b) { return a.blocks == b.blocks; }
};

inline ModuleMap zero_map(const Representation& m, const Representation& n) {
    ModuleMap f;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) f.blocks.emplace_back(m.dim(v), n.dim(v));
    return f;
}

inline ModuleMap identity_map(const Representation& m) {
    ModuleMap f;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) f.blocks.push_back(Matrix::identity(m.dim(v)));
    return f;
}

/// f then g.
inline ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
    ModuleMap h;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(f[v] * g[v]);
    return h;
}

inline ModuleMap operator+(const ModuleMap& f, const ModuleMap& g) {
    ModuleMap h = f;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h[v] += g[v];
    return h;
}

inline ModuleMap operator-(const ModuleMap& f, const ModuleMap& g) {
    ModuleMap h = f;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h[v] -= g[v];
    return h;
}

inline ModuleMap operator*(const Scalar& c, const ModuleMap& f) {
    ModuleMap h = f;
    for (auto& b : h.blocks) b *= c;
    return h;
}

inline bool is_homomorphism(const Representation& m, const Representation& n, const ModuleMap& f) {
    if (f.blocks.size() != m.num_vertices()) return false;
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        if (f[v].rows() != m.dim(v) || f[v].cols() != n.dim(v)) return false;
    const Quiver& q = m.algebra().quiver();
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrows[a];
        if (!(m.arrow(a) * f[ar.source] == f[ar.target] * n.arrow(a))) return false;
    }
    return true;
}

inline bool is_invertible(const ModuleMap& f) {
    for (const auto& b : f.blocks)
        if (!inverse(b)) return false;
    return true;
}

inline std::optional<ModuleMap> inverse(const ModuleMap& f) {
    ModuleMap g;
    for (const auto& b : f.blocks) {
        auto inv = inverse(b);
        if (!inv) return std::nullopt;
        g.blocks.push_back(*inv);
    }
    return g;
}

/// Block-diagonal matrix on the total space.
inline Matrix total_matrix(const ModuleMap& f) { return block_diagonal(f.blocks); }

inline ModuleMap from_total(const Representation& m, const Representation& n, const Matrix& t) {
    ModuleMap f;
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        f.blocks.push_back(t.block(m.offset(v), n.offset(v), m.dim(v), n.dim(v)));
    return f;
}

// ---- standard modules ------------------------------------------------------

/// P(v) = A e_v; vertex w carries e_w A e_v.
inline Representation projective(const AlgebraPtr& a, std::size_t v) {
    const Quiver& q = a->quiver();
    const std::size_t nv = q.num_vertices();
    std::vector<std::size_t> dims(nv);
    std::vector<std::vector<std::size_t>> pos(nv, std::vector<std::size_t>(a->dim(), SIZE_MAX));
    for (std::size_t w = 0; w < nv; ++w) {
        const auto& b = a->between(w, v);
        dims[w] = b.size();
        for (std::size_t k = 0; k < b.size(); ++k) pos[w][b[k]] = k;
    }
    std::vector<Matrix> arrows;
    for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
        const auto& ar = q.arrows[ai];
        Matrix m(dims[ar.target], dims[ar.source]);
        const auto& src = a->between(ar.target, v);
        for (std::size_t r = 0; r < src.size(); ++r)
            for (const auto& [k, c] : a->product(a->arrow_basis(ai), src[r])) m(r, pos[ar.source][k]) += c;
        arrows.push_back(std::move(m));
    }
    return Representation(a, dims, arrows);
}

/// I(v) = D(e_v A); vertex w carries the dual of e_v A e_w, with (a phi)(p) = phi(p a).
inline Representation injective(const AlgebraPtr& a, std::size_t v) {
    const Quiver& q = a->quiver();
    const std::size_t nv = q.num_vertices();
    std::vector<std::size_t> dims(nv);
    std::vector<std::vector<std::size_t>> pos(nv, std::vector<std::size_t>(a->dim(), SIZE_MAX));
    for (std::size_t w = 0; w < nv; ++w) {
        const auto& b = a->between(v, w);
        dims[w] = b.size();
        for (std::size_t k = 0; k < b.size(); ++k) pos[w][b[k]] = k;
    }
    std::vector<Matrix> arrows;
    for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
        const auto& ar = q.arrows[ai];
        Matrix m(dims[ar.target], dims[ar.source]);
        const auto& ps = a->between(v, ar.source);
        for (std::size_t c = 0; c < ps.size(); ++c)
            for (const auto& [k, coef] : a->product(ps[c], a->arrow_basis(ai))) m(pos[ar.target][k], c) += coef;
        arrows.push_back(std::move(m));
    }
    return Representation(a, dims, arrows);
}

inline Representation simple(const AlgebraPtr& a, std::size_t v) {
    const Quiver& q = a->quiver();
    std::vector<std::size_t> dims(q.num_vertices(), 0);
    dims[v] = 1;
    std::vector<Matrix> arrows;
    for (const auto& ar : q.arrows) arrows.emplace_back(dims[ar.target], dims[ar.source]);
    return Representation(a, dims, arrows);
}

inline Representation zero_module(const AlgebraPtr& a) {
    const Quiver& q = a->quiver();
    std::vector<Matrix> arrows(q.num_arrows());
    return Representation(a, std::vector<std::size_t>(q.num_vertices(), 0), arrows);
}

inline Representation direct_sum(const AlgebraPtr& a, const std::vector<Representation>& ms) {
    if (ms.empty()) return zero_module(a);
    const Quiver& q = a->quiver();
    std::vector<std::size_t> dims(q.num_vertices(), 0);
    for (const auto& m : ms)
        for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += m.dim(v);
    std::vector<Matrix> arrows;
    for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
        std::vector<Matrix> blocks;
        for (const auto& m : ms) blocks.push_back(m.arrow(ai));
        arrows.push_back(block_diagonal(blocks));
    }
    return Representation(a, dims, arrows);
}

inline Representation direct_sum(const Representation& m, const Representation& n) {
    return direct_sum(m.algebra_ptr(), {m, n});
}

/// Block-diagonal map between direct sums.
inline ModuleMap direct_sum(const std::vector<ModuleMap>& fs, std::size_t num_vertices) {
    ModuleMap out;
    for (std::size_t v = 0; v < num_vertices; ++v) {
        std::vector<Matrix> blocks;
        for (const auto& f : fs) blocks.push_back(f[v]);
        out.blocks.push_back(block_diagonal(blocks));
    }
    return out;
}

/// Right multiplication by x in e_a A e_b, as a map P(a) -> P(b).
inline ModuleMap projective_map(const AlgebraPtr& alg, std::size_t a, std::size_t b, const Vec& x) {
    const std::size_t nv = alg->num_vertices();
    ModuleMap f;
    for (std::size_t w = 0; w < nv; ++w) {
        const auto& rows = alg->between(w, a);
        const auto& cols = alg->between(w, b);
        Matrix m(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Vec y = alg->mul(alg->basis_vec(rows[r]), x);
            for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = y[cols[c]];
        }
        f.blocks.push_back(std::move(m));
    }
    return f;
}

// ---- Hom spaces ------------------------------------------------------------

/// Basis of Hom_A(M, N): solutions of L^M_a F_s = F_t L^N_a.
inline std::vector<ModuleMap> hom_space(const Representation& m, const Representation& n) {
    const std::size_t nv = m.num_vertices();
    std::vector<std::size_t> off(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + m.dim(v) * n.dim(v);
    const std::size_t unknowns = off[nv];
    auto var = [&](std::size_t v, std::size_t i, std::size_t j) { return off[v] + i * n.dim(v) + j; };
    const Quiver& q = m.algebra().quiver();
    std::vector<Vec> eqs;
    for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
        std::size_t s = q.arrows[ai].source, t = q.arrows[ai].target;
        const Matrix& lm = m.arrow(ai);  // dim M_t x dim M_s
        const Matrix& ln = n.arrow(ai);  // dim N_t x dim N_s
        for (std::size_t i = 0; i < m.dim(t); ++i)
            for (std::size_t j = 0; j < n.dim(s); ++j) {
                Vec e(unknowns, Scalar(0));
                for (std::size_t k = 0; k < m.dim(s); ++k)
                    if (sgn(lm(i, k)) != 0) e[var(s, k, j)] += lm(i, k);
                for (std::size_t k = 0; k < n.dim(t); ++k)
                    if (sgn(ln(k, j)) != 0) e[var(t, i, k)] -= ln(k, j);
                if (!is_zero(e)) eqs.push_back(std::move(e));
            }
    }
    Matrix k = kernel_basis(Matrix::from_rows(eqs, unknowns));
    std::vector<ModuleMap> out;
    for (std::size_t c = 0; c < k.cols(); ++c) {
        ModuleMap f;
        for (std::size_t v = 0; v < nv; ++v) {
            Matrix b(m.dim(v), n.dim(v));
            for (std::size_t i = 0; i < m.dim(v); ++i)
                for (std::size_t j = 0; j < n.dim(v); ++j) b(i, j) = k(var(v, i, j), c);
            f.blocks.push_back(std::move(b));
        }
        out.push_back(std::move(f));
    }
    return out;
}

inline ModuleMap combine(const std::vector<ModuleMap>& basis, const Vec& coeffs, const Representation& m,
                         const Representation& n) {
    ModuleMap f = zero_map(m, n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (sgn(coeffs[i]) != 0) f = f + coeffs[i] * basis[i];
    return f;
}

// ---- sub- and quotient modules ---------------------------------------------

/// Per-vertex subspace given by spanning rows (need not be independent).
using Subspaces = std::vector<Matrix>;

struct Submodule {
    Representation module;
    ModuleMap inclusion;  // module -> ambient
};

struct Quotient {
    Representation module;
    ModuleMap projection;  // ambient -> module
    ModuleMap section;     // module -> ambient, linear only (not a homomorphism in general)
};

/// Checks closure under arrows and restricts. Rows are reduced to an echelon basis.
inline Submodule submodule(const Representation& m, const Subspaces& spans) {
    const std::size_t nv = m.num_vertices();
    std::vector<Matrix> basis(nv);
    std::vector<std::size_t> dims(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        basis[v] = spans[v].rows() ? row_space(spans[v]) : Matrix(0, m.dim(v));
        dims[v] = basis[v].rows();
    }
    const Quiver& q = m.algebra().quiver();
    std::vector<Matrix> arrows;
    for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
        std::size_t s = q.arrows[ai].source, t = q.arrows[ai].target;
        Matrix img = basis[t] * m.arrow(ai);  // rows in M_s
        auto x = solve(basis[s].transpose(), img.transpose());
        if (!x) throw Error(ErrorKind::InvalidInput, "subspace not closed under arrow " + q.arrows[ai].name);
        arrows.push_back(x->transpose());
    }
    ModuleMap inc{basis};
    return {Representation(m.algebra_ptr(), dims, arrows), inc};
}

inline Quotient quotient(const Representation& m, const Subspaces& spans) {
    const std::size_t nv = m.num_vertices();
    std::vector<Matrix> proj(nv), sect(nv);
    std::vector<std::size_t> dims(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        Matrix sub = spans[v].rows() ? row_space(spans[v]) : Matrix(0, m.dim(v));
        // complement by unit vectors
        std::vector<Vec> subrows;
        for (std::size_t r = 0; r < sub.rows(); ++r) subrows.push_back(sub.row(r));
        std::vector<Vec> units;
        for (std::size_t i = 0; i < m.dim(v); ++i) units.push_back(unit_vec(m.dim(v), i));
        auto idx = complement_indices(subrows, units, m.dim(v));
        Matrix comp(idx.size(), m.dim(v));
        for (std::size_t k = 0; k < idx.size(); ++k) comp(k, idx[k]) = 1;
        dims[v] = idx.size();
        Matrix full = vstack(sub, comp);
        Matrix inv = inverse(full).value();
        proj[v] = inv.block(0, sub.rows(), m.dim(v), idx.size());
        sect[v] = comp;
    }
    const Quiver& q = m.algebra().quiver();
    std::vector<Matrix> arrows;
    for (std::size_t ai = 0; ai < q.num_arrows(); ++ai) {
        std::size_t s = q.arrows[ai].source, t = q.arrows[ai].target;
        arrows.push_back(sect[t] * m.arrow(ai) * proj[s]);
    }
    return {Representation(m.algebra_ptr(), dims, arrows), ModuleMap{proj}, ModuleMap{sect}};
}

inline Submodule kernel(const Representation& m, const ModuleMap& f) {
    Subspaces sp;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) sp.push_back(left_kernel(f[v]));
    return submodule(m, sp);
}

inline Submodule image(const Representation& n, const ModuleMap& f) {
    Subspaces sp;
    for (std::size_t v = 0; v < n.num_vertices(); ++v) sp.push_back(f[v]);
    return submodule(n, sp);
}

inline Quotient cokernel(const Representation& n, const ModuleMap& f) {
    Subspaces sp;
    for (std::size_t v = 0; v < n.num_vertices(); ++v) sp.push_back(f[v]);
    return quotient(n, sp);
}

// ---- radical, top, socle ---------------------------------------------------

/// rad(M)_v = sum of images of arrows leaving v (a maps M_t into M_s).
inline Subspaces radical_subspaces(const Representation& m, const Subspaces& of) {
    const std::size_t nv = m.num_vertices();
    const Quiver& q = m.algebra().quiver();
    Subspaces out;
    for (std::size_t v = 0; v < nv; ++v) {
        Matrix acc(0, m.dim(v));
        for (std::size_t ai = 0; ai < q.num_arrows(); ++ai)
            if (q.arrows[ai].source == v) acc = vstack(acc, of[q.arrows[ai].target] * m.arrow(ai));
        out.push_back(acc.rows() ? row_space(acc) : acc);
    }
    return out;
}

inline Subspaces whole(const Representation& m) {
    Subspaces s;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) s.push_back(Matrix::identity(m.dim(v)));
    return s;
}

inline Subspaces radical_subspaces(const Representation& m) { return radical_subspaces(m, whole(m)); }

inline Submodule radical(const Representation& m) { return submodule(m, radical_subspaces(m)); }

inline Quotient top(const Representation& m) { return quotient(m, radical_subspaces(m)); }

/// soc(M)_v = vectors killed by every arrow ending at v.
inline Subspaces socle_subspaces(const Representation& m) {
    const Quiver& q = m.algebra().quiver();
    Subspaces out;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        Matrix acc(m.dim(v), 0);
        for (std::size_t ai = 0; ai < q.num_arrows(); ++ai)
            if (q.arrows[ai].target == v) acc = hstack(acc, m.arrow(ai));
        out.push_back(acc.cols() ? left_kernel(acc) : Matrix::identity(m.dim(v)));
    }
    return out;
}

inline Submodule socle(const Representation& m) { return submodule(m, socle_subspaces(m)); }

using DimVector = std::vector<std::size_t>;

/// Loewy layers rad^k M / rad^{k+1} M as dimension vectors.
inline std::vector<DimVector> radical_layers(const Representation& m) {
    std::vector<DimVector> out;
    Subspaces cur = whole(m);
    while (true) {
        Subspaces next = radical_subspaces(m, cur);
        DimVector layer;
        bool any = false;
        for (std::size_t v = 0; v < m.num_vertices(); ++v) {
            std::size_t d = cur[v].rows() - next[v].rows();
            layer.push_back(d);
            any = any || d > 0;
        }
        if (!any) break;
        out.push_back(layer);
        cur = next;
    }
    return out;
}

inline std::size_t total(const DimVector& d) {
    std::size_t s = 0;
    for (auto x : d) s += x;
    return s;
}

}  // namespace qtilt
