#pragma once

#include "qtilt/nakayama.hpp"

#include <map>
#include <set>

namespace qtilt {

/// Matrix whose entries are algebra elements. Between label lists (a_r) and (b_c) the
/// entry (r, c) lies in e_{a_r} A e_{b_c} and stands for right multiplication P(a_r) -> P(b_c).
class LabelMatrix {
public:
    LabelMatrix() = default;
    LabelMatrix(std::size_t rows, std::size_t cols, std::size_t dim)
        : rows_(rows), cols_(cols), dim_(dim), data_(rows * cols, zero_vec(dim)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t dim() const { return dim_; }
    Vec& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Vec& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!qtilt::is_zero(v)) return false;
        return true;
    }

    LabelMatrix& operator+=(const LabelMatrix& o) {
        check(o);
        for (std::size_t k = 0; k < data_.size(); ++k) axpy(data_[k], Scalar(1), o.data_[k]);
        return *this;
    }
    LabelMatrix& operator-=(const LabelMatrix& o) {
        check(o);
        for (std::size_t k = 0; k < data_.size(); ++k) axpy(data_[k], Scalar(-1), o.data_[k]);
        return *this;
    }
    LabelMatrix& operator*=(const Scalar& s) {
        for (auto& v : data_)
            for (auto& x : v) x *= s;
        return *this;
    }
    friend LabelMatrix operator+(LabelMatrix a, const LabelMatrix& b) { return a += b; }
    friend LabelMatrix operator-(LabelMatrix a, const LabelMatrix& b) { return a -= b; }
    friend LabelMatrix operator*(const Scalar& s, LabelMatrix a) { return a *= s; }
    friend bool operator==(const LabelMatrix& a, const LabelMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    LabelMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
        LabelMatrix out(rows.size(), cols.size(), dim_);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) out.at(i, j) = at(rows[i], cols[j]);
        return out;
    }

private:
    void check(const LabelMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("label matrix shape mismatch");
    }
    std::size_t rows_ = 0, cols_ = 0, dim_ = 0;
    std::vector<Vec> data_;
};

inline LabelMatrix mul(const Algebra& alg, const LabelMatrix& a, const LabelMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("label matrix product dimension mismatch");
    LabelMatrix c(a.rows(), b.cols(), alg.dim());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (is_zero(a.at(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (is_zero(b.at(k, j))) continue;
                axpy(c.at(i, j), Scalar(1), alg.mul(a.at(i, k), b.at(k, j)));
            }
        }
    return c;
}

inline LabelMatrix identity_label_matrix(const Algebra& alg, const std::vector<std::size_t>& labels) {
    LabelMatrix m(labels.size(), labels.size(), alg.dim());
    for (std::size_t i = 0; i < labels.size(); ++i) m.at(i, i) = alg.idempotent(labels[i]);
    return m;
}

/// Coefficient of e_a in x, i.e. the "unit part" of an endomorphism entry of P(a).
inline Scalar unit_part(const Algebra& alg, std::size_t a, const Vec& x) { return x[alg.trivial(a)]; }

/// Scalar matrix of unit parts; entries between different labels are 0.
inline Matrix top_part(const Algebra& alg, const std::vector<std::size_t>& rl, const std::vector<std::size_t>& cl,
                       const LabelMatrix& m) {
    Matrix t(rl.size(), cl.size());
    for (std::size_t r = 0; r < rl.size(); ++r)
        for (std::size_t c = 0; c < cl.size(); ++c)
            if (rl[r] == cl[c]) t(r, c) = unit_part(alg, rl[r], m.at(r, c));
    return t;
}

/// Checks that every entry (r, c) is supported on e_{rl[r]} A e_{cl[c]}.
inline bool entries_valid(const Algebra& alg, const std::vector<std::size_t>& rl, const std::vector<std::size_t>& cl,
                          const LabelMatrix& m) {
    if (m.rows() != rl.size() || m.cols() != cl.size()) return false;
    for (std::size_t r = 0; r < rl.size(); ++r)
        for (std::size_t c = 0; c < cl.size(); ++c) {
            const Vec& x = m.at(r, c);
            if (x.size() != alg.dim()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (sgn(x[i]) != 0 && (alg.path(i).start != rl[r] || alg.path(i).end != cl[c])) return false;
        }
    return true;
}

/// The same map as a module homomorphism between direct sums of projectives.
inline ModuleMap to_module_map(const AlgebraPtr& alg, const std::vector<std::size_t>& rl,
                               const std::vector<std::size_t>& cl, const LabelMatrix& m) {
    const std::size_t nv = alg->num_vertices();
    ModuleMap f;
    for (std::size_t w = 0; w < nv; ++w) {
        std::vector<std::size_t> roff(rl.size() + 1, 0), coff(cl.size() + 1, 0);
        for (std::size_t r = 0; r < rl.size(); ++r) roff[r + 1] = roff[r] + alg->between(w, rl[r]).size();
        for (std::size_t c = 0; c < cl.size(); ++c) coff[c + 1] = coff[c] + alg->between(w, cl[c]).size();
        Matrix b(roff.back(), coff.back());
        for (std::size_t r = 0; r < rl.size(); ++r)
            for (std::size_t c = 0; c < cl.size(); ++c) {
                if (is_zero(m.at(r, c))) continue;
                const auto& ps = alg->between(w, rl[r]);
                const auto& qs = alg->between(w, cl[c]);
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    Vec y = alg->mul(alg->basis_vec(ps[i]), m.at(r, c));
                    for (std::size_t j = 0; j < qs.size(); ++j) b(roff[r] + i, coff[c] + j) = y[qs[j]];
                }
            }
        f.blocks.push_back(std::move(b));
    }
    return f;
}

/// Bounded complex of projectives in label form. Degree d holds the direct sum of P(v)
/// over labels(d); diff(d) maps degree d to degree d + 1.
class ProjComplex {
public:
    ProjComplex() = default;
    explicit ProjComplex(AlgebraPtr alg) : alg_(std::move(alg)) {}

    ProjComplex(AlgebraPtr alg, std::map<int, std::vector<std::size_t>> terms, std::map<int, LabelMatrix> diffs)
        : alg_(std::move(alg)) {
        for (auto& [d, l] : terms)
            if (!l.empty()) terms_[d] = l;
        for (auto& [d, m] : diffs) {
            if (m.rows() != labels(d).size() || m.cols() != labels(d + 1).size())
                throw Error(ErrorKind::InvalidInput, "differential " + std::to_string(d) + " has wrong shape");
            if (!entries_valid(*alg_, labels(d), labels(d + 1), m))
                throw Error(ErrorKind::InvalidInput, "differential entry outside e_a A e_b");
            if (!m.is_zero()) diffs_[d] = m;
        }
    }

    const Algebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }

    bool empty() const { return terms_.empty(); }
    int lo() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int hi() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
    std::vector<int> degrees() const {
        std::vector<int> d;
        for (const auto& [k, v] : terms_) d.push_back(k);
        return d;
    }

    const std::vector<std::size_t>& labels(int d) const {
        static const std::vector<std::size_t> none;
        auto it = terms_.find(d);
        return it == terms_.end() ? none : it->second;
    }

    LabelMatrix diff(int d) const {
        auto it = diffs_.find(d);
        if (it != diffs_.end()) return it->second;
        return LabelMatrix(labels(d).size(), labels(d + 1).size(), alg_->dim());
    }

    const std::map<int, std::vector<std::size_t>>& terms() const { return terms_; }
    const std::map<int, LabelMatrix>& diffs() const { return diffs_; }

    std::size_t num_summands() const {
        std::size_t n = 0;
        for (const auto& [d, l] : terms_) n += l.size();
        return n;
    }

    friend bool operator==(const ProjComplex& a, const ProjComplex& b) {
        return a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
    }

private:
    AlgebraPtr alg_;
    std::map<int, std::vector<std::size_t>> terms_;
    std::map<int, LabelMatrix> diffs_;
};

inline ProjComplex stalk(const AlgebraPtr& alg, const std::vector<std::size_t>& labels, int degree = 0) {
    return ProjComplex(alg, {{degree, labels}}, {});
}

inline std::vector<std::size_t> all_vertices(const Algebra& alg) {
    std::vector<std::size_t> v(alg.num_vertices());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

/// X[n]: (X[n])^i = X^{n+i}, differential (-1)^n d.
inline ProjComplex shift(const ProjComplex& x, int n) {
    std::map<int, std::vector<std::size_t>> terms;
    std::map<int, LabelMatrix> diffs;
    for (const auto& [d, l] : x.terms()) terms[d - n] = l;
    for (const auto& [d, m] : x.diffs()) diffs[d - n] = (n % 2 == 0 ? Scalar(1) : Scalar(-1)) * m;
    return ProjComplex(x.algebra_ptr(), terms, diffs);
}

inline LabelMatrix block_diagonal(const Algebra& alg, const LabelMatrix& a, const LabelMatrix& b) {
    LabelMatrix m(a.rows() + b.rows(), a.cols() + b.cols(), alg.dim());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

inline ProjComplex direct_sum(const ProjComplex& x, const ProjComplex& y) {
    std::map<int, std::vector<std::size_t>> terms;
    std::map<int, LabelMatrix> diffs;
    std::set<int> ds;
    for (const auto& [d, l] : x.terms()) ds.insert(d);
    for (const auto& [d, l] : y.terms()) ds.insert(d);
    for (int d : ds) {
        auto l = x.labels(d);
        l.insert(l.end(), y.labels(d).begin(), y.labels(d).end());
        terms[d] = l;
    }
    for (int d : ds)
        if (ds.count(d + 1)) diffs[d] = block_diagonal(x.algebra(), x.diff(d), y.diff(d));
    return ProjComplex(x.algebra_ptr(), terms, diffs);
}

struct ComplexValidation {
    bool d_squared_zero = true;
    bool is_radical = true;
};

inline ComplexValidation validate(const ProjComplex& x) {
    ComplexValidation v;
    const Algebra& a = x.algebra();
    for (int d : x.degrees()) {
        if (!x.labels(d + 1).empty() && !x.labels(d + 2).empty() && !mul(a, x.diff(d), x.diff(d + 1)).is_zero())
            v.d_squared_zero = false;
        if (!top_part(a, x.labels(d), x.labels(d + 1), x.diff(d)).is_zero()) v.is_radical = false;
    }
    return v;
}

// ---- chain maps ---------------------------------------------------------------

/// Degree-wise map X -> Y[n]: component i maps X^i to Y^{i+n}.
struct ChainMap {
    int shift = 0;
    std::map<int, LabelMatrix> comp;
};

inline LabelMatrix component(const ProjComplex& x, const ProjComplex& y, const ChainMap& u, int i) {
    auto it = u.comp.find(i);
    if (it != u.comp.end()) return it->second;
    return LabelMatrix(x.labels(i).size(), y.labels(i + u.shift).size(), x.algebra().dim());
}

inline ChainMap zero_chain_map(int n = 0) { return ChainMap{n, {}}; }

inline ChainMap identity_chain_map(const ProjComplex& x) {
    ChainMap u{0, {}};
    for (const auto& [d, l] : x.terms()) u.comp[d] = identity_label_matrix(x.algebra(), l);
    return u;
}

/// u: X -> Y[n] then v: Y -> Z[m], giving X -> Z[n+m]; no sign.
inline ChainMap compose(const ProjComplex& x, const ProjComplex& y, const ProjComplex& z, const ChainMap& u,
                        const ChainMap& v) {
    ChainMap w{u.shift + v.shift, {}};
    for (int i : x.degrees()) {
        if (y.labels(i + u.shift).empty() || z.labels(i + w.shift).empty()) continue;
        LabelMatrix p = mul(x.algebra(), component(x, y, u, i), component(y, z, v, i + u.shift));
        if (!p.is_zero()) w.comp[i] = std::move(p);
    }
    return w;
}

inline ChainMap add(const ProjComplex& x, const ProjComplex& y, const ChainMap& u, const ChainMap& v,
                    const Scalar& cv = 1) {
    ChainMap w{u.shift, {}};
    for (int i : x.degrees()) {
        if (y.labels(i + u.shift).empty()) continue;
        LabelMatrix s = component(x, y, u, i) + cv * component(x, y, v, i);
        if (!s.is_zero()) w.comp[i] = std::move(s);
    }
    return w;
}

inline bool chain_maps_equal(const ProjComplex& x, const ProjComplex& y, const ChainMap& u, const ChainMap& v) {
    if (u.shift != v.shift) return false;
    for (int i : x.degrees())
        if (!(component(x, y, u, i) == component(x, y, v, i))) return false;
    return true;
}

inline bool is_chain_map(const ProjComplex& x, const ProjComplex& y, const ChainMap& u) {
    const Algebra& a = x.algebra();
    const int n = u.shift;
    const Scalar sign = n % 2 == 0 ? 1 : -1;
    std::set<int> ds;
    for (int i : x.degrees()) ds.insert(i), ds.insert(i - 1);
    for (const auto& [i, m] : u.comp) {
        if (!entries_valid(a, x.labels(i), y.labels(i + n), m)) return false;
    }
    for (int i : ds) {
        if (y.labels(i + n + 1).empty()) continue;
        LabelMatrix lhs = x.labels(i).empty() || x.labels(i + 1).empty()
                              ? LabelMatrix(x.labels(i).size(), y.labels(i + n + 1).size(), a.dim())
                              : mul(a, x.diff(i), component(x, y, u, i + 1));
        LabelMatrix rhs = x.labels(i).empty() || y.labels(i + n).empty()
                              ? LabelMatrix(x.labels(i).size(), y.labels(i + n + 1).size(), a.dim())
                              : sign * mul(a, component(x, y, u, i), y.diff(i + n));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

/// Each component, as a map on the underlying modules.
inline ModuleMap component_module_map(const ProjComplex& x, const ProjComplex& y, const ChainMap& u, int i) {
    return to_module_map(x.algebra_ptr(), x.labels(i), y.labels(i + u.shift), component(x, y, u, i));
}

/// Mapping cone of a chain map f: X -> Y: C^i = X^{i+1} + Y^i.
inline ProjComplex cone(const ProjComplex& x, const ProjComplex& y, const ChainMap& f) {
    if (f.shift != 0) throw std::invalid_argument("cone expects a degree-0 chain map");
    const Algebra& a = x.algebra();
    std::map<int, std::vector<std::size_t>> terms;
    std::set<int> ds;
    for (int d : x.degrees()) ds.insert(d - 1);
    for (int d : y.degrees()) ds.insert(d);
    for (int d : ds) {
        auto l = x.labels(d + 1);
        l.insert(l.end(), y.labels(d).begin(), y.labels(d).end());
        terms[d] = l;
    }
    std::map<int, LabelMatrix> diffs;
    for (int d : ds) {
        std::size_t xr = x.labels(d + 1).size(), yr = y.labels(d).size();
        std::size_t xc = x.labels(d + 2).size(), yc = y.labels(d + 1).size();
        LabelMatrix m(xr + yr, xc + yc, a.dim());
        LabelMatrix dx = x.diff(d + 1), dy = y.diff(d), fx = component(x, y, f, d + 1);
        for (std::size_t i = 0; i < xr; ++i) {
            for (std::size_t j = 0; j < xc; ++j) m.at(i, j) = scaled(dx.at(i, j), Scalar(-1));
            for (std::size_t j = 0; j < yc; ++j) m.at(i, xc + j) = fx.at(i, j);
        }
        for (std::size_t i = 0; i < yr; ++i)
            for (std::size_t j = 0; j < yc; ++j) m.at(xr + i, xc + j) = dy.at(i, j);
        diffs[d] = m;
    }
    return ProjComplex(x.algebra_ptr(), terms, diffs);
}

}  // namespace qtilt
