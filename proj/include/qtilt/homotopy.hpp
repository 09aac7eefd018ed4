#pragma once

#include "qtilt/complex.hpp"

#include <functional>

namespace qtilt {

/// Coordinates on the space of degree-wise maps X^i -> Y^{i+s}: one coordinate per
/// (degree, row, column, basis path in e_a A e_b).
class MapSpace {
public:
    MapSpace() = default;
    MapSpace(const ProjComplex& x, const ProjComplex& y, int s) : shift_(s), dim_(x.algebra().dim()) {
        const Algebra& a = x.algebra();
        for (int i : x.degrees()) {
            const auto& rl = x.labels(i);
            const auto& cl = y.labels(i + s);
            if (cl.empty()) continue;
            shapes_[i] = {rl.size(), cl.size()};
            for (std::size_t r = 0; r < rl.size(); ++r)
                for (std::size_t c = 0; c < cl.size(); ++c)
                    for (auto p : a.between(rl[r], cl[c])) slots_.push_back({i, r, c, p});
        }
    }

    std::size_t size() const { return slots_.size(); }
    int shift() const { return shift_; }

    Vec flatten(const ChainMap& u) const {
        Vec v(slots_.size(), Scalar(0));
        for (std::size_t k = 0; k < slots_.size(); ++k) {
            const Slot& s = slots_[k];
            auto it = u.comp.find(s.deg);
            if (it != u.comp.end()) v[k] = it->second.at(s.r, s.c)[s.path];
        }
        return v;
    }

    ChainMap unflatten(const Vec& v) const {
        ChainMap u{shift_, {}};
        for (const auto& [i, sh] : shapes_) u.comp[i] = LabelMatrix(sh.first, sh.second, dim_);
        for (std::size_t k = 0; k < slots_.size(); ++k)
            if (sgn(v[k]) != 0) {
                const Slot& s = slots_[k];
                u.comp[s.deg].at(s.r, s.c)[s.path] = v[k];
            }
        for (auto it = u.comp.begin(); it != u.comp.end();)
            it = it->second.is_zero() ? u.comp.erase(it) : std::next(it);
        return u;
    }

    ChainMap unit(std::size_t k) const {
        const Slot& s = slots_[k];
        ChainMap u{shift_, {}};
        auto sh = shapes_.at(s.deg);
        LabelMatrix m(sh.first, sh.second, dim_);
        m.at(s.r, s.c)[s.path] = 1;
        u.comp[s.deg] = std::move(m);
        return u;
    }

private:
    struct Slot {
        int deg;
        std::size_t r, c, path;
    };
    int shift_ = 0;
    std::size_t dim_ = 0;
    std::map<int, std::pair<std::size_t, std::size_t>> shapes_;
    std::vector<Slot> slots_;
};

namespace detail {

/// d_X u - (-1)^n u d_Y for u: X -> Y[n]; zero iff u is a chain map.
inline ChainMap chain_defect(const ProjComplex& x, const ProjComplex& y, const ChainMap& u) {
    const Algebra& a = x.algebra();
    const int n = u.shift;
    const Scalar sign = n % 2 == 0 ? 1 : -1;
    ChainMap out{n + 1, {}};
    std::set<int> ds;
    for (const auto& [i, m] : u.comp) ds.insert(i), ds.insert(i - 1);
    for (int i : ds) {
        const auto& rl = x.labels(i);
        const auto& cl = y.labels(i + n + 1);
        if (rl.empty() || cl.empty()) continue;
        LabelMatrix m(rl.size(), cl.size(), a.dim());
        if (!x.labels(i + 1).empty()) m += mul(a, x.diff(i), component(x, y, u, i + 1));
        if (!y.labels(i + n).empty()) m -= sign * mul(a, component(x, y, u, i), y.diff(i + n));
        if (!m.is_zero()) out.comp[i] = std::move(m);
    }
    return out;
}

/// d_X h + (-1)^n h d_Y for h: X -> Y[n-1]; a chain map X -> Y[n].
inline ChainMap homotopy_boundary(const ProjComplex& x, const ProjComplex& y, const ChainMap& h, int n) {
    const Algebra& a = x.algebra();
    const Scalar sign = n % 2 == 0 ? 1 : -1;
    ChainMap out{n, {}};
    std::set<int> ds;
    for (const auto& [i, m] : h.comp) ds.insert(i), ds.insert(i - 1);
    for (int i : ds) {
        const auto& rl = x.labels(i);
        const auto& cl = y.labels(i + n);
        if (rl.empty() || cl.empty()) continue;
        LabelMatrix m(rl.size(), cl.size(), a.dim());
        if (!x.labels(i + 1).empty()) m += mul(a, x.diff(i), component(x, y, h, i + 1));
        if (!y.labels(i + n - 1).empty()) m += sign * mul(a, component(x, y, h, i), y.diff(i + n - 1));
        if (!m.is_zero()) out.comp[i] = std::move(m);
    }
    return out;
}

inline Matrix linear_map_matrix(const MapSpace& from, const MapSpace& to,
                                const std::function<ChainMap(const ChainMap&)>& f) {
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < from.size(); ++k) cols.push_back(to.flatten(f(from.unit(k))));
    return Matrix::from_columns(cols, to.size());
}

}  // namespace detail

/// Hom_K(X, Y[n]): chain maps modulo null-homotopic maps, with a fixed basis of
/// representatives.
class HomotopyHom {
public:
    HomotopyHom(const ProjComplex& x, const ProjComplex& y, int n)
        : x_(x), y_(y), n_(n), u_(x, y, n), h_(x, y, n - 1), basis_(u_.size()) {
        MapSpace w(x, y, n + 1);
        Matrix phi = detail::linear_map_matrix(u_, w, [&](const ChainMap& u) { return detail::chain_defect(x_, y_, u); });
        psi_ = detail::linear_map_matrix(h_, u_, [&](const ChainMap& h) {
            return detail::homotopy_boundary(x_, y_, h, n_);
        });
        Matrix z = u_.size() == 0 ? Matrix(0, 0) : kernel_basis(phi);
        cycle_dim_ = z.cols();
        for (std::size_t j = 0; j < psi_.cols(); ++j)
            if (basis_.add(psi_.column(j))) ++boundary_dim_;
        for (std::size_t j = 0; j < z.cols(); ++j) {
            std::size_t idx = basis_.added();
            if (basis_.add(z.column(j))) {
                rep_index_.push_back(idx);
                reps_.push_back(u_.unflatten(z.column(j)));
            }
        }
        if (boundary_dim_ + reps_.size() != cycle_dim_)
            throw Error(ErrorKind::InternalDisagreement, "null-homotopic maps are not all chain maps");
    }

    const ProjComplex& source() const { return x_; }
    const ProjComplex& target() const { return y_; }
    int shift() const { return n_; }
    std::size_t dim() const { return reps_.size(); }
    std::size_t cycle_dim() const { return cycle_dim_; }
    std::size_t boundary_dim() const { return boundary_dim_; }
    const std::vector<ChainMap>& basis() const { return reps_; }
    const MapSpace& space() const { return u_; }

    bool is_chain_map(const ChainMap& u) const { return u.shift == n_ && qtilt::is_chain_map(x_, y_, u); }

    /// Coordinates of the class of u in basis(); throws when u is not a chain map.
    Vec coordinates(const ChainMap& u) const {
        if (!is_chain_map(u)) throw Error(ErrorKind::PreconditionFailed, "not a chain map");
        auto c = basis_.coordinates(u_.flatten(u));
        if (!c) throw Error(ErrorKind::InternalDisagreement, "chain map outside the computed cycle space");
        Vec out;
        for (auto i : rep_index_) out.push_back((*c)[i]);
        return out;
    }

    bool is_null_homotopic(const ChainMap& u) const { return is_zero(coordinates(u)); }

    /// h with d h + (-1)^n h d = u, if any.
    std::optional<ChainMap> homotopy_witness(const ChainMap& u) const {
        auto s = solve(psi_, Matrix::from_columns({u_.flatten(u)}, u_.size()));
        if (!s) return std::nullopt;
        return h_.unflatten(s->column(0));
    }

    ChainMap combination(const Vec& coeffs) const {
        Vec v(u_.size(), Scalar(0));
        for (std::size_t k = 0; k < reps_.size(); ++k) axpy(v, coeffs[k], u_.flatten(reps_[k]));
        return u_.unflatten(v);
    }

private:
    ProjComplex x_, y_;
    int n_;
    MapSpace u_, h_;
    Matrix psi_;
    CoordinateBasis basis_;
    std::size_t cycle_dim_ = 0, boundary_dim_ = 0;
    std::vector<std::size_t> rep_index_;
    std::vector<ChainMap> reps_;
};

inline HomotopyHom homotopy_hom(const ProjComplex& x, const ProjComplex& y, int n = 0) { return HomotopyHom(x, y, n); }

/// Is u: X -> Y[n] null-homotopic? Solves for a homotopy directly.
inline bool is_null_homotopic(const ProjComplex& x, const ProjComplex& y, const ChainMap& u) {
    MapSpace us(x, y, u.shift), hs(x, y, u.shift - 1);
    Vec target = us.flatten(u);
    if (is_zero(target)) return true;
    if (hs.size() == 0) return false;
    Matrix psi = detail::linear_map_matrix(hs, us, [&](const ChainMap& h) {
        return detail::homotopy_boundary(x, y, h, u.shift);
    });
    return solve(psi, Matrix::from_columns({target}, us.size())).has_value();
}

/// Chain maps X -> Y[n] (not modulo homotopy).
inline std::vector<ChainMap> chain_map_basis(const ProjComplex& x, const ProjComplex& y, int n = 0) {
    MapSpace u(x, y, n), w(x, y, n + 1);
    if (u.size() == 0) return {};
    Matrix phi = detail::linear_map_matrix(u, w, [&](const ChainMap& m) { return detail::chain_defect(x, y, m); });
    Matrix z = kernel_basis(phi);
    std::vector<ChainMap> out;
    for (std::size_t j = 0; j < z.cols(); ++j) out.push_back(u.unflatten(z.column(j)));
    return out;
}

}  // namespace qtilt
