#pragma once

#include "qtilt/decompose.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qtilt {

/// Validated algebra from a structure table (table[i * dim + j] = b_i b_j).
inline Algebra algebra_from_structure_constants(std::size_t dim, std::vector<Algebra::Sparse> table, Vec one) {
    Algebra a(dim, std::move(table), std::move(one));
    if (!is_associative(a)) throw Error(ErrorKind::NotAssociative, "structure constants are not associative");
    if (!is_identity(a, a.one())) throw Error(ErrorKind::NoIdentity, "given element is not a two-sided identity");
    return a;
}

/// Structure table from dense products: prod(i, j) is the coordinate vector of b_i b_j.
inline std::vector<Algebra::Sparse> sparse_table(std::size_t dim, const std::function<Vec(std::size_t, std::size_t)>& prod) {
    std::vector<Algebra::Sparse> t(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Vec p = prod(i, j);
            for (std::size_t k = 0; k < dim; ++k)
                if (sgn(p[k]) != 0) t[i * dim + j].push_back({k, p[k]});
        }
    return t;
}

inline Algebra opposite(const Algebra& a) {
    return Algebra(a.dim(), sparse_table(a.dim(), [&](std::size_t i, std::size_t j) {
                       return a.mul(a.basis_vec(j), a.basis_vec(i));
                   }),
                   a.one());
}

namespace detail {

inline std::vector<Vec> span_products(const Algebra& a, const std::vector<Vec>& x, const std::vector<Vec>& y) {
    CoordinateBasis cb(a.dim(), false);
    for (const auto& u : x)
        for (const auto& v : y) cb.add(a.mul(u, v));
    return cb.echelon_rows();
}

}  // namespace detail

/// Jacobson radical: kernel of the trace form (x, y) -> tr(L_x L_y) of the regular
/// representation. Checked to be a nilpotent two-sided ideal.
inline std::vector<Vec> radical_basis(const Algebra& a) {
    const std::size_t n = a.dim();
    std::vector<Matrix> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(a.left_mult(a.basis_vec(i)));
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = detail::trace_product(l[i], l[j]);
    Matrix k = kernel_basis(g);
    std::vector<Vec> j;
    for (std::size_t c = 0; c < k.cols(); ++c) j.push_back(k.column(c));
    CoordinateBasis jb(n, false);
    for (const auto& v : j) jb.add(v);
    for (const auto& v : j)
        for (std::size_t i = 0; i < n; ++i)
            if (!jb.contains(a.mul(v, a.basis_vec(i))) || !jb.contains(a.mul(a.basis_vec(i), v)))
                throw Error(ErrorKind::RadicalNotNilpotent, "trace-form radical is not an ideal");
    std::vector<Vec> p = j;
    for (std::size_t s = 0; s <= n && !p.empty(); ++s) p = detail::span_products(a, p, j);
    if (!p.empty()) throw Error(ErrorKind::RadicalNotNilpotent, "trace-form radical is not nilpotent");
    return j;
}

/// Smallest N with J^N = 0.
inline std::size_t nilpotency_index(const Algebra& a, const std::vector<Vec>& j) {
    if (a.dim() == 0) return 0;
    std::size_t nidx = 1;
    std::vector<Vec> p = j;
    while (!p.empty()) {
        p = detail::span_products(a, p, j);
        ++nidx;
        if (nidx > a.dim() + 1) throw Error(ErrorKind::RadicalNotNilpotent, "radical is not nilpotent");
    }
    return nidx;
}

/// Complete set of orthogonal primitive idempotents. Path algebras: the trivial paths.
/// Otherwise lifted from the semisimple quotient through the regular module.
inline std::vector<Vec> primitive_idempotents(const Algebra& a, std::uint64_t seed = 0) {
    std::vector<Vec> out;
    if (a.has_paths()) {
        for (std::size_t v = 0; v < a.num_vertices(); ++v) out.push_back(a.idempotent(v));
        return out;
    }
    const std::size_t n = a.dim();
    if (n == 0) return out;
    auto j = radical_basis(a);
    CoordinateBasis jb(n, false);
    for (const auto& v : j) jb.add(v);
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < n; ++i)
        if (jb.add(unit_vec(n, i))) comp.push_back(i);
    // coordinates of V = J + span(comp units); top keeps the comp part
    std::vector<Vec> rows = j;
    for (auto i : comp) rows.push_back(unit_vec(n, i));
    Matrix b = Matrix::from_rows(rows, n);
    Matrix binv = inverse(b).value();
    EndoAction act;
    act.n = n;
    act.top = binv.block(0, j.size(), n, comp.size());
    act.lift = Matrix(comp.size(), n);
    for (std::size_t k = 0; k < comp.size(); ++k) act.lift(k, comp[k]) = 1;
    std::vector<std::size_t> all(comp.size());
    std::iota(all.begin(), all.end(), 0);
    act.groups.push_back(all);
    for (std::size_t i = 0; i < n; ++i) act.basis.push_back(a.right_mult(a.basis_vec(i)));
    std::mt19937_64 rng(seed);
    for (const auto& eps : primitive_idempotents(act, rng)) out.push_back(eps.apply(a.one()));  // rho_e(1) = e
    return out;
}

/// Entry (i, j) = dim e_j A e_i.
inline Matrix cartan_matrix(const Algebra& a, const std::vector<Vec>& idem) {
    const std::size_t n = idem.size();
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Vec> span;
            for (std::size_t k = 0; k < a.dim(); ++k) span.push_back(a.mul(a.mul(idem[j], a.basis_vec(k)), idem[i]));
            c(i, j) = static_cast<long>(rank(Matrix::from_rows(span, a.dim())));
        }
    return c;
}

inline Matrix cartan_matrix(const Algebra& a) {
    auto idem = primitive_idempotents(a);
    if (!a.has_paths() && idem.size() + radical_basis(a).size() != a.dim())
        throw Error(ErrorKind::NotBasic, "algebra is not basic");
    return cartan_matrix(a, idem);
}

struct Presentation {
    Quiver quiver;
    std::vector<Relation> relations;
    std::vector<Vec> idempotents;      // vertex i -> e_i
    std::vector<Vec> arrow_elements;   // arrow k -> element of e_s J e_t
    std::size_t nilpotency = 0;        // J^nilpotency = 0
};

namespace detail {

struct PathSpace {
    std::vector<std::vector<std::size_t>> words;  // arrow words of length >= 2
    std::map<std::vector<std::size_t>, std::size_t> index;
};

inline void extend_paths(const Quiver& q, std::vector<std::size_t>& w, std::size_t max_len, PathSpace& ps) {
    if (w.size() >= 2) {
        ps.index[w] = ps.words.size();
        ps.words.push_back(w);
    }
    if (w.size() == max_len) return;
    for (std::size_t k = 0; k < q.arrows.size(); ++k)
        if (w.empty() || q.arrows[w.back()].target == q.arrows[k].source) {
            w.push_back(k);
            extend_paths(q, w, max_len, ps);
            w.pop_back();
        }
}

}  // namespace detail

/// Quiver with relations of a basic algebra, given a complete set of primitive
/// orthogonal idempotents. Arrow i -> j: elements of e_i J e_j independent modulo J^2
/// (products read left to right). Relations: kernel of the path map, truncated at the
/// nilpotency index, reduced to a generating set.
inline Presentation quiver_presentation(const Algebra& a, const std::vector<Vec>& idem) {
    const std::size_t n = idem.size();
    auto j = radical_basis(a);
    if (n + j.size() != a.dim()) throw Error(ErrorKind::NotBasic, "idempotent count does not match dim A/J");
    Presentation p;
    p.idempotents = idem;
    p.nilpotency = nilpotency_index(a, j);
    auto j2 = detail::span_products(a, j, j);
    for (std::size_t v = 0; v < n; ++v) p.quiver.vertices.push_back(std::to_string(v + 1));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            std::vector<Vec> base, cands;
            for (const auto& x : j2) base.push_back(a.mul(a.mul(idem[s], x), idem[t]));
            for (const auto& x : j) cands.push_back(a.mul(a.mul(idem[s], x), idem[t]));
            for (auto k : complement_indices(base, cands, a.dim())) {
                p.quiver.arrows.push_back(Arrow{"a" + std::to_string(p.arrow_elements.size()), s, t});
                p.arrow_elements.push_back(cands[k]);
            }
        }

    detail::PathSpace ps;
    std::vector<std::size_t> w;
    detail::extend_paths(p.quiver, w, std::max<std::size_t>(p.nilpotency, 2), ps);
    const std::size_t m = ps.words.size();
    auto image = [&](const std::vector<std::size_t>& word) {
        Vec x = p.arrow_elements[word[0]];
        for (std::size_t k = 1; k < word.size(); ++k) x = a.mul(x, p.arrow_elements[word[k]]);
        return x;
    };
    std::vector<Vec> cols;
    for (const auto& wd : ps.words) cols.push_back(image(wd));
    Matrix phi = Matrix::from_columns(cols, a.dim());
    Matrix ker = m == 0 ? Matrix(0, 0) : kernel_basis(phi);

    std::vector<Vec> kernel_vecs;
    for (std::size_t c = 0; c < ker.cols(); ++c) kernel_vecs.push_back(ker.column(c));
    auto min_len = [&](const Vec& v) {
        std::size_t best = SIZE_MAX;
        for (std::size_t k = 0; k < m; ++k)
            if (sgn(v[k]) != 0) best = std::min(best, ps.words[k].size());
        return best;
    };
    auto support = [&](const Vec& v) {
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) != 0; }));
    };
    std::stable_sort(kernel_vecs.begin(), kernel_vecs.end(), [&](const Vec& x, const Vec& y) {
        return std::make_pair(min_len(x), support(x)) < std::make_pair(min_len(y), support(y));
    });

    // ideal generated so far, truncated to paths of length <= nilpotency
    CoordinateBasis ideal(m, false);
    const auto& arrows = p.quiver.arrows;
    auto add_multiples = [&](const Vec& r) {
        std::vector<Vec> frontier{r};
        CoordinateBasis seen(m, false);
        while (!frontier.empty()) {
            Vec v = frontier.back();
            frontier.pop_back();
            if (!seen.add(v)) continue;
            ideal.add(v);
            for (std::size_t k = 0; k < arrows.size(); ++k) {
                Vec left(m, Scalar(0)), right(m, Scalar(0));
                bool any_l = false, any_r = false;
                for (std::size_t i = 0; i < m; ++i) {
                    if (sgn(v[i]) == 0) continue;
                    const auto& wd = ps.words[i];
                    if (arrows[k].target == arrows[wd.front()].source) {
                        std::vector<std::size_t> nw{k};
                        nw.insert(nw.end(), wd.begin(), wd.end());
                        auto it = ps.index.find(nw);
                        if (it != ps.index.end()) left[it->second] += v[i], any_l = true;
                    }
                    if (arrows[wd.back()].target == arrows[k].source) {
                        std::vector<std::size_t> nw = wd;
                        nw.push_back(k);
                        auto it = ps.index.find(nw);
                        if (it != ps.index.end()) right[it->second] += v[i], any_r = true;
                    }
                }
                if (any_l && !is_zero(left)) frontier.push_back(left);
                if (any_r && !is_zero(right)) frontier.push_back(right);
            }
        }
    };
    for (const auto& v : kernel_vecs) {
        if (ideal.contains(v)) continue;
        Relation r;
        for (std::size_t k = 0; k < m; ++k)
            if (sgn(v[k]) != 0) r.push_back(PathTerm{v[k], ps.words[k]});
        // scale so the first coefficient is 1
        Scalar lead = r.front().coeff;
        for (auto& t : r) t.coeff /= lead;
        p.relations.push_back(std::move(r));
        add_multiples(v);
    }

    Algebra check = build_path_algebra(p.quiver, p.relations, std::max<std::size_t>(p.nilpotency + 1, 2));
    if (check.dim() != a.dim())
        throw Error(ErrorKind::InternalDisagreement, "recovered presentation has dimension " +
                                                         std::to_string(check.dim()) + ", expected " +
                                                         std::to_string(a.dim()));
    return p;
}

inline Presentation quiver_presentation(const Algebra& a) { return quiver_presentation(a, primitive_idempotents(a)); }

/// Isomorphism kQ/I -> A sending vertex i to idempotent vertex_map[i] and arrow k to
/// scalars[k] times the presentation's arrow arrow_map[k].
struct PresentationMatch {
    std::vector<std::size_t> vertex_map;
    std::vector<std::size_t> arrow_map;
    std::vector<Scalar> scalars;
    bool ideal_equal = false;  // transported relations generate the same ideal as the given ones
};

namespace detail {

inline std::optional<std::vector<Scalar>> solve_arrow_scalars(const Algebra& a, const Presentation& p, const Quiver& q,
                                                              const std::vector<Relation>& rels,
                                                              const std::vector<std::size_t>& amap) {
    const std::size_t na = q.arrows.size();
    auto image = [&](const std::vector<std::size_t>& word) {
        Vec x = p.arrow_elements[amap[word[0]]];
        for (std::size_t k = 1; k < word.size(); ++k) x = a.mul(x, p.arrow_elements[amap[word[k]]]);
        return x;
    };
    struct Constraint {
        std::vector<int> exps;  // net exponent per arrow
        Scalar value;           // product of c^exp must equal value
    };
    std::vector<Constraint> cons;
    for (const auto& r : rels) {
        std::vector<std::pair<const PathTerm*, Vec>> live;
        for (const auto& t : r) {
            Vec x = image(t.arrows);
            if (!is_zero(x)) live.push_back({&t, std::move(x)});
        }
        if (live.empty() || live.size() > 2) continue;
        if (live.size() == 1) return std::nullopt;
        // r1 C1 X1 + r2 C2 X2 = 0 with X1 = mu X2
        const Vec &x1 = live[0].second, &x2 = live[1].second;
        std::size_t piv = 0;
        while (sgn(x2[piv]) == 0) ++piv;
        Scalar mu = x1[piv] / x2[piv];
        if (scaled(x2, mu) != x1) return std::nullopt;
        Constraint c{std::vector<int>(na, 0), -live[1].first->coeff / (live[0].first->coeff * mu)};
        for (auto k : live[0].first->arrows) ++c.exps[k];
        for (auto k : live[1].first->arrows) --c.exps[k];
        cons.push_back(std::move(c));
    }
    std::vector<std::optional<Scalar>> c(na);
    std::vector<bool> done(cons.size(), false);
    for (;;) {
        bool progress = false;
        for (std::size_t i = 0; i < cons.size(); ++i) {
            if (done[i]) continue;
            std::vector<std::size_t> open;
            for (std::size_t k = 0; k < na; ++k)
                if (cons[i].exps[k] != 0 && !c[k]) open.push_back(k);
            if (open.size() == 1 && std::abs(cons[i].exps[open[0]]) == 1) {
                Scalar rest = 1;
                for (std::size_t k = 0; k < na; ++k)
                    for (int e = 0; e < std::abs(cons[i].exps[k]) && k != open[0]; ++e)
                        rest = cons[i].exps[k] > 0 ? Scalar(rest * *c[k]) : Scalar(rest / *c[k]);
                Scalar v = cons[i].value / rest;
                c[open[0]] = cons[i].exps[open[0]] > 0 ? v : Scalar(1 / v);
                done[i] = progress = true;
            } else if (open.empty()) {
                done[i] = true;
            }
        }
        if (progress) continue;
        auto it = std::find_if(c.begin(), c.end(), [](const auto& x) { return !x.has_value(); });
        if (it == c.end()) break;
        *it = Scalar(1);
    }
    std::vector<Scalar> out;
    for (auto& x : c) out.push_back(*x);
    // exact check of every relation
    for (const auto& r : rels) {
        Vec sum = zero_vec(a.dim());
        for (const auto& t : r) {
            Scalar f = t.coeff;
            for (auto k : t.arrows) f *= out[k];
            axpy(sum, f, image(t.arrows));
        }
        if (!is_zero(sum)) return std::nullopt;
    }
    return out;
}

}  // namespace detail

/// Searches vertex bijections, assignments of parallel arrows and arrow rescalings for an
/// isomorphism from kQ/(rels) onto the algebra presented by p.
inline std::optional<PresentationMatch> match_presentation(const Algebra& a, const Presentation& p, const Quiver& q,
                                                           const std::vector<Relation>& rels,
                                                           std::size_t max_path_len = 30) {
    const std::size_t n = q.num_vertices();
    if (n != p.quiver.num_vertices() || q.arrows.size() != p.quiver.arrows.size()) return std::nullopt;
    Algebra b = build_path_algebra(q, rels, max_path_len);
    if (b.dim() != a.dim()) return std::nullopt;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // candidate arrows of p for each arrow of q, given the vertex map
        std::vector<std::vector<std::size_t>> cand(q.arrows.size());
        bool ok = true;
        for (std::size_t k = 0; k < q.arrows.size() && ok; ++k) {
            for (std::size_t l = 0; l < p.quiver.arrows.size(); ++l)
                if (p.quiver.arrows[l].source == perm[q.arrows[k].source] &&
                    p.quiver.arrows[l].target == perm[q.arrows[k].target])
                    cand[k].push_back(l);
            ok = !cand[k].empty();
        }
        if (!ok) continue;
        std::vector<std::size_t> amap(q.arrows.size());
        std::vector<bool> used(p.quiver.arrows.size(), false);
        std::optional<PresentationMatch> found;
        std::function<void(std::size_t)> assign = [&](std::size_t k) {
            if (found) return;
            if (k == q.arrows.size()) {
                auto sc = detail::solve_arrow_scalars(a, p, q, rels, amap);
                if (sc) found = PresentationMatch{perm, amap, *sc, false};
                return;
            }
            for (auto l : cand[k]) {
                if (used[l]) continue;
                used[l] = true;
                amap[k] = l;
                assign(k + 1);
                used[l] = false;
            }
        };
        assign(0);
        if (found) {
            // transport the recovered relations to q: arrow l of p is (1/c_k) times arrow k
            std::vector<std::size_t> back(p.quiver.arrows.size());
            for (std::size_t k = 0; k < amap.size(); ++k) back[amap[k]] = k;
            std::vector<Relation> moved;
            for (const auto& r : p.relations) {
                Relation nr;
                for (const auto& t : r) {
                    PathTerm nt{t.coeff, {}};
                    for (auto l : t.arrows) {
                        nt.arrows.push_back(back[l]);
                        nt.coeff /= found->scalars[back[l]];
                    }
                    nr.push_back(std::move(nt));
                }
                moved.push_back(std::move(nr));
            }
            found->ideal_equal = same_ideal(q, moved, rels, max_path_len);
            return found;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

}  // namespace qtilt
