#pragma once

#include "qtilt/errors.hpp"
#include "qtilt/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qtilt {

struct Arrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
};

class Quiver {
public:
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_arrows() const { return arrows.size(); }

    void validate() const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (vertices[i] == vertices[j]) throw Error(ErrorKind::InvalidInput, "duplicate vertex " + vertices[i]);
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            if (arrows[i].source >= vertices.size() || arrows[i].target >= vertices.size())
                throw Error(ErrorKind::InvalidInput, "arrow endpoint out of range: " + arrows[i].name);
            if (arrows[i].name.empty()) throw Error(ErrorKind::InvalidInput, "empty arrow name");
            for (std::size_t j = i + 1; j < arrows.size(); ++j)
                if (arrows[i].name == arrows[j].name)
                    throw Error(ErrorKind::InvalidInput, "duplicate arrow " + arrows[i].name);
        }
    }

    std::size_t vertex_index(const std::string& label) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == label) return i;
        throw Error(ErrorKind::InvalidInput, "unknown vertex " + label);
    }

    std::size_t arrow_index(const std::string& name) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return i;
        throw Error(ErrorKind::InvalidInput, "unknown arrow " + name);
    }
};

/// A path in the quiver, composed left to right. Trivial paths have no arrows and
/// start == end.
struct Path {
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<std::size_t> arrows;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.start == b.start && a.end == b.end && a.arrows == b.arrows;
    }
};

/// Basis order: trivial paths by vertex, then by length, then lexicographic on arrow indices.
inline bool path_less(const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.trivial()) return a.start < b.start;
    return a.arrows < b.arrows;
}

inline Path concat(const Path& a, const Path& b) {
    if (a.end != b.start) throw std::invalid_argument("paths not composable");
    Path p{a.start, b.end, a.arrows};
    p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
    return p;
}

inline std::string format_path(const Quiver& q, const Path& p) {
    if (p.trivial()) return "e_" + q.vertices[p.start];
    std::string s;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k) s += ' ';
        s += q.arrows[p.arrows[k]].name;
    }
    return s;
}

struct PathTerm {
    Scalar coeff;
    std::vector<std::size_t> arrows;
};

/// Linear combination of parallel paths of length >= 2, read as "= 0".
using Relation = std::vector<PathTerm>;

/// Checks composability and parallelism; returns (start, end).
inline std::pair<std::size_t, std::size_t> relation_endpoints(const Quiver& q, const Relation& r) {
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& t : r) {
        if (t.arrows.size() < 2) throw Error(ErrorKind::InvalidInput, "relation term of length < 2");
        for (std::size_t k = 0; k + 1 < t.arrows.size(); ++k)
            if (q.arrows.at(t.arrows[k]).target != q.arrows.at(t.arrows[k + 1]).source)
                throw Error(ErrorKind::InvalidInput, "relation term not composable");
        std::pair<std::size_t, std::size_t> e{q.arrows[t.arrows.front()].source, q.arrows[t.arrows.back()].target};
        if (ends && *ends != e) throw Error(ErrorKind::InvalidInput, "relation terms not parallel");
        ends = e;
    }
    if (!ends) throw Error(ErrorKind::InvalidInput, "empty relation");
    return *ends;
}

/// Finite-dimensional algebra given by structure constants on a basis. Algebras built
/// from a quiver additionally carry their path data.
class Algebra {
public:
    using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

    Algebra() = default;

    /// table[i * dim + j] = product of basis elements i and j.
    Algebra(std::size_t dim, std::vector<Sparse> table, Vec one)
        : dim_(dim), table_(std::move(table)), one_(std::move(one)) {
        if (table_.size() != dim_ * dim_ || one_.size() != dim_)
            throw Error(ErrorKind::InvalidInput, "structure table has wrong size");
    }

    std::size_t dim() const { return dim_; }
    const Vec& one() const { return one_; }
    const Sparse& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vec basis_vec(std::size_t i) const { return unit_vec(dim_, i); }

    Vec mul(const Vec& x, const Vec& y) const {
        Vec out(dim_, Scalar(0));
        for (std::size_t i = 0; i < dim_; ++i) {
            if (sgn(x[i]) == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (sgn(y[j]) == 0) continue;
                const auto& pr = table_[i * dim_ + j];
                if (pr.empty()) continue;
                Scalar c = x[i] * y[j];
                for (const auto& [k, v] : pr) out[k] += c * v;
            }
        }
        return out;
    }

    /// Matrix of right multiplication by y on row vectors: x -> x y.
    Matrix right_mult(const Vec& y) const {
        Matrix m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) m.set_row(i, mul(unit_vec(dim_, i), y));
        return m;
    }

    /// Matrix of left multiplication by x on row vectors: y -> x y.
    Matrix left_mult(const Vec& x) const {
        Matrix m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) m.set_row(i, mul(x, unit_vec(dim_, i)));
        return m;
    }

    // ---- path data -------------------------------------------------------

    bool has_paths() const { return !paths_.empty() || (dim_ == 0 && quiver_.num_vertices() > 0); }
    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const std::vector<Path>& basis_paths() const { return paths_; }
    const Path& path(std::size_t i) const { return paths_.at(i); }
    std::size_t num_vertices() const { return quiver_.num_vertices(); }
    std::size_t path_bound() const { return path_bound_; }

    std::size_t trivial(std::size_t v) const { return trivial_.at(v); }
    Vec idempotent(std::size_t v) const { return unit_vec(dim_, trivial(v)); }

    /// Basis indices spanning e_a A e_b (paths from a to b).
    const std::vector<std::size_t>& between(std::size_t a, std::size_t b) const {
        return between_.at(a * num_vertices() + b);
    }

    std::size_t arrow_basis(std::size_t arrow) const { return arrow_basis_.at(arrow); }

    /// Image in the algebra of the path given by an arrow word (empty word = e_start).
    Vec evaluate(const std::vector<std::size_t>& word, std::size_t start = 0) const {
        if (word.empty()) return idempotent(start);
        Vec x = unit_vec(dim_, arrow_basis(word[0]));
        for (std::size_t k = 1; k < word.size(); ++k) {
            if (quiver_.arrows[word[k - 1]].target != quiver_.arrows[word[k]].source)
                throw Error(ErrorKind::InvalidInput, "word not composable");
            x = mul(x, unit_vec(dim_, arrow_basis(word[k])));
        }
        return x;
    }

    Vec evaluate(const Relation& r) const {
        Vec x = zero_vec(dim_);
        for (const auto& t : r) axpy(x, t.coeff, evaluate(t.arrows));
        return x;
    }

    std::string format_element(const Vec& x) const {
        std::string s;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (sgn(x[i]) == 0) continue;
            Scalar c = x[i];
            if (!s.empty()) {
                s += sgn(c) < 0 ? " - " : " + ";
                c = abs(c);
            } else if (sgn(c) < 0) {
                s += "-";
                c = -c;
            }
            if (c != 1) s += format_scalar(c) + "*";
            s += has_paths() ? format_path(quiver_, paths_[i]) : "b" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

    friend Algebra build_path_algebra(const Quiver&, const std::vector<Relation>&, std::size_t);

private:
    std::size_t dim_ = 0;
    std::vector<Sparse> table_;
    Vec one_;

    Quiver quiver_;
    std::vector<Relation> relations_;
    std::vector<Path> paths_;
    std::vector<std::size_t> trivial_;
    std::vector<std::vector<std::size_t>> between_;
    std::vector<std::size_t> arrow_basis_;
    std::size_t path_bound_ = 0;
};

/// Exhaustive check over basis triples.
inline bool is_associative(const Algebra& a) {
    std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec ij = a.mul(a.basis_vec(i), a.basis_vec(j));
            for (std::size_t k = 0; k < n; ++k) {
                Vec lhs = a.mul(ij, a.basis_vec(k));
                Vec rhs = a.mul(a.basis_vec(i), a.mul(a.basis_vec(j), a.basis_vec(k)));
                if (lhs != rhs) return false;
            }
        }
    return true;
}

inline bool is_identity(const Algebra& a, const Vec& one) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec b = a.basis_vec(i);
        if (a.mul(one, b) != b || a.mul(b, one) != b) return false;
    }
    return true;
}

namespace detail {

inline std::vector<std::vector<Path>> enumerate_paths(const Quiver& q, std::size_t max_len, std::size_t cap) {
    std::vector<std::vector<Path>> by_len(1);
    for (std::size_t v = 0; v < q.num_vertices(); ++v) by_len[0].push_back(Path{v, v, {}});
    std::size_t total = by_len[0].size();
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const auto& p : by_len[len - 1])
            for (std::size_t a = 0; a < q.num_arrows(); ++a)
                if (q.arrows[a].source == p.end) {
                    Path np = p;
                    if (np.trivial()) np.start = q.arrows[a].source;
                    np.arrows.push_back(a);
                    np.end = q.arrows[a].target;
                    next.push_back(std::move(np));
                }
        total += next.size();
        if (total > cap) throw Error(ErrorKind::NotAdmissible, "path count exceeds cap");
        std::sort(next.begin(), next.end(), path_less);
        by_len.push_back(std::move(next));
    }
    return by_len;
}

}  // namespace detail

/// Builds kQ/I for an admissible ideal I generated by `rels`.
///
/// For N = 1, 2, ... the image of I in kQ/J^{N+1} is spanned by truncations of p r q.
/// Once every path of length N lies in that span, J^N is contained in I and the
/// non-leading paths form a basis. Leading term = largest path in (length, lex) order.
inline Algebra build_path_algebra(const Quiver& q, const std::vector<Relation>& rels, std::size_t max_path_len = 30) {
    q.validate();
    std::vector<std::pair<std::size_t, std::size_t>> rel_ends;
    std::vector<Relation> clean;
    for (const auto& r : rels) {
        Relation c;
        for (const auto& t : r)
            if (sgn(t.coeff) != 0) c.push_back(t);
        if (c.empty()) continue;
        rel_ends.push_back(relation_endpoints(q, c));
        clean.push_back(std::move(c));
    }
    constexpr std::size_t kPathCap = 200000;

    for (std::size_t N = 1; N <= max_path_len; ++N) {
        auto by_len = detail::enumerate_paths(q, N, kPathCap);
        std::vector<Path> all;
        for (const auto& level : by_len) all.insert(all.end(), level.begin(), level.end());
        const std::size_t total = all.size();
        // `all` is ascending; column index = total - 1 - position makes the largest path column 0.
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> column;
        auto key = [](const Path& p) { return std::make_pair(p.trivial() ? p.start : 0, p.arrows); };
        for (std::size_t i = 0; i < total; ++i) column[key(all[i])] = total - 1 - i;
        auto col_of_word = [&](const std::vector<std::size_t>& w) { return column.at({0, w}); };

        CoordinateBasis ideal(total, false);
        for (std::size_t ri = 0; ri < clean.size(); ++ri) {
            const auto& r = clean[ri];
            auto [s, t] = rel_ends[ri];
            std::size_t minlen = r.front().arrows.size();
            for (const auto& term : r) minlen = std::min(minlen, term.arrows.size());
            if (minlen > N) continue;
            for (std::size_t lp = 0; lp + minlen <= N; ++lp)
                for (const auto& p : by_len[lp]) {
                    if (p.end != s) continue;
                    for (std::size_t lq = 0; lp + minlen + lq <= N; ++lq)
                        for (const auto& qq : by_len[lq]) {
                            if (qq.start != t) continue;
                            Vec v(total, Scalar(0));
                            for (const auto& term : r) {
                                if (lp + term.arrows.size() + lq > N) continue;
                                std::vector<std::size_t> w = p.arrows;
                                w.insert(w.end(), term.arrows.begin(), term.arrows.end());
                                w.insert(w.end(), qq.arrows.begin(), qq.arrows.end());
                                v[col_of_word(w)] += term.coeff;
                            }
                            ideal.add(v);
                        }
                }
        }

        bool closed = true;
        for (const auto& p : by_len[N])
            if (!ideal.contains(unit_vec(total, column.at(key(p))))) {
                closed = false;
                break;
            }
        if (!closed) continue;

        std::vector<bool> pivot(total, false);
        for (auto c : ideal.pivots()) pivot[c] = true;
        Algebra alg;
        alg.quiver_ = q;
        alg.relations_ = clean;
        alg.path_bound_ = N;
        std::vector<std::size_t> basis_of_col(total, SIZE_MAX);
        for (std::size_t i = 0; i < total; ++i) {
            std::size_t c = total - 1 - i;
            if (pivot[c]) continue;
            basis_of_col[c] = alg.paths_.size();
            alg.paths_.push_back(all[i]);
        }
        const std::size_t n = alg.paths_.size();
        alg.dim_ = n;
        const std::size_t nv = q.num_vertices();
        alg.trivial_.resize(nv);
        alg.between_.assign(nv * nv, {});
        alg.one_ = zero_vec(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Path& p = alg.paths_[i];
            if (p.trivial()) {
                alg.trivial_[p.start] = i;
                alg.one_[i] = 1;
            }
            alg.between_[p.start * nv + p.end].push_back(i);
        }
        alg.arrow_basis_.resize(q.num_arrows());
        for (std::size_t a = 0; a < q.num_arrows(); ++a) {
            std::size_t c = col_of_word({a});
            if (basis_of_col[c] == SIZE_MAX)
                throw Error(ErrorKind::InvalidInput, "arrow " + q.arrows[a].name + " lies in the ideal");
            alg.arrow_basis_[a] = basis_of_col[c];
        }
        alg.table_.assign(n * n, {});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Path& u = alg.paths_[i];
                const Path& v = alg.paths_[j];
                if (u.end != v.start) continue;
                if (u.length() + v.length() > N) continue;
                Path w = concat(u, v);
                if (w.trivial()) {
                    alg.table_[i * n + j].push_back({i, Scalar(1)});
                    continue;
                }
                Vec r = ideal.reduce(unit_vec(total, col_of_word(w.arrows)));
                for (std::size_t c = 0; c < total; ++c)
                    if (sgn(r[c]) != 0) alg.table_[i * n + j].push_back({basis_of_col[c], r[c]});
                std::sort(alg.table_[i * n + j].begin(), alg.table_[i * n + j].end());
            }
        return alg;
    }
    throw Error(ErrorKind::NotAdmissible, "paths of length " + std::to_string(max_path_len) + " survive");
}

/// Ideal equality for two relation sets on the same quiver, by two-way membership.
inline bool same_ideal(const Quiver& q, const std::vector<Relation>& r1, const std::vector<Relation>& r2,
                       std::size_t max_path_len = 30) {
    Algebra a1 = build_path_algebra(q, r1, max_path_len);
    Algebra a2 = build_path_algebra(q, r2, max_path_len);
    if (a1.dim() != a2.dim()) return false;
    for (const auto& r : r2)
        if (!is_zero(a1.evaluate(r))) return false;
    for (const auto& r : r1)
        if (!is_zero(a2.evaluate(r))) return false;
    return true;
}

/// Relations written with arrow names, e.g. {{1, {"alpha","beta"}}, {-1, {"gamma"}}}.
inline Relation make_relation(const Quiver& q,
                              const std::vector<std::pair<Scalar, std::vector<std::string>>>& terms) {
    Relation r;
    for (const auto& [c, names] : terms) {
        PathTerm t{c, {}};
        for (const auto& n : names) t.arrows.push_back(q.arrow_index(n));
        r.push_back(std::move(t));
    }
    return r;
}

/// Quiver from vertex labels and (name, from, to) triples.
inline Quiver make_quiver(const std::vector<std::string>& vertices,
                          const std::vector<std::tuple<std::string, std::string, std::string>>& arrows) {
    Quiver q;
    q.vertices = vertices;
    for (const auto& [name, from, to] : arrows) q.arrows.push_back(Arrow{name, q.vertex_index(from), q.vertex_index(to)});
    q.validate();
    return q;
}

/// Monomial relation helper: each word is a single path = 0.
inline std::vector<Relation> monomial_relations(const Quiver& q, const std::vector<std::vector<std::string>>& words) {
    std::vector<Relation> out;
    for (const auto& w : words) out.push_back(make_relation(q, {{Scalar(1), w}}));
    return out;
}

// ---- right modules ---------------------------------------------------------------
// Modules in this library are left modules over the algebra object they reference.
// Right modules over kQ/I (representations with maps M_s -> M_t along each arrow, P(v)
// spanned by the paths starting at v) are left modules over the opposite algebra,
// the path algebra of the reversed quiver modulo the reversed relations.

inline Quiver opposite(const Quiver& q) {
    Quiver o = q;
    for (auto& a : o.arrows) std::swap(a.source, a.target);
    return o;
}

inline Relation opposite(const Relation& r) {
    Relation o = r;
    for (auto& t : o) std::reverse(t.arrows.begin(), t.arrows.end());
    return o;
}

inline std::vector<Relation> opposite(const std::vector<Relation>& rs) {
    std::vector<Relation> o;
    for (const auto& r : rs) o.push_back(opposite(r));
    return o;
}

/// Algebra whose left modules are the right kQ/I-modules.
inline Algebra build_module_algebra(const Quiver& q, const std::vector<Relation>& rels,
                                    std::size_t max_path_len = 30) {
    return build_path_algebra(opposite(q), opposite(rels), max_path_len);
}

/// Element of the module algebra given by a path of kQ written left to right
/// (arrow names); as a map P(a) -> P(b) it is left multiplication by that path b -> a.
inline Vec path_element(const Algebra& module_alg, const std::vector<std::string>& word, const Scalar& c = 1) {
    if (word.empty()) throw std::invalid_argument("trivial paths need a vertex; use idempotent()");
    std::vector<std::size_t> w;
    for (auto it = word.rbegin(); it != word.rend(); ++it) w.push_back(module_alg.quiver().arrow_index(*it));
    return scaled(module_alg.evaluate(w), c);
}

}  // namespace qtilt
