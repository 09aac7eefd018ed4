#pragma once

#include "qtilt/matrix.hpp"

#include <algorithm>
#include <vector>

namespace qtilt {

/// Dense univariate polynomial, coefficient k multiplies x^k. Trailing zeros trimmed.
using Poly = std::vector<Scalar>;

inline void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline Scalar eval(const Poly& p, const Scalar& x) {
    Scalar acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Scalar(static_cast<long>(k)));
    trim(d);
    return d;
}

/// Remainder of a modulo b (b nonzero).
inline Poly poly_mod(Poly a, const Poly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Scalar f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
        trim(a);
    }
    return a;
}

inline Poly poly_div(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    Poly q(a.size() - b.size() + 1, Scalar(0));
    while (a.size() >= b.size() && !a.empty()) {
        Scalar f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
        trim(a);
    }
    trim(q);
    return q;
}

inline Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Scalar lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

/// Characteristic polynomial det(x I - m), Faddeev-LeVerrier (exact in characteristic 0).
inline Poly charpoly(const Matrix& m) {
    const std::size_t n = m.rows();
    Poly c(n + 1, Scalar(0));
    c[n] = 1;
    Matrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        Matrix am = m * mk;
        Scalar tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Scalar(static_cast<long>(k));
    }
    return c;
}

namespace detail {

inline int sign_changes(const std::vector<Poly>& seq, const Scalar& x) {
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sgn(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace detail

/// All distinct rational roots, ascending. Real roots are isolated with a Sturm sequence
/// and bisected until the interval is narrower than 1/|lead| of the primitive integer
/// form; a rational root x then satisfies lead * x in Z, leaving one candidate.
inline std::vector<Scalar> rational_roots(Poly p) {
    trim(p);
    if (p.size() <= 1) return {};
    Poly g = poly_div(p, poly_gcd(p, derivative(p)));
    mpz_class den = 1;
    for (const auto& c : g) den = lcm(den, c.get_den());
    Poly gi;
    for (const auto& c : g) gi.push_back(c * den);
    mpz_class content = 0;
    for (const auto& c : gi) content = gcd(content, c.get_num());
    for (auto& c : gi) c /= content;
    const Scalar lead = abs(gi.back());

    Scalar bound = 0;
    for (std::size_t k = 0; k + 1 < gi.size(); ++k) bound = std::max(bound, Scalar(abs(gi[k] / gi.back())));
    bound += 1;

    std::vector<Poly> sturm{gi, derivative(gi)};
    while (sturm.back().size() > 1) {
        Poly r = poly_mod(sturm[sturm.size() - 2], sturm.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        sturm.push_back(std::move(r));
    }

    std::vector<Scalar> roots;
    const Scalar width = Scalar(1) / (2 * lead);
    struct Interval {
        Scalar lo, hi;
        int vlo, vhi;
    };
    std::vector<Interval> work{{-bound, bound, detail::sign_changes(sturm, -bound), detail::sign_changes(sturm, bound)}};
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        int count = iv.vlo - iv.vhi;  // roots in (lo, hi]
        if (count <= 0) continue;
        if (count == 1 && iv.hi - iv.lo < width) {
            Scalar t = iv.hi * lead;
            mpz_class fl = t.get_num() / t.get_den();  // truncation toward zero
            for (int d = -2; d <= 2; ++d) {
                Scalar cand = Scalar(mpz_class(fl + d)) / lead;
                if (cand > iv.lo && cand <= iv.hi && sgn(eval(gi, cand)) == 0) roots.push_back(cand);
            }
            continue;
        }
        Scalar mid = (iv.lo + iv.hi) / 2;
        int vm = detail::sign_changes(sturm, mid);
        work.push_back({iv.lo, mid, iv.vlo, vm});
        work.push_back({mid, iv.hi, vm, iv.vhi});
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace qtilt
