#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qtilt {

/// Exact rational number. Always kept in canonical form (reduced, positive denominator).
using Scalar = mpq_class;

/// Dense vector of scalars.
using Vec = std::vector<Scalar>;

inline bool is_zero(const Scalar& x) { return sgn(x) == 0; }

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

/// Parses "p", "-p", "p/q" (q != 0). Whitespace is not accepted.
inline Scalar parse_scalar(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty scalar");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false, digit_after = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (seen_slash || !digit_before) throw std::invalid_argument("malformed scalar: " + std::string(text));
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw std::invalid_argument("malformed scalar: " + std::string(text));
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw std::invalid_argument("malformed scalar: " + std::string(text));
    std::string body(text[0] == '+' ? text.substr(1) : text);
    Scalar out;
    if (out.set_str(body, 10) != 0) throw std::invalid_argument("malformed scalar: " + body);
    if (sgn(out.get_den()) == 0) throw std::invalid_argument("zero denominator: " + body);
    out.canonicalize();
    return out;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string format_scalar(const Scalar& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, Scalar(0));
    v[i] = 1;
    return v;
}

inline void axpy(Vec& y, const Scalar& a, const Vec& x) {
    if (is_zero(a)) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!is_zero(x[i])) y[i] += a * x[i];
}

inline Vec scaled(const Vec& x, const Scalar& a) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * a;
    return out;
}

inline Vec operator+(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace qtilt
