#pragma once

#include "qtilt/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qtilt {

/// Dense row-major matrix over the rationals. Zero-sized dimensions are legal
/// and behave as zero maps.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<Vec>& columns, std::size_t rows) {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vec column(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_row(std::size_t i, const Vec& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (sgn(x) != 0) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    /// Row vector times matrix.
    Vec apply(const Vec& v) const {
        if (v.size() != rows_) throw std::invalid_argument("vector/matrix size mismatch");
        Vec out(cols_, Scalar(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (sgn(v[i]) == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                const Scalar& m = (*this)(i, j);
                if (sgn(m) != 0) out[j] += v[i] * m;
            }
        }
        return out;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const Scalar& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& x = a(i, k);
                if (sgn(x) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& y = b(k, j);
                    if (sgn(y) != 0) c(i, j) += x * y;
                }
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    const std::vector<Scalar>& data() const { return data_; }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

inline Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix m(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

struct RowEchelon {
    Matrix reduced;                   // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, in order
};

/// Gauss-Jordan elimination over Q. Exact; pivots are the leftmost nonzero entries.
inline RowEchelon rref(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Scalar inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Columns span the right kernel {x : m x = 0}; they are independent and there are
/// cols - rank of them.
inline Matrix kernel_basis(const Matrix& m) {
    auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix k(m.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        k(free[f], f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], f) = -red(i, free[f]);
    }
    return k;
}

/// Some x with m x = b, or nullopt when the system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    if (m.rows() != b.rows()) throw std::invalid_argument("solve: row counts differ");
    auto [red, pivots] = rref(hstack(m, b));
    Matrix x(m.cols(), b.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] >= m.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = red(i, m.cols() + j);
    }
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto [red, pivots] = rref(hstack(m, Matrix::identity(m.rows())));
    if (pivots.size() < m.rows() || (m.rows() > 0 && pivots[m.rows() - 1] >= m.cols())) return std::nullopt;
    return red.block(0, m.cols(), m.rows(), m.cols());
}

inline Scalar determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
    Scalar det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0) continue;
            Scalar f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Row-space basis (nonzero rows of the reduced echelon form).
inline Matrix row_space(const Matrix& m) {
    auto [red, pivots] = rref(m);
    return red.block(0, 0, pivots.size(), m.cols());
}

/// Basis of {v : v m = 0} as rows.
inline Matrix left_kernel(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

/// Incrementally maintained fully reduced echelon basis of a subspace of Q^n.
/// Each stored vector also records its expression in terms of the vectors that were
/// added, so membership tests can return coordinates.
class CoordinateBasis {
public:
    explicit CoordinateBasis(std::size_t ambient = 0, bool track = true) : n_(ambient), track_(track) {}

    std::size_t ambient() const { return n_; }
    std::size_t size() const { return rows_.size(); }
    std::size_t added() const { return added_; }

    /// Adds v; returns true when it was independent of the current span.
    bool add(const Vec& v) {
        Vec r = v;
        Vec comb;
        if (track_) {
            comb.assign(added_ + 1, Scalar(0));
            comb[added_] = 1;
            for (auto& c : combos_) c.resize(added_ + 1, Scalar(0));
        }
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Scalar f = r[pivots_[k]];
            if (sgn(f) == 0) continue;
            axpy(r, -f, rows_[k]);
            if (track_) axpy(comb, -f, combos_[k]);
        }
        ++added_;
        std::size_t p = 0;
        while (p < n_ && sgn(r[p]) == 0) ++p;
        if (p == n_) return false;
        Scalar inv = 1 / r[p];
        for (auto& x : r) x *= inv;
        for (auto& x : comb) x *= inv;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Scalar f = rows_[k][p];
            if (sgn(f) == 0) continue;
            axpy(rows_[k], -f, r);
            if (track_) axpy(combos_[k], -f, comb);
        }
        rows_.push_back(std::move(r));
        combos_.push_back(std::move(comb));
        pivots_.push_back(p);
        return true;
    }

    /// Residue of v after reduction against the span; zero iff v lies in the span.
    Vec reduce(const Vec& v) const {
        Vec r = v;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Scalar f = r[pivots_[k]];
            if (sgn(f) != 0) axpy(r, -f, rows_[k]);
        }
        return r;
    }

    bool contains(const Vec& v) const { return qtilt::is_zero(reduce(v)); }

    /// Coefficients c with v = sum c_j (j-th added vector), using only the independent
    /// added vectors; nullopt when v is outside the span.
    std::optional<Vec> coordinates(const Vec& v) const {
        if (!track_) throw std::logic_error("coordinates requested from an untracked basis");
        Vec r = v;
        Vec comb(added_, Scalar(0));
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Scalar f = r[pivots_[k]];
            if (sgn(f) == 0) continue;
            axpy(r, -f, rows_[k]);
            Vec ck = combos_[k];
            ck.resize(added_, Scalar(0));
            axpy(comb, f, ck);
        }
        if (!qtilt::is_zero(r)) return std::nullopt;
        return comb;
    }

    const std::vector<Vec>& echelon_rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    std::size_t n_;
    bool track_;
    std::size_t added_ = 0;
    std::vector<Vec> rows_;
    std::vector<Vec> combos_;
    std::vector<std::size_t> pivots_;
};

/// Greedy selection: indices of `candidates` that extend the span of `base`
/// (processed in order).
inline std::vector<std::size_t> complement_indices(const std::vector<Vec>& base, const std::vector<Vec>& candidates,
                                                   std::size_t ambient) {
    CoordinateBasis b(ambient);
    for (const auto& v : base) b.add(v);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (b.add(candidates[i])) out.push_back(i);
    return out;
}

}  // namespace qtilt
