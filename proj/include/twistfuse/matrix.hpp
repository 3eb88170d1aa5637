#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "twistfuse/error.hpp"

namespace twistfuse {

using Int = std::int64_t;
using Rational = boost::rational<Int>;
using Labels = std::vector<Int>;
using QVector = std::vector<Rational>;

inline std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline bool is_integer(const Rational& q) { return q.denominator() == 1; }

inline Int lcm_denominators(const QVector& v) {
    Int l = 1;
    for (const auto& q : v) l = std::lcm(l, q.denominator());
    return l;
}

inline QVector to_rational(const Labels& v) { return QVector(v.begin(), v.end()); }

/// Exact conversion; throws if some entry is not an integer.
inline Labels to_integral(const QVector& v) {
    Labels out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_integer(v[i]))
            throw Error(ErrorCode::InvalidArgument, "non-integral coordinate " + to_string(v[i]));
        out[i] = v[i].numerator();
    }
    return out;
}

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw Error(ErrorCode::InvalidArgument, "ragged rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<std::vector<T>> to_rows() const {
        std::vector<std::vector<T>> out;
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
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

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = U((*this)(i, j));
        return m;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IMatrix = Matrix<Int>;
using QMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class T>
Matrix<T> operator*(const T& s, Matrix<T> m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= s;
    return m;
}

template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= b(i, j);
    return a;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
    if (a.cols() != v.size()) throw Error(ErrorCode::InvalidArgument, "matrix-vector shape mismatch");
    std::vector<T> out(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// x^T G y
template <class T>
T bilinear(const std::vector<T>& x, const Matrix<T>& g, const std::vector<T>& y) {
    return dot(x, g * y);
}

inline QMatrix diagonal(const QVector& d) {
    QMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

/// Gauss-Jordan inverse; throws on singular input.
inline QMatrix inverse(const QMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
    QMatrix a = m, inv = QMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == Rational(0)) ++p;
        if (p == n) throw Error(ErrorCode::InvalidArgument, "singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == Rational(0)) continue;
            const Rational f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline Rational determinant(const QMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
    QMatrix a = m;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == Rational(0)) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == Rational(0)) continue;
            const Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Basis of the rational null space, one vector per free column.
inline std::vector<QVector> null_space(const QMatrix& m) {
    QMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == Rational(0)) ++p;
        if (p == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        const Rational piv = a(r, c);
        for (std::size_t j = 0; j < cols; ++j) a(r, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == Rational(0)) continue;
            const Rational f = a(i, c);
            for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        QVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, free);
        basis.push_back(v);
    }
    return basis;
}

/// Row Hermite normal form of the integer span of `gens`; returns the nonzero rows.
inline std::vector<Labels> hermite_basis(std::vector<Labels> gens) {
    if (gens.empty()) return {};
    const std::size_t n = gens.front().size();
    std::vector<Labels> out;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < gens.size(); ++c) {
        // Euclid on column c over rows [row, end)
        while (true) {
            std::size_t best = gens.size();
            for (std::size_t i = row; i < gens.size(); ++i)
                if (gens[i][c] != 0 && (best == gens.size() || std::abs(gens[i][c]) < std::abs(gens[best][c])))
                    best = i;
            if (best == gens.size()) break;
            std::swap(gens[row], gens[best]);
            bool done = true;
            for (std::size_t i = row + 1; i < gens.size(); ++i) {
                if (gens[i][c] == 0) continue;
                const Int q = gens[i][c] / gens[row][c];
                for (std::size_t j = c; j < n; ++j) gens[i][j] -= q * gens[row][j];
                if (gens[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (gens[row][c] == 0) continue;
        if (gens[row][c] < 0)
            for (auto& x : gens[row]) x = -x;
        for (std::size_t i = 0; i < row; ++i) {
            Int q = gens[i][c] / gens[row][c];
            if (gens[i][c] - q * gens[row][c] < 0) --q;
            for (std::size_t j = c; j < n; ++j) gens[i][j] -= q * gens[row][j];
        }
        ++row;
    }
    gens.resize(row);
    return gens;
}

} // namespace twistfuse
