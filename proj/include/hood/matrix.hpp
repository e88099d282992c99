#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hood/padic.hpp"

namespace hood {

/// Dense exact rational matrix, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RationalMatrix diagonal(const std::vector<Rational>& d) {
        RationalMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty()) return {};
        RationalMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw ShapeMismatch("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
        RationalMatrix c(a.rows_, b.cols_);
        Rational tmp;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j) == 0) continue;
                    tmp = aik * b(k, j);
                    c(i, j) += tmp;
                }
            }
        return c;
    }

    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix difference shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend RationalMatrix operator*(const Rational& s, RationalMatrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<Rational> column(std::size_t j) const {
        std::vector<Rational> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline Rational determinant(RationalMatrix m) {
    if (!m.is_square()) throw NonSquare("determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

inline RationalMatrix inverse(const RationalMatrix& a) {
    if (!a.is_square()) throw NonSquare("inverse of non-square matrix");
    const std::size_t n = a.rows();
    RationalMatrix m = a;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k) == 0) ++piv;
        if (piv == n) throw Singular("matrix is not invertible");
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        Rational d = 1 / m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) *= d;
            inv(k, j) *= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rational f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Basis of the right kernel {x : m x = 0}, one column per basis vector.
inline RationalMatrix kernel_basis(const RationalMatrix& a) {
    RationalMatrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        Rational d = 1 / m(r, c);
        for (std::size_t j = 0; j < cols; ++j) m(r, j) *= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RationalMatrix k(cols, free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        k(free_cols[f], f) = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) k(pivot_cols[i], f) = -m(i, free_cols[f]);
    }
    return k;
}

inline std::size_t rank(const RationalMatrix& a) { return a.cols() - kernel_basis(a).cols(); }

// ---------------------------------------------------------------------------

/// Square or rectangular matrix over Q_p with exact rational entries.
class PadicMatrix {
public:
    PadicMatrix(Prime p, RationalMatrix m) : prime_(p), m_(std::move(m)) {}

    static PadicMatrix identity(Prime p, std::size_t n) { return {p, RationalMatrix::identity(n)}; }

    static PadicMatrix from_strings(Prime p, const std::vector<std::vector<std::string>>& grid) {
        std::vector<std::vector<Rational>> rows;
        rows.reserve(grid.size());
        for (const auto& r : grid) {
            std::vector<Rational> row;
            row.reserve(r.size());
            for (const auto& s : r) row.push_back(parse_rational(s, p));
            rows.push_back(std::move(row));
        }
        if (rows.empty()) throw ShapeMismatch("empty matrix");
        return {p, RationalMatrix::from_rows(rows)};
    }

    Prime prime() const noexcept { return prime_; }
    std::size_t rows() const noexcept { return m_.rows(); }
    std::size_t cols() const noexcept { return m_.cols(); }
    bool is_square() const noexcept { return m_.is_square(); }
    const RationalMatrix& rational() const noexcept { return m_; }

    PadicScalar at(std::size_t i, std::size_t j) const { return PadicScalar::from_rational(m_(i, j), prime_); }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows(), std::vector<std::string>(cols()));
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) out[i][j] = m_(i, j).get_str();
        return out;
    }

    friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
        if (!(a.prime_ == b.prime_)) throw PrimeMismatch("matrix primes differ");
        return {a.prime_, a.m_ * b.m_};
    }

    friend bool operator==(const PadicMatrix& a, const PadicMatrix& b) {
        return a.prime_ == b.prime_ && a.m_ == b.m_;
    }

private:
    Prime prime_;
    RationalMatrix m_;
};

/// Matrix of the map induced by `m` on Q^n / ker(m), in the basis given by
/// the images of the complement coordinates. Used for kernel-reduction checks.
inline RationalMatrix induced_on_coimage(const RationalMatrix& m) {
    if (!m.is_square()) throw NonSquare("coimage map of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix ker = kernel_basis(m);
    const std::size_t k = ker.cols();
    // Extend the kernel basis by standard vectors to a basis of Q^n.
    std::vector<std::vector<Rational>> basis;
    for (std::size_t j = 0; j < k; ++j) basis.push_back(ker.column(j));
    for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
        auto trial = basis;
        std::vector<Rational> v(n, Rational(0));
        v[e] = 1;
        trial.push_back(v);
        RationalMatrix t(n, trial.size());
        for (std::size_t j = 0; j < trial.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) t(i, j) = trial[j][i];
        if (rank(t) == trial.size()) basis = std::move(trial);
    }
    RationalMatrix s(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) s(i, j) = basis[j][i];
    RationalMatrix conj = inverse(s) * m * s;
    // ker is invariant, so conj is block upper triangular; the lower-right
    // block acts on the quotient.
    RationalMatrix q(n - k, n - k);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) q(i, j) = conj(k + i, k + j);
    return q;
}

} // namespace hood
