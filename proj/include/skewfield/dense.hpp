#ifndef SKEWFIELD_DENSE_HPP
#define SKEWFIELD_DENSE_HPP

// Dense matrices over an arbitrary field-operations policy F, which provides
// value_type, zero(), one(), add, sub, mul, neg, inv and is_zero.

#include <skewfield/errors.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace skewfield {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }

    Mat transpose() const {
        Mat t;
        t.rows_ = cols_;
        t.cols_ = rows_;
        t.data_.reserve(data_.size());
        for (std::size_t j = 0; j < cols_; ++j) {
            for (std::size_t i = 0; i < rows_; ++i) {
                t.data_.push_back((*this)(i, j));
            }
        }
        return t;
    }

    /// Columns [c0, c0 + n).
    Mat columns(std::size_t c0, std::size_t n) const {
        Mat out(rows_, n, data_.empty() ? T{} : data_[0]);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) = (*this)(i, c0 + j);
            }
        }
        return out;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace dense {

template <class F>
using Matrix = Mat<typename F::value_type>;

template <class F>
Matrix<F> zeros(const F& f, std::size_t r, std::size_t c) {
    return Matrix<F>(r, c, f.zero());
}

template <class F>
Matrix<F> identity(const F& f, std::size_t n) {
    Matrix<F> m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = f.one();
    }
    return m;
}

template <class F>
Matrix<F> scalar_matrix(const F& f, std::size_t n, const typename F::value_type& c) {
    Matrix<F> m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = c;
    }
    return m;
}

template <class F>
Matrix<F> add(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch("matrix sum of incompatible shapes");
    }
    Matrix<F> r = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(i, j) = f.add(a(i, j), b(i, j));
        }
    }
    return r;
}

template <class F>
Matrix<F> sub(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch("matrix difference of incompatible shapes");
    }
    Matrix<F> r = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(i, j) = f.sub(a(i, j), b(i, j));
        }
    }
    return r;
}

template <class F>
Matrix<F> neg(const F& f, Matrix<F> a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(i, j) = f.neg(a(i, j));
        }
    }
    return a;
}

template <class F>
Matrix<F> scale(const F& f, const typename F::value_type& c, Matrix<F> a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(i, j) = f.mul(c, a(i, j));
        }
    }
    return a;
}

template <class F>
Matrix<F> mul(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("matrix product of incompatible shapes");
    }
    Matrix<F> r(a.rows(), b.cols(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (f.is_zero(aik)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                r(i, j) = f.add(r(i, j), f.mul(aik, b(k, j)));
            }
        }
    }
    return r;
}

template <class F>
bool is_zero(const F& f, const Matrix<F>& a) {
    for (const auto& v : a.data()) {
        if (!f.is_zero(v)) {
            return false;
        }
    }
    return true;
}

template <class F>
bool is_scalar_matrix(const F& f, const Matrix<F>& a) {
    if (a.rows() != a.cols()) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j && !f.is_zero(a(i, j))) {
                return false;
            }
            if (i == j && !f.is_zero(f.sub(a(i, i), a(0, 0)))) {
                return false;
            }
        }
    }
    return true;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Matrix<F>& a, std::size_t col_limit = static_cast<std::size_t>(-1)) {
    std::vector<std::size_t> pivots;
    const std::size_t ncols = std::min(col_limit, a.cols());
    std::size_t row = 0;
    for (std::size_t c = 0; c < ncols && row < a.rows(); ++c) {
        std::size_t piv = row;
        while (piv < a.rows() && f.is_zero(a(piv, c))) {
            ++piv;
        }
        if (piv == a.rows()) {
            continue;
        }
        a.swap_rows(row, piv);
        const auto inv = f.inv(a(row, c));
        for (std::size_t j = c; j < a.cols(); ++j) {
            a(row, j) = f.mul(inv, a(row, j));
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || f.is_zero(a(i, c))) {
                continue;
            }
            const auto factor = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                a(i, j) = f.sub(a(i, j), f.mul(factor, a(row, j)));
            }
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<F> a) {
    // Forward elimination only.
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t piv = row;
        while (piv < a.rows() && f.is_zero(a(piv, c))) {
            ++piv;
        }
        if (piv == a.rows()) {
            continue;
        }
        a.swap_rows(row, piv);
        const auto inv = f.inv(a(row, c));
        for (std::size_t i = row + 1; i < a.rows(); ++i) {
            if (f.is_zero(a(i, c))) {
                continue;
            }
            const auto factor = f.mul(a(i, c), inv);
            for (std::size_t j = c; j < a.cols(); ++j) {
                a(i, j) = f.sub(a(i, j), f.mul(factor, a(row, j)));
            }
        }
        ++row;
    }
    return row;
}

/// Inverse by Gauss-Jordan; nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const F& f, const Matrix<F>& a) {
    if (a.rows() != a.cols()) {
        throw ShapeMismatch("inverse of a non-square matrix");
    }
    const std::size_t n = a.rows();
    Matrix<F> m = a;
    Matrix<F> inv = identity(f, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && f.is_zero(m(piv, c))) {
            ++piv;
        }
        if (piv == n) {
            return std::nullopt;
        }
        m.swap_rows(c, piv);
        inv.swap_rows(c, piv);
        const auto pinv = f.inv(m(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) = f.mul(pinv, m(c, j));
            inv(c, j) = f.mul(pinv, inv(c, j));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || f.is_zero(m(i, c))) {
                continue;
            }
            const auto factor = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
                inv(i, j) = f.sub(inv(i, j), f.mul(factor, inv(c, j)));
            }
        }
    }
    return inv;
}

/// Basis of the right null space {v : a v = 0}, as the columns of the result.
template <class F>
Matrix<F> nullspace(const F& f, const Matrix<F>& a) {
    Matrix<F> r = a;
    const auto pivots = rref(f, r);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (!is_pivot[j]) {
            free_cols.push_back(j);
        }
    }
    Matrix<F> basis(a.cols(), free_cols.size(), f.zero());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis(free_cols[k], k) = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            basis(pivots[i], k) = f.neg(r(i, free_cols[k]));
        }
    }
    return basis;
}

/// Some solution of a x = b (b may have several columns), or nullopt.
template <class F>
std::optional<Matrix<F>> solve(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) {
        throw ShapeMismatch("right-hand side has the wrong number of rows");
    }
    Matrix<F> aug(a.rows(), a.cols() + b.cols(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            aug(i, j) = a(i, j);
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
            aug(i, a.cols() + j) = b(i, j);
        }
    }
    const auto pivots = rref(f, aug, a.cols());
    for (std::size_t i = pivots.size(); i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (!f.is_zero(aug(i, a.cols() + j))) {
                return std::nullopt;
            }
        }
    }
    Matrix<F> x(a.cols(), b.cols(), f.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            x(pivots[i], j) = aug(i, a.cols() + j);
        }
    }
    return x;
}

/// Column basis of the span of the columns of a (a subset of its columns).
template <class F>
Matrix<F> column_basis(const F& f, const Matrix<F>& a) {
    Matrix<F> r = a;
    const auto pivots = rref(f, r);
    Matrix<F> out(a.rows(), pivots.size(), f.zero());
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            out(i, k) = a(i, pivots[k]);
        }
    }
    return out;
}

} // namespace dense
} // namespace skewfield

#endif
