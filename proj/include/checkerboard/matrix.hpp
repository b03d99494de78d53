#ifndef CHECKERBOARD_MATRIX_HPP
#define CHECKERBOARD_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "checkerboard/errors.hpp"
#include "checkerboard/scalar.hpp"

namespace checkerboard {

/// Dense row-major matrix over a scalar field. One n x n instance is a
/// BlockEntry; BlockMatrix packs a grid of them into one flat Matrix.
template <Scalar T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeMismatch("ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix scalar(std::size_t n, const T& value) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return ScalarTraits<T>::is_zero(x); });
    }

    /// Largest absolute entry, as a double; used for float-mode residuals.
    double max_abs() const {
        double best = 0.0;
        for (const auto& x : data_) best = std::max(best, ScalarTraits<T>::magnitude(x));
        return best;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix sub(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("submatrix out of bounds");
        Matrix s(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
        return s;
    }

    void paste(std::size_t r0, std::size_t c0, const Matrix& m) {
        if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw ShapeMismatch("paste out of bounds");
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeMismatch("product of " + a.shape() + " and " + b.shape());
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (ScalarTraits<T>::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeMismatch(std::string("operator") + op + " on " + shape() + " and " + o.shape());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// One element of the ring of n x n matrices.
template <Scalar T>
using BlockEntry = Matrix<T>;

/// A grid of n x n blocks. Stored flat so that products, inverses and
/// transposes are the ordinary scalar ones; transpose() therefore transposes
/// both the grid and every block.
template <Scalar T>
class BlockMatrix {
public:
    BlockMatrix() = default;
    BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t order)
        : order_(order), brows_(block_rows), bcols_(block_cols), flat_(block_rows * order, block_cols * order) {
        if (order == 0) throw ShapeMismatch("block order must be at least 1");
    }

    BlockMatrix(Matrix<T> flat, std::size_t order) : order_(order), flat_(std::move(flat)) {
        if (order == 0) throw ShapeMismatch("block order must be at least 1");
        if (flat_.rows() % order != 0 || flat_.cols() % order != 0)
            throw ShapeMismatch("flat shape " + flat_.shape() + " is not a multiple of block order " +
                                std::to_string(order));
        brows_ = flat_.rows() / order;
        bcols_ = flat_.cols() / order;
    }

    static BlockMatrix identity(std::size_t size, std::size_t order) {
        return BlockMatrix(Matrix<T>::identity(size * order), order);
    }

    static BlockMatrix from_blocks(const std::vector<std::vector<BlockEntry<T>>>& grid, std::size_t order) {
        const std::size_t r = grid.size();
        const std::size_t c = r ? grid.front().size() : 0;
        BlockMatrix out(r, c, order);
        for (std::size_t i = 0; i < r; ++i) {
            if (grid[i].size() != c) throw ShapeMismatch("ragged block grid");
            for (std::size_t j = 0; j < c; ++j) out.set_block(i, j, grid[i][j]);
        }
        return out;
    }

    std::size_t order() const noexcept { return order_; }
    std::size_t block_rows() const noexcept { return brows_; }
    std::size_t block_cols() const noexcept { return bcols_; }
    bool square() const noexcept { return brows_ == bcols_; }
    const Matrix<T>& flat() const noexcept { return flat_; }

    BlockEntry<T> block(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return flat_.sub(i * order_, j * order_, order_, order_);
    }

    void set_block(std::size_t i, std::size_t j, const BlockEntry<T>& b) {
        check_index(i, j);
        if (b.rows() != order_ || b.cols() != order_)
            throw ShapeMismatch("block of shape " + b.shape() + " in a matrix of block order " +
                                std::to_string(order_));
        flat_.paste(i * order_, j * order_, b);
    }

    bool block_is_zero(std::size_t i, std::size_t j) const {
        check_index(i, j);
        for (std::size_t a = 0; a < order_; ++a)
            for (std::size_t b = 0; b < order_; ++b)
                if (!ScalarTraits<T>::is_zero(flat_(i * order_ + a, j * order_ + b))) return false;
        return true;
    }

    /// Block rows [r0, r0+nr) and block columns [c0, c0+nc).
    BlockMatrix sub(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        return BlockMatrix(flat_.sub(r0 * order_, c0 * order_, nr * order_, nc * order_), order_);
    }

    /// Leading k x k block truncation.
    BlockMatrix leading(std::size_t k) const { return sub(0, 0, k, k); }

    BlockMatrix transpose() const { return BlockMatrix(flat_.transpose(), order_); }

    friend BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b) {
        a.require_order(b);
        return BlockMatrix(a.flat_ + b.flat_, a.order_);
    }
    friend BlockMatrix operator-(const BlockMatrix& a, const BlockMatrix& b) {
        a.require_order(b);
        return BlockMatrix(a.flat_ - b.flat_, a.order_);
    }
    friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) {
        return a.order_ == b.order_ && a.flat_ == b.flat_;
    }

    std::string shape() const {
        return std::to_string(brows_) + "x" + std::to_string(bcols_) + " blocks of order " + std::to_string(order_);
    }

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= brows_ || j >= bcols_)
            throw OutOfRange("block (" + std::to_string(i) + "," + std::to_string(j) + ") outside " + shape());
    }
    void require_order(const BlockMatrix& o) const {
        if (order_ != o.order_ || brows_ != o.brows_ || bcols_ != o.bcols_)
            throw ShapeMismatch(shape() + " vs " + o.shape());
    }

    std::size_t order_ = 1;
    std::size_t brows_ = 0;
    std::size_t bcols_ = 0;
    Matrix<T> flat_;
};

/// Max-norm of a - b as a double. Throws ShapeMismatch on differing shapes.
template <Scalar T>
double residual(const Matrix<T>& a, const Matrix<T>& b) {
    return (a - b).max_abs();
}

/// Equality under the scalar mode: exact for rationals, max-norm <= tol for floats.
template <Scalar T>
bool agrees(const Matrix<T>& a, const Matrix<T>& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if constexpr (ScalarTraits<T>::exact)
        return a == b;
    else
        return residual(a, b) <= tol;
}

template <Scalar T>
bool agrees(const BlockMatrix<T>& a, const BlockMatrix<T>& b, double tol) {
    return a.order() == b.order() && agrees(a.flat(), b.flat(), tol);
}

template <Scalar T>
bool negligible(const Matrix<T>& a, double tol) {
    if constexpr (ScalarTraits<T>::exact)
        return a.is_zero();
    else
        return a.max_abs() <= tol;
}

} // namespace checkerboard

#endif
