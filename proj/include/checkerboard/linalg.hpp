#ifndef CHECKERBOARD_LINALG_HPP
#define CHECKERBOARD_LINALG_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "checkerboard/matrix.hpp"

namespace checkerboard {

template <Scalar T>
BlockMatrix<T> multiply(const BlockMatrix<T>& a, const BlockMatrix<T>& b) {
    if (a.order() != b.order()) throw ShapeMismatch("block orders differ: " + a.shape() + " vs " + b.shape());
    if (a.block_cols() != b.block_rows()) throw ShapeMismatch("product of " + a.shape() + " and " + b.shape());
    return BlockMatrix<T>(a.flat() * b.flat(), a.order());
}

template <Scalar T>
BlockMatrix<T> operator*(const BlockMatrix<T>& a, const BlockMatrix<T>& b) {
    return multiply(a, b);
}

/// Solves A X = B by Gauss-Jordan elimination. Exact mode pivots on the
/// first nonzero entry; float mode uses partial pivoting with a relative
/// singularity threshold. Throws Singular, never perturbs the input.
template <Scalar T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
    if (!a.square()) throw ShapeMismatch("solve: matrix " + a.shape() + " is not square");
    if (b.rows() != a.rows()) throw ShapeMismatch("solve: right-hand side " + b.shape() + " vs " + a.shape());
    const std::size_t n = a.rows();
    const std::size_t nb = b.cols();
    Matrix<T> w = a;
    Matrix<T> x = b;
    double scale = 1.0;
    if constexpr (!ScalarTraits<T>::exact) scale = std::max(1.0, a.max_abs());

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        if constexpr (ScalarTraits<T>::exact) {
            for (std::size_t r = col; r < n; ++r)
                if (!ScalarTraits<T>::is_zero(w(r, col))) {
                    piv = r;
                    break;
                }
        } else {
            double best = ScalarTraits<T>::singular_threshold * scale;
            for (std::size_t r = col; r < n; ++r)
                if (std::abs(w(r, col)) > best) {
                    best = std::abs(w(r, col));
                    piv = r;
                }
        }
        if (piv == n) throw Singular("matrix of shape " + a.shape() + " is singular (column " + std::to_string(col) + ")");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(piv, j), w(col, j));
            for (std::size_t j = 0; j < nb; ++j) std::swap(x(piv, j), x(col, j));
        }
        const T inv = T(1) / w(col, col);
        for (std::size_t j = col; j < n; ++j) w(col, j) *= inv;
        for (std::size_t j = 0; j < nb; ++j) x(col, j) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const T f = w(r, col);
            if (ScalarTraits<T>::is_zero(f)) continue;
            for (std::size_t j = col; j < n; ++j)
                if (!ScalarTraits<T>::is_zero(w(col, j))) w(r, j) -= f * w(col, j);
            for (std::size_t j = 0; j < nb; ++j)
                if (!ScalarTraits<T>::is_zero(x(col, j))) x(r, j) -= f * x(col, j);
        }
    }
    return x;
}

/// Solves X A = B.
template <Scalar T>
Matrix<T> solve_left(const Matrix<T>& a, const Matrix<T>& b) {
    return solve(a.transpose(), b.transpose()).transpose();
}

template <Scalar T>
Matrix<T> invert(const Matrix<T>& a) {
    if (!a.square()) throw ShapeMismatch("invert: matrix " + a.shape() + " is not square");
    return solve(a, Matrix<T>::identity(a.rows()));
}

template <Scalar T>
BlockMatrix<T> invert(const BlockMatrix<T>& a) {
    if (!a.square()) throw ShapeMismatch("invert: " + a.shape() + " is not square");
    return BlockMatrix<T>(invert(a.flat()), a.order());
}

template <Scalar T>
BlockMatrix<T> transpose(const BlockMatrix<T>& a) {
    return a.transpose();
}

/// v22 - v21 v11^{-1} v12 (the quasideterminant |V|_22). Works for single
/// blocks and for block matrices alike since both are plain matrices here.
template <Scalar T>
Matrix<T> schur_complement(const Matrix<T>& v11, const Matrix<T>& v12, const Matrix<T>& v21,
                           const Matrix<T>& v22) {
    if (v12.rows() != v11.rows() || v21.cols() != v11.cols() || v22.rows() != v21.rows() ||
        v22.cols() != v12.cols())
        throw ShapeMismatch("inconsistent 2x2 partition");
    return v22 - v21 * solve(v11, v12);
}

/// Schur complement of the leading k x k block of a square block matrix.
template <Scalar T>
BlockMatrix<T> schur_complement(const BlockMatrix<T>& v, std::size_t k) {
    if (!v.square() || k > v.block_rows()) throw ShapeMismatch("schur_complement: bad split of " + v.shape());
    const std::size_t r = v.block_rows() - k;
    const auto& f = v.flat();
    const std::size_t n = v.order();
    Matrix<T> s = schur_complement(f.sub(0, 0, k * n, k * n), f.sub(0, k * n, k * n, r * n),
                                   f.sub(k * n, 0, r * n, k * n), f.sub(k * n, k * n, r * n, r * n));
    return BlockMatrix<T>(std::move(s), n);
}

/// Block Kronecker product: block (i*p + k, j*q + l) = a_{ij} * b_{kl}.
/// For order 1 this is the ordinary Kronecker product.
template <Scalar T>
BlockMatrix<T> kron(const BlockMatrix<T>& a, const BlockMatrix<T>& b) {
    if (a.order() != b.order()) throw ShapeMismatch("kron: block orders differ");
    const std::size_t p = b.block_rows();
    const std::size_t q = b.block_cols();
    BlockMatrix<T> out(a.block_rows() * p, a.block_cols() * q, a.order());
    for (std::size_t i = 0; i < a.block_rows(); ++i)
        for (std::size_t j = 0; j < a.block_cols(); ++j) {
            if (a.block_is_zero(i, j)) continue;
            const auto aij = a.block(i, j);
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t l = 0; l < q; ++l) {
                    if (b.block_is_zero(k, l)) continue;
                    out.set_block(i * p + k, j * q + l, aij * b.block(k, l));
                }
        }
    return out;
}

/// [[0, I], [I, 0]] with n x n identity blocks.
template <Scalar T>
BlockMatrix<T> exchange_j2(std::size_t order) {
    BlockMatrix<T> j(2, 2, order);
    j.set_block(0, 1, Matrix<T>::identity(order));
    j.set_block(1, 0, Matrix<T>::identity(order));
    return j;
}

/// Block-diagonal matrix from a list of blocks.
template <Scalar T>
BlockMatrix<T> block_diagonal(const std::vector<BlockEntry<T>>& blocks, std::size_t order) {
    BlockMatrix<T> d(blocks.size(), blocks.size(), order);
    for (std::size_t i = 0; i < blocks.size(); ++i) d.set_block(i, i, blocks[i]);
    return d;
}

/// Inverse of a matrix whose only nonzero blocks sit in the antidiagonal
/// pairs (2i, 2i+1), (2i+1, 2i): each pair swaps and inverts.
template <Scalar T>
BlockMatrix<T> invert_paired_antidiagonal(const BlockMatrix<T>& d) {
    if (!d.square() || d.block_rows() % 2 != 0)
        throw ShapeMismatch("paired antidiagonal inverse needs an even square matrix, got " + d.shape());
    BlockMatrix<T> out(d.block_rows(), d.block_cols(), d.order());
    for (std::size_t i = 0; i < d.block_rows(); i += 2) {
        out.set_block(i, i + 1, invert(d.block(i + 1, i)));
        out.set_block(i + 1, i, invert(d.block(i, i + 1)));
    }
    return out;
}

/// Blockwise inverse of a block-diagonal matrix.
template <Scalar T>
BlockMatrix<T> invert_block_diagonal(const BlockMatrix<T>& d) {
    if (!d.square()) throw ShapeMismatch("block-diagonal inverse of " + d.shape());
    BlockMatrix<T> out(d.block_rows(), d.block_cols(), d.order());
    for (std::size_t i = 0; i < d.block_rows(); ++i) out.set_block(i, i, invert(d.block(i, i)));
    return out;
}

} // namespace checkerboard

#endif
