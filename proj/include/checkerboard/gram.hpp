#ifndef CHECKERBOARD_GRAM_HPP
#define CHECKERBOARD_GRAM_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "checkerboard/linalg.hpp"

namespace checkerboard {

/// Interleaved moment sequence h_0, h_1, ... of n x n blocks.
template <Scalar T>
struct MomentSequence {
    std::size_t order = 1;
    std::vector<BlockEntry<T>> h;
    bool hankel = true;
};

/// h_{2k} = 0, h_{2k+1} = S_k.
template <Scalar T>
MomentSequence<T> unwrap_moments(const std::vector<BlockEntry<T>>& condensed, std::size_t order) {
    MomentSequence<T> seq;
    seq.order = order;
    seq.h.reserve(2 * condensed.size());
    for (const auto& s : condensed) {
        if (s.rows() != order || s.cols() != order)
            throw ShapeMismatch("moment of shape " + s.shape() + " for block order " + std::to_string(order));
        seq.h.push_back(Matrix<T>(order, order));
        seq.h.push_back(s);
    }
    return seq;
}

/// Truncated Gram matrix whose even-order entries (i + j even) vanish.
/// Invariants are checked at construction; instances are immutable.
template <Scalar T>
class CheckerboardGram {
public:
    /// Validates m even, m >= 2, square, and the zero pattern.
    explicit CheckerboardGram(BlockMatrix<T> entries, bool hankel = false)
        : entries_(std::move(entries)), hankel_(hankel) {
        if (!entries_.square()) throw ShapeMismatch("Gram matrix must be square, got " + entries_.shape());
        const std::size_t m = entries_.block_rows();
        if (m < 2 || m % 2 != 0) throw OddTruncation("truncation m = " + std::to_string(m) + " must be even and >= 2");
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = (i % 2 == 0 ? 0 : 1); j < m; j += 2)
                if (!entries_.block_is_zero(i, j))
                    throw PatternViolation("nonzero even-order entry m_{" + std::to_string(i) + "," +
                                           std::to_string(j) + "}");
        if (hankel_) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j + 1 < m; ++j)
                    if (i + 1 < m && !(entries_.block(i + 1, j) == entries_.block(i, j + 1)))
                        throw NotHankel("m_{" + std::to_string(i + 1) + "," + std::to_string(j) + "} != m_{" +
                                        std::to_string(i) + "," + std::to_string(j + 1) + "}");
        }
    }

    std::size_t size() const noexcept { return entries_.block_rows(); }
    std::size_t order() const noexcept { return entries_.order(); }
    bool is_hankel() const noexcept { return hankel_; }
    const BlockMatrix<T>& matrix() const noexcept { return entries_; }
    BlockEntry<T> entry(std::size_t i, std::size_t j) const { return entries_.block(i, j); }

    /// Leading k x k truncation (k even).
    CheckerboardGram truncated(std::size_t k) const { return CheckerboardGram(entries_.leading(k), hankel_); }

private:
    BlockMatrix<T> entries_;
    bool hankel_;
};

/// Builds a checkerboard Gram matrix from its odd-order entries. Every odd
/// position must be supplied; even positions are zero by construction.
template <Scalar T>
CheckerboardGram<T> build_checkerboard(const std::map<std::pair<std::size_t, std::size_t>, BlockEntry<T>>& entries,
                                       std::size_t order, std::size_t m) {
    if (m < 2 || m % 2 != 0) throw OddTruncation("truncation m = " + std::to_string(m) + " must be even and >= 2");
    BlockMatrix<T> g(m, m, order);
    for (const auto& [pos, block] : entries) {
        const auto [i, j] = pos;
        if (i >= m || j >= m)
            throw OutOfRange("entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside truncation " +
                             std::to_string(m));
        if ((i + j) % 2 == 0) {
            if (!block.is_zero())
                throw PatternViolation("nonzero entry supplied at even-order position (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
            continue;
        }
        g.set_block(i, j, block);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = (i % 2 == 0 ? 1 : 0); j < m; j += 2)
            if (!entries.contains({i, j}))
                throw MissingEntry("odd-order entry (" + std::to_string(i) + "," + std::to_string(j) + ") not supplied");
    return CheckerboardGram<T>(std::move(g));
}

/// m_{i,j} = h_{i+j}. Indices 0 .. 2m-3 must be present; the last even
/// index 2m-2 is structurally zero and may be omitted.
template <Scalar T>
CheckerboardGram<T> hankel_gram(const MomentSequence<T>& seq, std::size_t m) {
    if (m < 2 || m % 2 != 0) throw OddTruncation("truncation m = " + std::to_string(m) + " must be even and >= 2");
    for (std::size_t k = 0; k < seq.h.size(); k += 2)
        if (!seq.h[k].is_zero()) throw PatternViolation("moment h_" + std::to_string(k) + " must vanish");
    if (seq.h.size() < 2 * m - 2)
        throw InsufficientMoments("truncation " + std::to_string(m) + " needs moments h_0..h_" +
                                  std::to_string(2 * m - 3) + ", got " + std::to_string(seq.h.size()));
    BlockMatrix<T> g(m, m, seq.order);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = (i % 2 == 0 ? 1 : 0); j < m; j += 2) g.set_block(i, j, seq.h[i + j]);
    return CheckerboardGram<T>(std::move(g), true);
}

/// Condensed Hankel matrix with entry (r, c) = S_{r+c}, size k x k.
template <Scalar T>
BlockMatrix<T> condensed_hankel(const std::vector<BlockEntry<T>>& condensed, std::size_t order, std::size_t k) {
    if (k == 0) return BlockMatrix<T>(0, 0, order);
    if (condensed.size() < 2 * k - 1)
        throw InsufficientMoments("condensed size " + std::to_string(k) + " needs S_0..S_" + std::to_string(2 * k - 2));
    BlockMatrix<T> mt(k, k, order);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) mt.set_block(r, c, condensed[r + c]);
    return mt;
}

/// Lifts a condensed Hankel matrix to the checkerboard Gram matrix Mtilde (x) J_2.
template <Scalar T>
CheckerboardGram<T> kron_lift(const BlockMatrix<T>& mtilde) {
    if (!mtilde.square()) throw ShapeMismatch("condensed matrix must be square, got " + mtilde.shape());
    const std::size_t k = mtilde.block_rows();
    for (std::size_t r = 0; r + 1 < k; ++r)
        for (std::size_t c = 1; c < k; ++c)
            if (!(mtilde.block(r + 1, c - 1) == mtilde.block(r, c)))
                throw NotHankel("condensed entry (" + std::to_string(r + 1) + "," + std::to_string(c - 1) +
                                ") differs from (" + std::to_string(r) + "," + std::to_string(c) + ")");
    return CheckerboardGram<T>(kron(mtilde, exchange_j2<T>(mtilde.order())), true);
}

/// The one-block upward shift: (m-1) x m with entry (i, j) = m_{i+1, j}.
template <Scalar T>
BlockMatrix<T> lambda_shift(const BlockMatrix<T>& g) {
    if (g.block_rows() < 2) throw OutOfRange("shift needs at least two block rows");
    return g.sub(1, 0, g.block_rows() - 1, g.block_cols());
}

template <Scalar T>
BlockMatrix<T> lambda_shift(const CheckerboardGram<T>& g) {
    return lambda_shift(g.matrix());
}

/// Largest even square truncation of the shifted matrix, (m-2) x (m-2).
template <Scalar T>
BlockMatrix<T> shifted_square(const CheckerboardGram<T>& g) {
    const std::size_t t = g.size() - 2;
    return lambda_shift(g).sub(0, 0, t, t);
}

/// j x j matrix with entry (r, c) = m_{2r, 2c+1}.
template <Scalar T>
BlockMatrix<T> condensed_eo(const CheckerboardGram<T>& g, std::size_t j) {
    if (2 * j > g.size()) throw OutOfRange("condensed_eo: 2j = " + std::to_string(2 * j) + " exceeds m");
    BlockMatrix<T> out(j, j, g.order());
    for (std::size_t r = 0; r < j; ++r)
        for (std::size_t c = 0; c < j; ++c) out.set_block(r, c, g.entry(2 * r, 2 * c + 1));
    return out;
}

/// j x j matrix with entry (r, c) = m_{2r+1, 2c}.
template <Scalar T>
BlockMatrix<T> condensed_oe(const CheckerboardGram<T>& g, std::size_t j) {
    if (2 * j > g.size()) throw OutOfRange("condensed_oe: 2j = " + std::to_string(2 * j) + " exceeds m");
    BlockMatrix<T> out(j, j, g.order());
    for (std::size_t r = 0; r < j; ++r)
        for (std::size_t c = 0; c < j; ++c) out.set_block(r, c, g.entry(2 * r + 1, 2 * c));
    return out;
}

} // namespace checkerboard

#endif
