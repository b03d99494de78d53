#ifndef CHECKERBOARD_LDU_HPP
#define CHECKERBOARD_LDU_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "checkerboard/gram.hpp"

namespace checkerboard {

/// Key of a Schur-complement table entry: superscript level j (for
/// theta^{(2j)}), row index, column index, all as Gram indices.
struct ThetaKey {
    std::size_t level;
    std::size_t row;
    std::size_t col;
    friend auto operator<=>(const ThetaKey&, const ThetaKey&) = default;
};

template <Scalar T>
using ThetaTable = std::map<ThetaKey, BlockEntry<T>>;

/// M = L1^{-1} D L2^{-T} with H = L1^{-1} D and U = L2^{-T}.
///
/// L1, L2 are unit lower triangular and only couple indices of equal parity;
/// D carries antidiagonal 2x2 blocks (d_{2i,2i+1}, d_{2i+1,2i}).
/// theta_odd holds theta^{(2j)}_{i,2k} for odd rows i; theta_even is the
/// mirrored table theta^{(2j)}_{i,2k+1} for even rows. Both are empty when
/// the factorization came from the condensed Hankel route.
template <Scalar T>
struct Factorization {
    BlockMatrix<T> L1;
    BlockMatrix<T> D;
    BlockMatrix<T> L2;
    BlockMatrix<T> H;
    BlockMatrix<T> U;
    ThetaTable<T> theta_odd;
    ThetaTable<T> theta_even;

    std::size_t size() const { return D.block_rows(); }
    std::size_t order() const { return D.order(); }
    /// d_{2j,2j+1}
    BlockEntry<T> d_even(std::size_t j) const { return D.block(2 * j, 2 * j + 1); }
    /// d_{2j+1,2j}
    BlockEntry<T> d_odd(std::size_t j) const { return D.block(2 * j + 1, 2 * j); }
};

/// A = L1^{-1} D L2^{-T} with block-diagonal D.
template <Scalar T>
struct DiagonalFactorization {
    BlockMatrix<T> L1;
    BlockMatrix<T> D;
    BlockMatrix<T> L2;

    std::size_t size() const { return D.block_rows(); }
    std::size_t order() const { return D.order(); }
};

/// Result of running the checkerboard recursion as far as it goes.
/// `factorization` covers levels [0, levels), i.e. the leading 2*levels
/// block rows; singular_level is set when a pivot pair failed.
template <Scalar T>
struct CheckerboardProgress {
    Factorization<T> factorization;
    std::size_t levels = 0;
    std::optional<std::size_t> singular_level;
};

namespace detail {

template <Scalar T>
std::optional<BlockEntry<T>> try_invert(const BlockEntry<T>& b) {
    try {
        return invert(b);
    } catch (const Singular&) {
        return std::nullopt;
    }
}

// Unit lower-triangular L from H = L D where d_{2l+1,2l} = h_{2l+1,2l} and
// d_{2l,2l+1} = h_{2l,2l+1}.
template <Scalar T>
BlockMatrix<T> lower_from_h(const BlockMatrix<T>& h, const std::vector<BlockEntry<T>>& inv_d_odd,
                            const std::vector<BlockEntry<T>>& inv_d_even, std::size_t s) {
    const std::size_t n = h.order();
    BlockMatrix<T> l = BlockMatrix<T>::identity(s, n);
    for (std::size_t lv = 0; 2 * lv < s; ++lv) {
        for (std::size_t i = 2 * lv + 3; i < s; i += 2)
            l.set_block(i, 2 * lv + 1, h.block(i, 2 * lv) * inv_d_odd[lv]);
        for (std::size_t i = 2 * lv + 2; i < s; i += 2)
            l.set_block(i, 2 * lv, h.block(i, 2 * lv + 1) * inv_d_even[lv]);
    }
    return l;
}

} // namespace detail

/// Runs the theta recursion on both parity lines.
///
/// Odd rows / even columns:
///   theta^{(0)}_{i,2k}  = m_{i,2k}
///   theta^{(2j)}_{i,2k} = theta^{(2j-2)}_{i,2k} - h_{i,2j-2} h_{2j-1,2j-2}^{-1} theta^{(2j-2)}_{2j-1,2k}
///   h_{i,2l} = theta^{(2l)}_{i,2l},  u_{2l,2k} = h_{2l+1,2l}^{-1} theta^{(2l)}_{2l+1,2k}
/// Even rows / odd columns run the same recursion on m_{i,2k+1} with
/// pivots h_{2l,2l+1}. Level l fails when either pivot is singular.
template <Scalar T>
CheckerboardProgress<T> factorize_checkerboard_partial(const CheckerboardGram<T>& g) {
    const std::size_t m = g.size();
    const std::size_t n = g.order();
    const std::size_t half = m / 2;

    // odd[r][c] tracks theta_{2r+1,2c}; even[r][c] tracks theta_{2r,2c+1}
    std::vector<std::vector<BlockEntry<T>>> odd(half, std::vector<BlockEntry<T>>(half));
    std::vector<std::vector<BlockEntry<T>>> even(half, std::vector<BlockEntry<T>>(half));
    for (std::size_t r = 0; r < half; ++r)
        for (std::size_t c = 0; c < half; ++c) {
            odd[r][c] = g.entry(2 * r + 1, 2 * c);
            even[r][c] = g.entry(2 * r, 2 * c + 1);
        }

    CheckerboardProgress<T> out;
    auto& f = out.factorization;
    BlockMatrix<T> h(m, m, n);
    BlockMatrix<T> u = BlockMatrix<T>::identity(m, n);
    std::vector<BlockEntry<T>> inv_d_odd, inv_d_even;

    std::size_t level = 0;
    for (; level < half; ++level) {
        for (std::size_t r = level; r < half; ++r)
            for (std::size_t c = level; c < half; ++c) {
                f.theta_odd.emplace(ThetaKey{level, 2 * r + 1, 2 * c}, odd[r][c]);
                f.theta_even.emplace(ThetaKey{level, 2 * r, 2 * c + 1}, even[r][c]);
            }

        auto inv_odd = detail::try_invert(odd[level][level]);
        auto inv_even = detail::try_invert(even[level][level]);
        if (!inv_odd || !inv_even) {
            out.singular_level = level;
            break;
        }
        inv_d_odd.push_back(*inv_odd);
        inv_d_even.push_back(*inv_even);

        for (std::size_t r = level; r < half; ++r) {
            h.set_block(2 * r + 1, 2 * level, odd[r][level]);
            h.set_block(2 * r, 2 * level + 1, even[r][level]);
        }
        for (std::size_t c = level + 1; c < half; ++c) {
            u.set_block(2 * level, 2 * c, *inv_odd * odd[level][c]);
            u.set_block(2 * level + 1, 2 * c + 1, *inv_even * even[level][c]);
        }
        for (std::size_t r = level + 1; r < half; ++r) {
            const auto left_odd = odd[r][level] * *inv_odd;
            const auto left_even = even[r][level] * *inv_even;
            for (std::size_t c = level + 1; c < half; ++c) {
                odd[r][c] -= left_odd * odd[level][c];
                even[r][c] -= left_even * even[level][c];
            }
        }
    }

    out.levels = level;
    const std::size_t s = 2 * level;
    f.H = h.leading(s);
    f.U = u.leading(s);
    f.D = BlockMatrix<T>(s, s, n);
    for (std::size_t lv = 0; lv < level; ++lv) {
        f.D.set_block(2 * lv + 1, 2 * lv, f.H.block(2 * lv + 1, 2 * lv));
        f.D.set_block(2 * lv, 2 * lv + 1, f.H.block(2 * lv, 2 * lv + 1));
    }
    f.L1 = invert(detail::lower_from_h(f.H, inv_d_odd, inv_d_even, s));
    f.L2 = invert(f.U).transpose();
    return out;
}

/// Full factorization; throws SingularPivot(l) at the first failing level.
/// Use factorize_checkerboard_partial for the levels below l.
template <Scalar T>
Factorization<T> factorize_checkerboard(const CheckerboardGram<T>& g) {
    auto progress = factorize_checkerboard_partial(g);
    if (progress.singular_level) throw SingularPivot(*progress.singular_level);
    return std::move(progress.factorization);
}

/// Sequential block Schur-complement elimination A = L1^{-1} D L2^{-T}
/// with block-diagonal D. Throws SingularPivot(j) for the first singular
/// leading pivot.
template <Scalar T>
DiagonalFactorization<T> generic_ldu(const BlockMatrix<T>& a) {
    if (!a.square()) throw ShapeMismatch("generic_ldu: " + a.shape() + " is not square");
    const std::size_t N = a.block_rows();
    const std::size_t n = a.order();
    std::vector<std::vector<BlockEntry<T>>> s(N, std::vector<BlockEntry<T>>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) s[i][j] = a.block(i, j);

    BlockMatrix<T> lower = BlockMatrix<T>::identity(N, n);
    BlockMatrix<T> upper = BlockMatrix<T>::identity(N, n);
    BlockMatrix<T> d(N, N, n);
    for (std::size_t j = 0; j < N; ++j) {
        auto inv = detail::try_invert(s[j][j]);
        if (!inv) throw SingularPivot(j);
        d.set_block(j, j, s[j][j]);
        for (std::size_t i = j + 1; i < N; ++i) lower.set_block(i, j, s[i][j] * *inv);
        for (std::size_t k = j + 1; k < N; ++k) upper.set_block(j, k, *inv * s[j][k]);
        for (std::size_t i = j + 1; i < N; ++i) {
            if (s[i][j].is_zero()) continue;
            const auto left = s[i][j] * *inv;
            for (std::size_t k = j + 1; k < N; ++k) s[i][k] -= left * s[j][k];
        }
    }
    return {invert(lower), std::move(d), invert(upper).transpose()};
}

/// L1^{-1} D L2^{-T}.
template <Scalar T, typename F>
BlockMatrix<T> reconstruct(const F& f) {
    return invert(f.L1) * f.D * invert(f.L2).transpose();
}

template <Scalar T>
BlockMatrix<T> reconstruct(const Factorization<T>& f) {
    return reconstruct<T, Factorization<T>>(f);
}

template <Scalar T>
BlockMatrix<T> reconstruct(const DiagonalFactorization<T>& f) {
    return reconstruct<T, DiagonalFactorization<T>>(f);
}

/// Factorizes the condensed Hankel matrix of S and lifts the result:
/// L1 = Lt1 (x) I_2, L2 = Lt2 (x) I_2, D = Dt (x) J_2. `size` is the
/// condensed size k (Gram truncation 2k); 0 means the largest S allows.
template <Scalar T>
Factorization<T> hankel_factorize(const std::vector<BlockEntry<T>>& condensed, std::size_t order,
                                  std::size_t size = 0) {
    const std::size_t k = size ? size : (condensed.size() + 1) / 2;
    const auto mt = condensed_hankel(condensed, order, k);
    const auto small = generic_ldu(mt);
    const auto i2 = BlockMatrix<T>::identity(2, order);
    Factorization<T> f;
    f.L1 = kron(small.L1, i2);
    f.L2 = kron(small.L2, i2);
    f.D = kron(small.D, exchange_j2<T>(order));
    f.H = invert(f.L1) * f.D;
    f.U = invert(f.L2).transpose();
    return f;
}

/// Positions (i, j) where a unit lower-triangular, parity-coupled matrix
/// deviates from its pattern: identity diagonal, zero above, zero where
/// i and j have different parity.
template <Scalar T>
std::vector<std::pair<std::size_t, std::size_t>> parity_lower_violations(const BlockMatrix<T>& l, double tol,
                                                                         bool require_parity = true) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    const std::size_t N = l.block_rows();
    const auto eye = Matrix<T>::identity(l.order());
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < l.block_cols(); ++j) {
            bool ok;
            if (i == j)
                ok = agrees(l.block(i, j), eye, tol);
            else if (j > i || (require_parity && (i + j) % 2 == 1))
                ok = negligible(l.block(i, j), tol);
            else
                ok = true;
            if (!ok) bad.emplace_back(i, j);
        }
    return bad;
}

/// Positions where D has a nonzero outside the antidiagonal 2x2 pairs.
template <Scalar T>
std::vector<std::pair<std::size_t, std::size_t>> antidiagonal_pair_violations(const BlockMatrix<T>& d, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t i = 0; i < d.block_rows(); ++i)
        for (std::size_t j = 0; j < d.block_cols(); ++j) {
            const bool allowed = (i % 2 == 0) ? j == i + 1 : j + 1 == i;
            if (!allowed && !negligible(d.block(i, j), tol)) bad.emplace_back(i, j);
        }
    return bad;
}

/// Positions where D has a nonzero off the block diagonal.
template <Scalar T>
std::vector<std::pair<std::size_t, std::size_t>> diagonal_violations(const BlockMatrix<T>& d, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t i = 0; i < d.block_rows(); ++i)
        for (std::size_t j = 0; j < d.block_cols(); ++j)
            if (i != j && !negligible(d.block(i, j), tol)) bad.emplace_back(i, j);
    return bad;
}

} // namespace checkerboard

#endif
