#ifndef CHECKERBOARD_TEST_SUPPORT_HPP
#define CHECKERBOARD_TEST_SUPPORT_HPP

// Shared fixtures, seeded generators and independent oracles. Nothing here
// calls the factorization or polynomial code under test.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "checkerboard/gram.hpp"

namespace support {

using checkerboard::BlockMatrix;
using checkerboard::Matrix;
using Q = checkerboard::Rational;

inline Q q(long num, long den = 1) {
    Q x(num, den);
    x.canonicalize();
    return x;
}

inline Matrix<Q> s1(long num, long den = 1) { return Matrix<Q>::scalar(1, q(num, den)); }

inline std::vector<Matrix<Q>> scalar_moments(std::initializer_list<long> values) {
    std::vector<Matrix<Q>> s;
    for (long v : values) s.push_back(s1(v));
    return s;
}

/// Gaussian moments E[x^k] = 0, 1, 0, 3, 0, 15, ... read as S_k.
inline std::vector<Matrix<Q>> gaussian_moments(std::size_t count) {
    std::vector<Matrix<Q>> s;
    for (std::size_t k = 0; k < count; ++k) {
        if (k % 2 == 1) {
            s.push_back(s1(0));
            continue;
        }
        long v = 1;
        for (long f = static_cast<long>(k) - 1; f > 0; f -= 2) v *= f;
        s.push_back(s1(v));
    }
    return s;
}

/// S_k = k!, moments of the exponential weight on (0, inf).
inline std::vector<Matrix<Q>> factorial_moments(std::size_t count) {
    std::vector<Matrix<Q>> s;
    Q f = 1;
    for (std::size_t k = 0; k < count; ++k) {
        s.push_back(Matrix<Q>::scalar(1, f));
        f *= static_cast<long>(k + 1);
    }
    return s;
}

/// Small random rationals num/den with |num| <= 4, 1 <= den <= 3.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    Q scalar(bool nonzero = false) {
        std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
        long a;
        do a = num(rng_);
        while (nonzero && a == 0);
        return q(a, den(rng_));
    }

    Matrix<Q> block(std::size_t n) {
        Matrix<Q> b(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) b(r, c) = scalar();
        return b;
    }

    BlockMatrix<Q> matrix(std::size_t rows, std::size_t cols, std::size_t n) {
        BlockMatrix<Q> m(rows, cols, n);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.set_block(i, j, block(n));
        return m;
    }

    BlockMatrix<Q> checkerboard(std::size_t m, std::size_t n) {
        BlockMatrix<Q> g(m, m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = (i % 2 == 0 ? 1 : 0); j < m; j += 2) g.set_block(i, j, block(n));
        return g;
    }

    std::size_t pick(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Determinant by plain row elimination on a scalar matrix.
template <typename T>
T determinant(Matrix<T> a) {
    const std::size_t n = a.rows();
    T det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return T(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            const T f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Scalar matrix with entry (r, c) taken from block (2r + ro, 2c + co).
inline Matrix<Q> parity_minor(const BlockMatrix<Q>& g, std::size_t levels, std::size_t ro, std::size_t co) {
    const std::size_t n = g.order();
    Matrix<Q> out(levels * n, levels * n);
    for (std::size_t r = 0; r < levels; ++r)
        for (std::size_t c = 0; c < levels; ++c) out.paste(r * n, c * n, g.block(2 * r + ro, 2 * c + co));
    return out;
}

/// First level l whose leading (l+1)-block minor of the odd/even or
/// even/odd condensed matrix is singular; nullopt when all m/2 are regular.
inline std::optional<std::size_t> singular_level_oracle(const BlockMatrix<Q>& g) {
    for (std::size_t l = 0; 2 * l < g.block_rows(); ++l)
        if (determinant(parity_minor(g, l + 1, 1, 0)) == 0 || determinant(parity_minor(g, l + 1, 0, 1)) == 0) return l;
    return std::nullopt;
}

/// First block index whose leading principal block minor is singular.
inline std::optional<std::size_t> leading_singular_oracle(const BlockMatrix<Q>& a) {
    const std::size_t n = a.order();
    for (std::size_t k = 1; k <= a.block_rows(); ++k)
        if (determinant(a.flat().sub(0, 0, k * n, k * n)) == 0) return k - 1;
    return std::nullopt;
}

/// Random checkerboard Gram matrix whose pivots are all invertible,
/// selected with the determinant oracle.
inline BlockMatrix<Q> quasi_definite_checkerboard(Generator& gen, std::size_t m, std::size_t n) {
    for (;;) {
        auto g = gen.checkerboard(m, n);
        if (!singular_level_oracle(g)) return g;
    }
}

/// Like quasi_definite_checkerboard, additionally requiring that the
/// shifted square truncation has regular leading minors.
inline BlockMatrix<Q> shift_definite_checkerboard(Generator& gen, std::size_t m, std::size_t n) {
    for (;;) {
        auto g = quasi_definite_checkerboard(gen, m, n);
        auto shifted = g.sub(1, 0, m - 2, m - 2);
        if (!leading_singular_oracle(shifted)) return g;
    }
}

/// sum_{k,l} a_k m_{kl} b_l^T straight from coefficient lists.
inline Matrix<Q> pairing_oracle(const std::vector<Matrix<Q>>& a, const std::vector<Matrix<Q>>& b,
                                const BlockMatrix<Q>& g) {
    const std::size_t n = g.order();
    Matrix<Q> acc(n, n);
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t l = 0; l < b.size(); ++l) acc += a[k] * g.block(k, l) * b[l].transpose();
    return acc;
}

/// Monic Hermite He_j coefficients via He_{j+1} = t He_j - j He_{j-1}.
inline std::vector<std::vector<long>> hermite(std::size_t count) {
    std::vector<std::vector<long>> h{{1}, {0, 1}};
    while (h.size() < count) {
        const std::size_t j = h.size() - 1;
        std::vector<long> next(j + 2, 0);
        for (std::size_t k = 0; k <= j; ++k) next[k + 1] += h[j][k];
        for (std::size_t k = 0; k + 1 <= j; ++k) next[k] -= static_cast<long>(j) * h[j - 1][k];
        h.push_back(next);
    }
    h.resize(count);
    return h;
}

} // namespace support

#endif
