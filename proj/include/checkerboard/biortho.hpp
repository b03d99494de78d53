#ifndef CHECKERBOARD_BIORTHO_HPP
#define CHECKERBOARD_BIORTHO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "checkerboard/checks.hpp"
#include "checkerboard/ldu.hpp"

namespace checkerboard {

/// p_k and q_k read off the rows of L1 and L2, together with the middle
/// factor D of the factorization that produced them.
template <Scalar T>
struct PolynomialFamily {
    std::vector<MatrixPolynomial<T>> p;
    std::vector<MatrixPolynomial<T>> q;
    BlockMatrix<T> D;

    std::size_t size() const { return p.size(); }
    std::size_t order() const { return D.order(); }
    BlockEntry<T> d(std::size_t i, std::size_t j) const { return D.block(i, j); }
};

enum class Side { P, Q };

namespace detail {

template <Scalar T>
MatrixPolynomial<T> row_polynomial(const BlockMatrix<T>& l, std::size_t k, Parity parity) {
    std::vector<BlockEntry<T>> c;
    c.reserve(k + 1);
    for (std::size_t j = 0; j <= k; ++j) c.push_back(l.block(k, j));
    if (!(c.back() == Matrix<T>::identity(l.order())) && ScalarTraits<T>::exact)
        throw PatternViolation("row " + std::to_string(k) + " does not end in an identity block");
    return MatrixPolynomial<T>(std::move(c), parity);
}

inline Parity parity_of(std::size_t k) { return k % 2 == 0 ? Parity::even : Parity::odd; }

} // namespace detail

/// p_k has coefficients (L1)_{k,0..k}, q_k likewise from L2. Parities are
/// tagged (and therefore validated) from the index.
template <Scalar T>
PolynomialFamily<T> polys_from_factorization(const Factorization<T>& f) {
    PolynomialFamily<T> fam;
    fam.D = f.D;
    for (std::size_t k = 0; k < f.size(); ++k) {
        fam.p.push_back(detail::row_polynomial(f.L1, k, detail::parity_of(k)));
        fam.q.push_back(detail::row_polynomial(f.L2, k, detail::parity_of(k)));
    }
    return fam;
}

/// Family of a block-diagonal factorization (used for the shifted matrix); untagged.
template <Scalar T>
PolynomialFamily<T> polys_from_factorization(const DiagonalFactorization<T>& f) {
    PolynomialFamily<T> fam;
    fam.D = f.D;
    for (std::size_t k = 0; k < f.size(); ++k) {
        fam.p.push_back(detail::row_polynomial(f.L1, k, Parity::none));
        fam.q.push_back(detail::row_polynomial(f.L2, k, Parity::none));
    }
    return fam;
}

/// sum_k sum_l a_k m_{k,l} b_l^T. The right coefficients enter transposed so
/// that <P, C Q> = <P, Q> C^T holds for block coefficients.
template <Scalar T>
BlockEntry<T> pairing(const MatrixPolynomial<T>& a, const MatrixPolynomial<T>& b, const CheckerboardGram<T>& g) {
    if (a.degree() + 1 > g.size() || b.degree() + 1 > g.size())
        throw OutOfRange("pairing of degrees " + std::to_string(a.degree()) + ", " + std::to_string(b.degree()) +
                         " needs a Gram truncation above " + std::to_string(g.size()));
    const std::size_t n = g.order();
    BlockEntry<T> acc(n, n);
    for (std::size_t k = 0; k <= a.degree(); ++k) {
        if (a.coeff(k).is_zero()) continue;
        for (std::size_t l = 0; l <= b.degree(); ++l) {
            if ((k + l) % 2 == 0 || b.coeff(l).is_zero()) continue;
            acc += a.coeff(k) * g.entry(k, l) * b.coeff(l).transpose();
        }
    }
    return acc;
}

/// Checks <p_i, q_k> against the shifted biorthogonality pattern for every
/// pair within the truncation: <p_{2j}, q_k> = d_{2j,2j+1} [k = 2j+1],
/// <p_{2j+1}, q_k> = d_{2j+1,2j} [k = 2j]; the q-side statement
/// <p_k, q_{2j}> = d_{2j+1,2j} [k = 2j+1], <p_k, q_{2j+1}> = d_{2j,2j+1} [k = 2j]
/// is asserted on the same grid.
template <Scalar T>
Report verify_biorthogonality(const PolynomialFamily<T>& fam, const CheckerboardGram<T>& g, double tol) {
    Report report;
    const std::size_t N = std::min(fam.size(), g.size());
    const std::size_t n = g.order();
    const Matrix<T> zero(n, n);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const auto value = pairing(fam.p[i], fam.q[k], g);
            Matrix<T> from_p = zero, from_q = zero;
            if (i % 2 == 0 && k == i + 1) from_p = fam.d(i, i + 1);
            if (i % 2 == 1 && k + 1 == i) from_p = fam.d(i, i - 1);
            if (k % 2 == 0 && i == k + 1) from_q = fam.d(k + 1, k);
            if (k % 2 == 1 && i + 1 == k) from_q = fam.d(k - 1, k);
            const bool ok = agrees(value, from_p, tol) && agrees(value, from_q, tol);
            report.add("biorthogonality", {static_cast<long long>(i), static_cast<long long>(k)}, ok,
                       std::max(residual(value, from_p), residual(value, from_q)));
        }
    return report;
}

/// <p_{2j}, z^k> = 0 for k <= 2j and d_{2j,2j+1} at k = 2j+1;
/// <p_{2j+1}, z^k> = 0 for k < 2j and d_{2j+1,2j} at k = 2j.
template <Scalar T>
Report verify_orthogonality_relations(const PolynomialFamily<T>& fam, const CheckerboardGram<T>& g, double tol) {
    Report report;
    const std::size_t N = std::min(fam.size(), g.size());
    const std::size_t n = g.order();
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t last = (i % 2 == 0) ? std::min(i + 1, g.size() - 1) : i - 1;
        for (std::size_t k = 0; k <= last; ++k) {
            Matrix<T> want(n, n);
            if (i % 2 == 0 && k == i + 1) want = fam.d(i, i + 1);
            if (i % 2 == 1 && k + 1 == i) want = fam.d(i, i - 1);
            const auto value = pairing(fam.p[i], MatrixPolynomial<T>::monomial(k, n), g);
            check_matrix(report, "orthogonality", {static_cast<long long>(i), static_cast<long long>(k)}, value,
                         want, tol);
        }
    }
    return report;
}

/// Monicity, exact degree and index parity of every p_k and q_k.
template <Scalar T>
Report verify_family_structure(const PolynomialFamily<T>& fam, double tol, bool check_parity = true) {
    Report report;
    const auto eye = Matrix<T>::identity(fam.order());
    auto check = [&](const char* which, std::size_t k, const MatrixPolynomial<T>& poly) {
        const bool degree_ok = poly.degree() == k;
        report.add(std::string("family.monic.") + which, {static_cast<long long>(k)},
                   degree_ok && agrees(poly.coeff(k), eye, tol), degree_ok ? residual(poly.coeff(k), eye) : 0.0,
                   degree_ok ? std::string{} : "degree " + std::to_string(poly.degree()));
        if (!check_parity) return;
        std::vector<std::pair<std::size_t, std::size_t>> bad;
        for (std::size_t c = (k % 2 == 0) ? 1 : 0; c <= poly.degree(); c += 2)
            if (!negligible(poly.coeff(c), tol)) bad.emplace_back(k, c);
        check_positions(report, std::string("family.parity.") + which, {static_cast<long long>(k)}, bad);
    };
    for (std::size_t k = 0; k < fam.size(); ++k) {
        check("p", k, fam.p[k]);
        check("q", k, fam.q[k]);
    }
    return report;
}

/// Recomputes p_k or q_k from the linear system behind its quasideterminant
/// representation, independently of the factorization:
///   p_{2j}:   (a_0..a_{j-1}) M_eo^{[2j]} = -(m_{2j,1}, ..., m_{2j,2j-1})
///   p_{2j+1}: (b_0..b_{j-1}) M_oe^{[2j]} = -(m_{2j+1,0}, ..., m_{2j+1,2j-2})
///   q_{2j}:   M_oe^{[2j]} Y = -(m_{1,2j}, ..., m_{2j-1,2j})^T
///   q_{2j+1}: M_eo^{[2j]} Y = -(m_{0,2j+1}, ..., m_{2j-2,2j+1})^T
/// For q the unknowns sit on the right, so the coefficients are Y_c^T.
template <Scalar T>
MatrixPolynomial<T> quasidet_poly(const CheckerboardGram<T>& g, std::size_t k, Side side) {
    if (k >= g.size()) throw OutOfRange("index " + std::to_string(k) + " outside truncation " + std::to_string(g.size()));
    const std::size_t n = g.order();
    const std::size_t j = k / 2;
    const bool odd = k % 2 == 1;
    std::vector<BlockEntry<T>> coeffs(k + 1, Matrix<T>(n, n));
    coeffs[k] = Matrix<T>::identity(n);
    if (j > 0) {
        const bool use_eo = (side == Side::P) != odd;
        const auto system = use_eo ? condensed_eo(g, j) : condensed_oe(g, j);
        if (side == Side::P) {
            BlockMatrix<T> rhs(1, j, n);
            for (std::size_t c = 0; c < j; ++c) rhs.set_block(0, c, -g.entry(k, 2 * c + (odd ? 0 : 1)));
            const BlockMatrix<T> x(solve_left(system.flat(), rhs.flat()), n);
            for (std::size_t c = 0; c < j; ++c) coeffs[2 * c + (odd ? 1 : 0)] = x.block(0, c);
        } else {
            BlockMatrix<T> rhs(j, 1, n);
            for (std::size_t r = 0; r < j; ++r) rhs.set_block(r, 0, -g.entry(2 * r + (odd ? 0 : 1), k));
            const BlockMatrix<T> y(solve(system.flat(), rhs.flat()), n);
            for (std::size_t c = 0; c < j; ++c) coeffs[2 * c + (odd ? 1 : 0)] = y.block(c, 0).transpose();
        }
    }
    return MatrixPolynomial<T>(std::move(coeffs), detail::parity_of(k));
}

/// Classical monic orthogonal polynomials of a condensed moment sequence S,
/// P_j(t) = t^j + sum_c a_c t^c with sum_c a_c S_{c+r} = -S_{j+r}, r < j.
/// Solved directly on the Hankel system; serves as an oracle.
template <Scalar T>
std::vector<MatrixPolynomial<T>> classical_monic_orthogonal(const std::vector<BlockEntry<T>>& s, std::size_t order,
                                                           std::size_t count) {
    std::vector<MatrixPolynomial<T>> out;
    for (std::size_t j = 0; j < count; ++j) {
        if (j > 0 && s.size() < 2 * j)
            throw InsufficientMoments("P_" + std::to_string(j) + " needs S_0..S_" + std::to_string(2 * j - 1));
        std::vector<BlockEntry<T>> coeffs(j + 1, Matrix<T>(order, order));
        coeffs[j] = Matrix<T>::identity(order);
        if (j > 0) {
            const auto h = condensed_hankel(s, order, j);
            BlockMatrix<T> rhs(1, j, order);
            for (std::size_t r = 0; r < j; ++r) rhs.set_block(0, r, -s[j + r]);
            const BlockMatrix<T> x(solve_left(h.flat(), rhs.flat()), order);
            for (std::size_t c = 0; c < j; ++c) coeffs[c] = x.block(0, c);
        }
        out.emplace_back(std::move(coeffs));
    }
    return out;
}

/// Identities forced by Hankel symmetry: p_{2j+1} = z p_{2j}, q = p,
/// d_{2j,2j+1} = d_{2j+1,2j} = dt_jj (condensed LDU), self-biorthogonality,
/// and p_{2j}(z) = P_j(z^2) for the classical polynomials of S.
/// q = p and the symmetric d-pairs presuppose symmetric moment blocks.
template <Scalar T>
Report verify_hankel_specialization(const PolynomialFamily<T>& fam, const std::vector<BlockEntry<T>>& s,
                                    double tol) {
    Report report;
    const std::size_t n = fam.order();
    const std::size_t half = fam.size() / 2;
    for (std::size_t j = 0; 2 * j + 1 < fam.size(); ++j)
        check_polynomial(report, "hankel.odd_is_z_times_even", {static_cast<long long>(j)}, fam.p[2 * j + 1],
                         fam.p[2 * j].times_z(), tol);
    for (std::size_t k = 0; k < fam.size(); ++k)
        check_polynomial(report, "hankel.q_equals_p", {static_cast<long long>(k)}, fam.q[k], fam.p[k], tol);

    try {
        const auto condensed = generic_ldu(condensed_hankel(s, n, half));
        for (std::size_t j = 0; j < half; ++j) {
            const auto dt = condensed.D.block(j, j);
            const auto a = fam.d(2 * j, 2 * j + 1);
            const auto b = fam.d(2 * j + 1, 2 * j);
            report.add("hankel.d_pairs", {static_cast<long long>(j)}, agrees(a, dt, tol) && agrees(b, dt, tol),
                       std::max(residual(a, dt), residual(b, dt)));
        }
    } catch (const Error& e) {
        report.add("hankel.d_pairs", {}, false, 0.0, std::string(e.kind()) + ": " + e.what());
    }

    try {
        const auto classical = classical_monic_orthogonal(s, n, half);
        for (std::size_t j = 0; j < half; ++j)
            check_polynomial(report, "hankel.classical_orthogonal", {static_cast<long long>(j)}, fam.p[2 * j],
                             substitute_square(classical[j]), tol);
    } catch (const Error& e) {
        report.add("hankel.classical_orthogonal", {}, false, 0.0, std::string(e.kind()) + ": " + e.what());
    }

    try {
        const auto g = hankel_gram(unwrap_moments(s, n), 2 * half);
        const auto condensed = generic_ldu(condensed_hankel(s, n, half));
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t k = 0; k < fam.size(); ++k) {
                Matrix<T> want(n, n);
                if (i % 2 == 0 && k == i + 1) want = condensed.D.block(i / 2, i / 2);
                if (i % 2 == 1 && k + 1 == i) want = condensed.D.block(k / 2, k / 2);
                check_matrix(report, "hankel.self_biorthogonality",
                             {static_cast<long long>(i), static_cast<long long>(k)}, pairing(fam.p[i], fam.p[k], g),
                             want, tol);
            }
    } catch (const Error& e) {
        report.add("hankel.self_biorthogonality", {}, false, 0.0, std::string(e.kind()) + ": " + e.what());
    }
    return report;
}

} // namespace checkerboard

#endif
