#ifndef CHECKERBOARD_CHRISTOFFEL_HPP
#define CHECKERBOARD_CHRISTOFFEL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "checkerboard/biortho.hpp"

namespace checkerboard {

/// The shifted matrix Mhat = Lambda M at its working truncation m - 2 and
/// its block-diagonal factorization.
template <Scalar T>
struct ChristoffelTransform {
    BlockMatrix<T> shifted;
    DiagonalFactorization<T> factorization;

    std::size_t size() const { return shifted.block_rows(); }
    BlockEntry<T> d(std::size_t k) const { return factorization.D.block(k, k); }
};

/// Throws SingularPivot when a leading pivot of the shifted matrix fails.
template <Scalar T>
ChristoffelTransform<T> christoffel_transform(const CheckerboardGram<T>& g) {
    if (g.size() < 4) throw OutOfRange("the shifted matrix needs m >= 4");
    auto shifted = shifted_square(g);
    auto f = generic_ldu(shifted);
    return {std::move(shifted), std::move(f)};
}

/// Parity sparsity of Lhat1, Lhat2 and diagonality of Dhat.
template <Scalar T>
Report verify_transform_structure(const ChristoffelTransform<T>& ct, double tol) {
    Report report;
    check_positions(report, "christoffel.L1_pattern", {}, parity_lower_violations(ct.factorization.L1, tol));
    check_positions(report, "christoffel.L2_pattern", {}, parity_lower_violations(ct.factorization.L2, tol));
    check_positions(report, "christoffel.D_diagonal", {}, diagonal_violations(ct.factorization.D, tol));
    check_block_matrix(report, "christoffel.reconstruction", {}, reconstruct(ct.factorization), ct.shifted, tol);
    return report;
}

template <Scalar T>
struct Connector {
    BlockMatrix<T> sigma;
    /// sigma_{2j+1,2j}
    std::vector<BlockEntry<T>> subdiag;

    std::size_t size() const { return sigma.block_rows(); }
};

namespace detail {

template <Scalar T>
Connector<T> with_subdiag(BlockMatrix<T> sigma) {
    Connector<T> c{std::move(sigma), {}};
    for (std::size_t j = 0; 2 * j + 1 < c.sigma.block_rows(); ++j) c.subdiag.push_back(c.sigma.block(2 * j + 1, 2 * j));
    return c;
}

} // namespace detail

/// sigma = Lhat1 Lambda L1^{-1} on the leading t x t blocks, t = size of the
/// shifted factorization. Needs L1 through index t.
template <Scalar T>
Connector<T> connector_from_L(const Factorization<T>& f, const ChristoffelTransform<T>& ct) {
    const std::size_t t = ct.size();
    if (f.size() < t + 1)
        throw TruncationMismatch("connector from L needs the original factorization through index " +
                                 std::to_string(t) + ", have size " + std::to_string(f.size()));
    const std::size_t n = f.order();
    BlockMatrix<T> shift(t, t + 1, n);
    for (std::size_t i = 0; i < t; ++i) shift.set_block(i, i + 1, Matrix<T>::identity(n));
    const auto l1_inverse = invert(f.L1.leading(t + 1));
    const auto full = ct.factorization.L1 * shift * l1_inverse;
    return detail::with_subdiag(full.sub(0, 0, t, t));
}

/// sigma = Dhat Lhat2^{-T} L2^T D^{-1} on the leading t x t blocks.
template <Scalar T>
Connector<T> connector_from_D(const Factorization<T>& f, const ChristoffelTransform<T>& ct) {
    const std::size_t t = ct.size();
    if (f.size() < t)
        throw TruncationMismatch("connector from D needs the original factorization of size " + std::to_string(t) +
                                 ", have " + std::to_string(f.size()));
    const auto& hat = ct.factorization;
    const auto sigma = hat.D * invert(hat.L2).transpose() * f.L2.leading(t).transpose() *
                       invert_paired_antidiagonal(f.D.leading(t));
    return detail::with_subdiag(sigma);
}

/// Identity at (i, i+1), sigma_{2j+1,2j} = dhat_{2j+1,2j+1} d_{2j,2j+1}^{-1},
/// zero everywhere else.
template <Scalar T>
Report verify_connector_sparsity(const Connector<T>& c, const Factorization<T>& f, const ChristoffelTransform<T>& ct,
                                 double tol) {
    Report report;
    const std::size_t t = c.size();
    const auto eye = Matrix<T>::identity(c.sigma.order());
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t k = 0; k < t; ++k) {
            if (k == i + 1) {
                if (!agrees(c.sigma.block(i, k), eye, tol)) bad.emplace_back(i, k);
            } else if (!(i % 2 == 1 && k + 1 == i) && !negligible(c.sigma.block(i, k), tol)) {
                bad.emplace_back(i, k);
            }
        }
    check_positions(report, "connector.sparsity", {}, bad);
    for (std::size_t j = 0; j < c.subdiag.size(); ++j)
        check_matrix(report, "connector.subdiag", {static_cast<long long>(j)}, c.subdiag[j],
                     ct.d(2 * j + 1) * invert(f.d_even(j)), tol);
    return report;
}

/// phat_k from the original family alone:
///   phat_{2j}   = p_{2j+1} / z
///   phat_{2j+1} = (p_{2j+2} - p_{2j+2}(0) p_{2j}(0)^{-1} p_{2j}) / z
template <Scalar T>
MatrixPolynomial<T> hat_poly_via_relation(const PolynomialFamily<T>& fam, std::size_t k, double tol = 0.0) {
    if (k + 1 >= fam.size())
        throw OutOfRange("phat_" + std::to_string(k) + " needs p_" + std::to_string(k + 1) + ", family has " +
                         std::to_string(fam.size()));
    if (k % 2 == 0) return fam.p[k + 1].divide_by_z(tol);
    const auto& low = fam.p[k - 1];
    const auto& high = fam.p[k + 1];
    BlockEntry<T> inv;
    try {
        inv = invert(low.at_zero());
    } catch (const Singular&) {
        throw SingularConstantTerm("p_" + std::to_string(k - 1) + "(0) is not invertible");
    }
    return (high - high.at_zero() * inv * low).divide_by_z(tol);
}

/// phat_0 .. phat_{count-1}; count 0 means fam.size() - 2.
template <Scalar T>
std::vector<MatrixPolynomial<T>> hat_polys_via_relation(const PolynomialFamily<T>& fam, std::size_t count = 0,
                                                        double tol = 0.0) {
    if (count == 0) count = fam.size() >= 2 ? fam.size() - 2 : 0;
    std::vector<MatrixPolynomial<T>> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(hat_poly_via_relation(fam, k, tol));
    return out;
}

/// Row i of sigma P(z) = z Phat(z). The identity block at (t-1, t) lies past
/// the truncation and is applied directly.
template <Scalar T>
Report verify_connector_action(const Connector<T>& c, const PolynomialFamily<T>& fam,
                               const std::vector<MatrixPolynomial<T>>& hat_p, double tol) {
    Report report;
    const std::size_t t = std::min(c.size(), hat_p.size());
    if (fam.size() < t + 1) {
        report.add("connector.action", {}, false, 0.0, "family too short for the connector rows");
        return report;
    }
    for (std::size_t i = 0; i < t; ++i) {
        auto lhs = MatrixPolynomial<T>::zero(fam.order());
        for (std::size_t k = 0; k < c.size(); ++k)
            if (!c.sigma.block_is_zero(i, k)) lhs = lhs + c.sigma.block(i, k) * fam.p[k];
        if (i + 1 == c.size()) lhs = lhs + fam.p[i + 1];
        check_polynomial(report, "connector.action", {static_cast<long long>(i)}, lhs, hat_p[i].times_z(), tol);
    }
    return report;
}

/// Q^T(w) D^{-1} = Qhat^T(w) Dhat^{-1} sigma, componentwise over the t
/// columns; q and qhat enter transposed.
template <Scalar T>
Report verify_q_relation(const Connector<T>& c, const PolynomialFamily<T>& fam, const PolynomialFamily<T>& hat_fam,
                         double tol) {
    Report report;
    const std::size_t t = c.size();
    const std::size_t n = fam.order();
    const auto d_inv = invert_paired_antidiagonal(fam.D.leading(t));
    const auto right = invert_block_diagonal(hat_fam.D.leading(t)) * c.sigma;
    for (std::size_t k = 0; k < t; ++k) {
        auto lhs = MatrixPolynomial<T>::zero(n);
        auto rhs = MatrixPolynomial<T>::zero(n);
        for (std::size_t l = 0; l < t; ++l) {
            if (!d_inv.block_is_zero(l, k)) lhs = lhs + fam.q[l].transpose() * d_inv.block(l, k);
            if (!right.block_is_zero(l, k)) rhs = rhs + hat_fam.q[l].transpose() * right.block(l, k);
        }
        check_polynomial(report, "connector.q_relation", {static_cast<long long>(k)}, lhs, rhs, tol);
    }
    return report;
}

/// Full Christoffel suite for one Gram matrix. Domain errors become failed
/// records; `data` receives the connector subdiagonal count.
template <Scalar T>
Report verify_christoffel(const CheckerboardGram<T>& g, double tol) {
    Report report;
    Factorization<T> f;
    ChristoffelTransform<T> ct;
    try {
        f = factorize_checkerboard(g);
    } catch (const SingularPivot& e) {
        report.add("christoffel.factorize", {static_cast<long long>(e.level())}, false, 0.0,
                   std::string(e.kind()) + ": " + e.what());
        return report;
    }
    try {
        ct = christoffel_transform(g);
    } catch (const SingularPivot& e) {
        report.add("christoffel.transform", {static_cast<long long>(e.level())}, false, 0.0,
                   std::string(e.kind()) + ": " + e.what());
        return report;
    } catch (const Error& e) {
        report.add("christoffel.transform", {}, false, 0.0, std::string(e.kind()) + ": " + e.what());
        return report;
    }
    report.absorb(verify_transform_structure(ct, tol));

    const auto fam = polys_from_factorization(f);
    const auto hat_fam = polys_from_factorization(ct.factorization);
    const auto from_l = connector_from_L(f, ct);
    const auto from_d = connector_from_D(f, ct);
    check_block_matrix(report, "connector.L_equals_D", {}, from_l.sigma, from_d.sigma, tol);
    report.absorb(verify_connector_sparsity(from_l, f, ct, tol));

    std::vector<MatrixPolynomial<T>> via_relation;
    for (std::size_t k = 0; k < ct.size(); ++k) {
        try {
            via_relation.push_back(hat_poly_via_relation(fam, k, tol));
            check_polynomial(report, "christoffel.hat_route", {static_cast<long long>(k)}, via_relation.back(),
                             hat_fam.p[k], tol);
        } catch (const Error& e) {
            report.add("christoffel.hat_route", {static_cast<long long>(k)}, false, 0.0,
                       std::string(e.kind()) + ": " + e.what());
            break;
        }
    }
    report.absorb(verify_connector_action(from_l, fam, hat_fam.p, tol));
    report.absorb(verify_q_relation(from_l, fam, hat_fam, tol));
    return report;
}

} // namespace checkerboard

#endif
