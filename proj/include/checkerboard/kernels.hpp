#ifndef CHECKERBOARD_KERNELS_HPP
#define CHECKERBOARD_KERNELS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "checkerboard/christoffel.hpp"

namespace checkerboard {

/// One summand q^T(w) middle p(z).
template <Scalar T>
struct KernelTerm {
    MatrixPolynomial<T> q;
    BlockEntry<T> middle;
    MatrixPolynomial<T> p;
};

/// Bivariate block polynomial sum_{a,b} w^a K[a][b] z^b, optionally with
/// the summands it was assembled from. Block row a of the tensor indexes
/// powers of w, block column b powers of z.
template <Scalar T>
class KernelPolynomial {
public:
    KernelPolynomial() = default;

    explicit KernelPolynomial(BlockMatrix<T> tensor) : tensor_(std::move(tensor)) {}

    static KernelPolynomial from_terms(std::vector<KernelTerm<T>> terms, std::size_t order) {
        std::size_t rows = 1, cols = 1;
        for (const auto& t : terms) {
            rows = std::max(rows, t.q.degree() + 1);
            cols = std::max(cols, t.p.degree() + 1);
        }
        BlockMatrix<T> k(rows, cols, order);
        for (const auto& t : terms)
            for (std::size_t a = 0; a <= t.q.degree(); ++a) {
                if (t.q.coeff(a).is_zero()) continue;
                const auto left = t.q.coeff(a).transpose() * t.middle;
                for (std::size_t b = 0; b <= t.p.degree(); ++b) {
                    if (t.p.coeff(b).is_zero()) continue;
                    k.set_block(a, b, k.block(a, b) + left * t.p.coeff(b));
                }
            }
        KernelPolynomial out(std::move(k));
        out.terms_ = std::move(terms);
        return out;
    }

    static KernelPolynomial zero(std::size_t order) { return KernelPolynomial(BlockMatrix<T>(1, 1, order)); }

    const BlockMatrix<T>& tensor() const noexcept { return tensor_; }
    const std::vector<KernelTerm<T>>& terms() const noexcept { return terms_; }
    std::size_t order() const { return tensor_.order(); }
    std::size_t omega_degree() const { return tensor_.block_rows() - 1; }
    std::size_t z_degree() const { return tensor_.block_cols() - 1; }

    /// Coefficient of w^a z^b; zero outside the stored range.
    BlockEntry<T> coeff(std::size_t a, std::size_t b) const {
        if (a < tensor_.block_rows() && b < tensor_.block_cols()) return tensor_.block(a, b);
        return Matrix<T>(order(), order());
    }

    BlockEntry<T> evaluate(const T& z, const T& w) const {
        BlockEntry<T> acc(order(), order());
        T wa = ScalarTraits<T>::from_int(1);
        for (std::size_t a = 0; a < tensor_.block_rows(); ++a, wa *= w) {
            T zb = ScalarTraits<T>::from_int(1);
            for (std::size_t b = 0; b < tensor_.block_cols(); ++b, zb *= z) {
                T s = wa * zb;
                acc += tensor_.block(a, b) * s;
            }
        }
        return acc;
    }

    /// Direct evaluation of the stored summands, bypassing the tensor.
    BlockEntry<T> evaluate_terms(const T& z, const T& w) const {
        BlockEntry<T> acc(order(), order());
        for (const auto& t : terms_) acc += t.q.evaluate(w).transpose() * t.middle * t.p.evaluate(z);
        return acc;
    }

    KernelPolynomial times_z() const {
        BlockMatrix<T> k(tensor_.block_rows(), tensor_.block_cols() + 1, order());
        for (std::size_t a = 0; a < tensor_.block_rows(); ++a)
            for (std::size_t b = 0; b < tensor_.block_cols(); ++b) k.set_block(a, b + 1, tensor_.block(a, b));
        return KernelPolynomial(std::move(k));
    }

    KernelPolynomial times_omega() const {
        BlockMatrix<T> k(tensor_.block_rows() + 1, tensor_.block_cols(), order());
        for (std::size_t a = 0; a < tensor_.block_rows(); ++a)
            for (std::size_t b = 0; b < tensor_.block_cols(); ++b) k.set_block(a + 1, b, tensor_.block(a, b));
        return KernelPolynomial(std::move(k));
    }

    /// K(w, z) with the roles of the variables exchanged: tensor transposed
    /// at the grid level only.
    KernelPolynomial swapped() const {
        BlockMatrix<T> k(tensor_.block_cols(), tensor_.block_rows(), order());
        for (std::size_t a = 0; a < tensor_.block_rows(); ++a)
            for (std::size_t b = 0; b < tensor_.block_cols(); ++b) k.set_block(b, a, tensor_.block(a, b));
        return KernelPolynomial(std::move(k));
    }

    /// Every coefficient block transposed in place.
    KernelPolynomial block_transposed() const {
        BlockMatrix<T> k(tensor_.block_rows(), tensor_.block_cols(), order());
        for (std::size_t a = 0; a < tensor_.block_rows(); ++a)
            for (std::size_t b = 0; b < tensor_.block_cols(); ++b) k.set_block(a, b, tensor_.block(a, b).transpose());
        return KernelPolynomial(std::move(k));
    }

    friend KernelPolynomial operator+(const KernelPolynomial& x, const KernelPolynomial& y) { return combine(x, y, false); }
    friend KernelPolynomial operator-(const KernelPolynomial& x, const KernelPolynomial& y) { return combine(x, y, true); }

private:
    static KernelPolynomial combine(const KernelPolynomial& x, const KernelPolynomial& y, bool subtract) {
        if (x.order() != y.order()) throw ShapeMismatch("kernel block orders differ");
        const std::size_t rows = std::max(x.tensor_.block_rows(), y.tensor_.block_rows());
        const std::size_t cols = std::max(x.tensor_.block_cols(), y.tensor_.block_cols());
        BlockMatrix<T> k(rows, cols, x.order());
        for (std::size_t a = 0; a < rows; ++a)
            for (std::size_t b = 0; b < cols; ++b)
                k.set_block(a, b, subtract ? x.coeff(a, b) - y.coeff(a, b) : x.coeff(a, b) + y.coeff(a, b));
        return KernelPolynomial(std::move(k));
    }

    BlockMatrix<T> tensor_;
    std::vector<KernelTerm<T>> terms_;
};

/// Largest coefficient discrepancy, zero-padding the smaller tensor.
template <Scalar T>
double kernel_residual(const KernelPolynomial<T>& x, const KernelPolynomial<T>& y) {
    double worst = 0.0;
    const std::size_t rows = std::max(x.omega_degree(), y.omega_degree()) + 1;
    const std::size_t cols = std::max(x.z_degree(), y.z_degree()) + 1;
    for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b) worst = std::max(worst, residual(x.coeff(a, b), y.coeff(a, b)));
    return worst;
}

template <Scalar T>
bool same_kernel(const KernelPolynomial<T>& x, const KernelPolynomial<T>& y, double tol) {
    if (x.order() != y.order()) return false;
    const std::size_t rows = std::max(x.omega_degree(), y.omega_degree()) + 1;
    const std::size_t cols = std::max(x.z_degree(), y.z_degree()) + 1;
    for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b)
            if (!agrees(x.coeff(a, b), y.coeff(a, b), tol)) return false;
    return true;
}

template <Scalar T>
CheckRecord& check_kernel(Report& report, std::string name, std::vector<long long> indices,
                          const KernelPolynomial<T>& got, const KernelPolynomial<T>& want, double tol) {
    return report.add(std::move(name), std::move(indices), same_kernel(got, want, tol), kernel_residual(got, want));
}

/// K^{[2n]}   = sum_{j<=n} q_{2j+1}^T(w) d_{2j,2j+1}^{-1} p_{2j}(z)
/// K^{[2n+1]} = sum_{j<=n} q_{2j}^T(w)   d_{2j+1,2j}^{-1} p_{2j+1}(z)
template <Scalar T>
KernelPolynomial<T> kernel(const PolynomialFamily<T>& fam, Parity parity, long long n) {
    if (parity == Parity::none) throw OutOfRange("kernel parity must be even or odd");
    if (n < 0) throw OutOfRange("kernel index n = " + std::to_string(n) + " is negative");
    const auto top = static_cast<std::size_t>(n);
    if (fam.size() < 2 * top + 2)
        throw OutOfRange("kernel of index n = " + std::to_string(n) + " needs family size " +
                         std::to_string(2 * top + 2) + ", have " + std::to_string(fam.size()));
    std::vector<KernelTerm<T>> terms;
    for (std::size_t j = 0; j <= top; ++j) {
        if (parity == Parity::even)
            terms.push_back({fam.q[2 * j + 1], invert(fam.d(2 * j, 2 * j + 1)), fam.p[2 * j]});
        else
            terms.push_back({fam.q[2 * j], invert(fam.d(2 * j + 1, 2 * j)), fam.p[2 * j + 1]});
    }
    return KernelPolynomial<T>::from_terms(std::move(terms), fam.order());
}

/// Khat^{[2n]}   = sum_{j<=n} qhat_{2j}^T   dhat_{2j}^{-1}   phat_{2j}
/// Khat^{[2n+1]} = sum_{j<=n} qhat_{2j+1}^T dhat_{2j+1}^{-1} phat_{2j+1}
template <Scalar T>
KernelPolynomial<T> hat_kernel(const PolynomialFamily<T>& hat_fam, Parity parity, long long n) {
    if (parity == Parity::none) throw OutOfRange("kernel parity must be even or odd");
    if (n < 0) throw OutOfRange("kernel index n = " + std::to_string(n) + " is negative");
    const auto top = static_cast<std::size_t>(n);
    const std::size_t shift = parity == Parity::even ? 0 : 1;
    if (hat_fam.size() < 2 * top + shift + 1)
        throw OutOfRange("hat kernel of index n = " + std::to_string(n) + " needs family size " +
                         std::to_string(2 * top + shift + 1) + ", have " + std::to_string(hat_fam.size()));
    std::vector<KernelTerm<T>> terms;
    for (std::size_t j = 0; j <= top; ++j) {
        const std::size_t k = 2 * j + shift;
        terms.push_back({hat_fam.q[k], invert(hat_fam.d(k, k)), hat_fam.p[k]});
    }
    return KernelPolynomial<T>::from_terms(std::move(terms), hat_fam.order());
}

/// K^{[2n]}   = z Khat^{[2n+1]} - qhat_{2n+1}^T(w) dhat_{2n+1}^{-1} p_{2n+2}(z)
/// K^{[2n+1]} = z Khat^{[2n]}
template <Scalar T>
Report verify_kernel_relation(const PolynomialFamily<T>& fam, const PolynomialFamily<T>& hat_fam, long long n,
                              double tol) {
    Report report;
    const std::vector<long long> idx{n};
    try {
        const auto k_even = kernel(fam, Parity::even, n);
        const auto k_odd = kernel(fam, Parity::odd, n);
        const auto h_even = hat_kernel(hat_fam, Parity::even, n);
        const auto h_odd = hat_kernel(hat_fam, Parity::odd, n);
        const std::size_t top = 2 * static_cast<std::size_t>(n) + 1;
        if (fam.size() <= top + 1) throw OutOfRange("relation needs p_" + std::to_string(top + 1));
        const auto correction = KernelPolynomial<T>::from_terms(
            {{hat_fam.q[top], invert(hat_fam.d(top, top)), fam.p[top + 1]}}, fam.order());
        check_kernel(report, "kernel_relation.even", idx, k_even, h_odd.times_z() - correction, tol);
        check_kernel(report, "kernel_relation.odd", idx, k_odd, h_even.times_z(), tol);
    } catch (const Error& e) {
        report.add("kernel_relation", idx, false, 0.0, std::string(e.kind()) + ": " + e.what());
    }
    return report;
}

template <Scalar T>
struct SelectionMatrices {
    BlockMatrix<T> theta;
    BlockMatrix<T> pi_even;
    BlockMatrix<T> pi_odd;
};

/// Size 2n+2: theta is the cyclic down-shift (identity at (0, N-1) and at
/// (i, i-1)); pi_even/pi_odd keep the even/odd canonical columns.
template <Scalar T>
SelectionMatrices<T> abc_matrices(std::size_t n, std::size_t order) {
    const std::size_t N = 2 * n + 2;
    const auto eye = Matrix<T>::identity(order);
    SelectionMatrices<T> s{BlockMatrix<T>(N, N, order), BlockMatrix<T>(N, N, order), BlockMatrix<T>(N, N, order)};
    s.theta.set_block(0, N - 1, eye);
    for (std::size_t i = 1; i < N; ++i) s.theta.set_block(i, i - 1, eye);
    for (std::size_t i = 0; i < N; ++i) (i % 2 == 0 ? s.pi_even : s.pi_odd).set_block(i, i, eye);
    return s;
}

/// Which side of the diagonal factor theta enters on. `verified` is the
/// placement that reproduces the kernel sum: diag(d01, d10, ...) theta^T for
/// the even kernel and theta diag(d10, d01, ...) for the odd one. `flipped`
/// transposes theta in both, which for the even kernel is the literal form
/// diag(...) theta.
enum class ThetaPlacement { verified, flipped };

/// The middle matrix sandwiched between X(w)^T and X(z):
///   even: Pi_o (L1^{-1} D_e L2^{-T})^{-1} Pi_e
///   odd:  Pi_e (L1^{-1} D_o L2^{-T})^{-1} Pi_o
template <Scalar T>
KernelPolynomial<T> abc_representation(const Factorization<T>& f, Parity parity, std::size_t n,
                                       ThetaPlacement placement = ThetaPlacement::verified) {
    if (parity == Parity::none) throw OutOfRange("kernel parity must be even or odd");
    const std::size_t N = 2 * n + 2;
    if (f.size() < N)
        throw OutOfRange("representation of index n = " + std::to_string(n) + " needs factorization size " +
                         std::to_string(N));
    const auto sel = abc_matrices<T>(n, f.order());
    const bool use_transpose = (parity == Parity::even) == (placement == ThetaPlacement::verified);
    const auto theta = use_transpose ? sel.theta.transpose() : sel.theta;
    std::vector<BlockEntry<T>> diag;
    for (std::size_t j = 0; j <= n; ++j) {
        if (parity == Parity::even) {
            diag.push_back(f.d_even(j));
            diag.push_back(f.d_odd(j));
        } else {
            diag.push_back(f.d_odd(j));
            diag.push_back(f.d_even(j));
        }
    }
    const auto dm = block_diagonal(diag, f.order());
    const auto middle = parity == Parity::even ? dm * theta : theta * dm;
    const auto m_sel = invert(f.L1.leading(N)) * middle * invert(f.L2.leading(N)).transpose();
    const auto inv = invert(m_sel);
    const auto sandwich =
        parity == Parity::even ? sel.pi_odd * inv * sel.pi_even : sel.pi_even * inv * sel.pi_odd;
    return KernelPolynomial<T>(sandwich);
}

/// K^{[2n]} = w S_n(w, z), K^{[2n+1]} = z S_n(w, z) with
/// S_n = sum_{j<=n} p_{2j}^T(w) dt_j^{-1} p_{2j}(z), dt from the condensed
/// factorization; plus the mirror K^{[2n]}(w, z) = K^{[2n+1]}(z, w)^T.
template <Scalar T>
Report hankel_kernels(const PolynomialFamily<T>& fam, const std::vector<BlockEntry<T>>& s, long long nmax,
                      double tol) {
    Report report;
    try {
        const std::size_t half = fam.size() / 2;
        const auto condensed = generic_ldu(condensed_hankel(s, fam.order(), half));
        for (long long n = 0; n <= nmax; ++n) {
            const std::vector<long long> idx{n};
            std::vector<KernelTerm<T>> terms;
            for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j)
                terms.push_back({fam.p[2 * j], invert(condensed.D.block(j, j)), fam.p[2 * j]});
            const auto core = KernelPolynomial<T>::from_terms(std::move(terms), fam.order());
            const auto k_even = kernel(fam, Parity::even, n);
            const auto k_odd = kernel(fam, Parity::odd, n);
            check_kernel(report, "hankel_kernel.even", idx, k_even, core.times_omega(), tol);
            check_kernel(report, "hankel_kernel.odd", idx, k_odd, core.times_z(), tol);
            check_kernel(report, "hankel_kernel.mirror", idx, k_even.swapped(), k_odd.block_transposed(), tol);
        }
    } catch (const Error& e) {
        report.add("hankel_kernel", {}, false, 0.0, std::string(e.kind()) + ": " + e.what());
    }
    return report;
}

/// Largest n for which the kernels of a Gram truncation m are defined.
inline long long max_kernel_index(std::size_t m) { return static_cast<long long>(m / 2) - 1; }

/// Largest n for which the kernel relation can be checked at truncation m.
inline long long max_relation_index(std::size_t m) { return static_cast<long long>(m / 2) - 2; }

/// ABC equality and kernel relations for n = 0 .. nmax (clamped to what
/// the truncation allows). Relation records are skipped, with a note, when
/// the shifted matrix is not quasi-definite.
template <Scalar T>
Report verify_kernels(const CheckerboardGram<T>& g, std::optional<long long> nmax, double tol) {
    Report report;
    Factorization<T> f;
    try {
        f = factorize_checkerboard(g);
    } catch (const SingularPivot& e) {
        report.add("kernels.factorize", {static_cast<long long>(e.level())}, false, 0.0,
                   std::string(e.kind()) + ": " + e.what());
        return report;
    }
    const auto fam = polys_from_factorization(f);
    const long long top = std::min(nmax.value_or(max_kernel_index(g.size())), max_kernel_index(g.size()));
    for (long long n = 0; n <= top; ++n) {
        const std::vector<long long> idx{n};
        for (Parity parity : {Parity::even, Parity::odd}) {
            const std::string name = std::string("abc.") + to_string(parity);
            try {
                const auto sum = kernel(fam, parity, n);
                const auto abc = abc_representation(f, parity, static_cast<std::size_t>(n));
                check_kernel(report, name, idx, abc, sum, tol);
            } catch (const Error& e) {
                report.add(name, idx, false, 0.0, std::string(e.kind()) + ": " + e.what());
            }
        }
    }

    std::optional<ChristoffelTransform<T>> ct;
    if (g.size() >= 4) {
        try {
            ct = christoffel_transform(g);
        } catch (const SingularPivot& e) {
            report.notes.push_back("kernel relation skipped: shifted matrix has a singular pivot at level " +
                                   std::to_string(e.level()));
        }
    }
    if (ct) {
        const auto hat_fam = polys_from_factorization(ct->factorization);
        const long long rel_top = std::min(top, max_relation_index(g.size()));
        for (long long n = 0; n <= rel_top; ++n) report.absorb(verify_kernel_relation(fam, hat_fam, n, tol));
    }
    return report;
}

} // namespace checkerboard

#endif
