#ifndef CHECKERBOARD_POLYNOMIAL_HPP
#define CHECKERBOARD_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "checkerboard/matrix.hpp"

namespace checkerboard {

enum class Parity { even, odd, none };

inline const char* to_string(Parity p) {
    switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    default: return "none";
    }
}

/// Polynomial in one scalar variable with n x n block coefficients,
/// c_0 + c_1 z + ... + c_deg z^deg. A parity tag, when set, is enforced at
/// construction (even: all odd coefficients zero; odd: all even ones).
template <Scalar T>
class MatrixPolynomial {
public:
    MatrixPolynomial() = default;

    MatrixPolynomial(std::vector<BlockEntry<T>> coeffs, Parity parity = Parity::none)
        : coeffs_(std::move(coeffs)), parity_(parity) {
        if (coeffs_.empty()) throw ShapeMismatch("polynomial needs at least one coefficient");
        order_ = coeffs_.front().rows();
        for (const auto& c : coeffs_)
            if (c.rows() != order_ || c.cols() != order_) throw ShapeMismatch("mixed coefficient shapes");
        if (parity_ != Parity::none) {
            const std::size_t bad = parity_ == Parity::even ? 1 : 0;
            for (std::size_t k = bad; k < coeffs_.size(); k += 2)
                if (!coeffs_[k].is_zero())
                    throw PatternViolation(std::string(to_string(parity_)) + " polynomial has nonzero z^" +
                                           std::to_string(k) + " coefficient");
        }
    }

    static MatrixPolynomial zero(std::size_t order) { return MatrixPolynomial({Matrix<T>(order, order)}); }

    static MatrixPolynomial monomial(std::size_t degree, std::size_t order) {
        std::vector<BlockEntry<T>> c(degree + 1, Matrix<T>(order, order));
        c.back() = Matrix<T>::identity(order);
        return MatrixPolynomial(std::move(c));
    }

    /// Number of stored coefficients minus one; trailing zeros count.
    std::size_t degree() const { return coeffs_.size() - 1; }
    std::size_t order() const { return order_; }
    Parity parity() const { return parity_; }
    const std::vector<BlockEntry<T>>& coefficients() const { return coeffs_; }

    /// Coefficient of z^k, zero beyond the stored degree.
    BlockEntry<T> coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Matrix<T>(order_, order_); }

    BlockEntry<T> at_zero() const { return coeffs_.front(); }

    /// Horner evaluation at a scalar point.
    BlockEntry<T> evaluate(const T& z) const {
        BlockEntry<T> acc = coeffs_.back();
        for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
            acc *= z;
            acc += coeffs_[k];
        }
        return acc;
    }

    MatrixPolynomial times_z() const {
        std::vector<BlockEntry<T>> c;
        c.reserve(coeffs_.size() + 1);
        c.push_back(Matrix<T>(order_, order_));
        c.insert(c.end(), coeffs_.begin(), coeffs_.end());
        return MatrixPolynomial(std::move(c));
    }

    /// Exact division by z; the constant term must vanish (within tol in float mode).
    MatrixPolynomial divide_by_z(double tol = 0.0) const {
        if (!negligible(coeffs_.front(), tol)) throw NonzeroRemainder("division by z leaves a nonzero constant term");
        if (coeffs_.size() == 1) return zero(order_);
        return MatrixPolynomial(std::vector<BlockEntry<T>>(coeffs_.begin() + 1, coeffs_.end()));
    }

    /// Coefficientwise transpose.
    MatrixPolynomial transpose() const {
        std::vector<BlockEntry<T>> c;
        c.reserve(coeffs_.size());
        for (const auto& x : coeffs_) c.push_back(x.transpose());
        return MatrixPolynomial(std::move(c), parity_);
    }

    friend MatrixPolynomial operator+(const MatrixPolynomial& a, const MatrixPolynomial& b) {
        return combine(a, b, false);
    }
    friend MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b) {
        return combine(a, b, true);
    }
    /// Left multiplication by a constant block.
    friend MatrixPolynomial operator*(const BlockEntry<T>& b, const MatrixPolynomial& p) {
        std::vector<BlockEntry<T>> c;
        c.reserve(p.coeffs_.size());
        for (const auto& x : p.coeffs_) c.push_back(b * x);
        return MatrixPolynomial(std::move(c));
    }
    /// Right multiplication by a constant block.
    friend MatrixPolynomial operator*(const MatrixPolynomial& p, const BlockEntry<T>& b) {
        std::vector<BlockEntry<T>> c;
        c.reserve(p.coeffs_.size());
        for (const auto& x : p.coeffs_) c.push_back(x * b);
        return MatrixPolynomial(std::move(c));
    }

private:
    static MatrixPolynomial combine(const MatrixPolynomial& a, const MatrixPolynomial& b, bool subtract) {
        if (a.order_ != b.order_) throw ShapeMismatch("polynomial orders differ");
        const std::size_t len = std::max(a.coeffs_.size(), b.coeffs_.size());
        std::vector<BlockEntry<T>> c;
        c.reserve(len);
        for (std::size_t k = 0; k < len; ++k) c.push_back(subtract ? a.coeff(k) - b.coeff(k) : a.coeff(k) + b.coeff(k));
        return MatrixPolynomial(std::move(c));
    }

    std::vector<BlockEntry<T>> coeffs_;
    Parity parity_ = Parity::none;
    std::size_t order_ = 1;
};

/// Largest coefficient discrepancy, padding the shorter polynomial with zeros.
template <Scalar T>
double polynomial_residual(const MatrixPolynomial<T>& a, const MatrixPolynomial<T>& b) {
    double worst = 0.0;
    const std::size_t len = std::max(a.degree(), b.degree()) + 1;
    for (std::size_t k = 0; k < len; ++k) worst = std::max(worst, residual(a.coeff(k), b.coeff(k)));
    return worst;
}

/// Coefficientwise equality up to trailing zeros (exact in rational mode).
template <Scalar T>
bool same_polynomial(const MatrixPolynomial<T>& a, const MatrixPolynomial<T>& b, double tol) {
    if (a.order() != b.order()) return false;
    const std::size_t len = std::max(a.degree(), b.degree()) + 1;
    for (std::size_t k = 0; k < len; ++k)
        if (!agrees(a.coeff(k), b.coeff(k), tol)) return false;
    return true;
}

/// p(z^2) for a polynomial p in t.
template <Scalar T>
MatrixPolynomial<T> substitute_square(const MatrixPolynomial<T>& p) {
    std::vector<BlockEntry<T>> c(2 * p.degree() + 1, Matrix<T>(p.order(), p.order()));
    for (std::size_t k = 0; k <= p.degree(); ++k) c[2 * k] = p.coeff(k);
    return MatrixPolynomial<T>(std::move(c), Parity::even);
}

} // namespace checkerboard

#endif
