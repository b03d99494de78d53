#ifndef CHECKERBOARD_CHECKS_HPP
#define CHECKERBOARD_CHECKS_HPP

#include <string>
#include <utility>
#include <vector>

#include "checkerboard/polynomial.hpp"
#include "checkerboard/report.hpp"

namespace checkerboard {

// Small helpers that turn a comparison into a report record.

template <Scalar T>
CheckRecord& check_matrix(Report& report, std::string name, std::vector<long long> indices, const Matrix<T>& got,
                          const Matrix<T>& want, double tol) {
    if (got.rows() != want.rows() || got.cols() != want.cols())
        return report.add(std::move(name), std::move(indices), false, 0.0,
                          "shape " + got.shape() + " vs expected " + want.shape());
    return report.add(std::move(name), std::move(indices), agrees(got, want, tol), residual(got, want));
}

template <Scalar T>
CheckRecord& check_block_matrix(Report& report, std::string name, std::vector<long long> indices,
                                const BlockMatrix<T>& got, const BlockMatrix<T>& want, double tol) {
    return check_matrix(report, std::move(name), std::move(indices), got.flat(), want.flat(), tol);
}

template <Scalar T>
CheckRecord& check_polynomial(Report& report, std::string name, std::vector<long long> indices,
                              const MatrixPolynomial<T>& got, const MatrixPolynomial<T>& want, double tol) {
    if (got.order() != want.order())
        return report.add(std::move(name), std::move(indices), false, 0.0, "block orders differ");
    return report.add(std::move(name), std::move(indices), same_polynomial(got, want, tol),
                      polynomial_residual(got, want));
}

inline CheckRecord& check_positions(Report& report, std::string name, std::vector<long long> indices,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& violations) {
    std::string detail;
    for (const auto& [i, j] : violations) {
        if (!detail.empty()) detail += ' ';
        detail += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    return report.add(std::move(name), std::move(indices), violations.empty(), 0.0,
                      violations.empty() ? std::string{} : "violations at " + detail);
}

} // namespace checkerboard

#endif
