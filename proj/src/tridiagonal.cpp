/**
 * @file tridiagonal.cpp
 * @brief Thomas-algorithm elimination for banded systems.
 */
#include "hygrotherm/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace hygrotherm::linalg {

void TridiagonalSystem::validate() const {
    if (diag.size() < 1) {
        throw std::invalid_argument("TridiagonalSystem: empty diagonal");
    }
    if (lower.size() != diag.size() - 1 || upper.size() != diag.size() - 1) {
        throw std::invalid_argument(
            "TridiagonalSystem: band sizes must be n-1");
    }
}

Eigen::VectorXd tridiagonal_multiply(
    const TridiagonalSystem& sys, const Eigen::Ref<const Eigen::VectorXd>& x) {
    sys.validate();
    if (x.size() != sys.size()) {
        throw std::invalid_argument("tridiagonal_multiply: shape mismatch");
    }
    const Eigen::Index n = sys.size();
    Eigen::VectorXd y = sys.diag.cwiseProduct(x);
    if (n > 1) {
        y.head(n - 1) += sys.upper.cwiseProduct(x.tail(n - 1));
        y.tail(n - 1) += sys.lower.cwiseProduct(x.head(n - 1));
    }
    return y;
}

Eigen::VectorXd tridiagonal_solve(
    const TridiagonalSystem& sys, const Eigen::Ref<const Eigen::VectorXd>& rhs) {
    sys.validate();
    if (rhs.size() != sys.size()) {
        throw std::invalid_argument("tridiagonal_solve: shape mismatch");
    }
    const Eigen::Index n = sys.size();
    Eigen::VectorXd c(n);  // transformed upper band
    Eigen::VectorXd d(n);  // transformed right-hand side

    double pivot = sys.diag[0];
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
        throw std::runtime_error("tridiagonal_solve: zero pivot at row 0");
    }
    c[0] = (n > 1) ? sys.upper[0] / pivot : 0.0;
    d[0] = rhs[0] / pivot;
    for (Eigen::Index i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i - 1] * c[i - 1];
        if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
            throw std::runtime_error("tridiagonal_solve: zero pivot at row " +
                                     std::to_string(i));
        }
        c[i] = (i + 1 < n) ? sys.upper[i] / pivot : 0.0;
        d[i] = (rhs[i] - sys.lower[i - 1] * d[i - 1]) / pivot;
    }

    Eigen::VectorXd x(n);
    x[n - 1] = d[n - 1];
    for (Eigen::Index i = n - 2; i >= 0; --i) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

} // namespace hygrotherm::linalg
