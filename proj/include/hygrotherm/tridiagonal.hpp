/**
 * @file tridiagonal.hpp
 * @brief Thomas-algorithm solver for the tridiagonal systems produced by the
 *        one-dimensional finite-volume discretisation.
 *
 * The assembled systems are strictly diagonally dominant with positive
 * diagonal (mass plus stiffness plus boundary terms), so elimination without
 * pivoting is stable.  A vanishing pivot still raises std::runtime_error as
 * a guard against malformed assembly.
 */
#pragma once

#include <Eigen/Core>

namespace hygrotherm::linalg {

/// Tridiagonal matrix in banded storage: lower/upper have size n-1.
struct TridiagonalSystem {
    Eigen::VectorXd lower;
    Eigen::VectorXd diag;
    Eigen::VectorXd upper;

    /// Number of rows.
    Eigen::Index size() const { return diag.size(); }
    /// Throws std::invalid_argument when band sizes are inconsistent.
    void validate() const;
};

/// Matrix-vector product A*x (used by residual monitors and tests).
Eigen::VectorXd tridiagonal_multiply(const TridiagonalSystem& sys,
                                     const Eigen::Ref<const Eigen::VectorXd>& x);

/**
 * @brief Solves A*x = rhs by the Thomas algorithm.
 *
 * Throws std::invalid_argument on shape mismatch and std::runtime_error when
 * a pivot collapses numerically.
 */
Eigen::VectorXd tridiagonal_solve(const TridiagonalSystem& sys,
                                  const Eigen::Ref<const Eigen::VectorXd>& rhs);

} // namespace hygrotherm::linalg
