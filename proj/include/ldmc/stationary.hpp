#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "ldmc/errors.hpp"
#include "ldmc/linalg.hpp"
#include "ldmc/types.hpp"

namespace ldmc {

/// Unique invariant distribution of a conservative generator with positive
/// off-diagonals: the nu with nu G = 0, sum nu = 1, nu > 0.
///
/// Solves nu G~ = e_n where G~ is G with its last column replaced by ones
/// (the normalization constraint takes the place of the redundant balance
/// equation; the pivot column is deterministically the last index). One step
/// of iterative refinement keeps the residual ||nu G||_inf at or under 1e-12.
inline ProbabilityMeasure stationary_distribution(const Matrix& g) {
    const std::size_t n = g.rows();
    if (g.cols() != n)
        throw ValidationError(ValidationKind::not_square, "generator must be square");
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && !(g(i, j) > 0.0))
                throw ValidationError(ValidationKind::off_diagonal_not_positive,
                                      "off-diagonal (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ") must be positive",
                                      static_cast<std::ptrdiff_t>(i + 1),
                                      static_cast<std::ptrdiff_t>(j + 1));
            row_sum += g(i, j);
        }
        if (std::abs(row_sum) > kRowSumTol)
            throw ValidationError(ValidationKind::not_conservative,
                                  "row " + std::to_string(i + 1) + " sums to " +
                                      std::to_string(row_sum),
                                  static_cast<std::ptrdiff_t>(i + 1));
    }

    // System rows are columns of G (equations nu . G_col_j = 0 for j < n)
    // plus the normalization row of ones.
    Matrix a(n, n);
    Vec rhs(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j)
        for (std::size_t i = 0; i < n; ++i) a(j, i) = g(i, j);
    for (std::size_t i = 0; i < n; ++i) a(n - 1, i) = 1.0;
    rhs[n - 1] = 1.0;

    Vec nu = solve_dense(a, rhs);
    {  // one refinement pass
        Vec r(rhs);
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += a(j, i) * nu[i];
            r[j] -= s;
        }
        Vec delta = solve_dense(a, r);
        for (std::size_t i = 0; i < n; ++i) nu[i] += delta[i];
    }

    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += nu[i] * g(i, j);
        residual = std::max(residual, std::abs(s));
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!(nu[i] > 0.0))
            throw ConvergenceError("stationary distribution has a nonpositive entry " +
                                   std::to_string(nu[i]) + " (singular-system guard)");
    if (residual > 1e-12)
        throw ConvergenceError("stationary residual " + std::to_string(residual) +
                               " exceeds 1e-12");
    return ProbabilityMeasure(std::move(nu));
}

}  // namespace ldmc
