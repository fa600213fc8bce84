#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ldmc/errors.hpp"
#include "ldmc/linalg.hpp"
#include "ldmc/types.hpp"

namespace ldmc {

struct PrincipalEigen {
    double lambda = 0.0;    ///< real eigenvalue of maximal real part
    PositiveVector w;       ///< right eigenvector, w(1) = 1
    std::size_t iterations = 0;
};

namespace detail {

inline constexpr double kRayleighTol = 1e-13;
inline constexpr std::size_t kPowerIterationCap = 500000;

/// Power iteration on B = M + cI with c = max_i |M_ii| + 1. B is entrywise
/// positive for matrices with positive off-diagonals, so Perron-Frobenius
/// gives a simple dominant eigenvalue with positive eigenvector.
inline PrincipalEigen shifted_power_iteration(const Matrix& m, bool transpose_input) {
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw ValidationError(ValidationKind::not_square, "matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !(m(i, j) > 0.0))
                throw ValidationError(ValidationKind::off_diagonal_not_positive,
                                      "off-diagonal (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ") must be positive",
                                      static_cast<std::ptrdiff_t>(i + 1),
                                      static_cast<std::ptrdiff_t>(j + 1));
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) shift = std::max(shift, std::abs(m(i, i)));
    shift += 1.0;

    Matrix b = transpose_input ? transpose(m) : m;
    for (std::size_t i = 0; i < n; ++i) b(i, i) += shift;

    Vec w(n, 1.0);
    double rayleigh_prev = 0.0;
    double b_scale = 0.0;
    for (double x : b.data()) b_scale = std::max(b_scale, std::abs(x));
    std::size_t iter = 0;
    for (; iter < kPowerIterationCap; ++iter) {
        Vec bw = mat_vec(b, w);
        const double rayleigh = dot(bw, w) / dot(w, w);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            residual = std::max(residual, std::abs(bw[i] - rayleigh * w[i]));
        const double norm = inf_norm(bw);
        for (std::size_t i = 0; i < n; ++i) w[i] = bw[i] / norm;
        if (iter > 0 && (std::abs(rayleigh - rayleigh_prev) <= kRayleighTol * std::abs(rayleigh) ||
                         residual <= 1e-14 * b_scale)) {
            rayleigh_prev = rayleigh;
            break;
        }
        rayleigh_prev = rayleigh;
    }
    if (iter >= kPowerIterationCap)
        throw ConvergenceError("power iteration exhausted its cap (ill-conditioned spectrum)");
    const double anchor = w[0];
    for (double& x : w) x /= anchor;
    return PrincipalEigen{rayleigh_prev - shift, PositiveVector(std::move(w)), iter + 1};
}

}  // namespace detail

/// Perron root and positive right eigenvector (normalized w(1) = 1) of a
/// matrix with strictly positive off-diagonals, via shifted power iteration.
/// Stops when successive Rayleigh quotients agree to 1e-13 relative.
inline PrincipalEigen principal_eigenvalue(const Matrix& m) {
    return detail::shifted_power_iteration(m, false);
}

/// Positive left eigenvector for the same eigenvalue (power iteration on M^T).
inline PrincipalEigen principal_left_eigenvector(const Matrix& m) {
    return detail::shifted_power_iteration(m, true);
}

/// Normalized entrywise product of left and right Perron eigenvectors;
/// the gradient of lambda_max with respect to the diagonal, and the
/// occupation law that attains the survival-rate supremum.
inline ProbabilityMeasure perron_product_measure(const Matrix& m) {
    const PrincipalEigen right = principal_eigenvalue(m);
    const PrincipalEigen left = principal_left_eigenvector(m);
    Vec prod(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) prod[i] = left.w[i] * right.w[i];
    return ProbabilityMeasure::normalized(std::move(prod));
}

}  // namespace ldmc
