#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "ldmc/errors.hpp"
#include "ldmc/linalg.hpp"
#include "ldmc/types.hpp"

namespace ldmc {

/// Validated generator of a killed chain on E = {1,...,n}:
///   q_ii < 0 finite, q_ij > 0 for i != j, row sums <= 0.
/// The row-sum deficit k_i = -sum_j q_ij >= 0 is the killing rate in state i.
/// Construct through validate_q_matrix.
class QMatrix {
public:
    [[nodiscard]] std::size_t n() const noexcept { return q_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return q_(i, j); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return q_; }
    [[nodiscard]] const Vec& killing() const noexcept { return killing_; }

    /// Largest exit rate max_i(-q_ii); the uniformization constant.
    [[nodiscard]] double max_exit_rate() const noexcept {
        double m = 0.0;
        for (std::size_t i = 0; i < n(); ++i) m = std::max(m, -q_(i, i));
        return m;
    }

    [[nodiscard]] bool is_conservative() const noexcept {
        for (double k : killing_)
            if (k > 0.0) return false;
        return true;
    }

    friend QMatrix validate_q_matrix(const Matrix& raw);

private:
    QMatrix(Matrix q, Vec killing) : q_(std::move(q)), killing_(std::move(killing)) {}
    Matrix q_;
    Vec killing_;
};

/// Checks the three generator conditions in order (diagonal, off-diagonal
/// row-major, row sums), so an injected single violation is reported as
/// itself even when it breaks a later condition too. Row sums are tested
/// with absolute tolerance 1e-12; "strictly positive" means > 1e-300.
inline QMatrix validate_q_matrix(const Matrix& raw) {
    const std::size_t n = raw.rows();
    if (raw.cols() != n)
        throw ValidationError(ValidationKind::not_square, "matrix is " + std::to_string(n) +
                                                              "x" + std::to_string(raw.cols()));
    if (n < 2)
        throw ValidationError(ValidationKind::too_small, "state count must be >= 2");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(raw(i, j)))
                throw ValidationError(ValidationKind::not_finite,
                                      "entry (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ") is not finite",
                                      static_cast<std::ptrdiff_t>(i + 1),
                                      static_cast<std::ptrdiff_t>(j + 1));
    for (std::size_t i = 0; i < n; ++i)
        if (!(raw(i, i) < 0.0))
            throw ValidationError(ValidationKind::diagonal_not_negative,
                                  "q(" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                                      ") = " + std::to_string(raw(i, i)) + " must be negative",
                                  static_cast<std::ptrdiff_t>(i + 1),
                                  static_cast<std::ptrdiff_t>(i + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && raw(i, j) <= kStrictPositiveFloor)
                throw ValidationError(ValidationKind::off_diagonal_not_positive,
                                      "q(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                          ") must be strictly positive",
                                      static_cast<std::ptrdiff_t>(i + 1),
                                      static_cast<std::ptrdiff_t>(j + 1));
    Vec killing(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) row_sum += raw(i, j);
        if (row_sum > kRowSumTol)
            throw ValidationError(ValidationKind::row_sum_positive,
                                  "row " + std::to_string(i + 1) + " sums to " +
                                      std::to_string(row_sum),
                                  static_cast<std::ptrdiff_t>(i + 1));
        killing[i] = std::max(0.0, -row_sum);
    }
    return QMatrix(raw, std::move(killing));
}

/// (Qu)(i) = sum_j q_ij u(j).
inline Vec apply_generator(const QMatrix& q, std::span<const double> u) {
    if (u.size() != q.n())
        throw ValidationError(ValidationKind::length_mismatch,
                              "vector length " + std::to_string(u.size()) + " vs n = " +
                                  std::to_string(q.n()));
    return mat_vec(q.matrix(), u);
}

}  // namespace ldmc
