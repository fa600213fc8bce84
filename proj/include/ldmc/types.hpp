#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ldmc/errors.hpp"
#include "ldmc/linalg.hpp"

namespace ldmc {

inline constexpr double kStrictPositiveFloor = 1e-300;  // subnormal guard
inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kRowSumTol = 1e-12;

/// Strictly positive finite vector over the state space. Houses test vectors
/// u, tilts phi and the balancing data alpha, beta, h.
class PositiveVector {
public:
    explicit PositiveVector(Vec v, const std::string& what = "vector") : v_(std::move(v)) {
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (!std::isfinite(v_[i]) || v_[i] <= kStrictPositiveFloor)
                throw ValidationError(ValidationKind::not_positive,
                                      what + " entry " + std::to_string(i + 1) +
                                          " is not strictly positive and finite",
                                      static_cast<std::ptrdiff_t>(i + 1));
        }
    }

    static PositiveVector ones(std::size_t n) { return PositiveVector(Vec(n, 1.0)); }

    [[nodiscard]] std::size_t size() const noexcept { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    [[nodiscard]] const Vec& values() const noexcept { return v_; }

    friend bool operator==(const PositiveVector&, const PositiveVector&) = default;

private:
    Vec v_;
};

/// Point on the probability simplex over E. Entries >= 0, sum within 1e-12 of 1.
class ProbabilityMeasure {
public:
    explicit ProbabilityMeasure(Vec p, const std::string& what = "measure") : p_(std::move(p)) {
        double sum = 0.0;
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (!std::isfinite(p_[i]) || p_[i] < 0.0)
                throw ValidationError(ValidationKind::not_simplex,
                                      what + " entry " + std::to_string(i + 1) + " is negative",
                                      static_cast<std::ptrdiff_t>(i + 1));
            sum += p_[i];
        }
        if (p_.empty() || std::abs(sum - 1.0) > kSimplexTol)
            throw ValidationError(ValidationKind::not_simplex,
                                  what + " entries sum to " + std::to_string(sum));
    }

    static ProbabilityMeasure uniform(std::size_t n) {
        return ProbabilityMeasure(Vec(n, 1.0 / static_cast<double>(n)));
    }

    /// Normalizes nonnegative weights (not all zero) onto the simplex.
    static ProbabilityMeasure normalized(Vec w) {
        double sum = 0.0;
        for (double x : w) sum += x;
        if (!(sum > 0.0))
            throw ValidationError(ValidationKind::not_simplex, "weights sum to zero");
        for (double& x : w) x /= sum;
        return ProbabilityMeasure(std::move(w));
    }

    [[nodiscard]] std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    [[nodiscard]] const Vec& values() const noexcept { return p_; }

    /// True when every state carries positive mass (the set M0).
    [[nodiscard]] bool full_support() const noexcept {
        for (double x : p_)
            if (x <= 0.0) return false;
        return true;
    }

    friend bool operator==(const ProbabilityMeasure&, const ProbabilityMeasure&) = default;

private:
    Vec p_;
};

/// Total variation distance, (1/2) * L1 on a finite space.
inline double total_variation(const ProbabilityMeasure& a, const ProbabilityMeasure& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

}  // namespace ldmc
