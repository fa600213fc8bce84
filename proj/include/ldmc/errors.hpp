#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldmc {

/// Input/contract violations surfaced by the library. Indices in messages
/// and accessors are 1-based, matching the state labels E = {1,...,n}.
enum class ValidationKind {
    not_square,
    too_small,
    not_finite,
    diagonal_not_negative,
    off_diagonal_not_positive,
    row_sum_positive,
    length_mismatch,
    not_positive,
    not_simplex,
    mu_not_full_support,
    negative_time,
    malformed_path,
    horizon_exceeded,
    not_conservative,
    parse_error,
    unknown_field,
};

inline const char* validation_kind_name(ValidationKind k) {
    switch (k) {
        case ValidationKind::not_square: return "NotSquare";
        case ValidationKind::too_small: return "TooSmall";
        case ValidationKind::not_finite: return "NotFinite";
        case ValidationKind::diagonal_not_negative: return "DiagonalNotNegative";
        case ValidationKind::off_diagonal_not_positive: return "OffDiagonalNotPositive";
        case ValidationKind::row_sum_positive: return "RowSumPositive";
        case ValidationKind::length_mismatch: return "LengthMismatch";
        case ValidationKind::not_positive: return "NotPositive";
        case ValidationKind::not_simplex: return "NotSimplex";
        case ValidationKind::mu_not_full_support: return "MuNotFullSupport";
        case ValidationKind::negative_time: return "NegativeTime";
        case ValidationKind::malformed_path: return "MalformedPath";
        case ValidationKind::horizon_exceeded: return "HorizonExceeded";
        case ValidationKind::not_conservative: return "NotConservative";
        case ValidationKind::parse_error: return "ParseError";
        case ValidationKind::unknown_field: return "UnknownField";
    }
    return "Unknown";
}

class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationKind kind, const std::string& message,
                    std::ptrdiff_t row = -1, std::ptrdiff_t col = -1)
        : std::runtime_error(std::string(validation_kind_name(kind)) + ": " + message),
          kind_(kind), row_(row), col_(col) {}

    [[nodiscard]] ValidationKind kind() const noexcept { return kind_; }
    /// 1-based offending row index, or -1 when not applicable.
    [[nodiscard]] std::ptrdiff_t row() const noexcept { return row_; }
    /// 1-based offending column index, or -1 when not applicable.
    [[nodiscard]] std::ptrdiff_t col() const noexcept { return col_; }

private:
    ValidationKind kind_;
    std::ptrdiff_t row_;
    std::ptrdiff_t col_;
};

/// An iterative kernel exhausted its budget (signals ill-conditioning,
/// never infeasibility for the problems this library accepts).
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& message)
        : std::runtime_error("NotConverged: " + message) {}
};

/// Numeric range failure that is reported rather than silently clamped
/// (e.g. a uniformization horizon too extreme to sum).
class NumericRangeError : public std::runtime_error {
public:
    explicit NumericRangeError(const std::string& message)
        : std::runtime_error("NumericRange: " + message) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message)
        : std::runtime_error("Io: " + message) {}
};

}  // namespace ldmc
