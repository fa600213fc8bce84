#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>

#include "ldmc/expm.hpp"
#include "ldmc/qmatrix.hpp"
#include "ldmc/rng.hpp"
#include "ldmc/spectral.hpp"
#include "ldmc/stationary.hpp"
#include "oracles.hpp"

using namespace ldmc;
using Catch::Approx;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("validate_q_matrix accepts killed and conservative generators") {
    const QMatrix killed = validate_q_matrix(from_rows({{-2, 1}, {1, -2}}));
    CHECK(killed.killing()[0] == 1.0);
    CHECK(killed.killing()[1] == 1.0);
    CHECK_FALSE(killed.is_conservative());

    const QMatrix conservative = validate_q_matrix(from_rows({{-1, 1}, {1, -1}}));
    CHECK(conservative.killing()[0] == 0.0);
    CHECK(conservative.killing()[1] == 0.0);
    CHECK(conservative.is_conservative());
}

TEST_CASE("validate_q_matrix flags the offending entry") {
    try {
        validate_q_matrix(from_rows({{-1, 0}, {1, -1}}));
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationKind::off_diagonal_not_positive);
        CHECK(e.row() == 1);
        CHECK(e.col() == 2);
    }

    CHECK_THROWS_AS(validate_q_matrix(Matrix(1, 1, -1.0)), ValidationError);
    CHECK_THROWS_AS(validate_q_matrix(Matrix(2, 3)), ValidationError);

    Matrix nan_entry = from_rows({{-2, 1}, {1, -2}});
    nan_entry(0, 1) = std::nan("");
    CHECK_THROWS_AS(validate_q_matrix(nan_entry), ValidationError);
}

TEST_CASE("validator fuzz: a single injected violation is flagged as itself") {
    RngStream rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 5);
        Matrix q(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            double total = oracles::uniform_in(rng, 0.0, 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                q(i, j) = oracles::uniform_in(rng, 0.2, 5.0);
                total += q(i, j);
            }
            q(i, i) = -total;
        }
        const std::size_t i = rng.next_u64() % n;
        const std::size_t j_off = 1 + rng.next_u64() % (n - 1);
        const std::size_t j = (i + j_off) % n;
        const int which = static_cast<int>(rng.next_u64() % 3);
        ValidationKind expected{};
        if (which == 0) {
            q(i, i) = oracles::uniform_in(rng, 0.0, 1.0);  // nonnegative diagonal
            expected = ValidationKind::diagonal_not_negative;
        } else if (which == 1) {
            q(i, j) = -oracles::uniform_in(rng, 0.0, 1.0);  // nonpositive off-diagonal
            expected = ValidationKind::off_diagonal_not_positive;
        } else {
            q(i, j) += -q(i, i);  // push the row sum strictly positive
            expected = ValidationKind::row_sum_positive;
        }
        try {
            validate_q_matrix(q);
            FAIL("violation was not flagged");
        } catch (const ValidationError& e) {
            CHECK(e.kind() == expected);
            CHECK(e.row() == static_cast<std::ptrdiff_t>(i + 1));
            if (which == 1) CHECK(e.col() == static_cast<std::ptrdiff_t>(j + 1));
        }
    }
}

TEST_CASE("apply_generator matches the defining sum") {
    const QMatrix conservative = validate_q_matrix(from_rows({{-1, 1}, {1, -1}}));
    CHECK(apply_generator(conservative, Vec{1, 1}) == Vec{0, 0});

    const QMatrix killed = validate_q_matrix(from_rows({{-2, 1}, {1, -2}}));
    CHECK(apply_generator(killed, Vec{1, 1}) == Vec{-1, -1});
    CHECK(apply_generator(killed, Vec{1, 2}) == Vec{0, -3});

    CHECK_THROWS_AS(apply_generator(killed, Vec{1, 2, 3}), ValidationError);
}

TEST_CASE("expm_apply at t = 0 is the identity") {
    const QMatrix q = validate_q_matrix(from_rows({{-2, 1}, {1, -2}}));
    const Vec v{0.3, -1.7};
    CHECK(expm_apply(q, 0.0, v) == v);
    CHECK_THROWS_AS(expm_apply(q, -1.0, v), ValidationError);
}

TEST_CASE("expm_apply with uniform killing is e^{-ct} on constants") {
    // Q = Q0 - cI with conservative Q0; the killing factor commutes.
    RngStream rng(7);
    const QMatrix q0 = oracles::random_conservative_q(rng, 4, 0.3, 3.0);
    const double c = 0.7;
    Matrix q = q0.matrix();
    for (std::size_t i = 0; i < 4; ++i) q(i, i) -= c;
    for (double t : {0.1, 1.0, 4.0}) {
        const Vec s = expm_apply(validate_q_matrix(q), t, Vec(4, 1.0));
        for (double x : s) CHECK(x == Approx(std::exp(-c * t)).epsilon(1e-10));
    }
}

TEST_CASE("expm_apply agrees with the Taylor scaling-and-squaring oracle") {
    RngStream rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.next_u64() % 3);
        const QMatrix q = oracles::random_q(rng, n, 0.1, 4.0, 0.0, 1.0);
        Vec v(n);
        for (auto& x : v) x = oracles::uniform_in(rng, -2.0, 2.0);
        const double t = oracles::uniform_in(rng, 0.05, 3.0);
        const Vec got = expm_apply(q, t, v);
        const Vec want = oracles::taylor_expm_apply(q.matrix(), t, v);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(got[i] == Approx(want[i]).margin(1e-9).epsilon(1e-9));
    }
    // the spec's named instance: 3-state, t = 1, v = 1
    RngStream named(3);
    const QMatrix q = oracles::random_q(named, 3, 0.2, 2.0, 0.1, 0.8);
    const Vec got = expm_apply(q, 1.0, Vec(3, 1.0));
    const Vec want = oracles::taylor_expm_apply(q.matrix(), 1.0, Vec(3, 1.0));
    for (std::size_t i = 0; i < 3; ++i) CHECK(got[i] == Approx(want[i]).margin(1e-9));
}

TEST_CASE("expm_apply semigroup property") {
    RngStream rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const QMatrix q = oracles::random_q(rng, 4, 0.1, 3.0, 0.0, 1.0);
        Vec v(4);
        for (auto& x : v) x = oracles::uniform_in(rng, -1.0, 1.0);
        const double s = oracles::uniform_in(rng, 0.1, 2.0);
        const double t = oracles::uniform_in(rng, 0.1, 2.0);
        const Vec joint = expm_apply(q, s + t, v);
        const Vec nested = expm_apply(q, s, expm_apply(q, t, v));
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(joint[i] == Approx(nested[i]).margin(1e-9));
    }
}

TEST_CASE("survival vector stays in (0,1] and is non-increasing in t") {
    RngStream rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const QMatrix q = oracles::random_q(rng, 3, 0.1, 3.0, 0.05, 1.5);
        Vec prev(3, 1.0);
        for (double t : {0.25, 0.5, 1.0, 2.0, 5.0, 20.0}) {
            const Vec s = expm_apply(q, t, Vec(3, 1.0));
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(s[i] > 0.0);
                CHECK(s[i] <= 1.0 + 1e-14);
                CHECK(s[i] <= prev[i] + 1e-12);
            }
            prev = s;
        }
    }
}

TEST_CASE("expm_apply reports an unsummable horizon instead of clamping") {
    const QMatrix q = validate_q_matrix(from_rows({{-2, 1}, {1, -2}}));
    CHECK_THROWS_AS(expm_apply(q, 1e6, Vec{1, 1}), NumericRangeError);
}

TEST_CASE("principal_eigenvalue on closed forms") {
    RngStream rng(17);
    const QMatrix q0 = oracles::random_conservative_q(rng, 4, 0.2, 3.0);
    const PrincipalEigen conservative = principal_eigenvalue(q0.matrix());
    CHECK(conservative.lambda == Approx(0.0).margin(1e-11));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(conservative.w[i] == Approx(1.0).epsilon(1e-9));

    const double c = 1.3;
    Matrix shifted = q0.matrix();
    for (std::size_t i = 0; i < 4; ++i) shifted(i, i) -= c;
    CHECK(principal_eigenvalue(shifted).lambda == Approx(-c).margin(1e-11));

    const Matrix circulant = from_rows({{-2, 1}, {1, -2}});
    CHECK(principal_eigenvalue(circulant).lambda == Approx(-1.0).margin(1e-12));
}

TEST_CASE("principal_eigenvalue is shift invariant") {
    RngStream rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 4);
        const QMatrix q = oracles::random_q(rng, n, 0.1, 5.0, 0.0, 2.0);
        const double c = oracles::uniform_in(rng, -3.0, 3.0);
        Matrix shifted = q.matrix();
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c;
        const PrincipalEigen base = principal_eigenvalue(q.matrix());
        const PrincipalEigen moved = principal_eigenvalue(shifted);
        CHECK(moved.lambda - base.lambda == Approx(c).margin(1e-12));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(moved.w[i] == Approx(base.w[i]).margin(1e-10));
    }
}

TEST_CASE("principal_eigenvalue matches the characteristic-polynomial oracle") {
    RngStream rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.next_u64() % 3);
        const QMatrix q = oracles::random_q(rng, n, 0.1, 4.0, 0.0, 1.5);
        const PrincipalEigen got = principal_eigenvalue(q.matrix());
        const auto want = oracles::spectral_summary(q.matrix());
        CHECK(got.lambda == Approx(want.lambda_max).margin(1e-8));
        // eigen residual: Mw = lambda w
        const Vec mw = mat_vec(q.matrix(), got.w.values());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(mw[i] == Approx(got.lambda * got.w[i]).margin(1e-10));
    }
}

TEST_CASE("left eigenvector pairs with the same eigenvalue") {
    RngStream rng(29);
    const QMatrix q = oracles::random_q(rng, 4, 0.2, 3.0, 0.1, 1.0);
    const PrincipalEigen right = principal_eigenvalue(q.matrix());
    const PrincipalEigen left = principal_left_eigenvector(q.matrix());
    CHECK(left.lambda == Approx(right.lambda).margin(1e-11));
    const Vec lm = mat_tvec(q.matrix(), left.w.values());
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(lm[i] == Approx(left.lambda * left.w[i]).margin(1e-10));
}

TEST_CASE("stationary_distribution closed forms") {
    RngStream rng(31);
    Matrix sym(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            sym(i, j) = sym(j, i) = oracles::uniform_in(rng, 0.3, 2.0);
    for (std::size_t i = 0; i < 3; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i) s += sym(i, j);
        sym(i, i) = -s;
    }
    const ProbabilityMeasure uniform = stationary_distribution(sym);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(uniform[i] == Approx(1.0 / 3).margin(1e-13));

    const ProbabilityMeasure two = stationary_distribution(from_rows({{-2, 2}, {0.5, -0.5}}));
    CHECK(two[0] == Approx(0.2).margin(1e-13));
    CHECK(two[1] == Approx(0.8).margin(1e-13));
}

TEST_CASE("stationary_distribution residual and preconditions") {
    RngStream rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const QMatrix g = oracles::random_conservative_q(rng, 4, 0.05, 5.0);
        const ProbabilityMeasure nu = stationary_distribution(g.matrix());
        double residual = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < 4; ++i) s += nu[i] * g(i, j);
            residual = std::max(residual, std::abs(s));
        }
        CHECK(residual <= 1e-12);
        for (std::size_t i = 0; i < 4; ++i) CHECK(nu[i] > 0.0);
    }
    // killed generator is not conservative
    CHECK_THROWS_AS(stationary_distribution(from_rows({{-2, 1}, {1, -2}})), ValidationError);
}
