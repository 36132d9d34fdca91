#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kn/exact.hpp"

using namespace kn;

namespace {

IntegerMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, int span = 5) {
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.range(-span, span);
    return m;
}

/// Test-local determinant by cofactor-free rational elimination.
Rat det_oracle(const IntegerMatrix& m) {
    const std::size_t n = m.rows();
    REQUIRE(m.cols() == n);
    RationalMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(m(i, j));
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t i = col; i < n; ++i)
            if (a(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv == n) return Rat(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            const Rat f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

/// Random unimodular matrix from elementary operations.
IntegerMatrix random_unimodular(SplitMix64& rng, std::size_t n) {
    IntegerMatrix u = IntegerMatrix::identity(n);
    for (int step = 0; step < 12; ++step) {
        const std::size_t a = rng.range(0, n - 1), b = rng.range(0, n - 1);
        const int q = static_cast<int>(rng.range(-2, 2));
        if (a == b) continue;
        for (std::size_t j = 0; j < n; ++j) u(a, j) += q * u(b, j);
    }
    return u;
}

void check_snf_invariants(const IntegerMatrix& m) {
    const SnfFactorization f = smith_normal_form(m);
    CHECK(f.U * m * f.V == f.D);
    // D diagonal, nonnegative, divisibility chain
    for (std::size_t i = 0; i < f.D.rows(); ++i)
        for (std::size_t j = 0; j < f.D.cols(); ++j)
            if (i != j) CHECK(f.D(i, j) == 0);
    const auto diag = f.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (i + 1 < diag.size() && diag[i] != 0) {
            if (diag[i + 1] != 0)
                CHECK(diag[i + 1] % diag[i] == 0);
        }
        if (diag[i] == 0 && i + 1 < diag.size()) CHECK(diag[i + 1] == 0);
    }
    if (m.rows() > 0) {
        const Rat du = det_oracle(f.U);
        CHECK((du == 1 || du == -1));
    }
    if (m.cols() > 0) {
        const Rat dv = det_oracle(f.V);
        CHECK((dv == 1 || dv == -1));
    }
}

} // namespace

TEST_CASE("smith normal form on small fixed matrices") {
    SUBCASE("identity") {
        const auto f = smith_normal_form(IntegerMatrix::identity(3));
        CHECK(f.D == IntegerMatrix::identity(3));
    }
    SUBCASE("zero") {
        IntegerMatrix z(2, 2);
        const auto f = smith_normal_form(z);
        CHECK(f.D == z);
    }
    SUBCASE("diag(2,3) has invariant factors 1, 6") {
        // oracle: d1 = gcd of entries = 1, d1*d2 = |det| = 6
        const auto f = smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
        CHECK(f.D == IntegerMatrix::from_rows({{1, 0}, {0, 6}}));
        check_snf_invariants(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
    }
    SUBCASE("empty shapes are legal") {
        check_snf_invariants(IntegerMatrix(0, 3));
        check_snf_invariants(IntegerMatrix(3, 0));
        check_snf_invariants(IntegerMatrix(0, 0));
        CHECK(smith_normal_form(IntegerMatrix(0, 3)).rank() == 0);
    }
}

TEST_CASE("cokernel invariants") {
    SUBCASE("column of ones into Z^3") {
        const auto g = cokernel_invariants(IntegerMatrix::from_rows({{1}, {1}, {1}}));
        CHECK(g.free_rank == 2);
        CHECK(g.torsion.empty());
    }
    SUBCASE("multiplication by 2 on Z") {
        const auto g = cokernel_invariants(IntegerMatrix::from_rows({{2}}));
        CHECK(g.free_rank == 0);
        REQUIRE(g.torsion.size() == 1);
        CHECK(g.torsion[0] == 2);
    }
    SUBCASE("zero map into Z^n") {
        const auto g = cokernel_invariants(IntegerMatrix(4, 0));
        CHECK(g.free_rank == 4);
        CHECK(g.torsion.empty());
    }
}

TEST_CASE("kernel basis") {
    SUBCASE("single row of ones") {
        const auto k = kernel_basis(IntegerMatrix::from_rows({{1, 1, 1}}));
        CHECK(k.cols() == 2);
        CHECK((IntegerMatrix::from_rows({{1, 1, 1}}) * k).is_zero());
    }
    SUBCASE("injective map has empty kernel") {
        CHECK(kernel_basis(IntegerMatrix::identity(3)).cols() == 0);
    }
    SUBCASE("kernel is saturated") {
        const auto m = IntegerMatrix::from_rows({{2, 4, 6}, {1, 2, 3}});
        const auto k = kernel_basis(m);
        REQUIRE(k.cols() == 2);
        CHECK((m * k).is_zero());
        for (const Int& d : smith_normal_form(k).diagonal()) CHECK(d == 1);
    }
}

TEST_CASE("rational solving") {
    SUBCASE("identity system") {
        RationalMatrix m(2, 2);
        m(0, 0) = 1;
        m(1, 1) = 1;
        const RatVector b{Rat(3, 2), Rat(-7)};
        auto x = solve_rational(m, b);
        REQUIRE(x.has_value());
        CHECK(*x == b);
    }
    SUBCASE("inconsistent system") {
        RationalMatrix m(2, 1);
        m(0, 0) = 1;
        m(1, 0) = 1;
        auto x = solve_rational(m, {Rat(0), Rat(1)});
        CHECK(!x.has_value());
    }
    SUBCASE("underdetermined system returns some exact solution") {
        RationalMatrix m(1, 3);
        m(0, 0) = 2;
        m(0, 1) = 3;
        m(0, 2) = 5;
        auto x = solve_rational(m, {Rat(7)});
        REQUIRE(x.has_value());
        CHECK(Rat(2) * (*x)[0] + Rat(3) * (*x)[1] + Rat(5) * (*x)[2] == Rat(7));
    }
}

TEST_CASE("lattice membership") {
    CHECK(lattice_membership({Int(0), Int(0)}, IntegerMatrix::from_rows({{1, 0}, {0, 0}})));
    CHECK(!lattice_membership({Int(1)}, IntegerMatrix::from_rows({{2}})));
    CHECK(lattice_membership({Int(2), Int(4)}, IntegerMatrix::from_rows({{1, 0}, {2, 0}})));
    SUBCASE("coordinates recover the vector") {
        const auto g = IntegerMatrix::from_rows({{1, 0}, {2, 0}});
        const auto c = lattice_coordinates({Int(2), Int(4)}, g);
        REQUIRE(c.has_value());
        CHECK(g * *c == IntVector{Int(2), Int(4)});
    }
}

TEST_CASE("group canonicalization") {
    SUBCASE("coprime moduli merge") {
        const auto g = group_from_moduli(0, {Int(2), Int(3)});
        REQUIRE(g.torsion.size() == 1);
        CHECK(g.torsion[0] == 6);
    }
    SUBCASE("equal moduli stay") {
        const auto g = group_from_moduli(0, {Int(2), Int(2)});
        REQUIRE(g.torsion.size() == 2);
        CHECK(g.torsion[0] == 2);
        CHECK(g.torsion[1] == 2);
    }
    SUBCASE("chain is enforced") {
        const auto g = group_from_moduli(1, {Int(4), Int(6)});
        REQUIRE(g.torsion.size() == 2);
        CHECK(g.torsion[0] == 2);
        CHECK(g.torsion[1] == 12);
        CHECK(g.free_rank == 1);
    }
    SUBCASE("unit moduli vanish, zero moduli are free") {
        const auto g = group_from_moduli(0, {Int(1), Int(0), Int(5)});
        CHECK(g.free_rank == 1);
        REQUIRE(g.torsion.size() == 1);
        CHECK(g.torsion[0] == 5);
    }
}

TEST_CASE("lattice quotient presentation") {
    // Z^3 / <2e1, 3e2> = Z/6 + Z after canonicalization
    IntegerMatrix d_out(0, 3);
    const auto d_in = IntegerMatrix::from_rows({{2, 0}, {0, 3}, {0, 0}});
    LatticeQuotient q(d_out, d_in);
    CHECK(q.group().free_rank == 1);
    REQUIRE(q.group().torsion.size() == 1);
    CHECK(q.group().torsion[0] == 6);

    SUBCASE("classification separates classes") {
        auto zero = q.classify({Int(2), Int(0), Int(0)});
        REQUIRE(zero.has_value());
        CHECK(zero->is_zero());
        auto nz = q.classify({Int(0), Int(0), Int(1)});
        REQUIRE(nz.has_value());
        CHECK(!nz->is_zero());
    }
    SUBCASE("representative round trip") {
        auto c = q.classify({Int(1), Int(1), Int(2)});
        REQUIRE(c.has_value());
        auto back = q.classify(q.representative(*c));
        REQUIRE(back.has_value());
        CHECK(*back == *c);
    }
}

TEST_CASE("property: SNF identities on 500 random small matrices") {
    SplitMix64 rng(0xC0FFEE);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t r = rng.range(0, 6), c = rng.range(0, 6);
        check_snf_invariants(random_matrix(rng, r, c));
    }
}

TEST_CASE("property: SNF rank equals fraction-free rank") {
    SplitMix64 rng(0xBEEF);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_matrix(rng, rng.range(1, 6), rng.range(1, 6));
        CHECK(snf_rank(m) == bareiss_rank(m));
    }
}

TEST_CASE("property: kernel basis is a saturated annihilator") {
    SplitMix64 rng(0x5EED);
    for (int trial = 0; trial < 120; ++trial) {
        const auto m = random_matrix(rng, rng.range(1, 5), rng.range(1, 6));
        const auto k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(k.cols() == m.cols() - snf_rank(m));
        for (const Int& d : smith_normal_form(k).diagonal()) CHECK(d == 1);
    }
}

TEST_CASE("property: cokernel invariants stable under unimodular changes") {
    SplitMix64 rng(0xD1CE);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = rng.range(1, 5), c = rng.range(1, 5);
        const auto m = random_matrix(rng, r, c);
        const auto left = random_unimodular(rng, r);
        const auto right = random_unimodular(rng, c);
        CHECK(cokernel_invariants(m) == cokernel_invariants(left * m));
        CHECK(cokernel_invariants(m) == cokernel_invariants(m * right));
        CHECK(cokernel_invariants(m) == cokernel_invariants(left * m * right));
    }
}

TEST_CASE("property: integral solve returns exact solutions") {
    SplitMix64 rng(0xFACADE);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t r = rng.range(1, 5), c = rng.range(1, 5);
        const auto m = random_matrix(rng, r, c);
        IntVector x(c);
        for (std::size_t j = 0; j < c; ++j) x[j] = rng.range(-4, 4);
        const IntVector b = m * x;
        const auto sol = solve_integer(m, b);
        REQUIRE(sol.has_value());
        CHECK(m * *sol == b);
    }
}

TEST_CASE("unimodular inverse") {
    SplitMix64 rng(0xAB);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = rng.range(1, 5);
        const auto u = random_unimodular(rng, n);
        CHECK(u * unimodular_inverse(u) == IntegerMatrix::identity(n));
    }
    CHECK_THROWS(unimodular_inverse(IntegerMatrix::from_rows({{2}})));
}
