#include "pm/arith.hpp"
#include "pm/jacobi.hpp"
#include "pm/weil.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace pm;

namespace {

const Complex I(0, 1);

MetaplecticElement random_element(std::mt19937& rng, int len)
{
    std::uniform_int_distribution<int> k(-3, 3);
    auto g = MetaplecticElement::identity();
    for (int i = 0; i < len; ++i) {
        g = multiply(g, MetaplecticElement::T(k(rng)));
        g = multiply(g, MetaplecticElement::S());
    }
    return g;
}

WeilMatrix flip(long m)
{
    WeilMatrix f(m);
    for (long r = 0; r < 2 * m; ++r)
        f(mod(-r, 2 * m), r) = 1;
    return f;
}

WeilMatrix from_omega(const OmegaMatrix& o)
{
    WeilMatrix w(o.m);
    for (long r = 0; r < 2 * o.m; ++r)
        for (long s = 0; s < 2 * o.m; ++s)
            w(r, s) = o(r, s);
    return w;
}

WeilMatrix power(const WeilMatrix& a, int k)
{
    auto r = WeilMatrix::identity(a.m);
    for (int i = 0; i < k; ++i)
        r = r * a;
    return r;
}

}

TEST_SUITE("weil") {

TEST_CASE("generators at m = 1")
{
    auto T = gen_T(1);
    CHECK(std::abs(T(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(T(1, 1) - I) < 1e-15);
    CHECK(std::abs(T(0, 1)) < 1e-15);
    auto S = gen_S(1);
    Complex c = e_of(-1.0 / 8) / std::sqrt(2.0);
    CHECK(std::abs(S(0, 0) - c) < 1e-15);
    CHECK(std::abs(S(0, 1) - c) < 1e-15);
    CHECK(std::abs(S(1, 0) - c) < 1e-15);
    CHECK(std::abs(S(1, 1) + c) < 1e-15);
}

TEST_CASE("S row 0 is constant")
{
    for (long m = 1; m <= 13; ++m) {
        auto S = gen_S(m);
        Complex c = e_of(-1.0 / 8) / std::sqrt(2.0 * m);
        for (long r = 0; r < 2 * m; ++r)
            CHECK(std::abs(S(0, r) - c) < 1e-14);
    }
}

TEST_CASE("e_frac reduces before evaluating")
{
    CHECK(std::abs(e_frac(1, 4) - I) < 1e-15);
    CHECK(std::abs(e_frac(4000000000001L, 4) - I) < 1e-15);
    CHECK(std::abs(e_frac(-1, 2) + 1.0) < 1e-15);
}

TEST_CASE("metaplectic multiplication")
{
    auto S = MetaplecticElement::S();
    CHECK(multiply(S, MetaplecticElement::identity()) == S);
    auto S2 = multiply(S, S);
    CHECK(S2.a == -1);
    CHECK(S2.d == -1);
    CHECK(S2.b == 0);
    CHECK(S2.c == 0);
    // upsilon_{S^2}(i) = upsilon_S(S i) upsilon_S(i)
    Complex tau(0.3, 1.1);
    Complex want = S.upsilon(S.act(tau)) * S.upsilon(tau);
    CHECK(std::abs(S2.upsilon(tau) - want) < 1e-12);
    auto S4 = multiply(S2, S2);
    CHECK(S4.a == 1);
    CHECK(S4.branch == -1);

    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        auto a = random_element(rng, 3), b = random_element(rng, 2), c = random_element(rng, 3);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        CHECK(multiply(a, inverse(a)) == MetaplecticElement::identity());
    }
}

TEST_CASE("rho of simple elements")
{
    for (long m : {1L, 2L, 3L, 7L}) {
        CHECK(rho(m, MetaplecticElement::identity()).max_abs_diff(WeilMatrix::identity(m)) < 1e-12);
        CHECK(rho(m, MetaplecticElement::S()).max_abs_diff(gen_S(m)) < 1e-12);
        CHECK(rho(m, MetaplecticElement::T()).max_abs_diff(gen_T(m)) < 1e-12);
    }
    auto S = gen_S(1);
    CHECK((S * S).max_abs_diff(WeilMatrix::identity(1) * e_of(-0.25)) < 1e-12);
}

TEST_CASE("braid relation")
{
    for (long m = 1; m <= 13; ++m) {
        auto S = gen_S(m), T = gen_T(m);
        auto ST = S * T;
        CHECK((ST * ST * ST).max_abs_diff(S * S) < 1e-10);
    }
}

TEST_CASE("S squared is e(-1/4) times the flip; S^4 = -Id")
{
    for (long m = 1; m <= 13; ++m) {
        auto S = gen_S(m);
        CHECK((S * S).max_abs_diff(flip(m) * e_of(-0.25)) < 1e-10);
        CHECK(power(S, 4).max_abs_diff(WeilMatrix::identity(m) * Complex(-1)) < 1e-10);
        MetaplecticElement minus{1, 0, 0, 1, -1};
        CHECK(rho(m, minus).max_abs_diff(WeilMatrix::identity(m) * Complex(-1)) < 1e-10);
    }
}

TEST_CASE("unitarity")
{
    std::mt19937 rng(11);
    for (long m : {1L, 2L, 3L, 6L, 13L, 21L}) {
        CHECK(gen_S(m).unitarity_defect() < 1e-12);
        CHECK(gen_T(m).unitarity_defect() < 1e-12);
        for (int t = 0; t < 10; ++t)
            CHECK(rho(m, random_element(rng, 4)).unitarity_defect() < 1e-12);
    }
}

TEST_CASE("homomorphism on random pairs")
{
    std::mt19937 rng(2024);
    for (long m : {1L, 2L, 3L, 13L})
        for (int t = 0; t < 100; ++t) {
            auto g = random_element(rng, 1 + t % 4), h = random_element(rng, 1 + t % 3);
            auto lhs = rho(m, multiply(g, h));
            auto rhs = rho(m, g) * rho(m, h);
            CHECK(lhs.max_abs_diff(rhs) < 1e-9);
        }
}

TEST_CASE("dual")
{
    auto d = rho_dual(1, MetaplecticElement::T());
    CHECK(std::abs(d(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(d(1, 1) + I) < 1e-15);
    CHECK(rho_dual(4, MetaplecticElement::identity()).max_abs_diff(WeilMatrix::identity(4)) < 1e-15);
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        auto g = random_element(rng, 3);
        CHECK(rho_dual(5, g).conj().max_abs_diff(rho(5, g)) < 1e-12);
    }
}

TEST_CASE("rows agree with full matrices")
{
    std::mt19937 rng(99);
    for (long m : {1L, 6L, 19L})
        for (int t = 0; t < 10; ++t) {
            auto g = random_element(rng, 5);
            auto full = rho(m, g);
            std::vector<long> rows{0, 1, 2 * m - 1};
            auto part = rho_rows(m, g, rows);
            for (size_t i = 0; i < rows.size(); ++i)
                for (long r = 0; r < 2 * m; ++r)
                    CHECK(std::abs(part[i][r] - full(rows[i], r)) < 1e-10);
        }
}

TEST_CASE("omega matrices commute with the Weil representation")
{
    for (long m = 1; m <= 42; ++m) {
        auto S = gen_S(m), T = gen_T(m);
        for (long n : exact_divisors(m).elements) {
            auto O = from_omega(omega_matrix(m, n));
            CHECK((O * S).max_abs_diff(S * O) < 1e-10);
            CHECK((O * T).max_abs_diff(T * O) < 1e-10);
        }
    }
}

}
