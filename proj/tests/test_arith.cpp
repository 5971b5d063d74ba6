#include "pm/arith.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>

using namespace pm;

TEST_SUITE("arith") {

TEST_CASE("exact divisors")
{
    CHECK(exact_divisors(1).elements == std::vector<long>{1});
    CHECK(exact_divisors(12).elements == std::vector<long>{1, 3, 4, 12});
    CHECK(exact_divisors(30).elements == std::vector<long>{1, 2, 3, 5, 6, 10, 15, 30});
    CHECK_THROWS_AS(exact_divisors(0), DomainError);
}

TEST_CASE("star")
{
    CHECK(star(3, 7) == 21);
    CHECK(star(6, 10) == 15);
    for (long n = 1; n < 50; ++n)
        CHECK(star(n, n) == 1);
    CHECK_THROWS_AS(star(0, 0), DomainError);
}

TEST_CASE("star is a group law on exact divisors")
{
    for (long m = 1; m <= 60; ++m) {
        auto ex = exact_divisors(m).elements;
        for (long x : ex)
            for (long y : ex) {
                REQUIRE(is_exact_divisor(m, star(x, y)));
                CHECK(star(x, y) == star(y, x));
                for (long z : ex)
                    CHECK(star(star(x, y), z) == star(x, star(y, z)));
            }
    }
}

TEST_CASE("a_of")
{
    CHECK(a_of(1, 1) == 1);
    CHECK(a_of(6, 2) == 7);
    for (long m = 1; m <= 30; ++m)
        CHECK(a_of(m, m) == mod(-1, 2 * m));
    CHECK_THROWS_AS(a_of(12, 2), DomainError);
}

TEST_CASE("a_of is a homomorphism")
{
    for (long m = 1; m <= 60; ++m) {
        auto ex = exact_divisors(m).elements;
        for (long x : ex)
            for (long y : ex)
                CHECK(a_of(m, star(x, y)) == mod(a_of(m, x) * a_of(m, y), 2 * m));
    }
}

TEST_CASE("a_of squares to 1 mod 4m")
{
    for (long m = 1; m <= 200; ++m)
        for (long n : exact_divisors(m).elements) {
            long a = a_of(m, n);
            CHECK(mod(a * a, 4 * m) == 1);
        }
}

TEST_CASE("sqrt classes")
{
    CHECK(sqrt_classes(-3, 1) == std::vector<long>{1});
    CHECK(sqrt_classes(-4, 1) == std::vector<long>{0});
    CHECK(sqrt_classes(-3, 13) == std::vector<long>{7, 19});
    for (long m = 1; m <= 20; ++m)
        for (long D = -30; D <= 30; ++D) {
            auto s = sqrt_classes(D, m);
            for (long r : s)
                CHECK(std::find(s.begin(), s.end(), mod(-r, 2 * m)) != s.end());
        }
}

TEST_CASE("fundamental discriminants")
{
    CHECK(is_fundamental(-3));
    CHECK(is_fundamental(-4));
    CHECK_FALSE(is_fundamental(-12));
    CHECK(is_fundamental(-8));
    CHECK_FALSE(is_fundamental(-16));
    CHECK_THROWS_AS(is_fundamental(5), DomainError);
}

TEST_CASE("gamma0 index")
{
    CHECK(gamma0_index(1) == 1);
    CHECK(gamma0_index(1152) == 2304);
    CHECK(gamma0_index(4) == 6);
    for (long a = 1; a < 40; ++a)
        for (long b = 1; b < 40; ++b)
            if (gcd(a, b) == 1)
                CHECK(gamma0_index(a * b) == gamma0_index(a) * gamma0_index(b));
}

TEST_CASE("gamma0 index against P1(Z/N)")
{
    // [SL2(Z) : Gamma0(N)] = #P1(Z/N), counted as primitive pairs over units
    for (long N = 1; N <= 30; ++N) {
        long pairs = 0, units = 0;
        for (long c = 0; c < N; ++c) {
            if (gcd(c, N) == 1 || N == 1)
                ++units;
            for (long d = 0; d < N; ++d)
                if (gcd(gcd(c, d), N) == 1)
                    ++pairs;
        }
        CHECK(gamma0_index(N) == pairs / units);
    }
}

TEST_CASE("sturm bound")
{
    CHECK(sturm_bound(10, 1, 288) == 1920);
    CHECK(sturm_bound(16, 1, 320) == 3072);
    CHECK(sturm_bound(2, 26, 2) == 56);
    CHECK_THROWS_AS(sturm_bound(3, 1, 1), DomainError);
}

TEST_CASE("kronecker symbol")
{
    for (long n = -20; n <= 20; ++n)
        CHECK(kronecker_symbol(1, n) == 1);
    for (long a = -20; a <= 20; ++a)
        CHECK(kronecker_symbol(a, 1) == 1);
    CHECK(kronecker_symbol(2, 7) == 1);
    CHECK(kronecker_symbol(3, 7) == -1);
    CHECK(kronecker_symbol(-3, 2) == -1);
    CHECK(kronecker_symbol(-4, 3) == -1);
    CHECK(kronecker_symbol(6, 3) == 0);
}

TEST_CASE("kronecker agrees with Euler's criterion for odd primes")
{
    for (long p : {3, 5, 7, 11, 13, 17, 19, 23})
        for (long a = 0; a < p; ++a) {
            long e = 1;
            for (long i = 0; i < (p - 1) / 2; ++i)
                e = e * a % p;
            int want = e == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker_symbol(a, p) == want);
        }
}

TEST_CASE("lambency parsing")
{
    auto l = Lambency::parse("21+3,7,21");
    CHECK(l.m == 21);
    CHECK(l.K == std::vector<long>{1, 3, 7, 21});
    CHECK(l.fricke);
    CHECK(l.genus_zero);
    CHECK(l.str() == "21+3,7,21");

    // closure: 3 * 7 = 21 is implied
    auto l2 = Lambency::parse("21+3,7");
    CHECK(l2.K == l.K);

    auto one = Lambency::parse("1");
    CHECK(one.K == std::vector<long>{1});
    CHECK(one.admits(-3));
    CHECK(one.admits(-4));

    CHECK_THROWS_AS(Lambency::parse("12+2"), DomainError);
    CHECK_THROWS_AS(Lambency::parse("x"), DomainError);
    CHECK_THROWS_AS(Lambency::parse("0"), DomainError);
}

TEST_CASE("lambdency parsing")
{
    auto L = Lambdency::parse("-3:13+13");
    CHECK(L.D0 == -3);
    CHECK(L.m() == 13);
    CHECK(L.r0 == 7);
    CHECK(L.str() == "-3:13+13");
    CHECK(Lambdency::parse("-4:1").r0 == 0);
    CHECK_THROWS_AS(Lambdency::parse("-12:1"), DomainError);
    CHECK_THROWS_AS(Lambdency::parse("13+13"), DomainError);
    CHECK_THROWS_AS(Lambdency::parse("-3:2"), DomainError);    // -3 is not a square mod 8
}

TEST_CASE("om characters")
{
    for (long m : {6L, 10L, 21L, 26L, 30L}) {
        auto chars = all_om_characters(m);
        auto ex = exact_divisors(m).elements;
        CHECK(chars.size() == ex.size());
        for (auto& a : chars)
            for (long x : ex)
                for (long y : ex)
                    CHECK(a.value(star(x, y)) == a.value(x) * a.value(y));
    }
    CHECK_THROWS_AS(OmCharacter::with_kernel(6, {1, 2, 3}), DomainError);
    // index 4 subgroup is not a kernel of a sign character
    CHECK_THROWS_AS(OmCharacter::with_kernel(30, {1, 2}), DomainError);
}

}
