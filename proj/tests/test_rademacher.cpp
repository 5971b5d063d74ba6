#include "pm/rademacher.hpp"

#include "doctest.h"

#include <cmath>

using namespace pm;

namespace {

// (a b; c d) in SL2(Z) for coprime c, d
Complex chi_cd(long n, long h, long v, long c, long d)
{
    long a = 1;
    if (c > 1) {
        while (mod(a * d, c) != 1)
            ++a;
    }
    long b = (a * d - 1) / c;
    return chi_eval(n, h, v, a, b, c, d);
}

RademacherSpec spec_31(long cmax)
{
    RademacherSpec s;
    s.m = 1;
    s.D0 = -3;
    s.r0 = 1;
    s.cmax = cmax;
    s.dmax = 12;
    s.workers = 2;
    return s;
}

}

TEST_SUITE("rademacher") {

TEST_CASE("character values")
{
    CHECK(std::abs(chi_eval(1, 1, 0, 1, 0, 5, 1) - 1.0) < 1e-15);
    CHECK(std::abs(chi_eval(5, 1, 1, 1, 0, 5, 1) - 1.0) < 1e-15);
    CHECK(std::abs(chi_eval(3, 3, 2, 1, 0, 3, 1) - e_frac(-2, 3)) < 1e-15);
    // trivial on Gamma0(nh)
    for (long c = 9; c < 200; c += 9)
        for (long d = 1; d < 30; ++d)
            if (gcd(c, d) == 1)
                CHECK(std::abs(chi_cd(3, 3, 2, c, d) - 1.0) < 1e-12);
    CHECK(std::abs(chi_cd(3, 3, 2, 3, 2) - e_frac(-4, 3)) < 1e-12);
    CHECK_THROWS_AS(chi_eval(3, 1, 1, 1, 0, 2, 1), DomainError);
    // huge products are reduced exactly
    long c = 288L * 1000003L;
    CHECK(std::abs(chi_eval(24, 12, 11, c - 1, c - 2, c, c - 1) - 1.0) < 1e-12);
    CHECK(std::abs(chi_eval(24, 5, 1, c - 1, c - 2, c, c - 1) - e_frac(2, 5)) < 1e-9);
}

TEST_CASE("bessel I_1/2")
{
    CHECK(bessel_I_half(1.0) == doctest::Approx(0.9376748882).epsilon(1e-10));
    for (double x : {1e-3, 1e-2, 0.05}) {
        double lead = std::sqrt(2.0 / M_PI) * std::sqrt(x) * (1 + x * x / 6);
        CHECK(bessel_I_half(x) == doctest::Approx(lead).epsilon(1e-6));
    }
    for (double x = 0.1; x <= 10.0; x += 0.1) {
        double a = bessel_I_half(x), b = bessel_I_series(0.5, x, 60);
        CHECK(std::abs(a - b) / a < 1e-12);
    }
}

TEST_CASE("completion")
{
    auto s = completion_of(0, 1);
    CHECK(s.a == 0);
    CHECK(s.b == -1);
    CHECK(s.c == 1);
    CHECK(s.d == 0);
    auto g = completion_of(1, 2);
    CHECK(g.a == 1);
    CHECK(g.c == 2);
    CHECK(g.a * g.d - g.b * g.c == 1);
    for (long c = 1; c < 60; ++c)
        for (long a = 0; a < c; ++a) {
            if (gcd(a, c) != 1)
                continue;
            auto h = completion_of(a, c);
            CHECK(h.a * h.d - h.b * h.c == 1);
            CHECK(h.c == c);
            CHECK(mod(h.a, c) == a);
            CHECK(h.d >= 0);
            CHECK(h.d < std::max(c, 2L));
        }
    CHECK_THROWS_AS(completion_of(2, 4), DomainError);
}

TEST_CASE("summand does not depend on the d representative")
{
    RademacherSpec s = spec_31(16);
    for (long m : {1L, 7L, 13L}) {
        s.m = m;
        s.r0 = smallest_root(-3, m);
        for (long c = 1; c <= 12; ++c)
            for (long a = 0; a < c; ++a) {
                if (gcd(a, c) != 1)
                    continue;
                auto g = completion_of(a, c);
                for (long D : {0L, 4L * m + 0, 9L})
                    for (long r : sqrt_classes(D, m)) {
                        auto x = rademacher_summand(s, D, r, a, c, g.d);
                        auto y = rademacher_summand(s, D, r, a, c, g.d + c);
                        auto z = rademacher_summand(s, D, r, a, c, g.d - 3 * c);
                        CHECK(std::abs(x - y) < 1e-9);
                        CHECK(std::abs(x - z) < 1e-9);
                    }
            }
    }
}

TEST_CASE("raw sums are symmetric and worker independent")
{
    RademacherSpec s;
    s.m = 7;
    s.D0 = -3;
    s.r0 = 5;
    s.cmax = 60;
    s.dmax = 30;
    std::vector<DR> targets;
    for (long D = 0; D <= 30; ++D)
        for (long r : sqrt_classes(D, 7))
            targets.push_back({D, r});
    s.workers = 1;
    auto one = rademacher_raw(s, targets);
    s.workers = 3;
    auto three = rademacher_raw(s, targets);
    for (auto& t : targets) {
        CHECK(one.raw.at(t) == three.raw.at(t));    // bit-identical
        DR mirror{t.first, mod(-t.second, 14)};
        CHECK(std::abs(one.raw.at(t) - one.raw.at(mirror)) < 1e-9);
        CHECK(std::abs(one.diagnostics.at(t).imag) < 1e-9);
    }
    CHECK(one.shell_norm == three.shell_norm);
}

TEST_CASE("normalized sum at (-3,1)")
{
    auto lam = Lambdency::parse("-3:1");
    auto ns = normalized_sum(lam, 1, 1, 0, 512, 12, 0.2, 0);
    REQUIRE(ns.ok());
    auto& R = ns.rounded;
    CHECK(R.coeff(-3, 1) == 1);
    CHECK(R.coeff(1, 1) == 0);
    CHECK(R.coeff(0, 0) == 124);
    CHECK(R.coeff(4, 0) == 27000);
    CHECK(R.coeff(9, 1) == -4096000);
    CHECK(R.coeff(12, 0) == 44330496);
}

TEST_CASE("normalized sum at (-3,19+19)")
{
    auto lam = Lambdency::parse("-3:19+19");
    auto ns = normalized_sum(lam, 1, 1, 0, 200, 40, 0.2, 0);
    REQUIRE(ns.ok());
    CHECK(ns.rounded.coeff(-3, lam.r0) == 1);
    CHECK(ns.rounded.coeff(0, 0) == 1);
    CHECK(ns.rounded.coeff(1, 1) == 0);
}

TEST_CASE("bad sum parameters are rejected")
{
    RademacherSpec s = spec_31(8);
    s.r0 = 0;    // 0^2 is not -3 mod 4
    CHECK_THROWS_AS(rademacher_raw(s, {{0, 0}}), DomainError);
    s = spec_31(8);
    CHECK_THROWS_AS(rademacher_raw(s, {{2, 1}}), DomainError);    // support
}

}
