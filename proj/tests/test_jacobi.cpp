#include "pm/arith.hpp"
#include "pm/jacobi.hpp"
#include "pm/moonshine.hpp"

#include "doctest.h"

using namespace pm;

namespace {

mpq_class Q(long n, long d = 1)
{
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

const Dataset& data()
{
    static Dataset ds;
    return ds;
}

bool is_zero(const RationalMatrix& a)
{
    for (auto& row : a)
        for (auto& x : row)
            if (x != 0)
                return false;
    return true;
}

RationalMatrix add(const RationalMatrix& a, const RationalMatrix& b)
{
    auto r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            r[i][j] += b[i][j];
    return r;
}

}

TEST_SUITE("jacobi") {

TEST_CASE("theta nullwerte at m = 1")
{
    auto t0 = theta_null(1, 0, 20);
    CHECK(t0.coefficient(0) == 1);
    CHECK(t0.coefficient(1) == 2);
    CHECK(t0.coefficient(4) == 2);
    CHECK(t0.coefficient(9) == 2);
    CHECK(t0.coefficient(2) == 0);
    auto t1 = theta_null(1, 1, 20);
    CHECK(t1.coefficient(Q(1, 4)) == 2);
    CHECK(t1.coefficient(Q(9, 4)) == 2);
    CHECK(t1.coefficient(Q(25, 4)) == 2);
    CHECK(t1.coefficient(Q(5, 4)) == 0);
    for (long m = 2; m <= 9; ++m)
        CHECK(theta_null(m, 1, 4).coefficient(Q(1, 4 * m)) == 1);
}

TEST_CASE("theta vector")
{
    auto f = theta_vector(1, 39);
    CHECK(f.component(0) == theta_null(1, 0, 10));
    CHECK(f.component(1) == theta_null(1, 1, 10));
    for (long m = 1; m <= 13; ++m) {
        auto t = theta_vector(m, 200);
        CHECK(check_support(t));
        CHECK(check_parity(t));
        CHECK(check_optimality(t, -3));
        CHECK(check_symmetry(t, Lambency::parse(std::to_string(m) + "+" + std::to_string(m))));
        // with several square roots of D mod 4m the collapse would merge unequal
        // residues (m = 4: C(0,0) = 1, C(0,4) = 0), which it refuses
        bool clash = false;
        for (long r = 0; r < 2 * m; ++r)
            for (long r2 = 0; r2 < 2 * m; ++r2)
                clash |= r2 != r && r2 != mod(-r, 2 * m) && mod(r * r - r2 * r2, 4 * m) == 0;
        if (clash) {
            CHECK_THROWS_AS(scalar_collapse(t), CollisionError);
            continue;
        }
        // collapse counts x in Z with x^2 = D
        auto s = scalar_collapse(t);
        for (long D = 0; D <= 200; ++D) {
            long n = 0;
            for (long x = -15; x <= 15; ++x)
                n += x * x == D;
            CHECK(s.coefficient(D) == n);
        }
    }
}

TEST_CASE("omega matrices")
{
    for (long m : {1L, 6L, 13L}) {
        auto I = omega_matrix(m, 1);
        for (long r = 0; r < 2 * m; ++r)
            for (long s = 0; s < 2 * m; ++s)
                CHECK(I(r, s) == (r == s));
    }
    auto W6 = omega_matrix(6, 6);
    for (long r = 0; r < 12; ++r)
        for (long s = 0; s < 12; ++s)
            CHECK(W6(r, s) == (mod(r + s, 12) == 0));
    CHECK(omega_matrix(6, 2) * omega_matrix(6, 3) == W6);
    CHECK_THROWS_AS(omega_matrix(6, 4), DomainError);
}

TEST_CASE("omega group law")
{
    for (long m = 1; m <= 42; ++m) {
        auto ex = exact_divisors(m).elements;
        for (long x : ex)
            for (long y : ex)
                CHECK(omega_matrix(m, x) * omega_matrix(m, y) == omega_matrix(m, star(x, y)));
    }
}

TEST_CASE("eichler-zagier action")
{
    VectorForm f(6, 100);
    f.set(1, 1, 3);
    f.set(25, 5, 7);
    f.set(49, 7, -2);
    CHECK(apply_eichler_zagier(f, 1) == f);
    auto g = apply_eichler_zagier(f, 2);
    // a(2) = 7: (W f)_r = f_{7r}, so component 1 moves to 7
    CHECK(g.coeff(1, 7) == f.coeff(1, 1));
    CHECK(g.coeff(49, 1) == f.coeff(49, 7));
    for (long x : {2L, 3L, 6L})
        for (long y : {2L, 3L, 6L})
            CHECK(apply_eichler_zagier(apply_eichler_zagier(f, x), y) ==
                  apply_eichler_zagier(f, star(x, y)));
    // weight 1: W_m is the parity symmetry, so f is fixed
    CHECK(apply_eichler_zagier(f, 6) == f);
}

TEST_CASE("projectors")
{
    CHECK(projector(1, OmCharacter::trivial(1)) == mat_identity(2));
    for (long p : {2L, 3L, 7L, 13L}) {
        auto P = projector(p, OmCharacter::trivial(p));
        for (long r = 0; r < 2 * p; ++r)
            for (long s = 0; s < 2 * p; ++s) {
                mpq_class want = Q((r == s) + (mod(r + s, 2 * p) == 0), 2);
                CHECK(P[r][s] == want);
            }
    }
}

TEST_CASE("projector algebra")
{
    for (long m : {6L, 10L, 21L, 26L, 34L, 39L}) {
        auto chars = all_om_characters(m);
        RationalMatrix sum(2 * m, std::vector<mpq_class>(2 * m));
        for (size_t i = 0; i < chars.size(); ++i) {
            auto Pi = projector(m, chars[i]);
            CHECK(mat_mul(Pi, Pi) == Pi);
            for (size_t j = 0; j < chars.size(); ++j)
                if (i != j)
                    CHECK(is_zero(mat_mul(Pi, projector(m, chars[j]))));
            sum = add(sum, Pi);
        }
        CHECK(sum == mat_identity(2 * m));
    }
}

TEST_CASE("structural checks")
{
    VectorForm f(1, 21);
    f.set(-3, 1, 1);
    f.set(0, 0, 124);
    CHECK(check_support(f));
    CHECK(check_optimality(f, -3));

    auto bad = f;
    bad.set(-1, 1, 1);
    auto r = check_optimality(bad, -3);
    CHECK_FALSE(r);
    CHECK(r.detail.find("-1") != std::string::npos);

    auto off = f;
    off.set_raw(2, 1, 5);
    CHECK_FALSE(check_support(off));

    VectorForm p(3, 10);
    p.set_raw(1, 1, 2);
    CHECK_FALSE(check_parity(p));
    p.set_raw(1, 5, 2);
    CHECK(check_parity(p));

    VectorForm zero(13, 30);
    CHECK(check_lambency_condition(zero, -3, Lambency::parse("13+13")));
}

TEST_CASE("conditions on shipped tables")
{
    auto& F41 = data().table("-4:1").at("1A");
    CHECK(F41.coeff(-4, 0) == 2);
    CHECK(check_lambency_condition(F41, -4, Lambency::parse("1")));

    auto& F13 = data().table("-3:13+13").at("1A");
    CHECK(F13.coeff(-3, 7) == 1);
    CHECK(F13.coeff(-3, 19) == 1);
    auto l13 = Lambency::parse("13+13");
    CHECK(check_lambency_condition(F13, -3, l13));
    CHECK(check_symmetry(F13, l13));
    auto perturbed = F13;
    perturbed.set_raw(4, 2, 17);
    CHECK_FALSE(check_symmetry(perturbed, l13));

    auto& F31 = data().table("-3:1").at("1A");
    CHECK(check_optimality(F31, -3));
    auto s = scalar_collapse(F31);
    CHECK(s.coefficient(-3) == 2);
    CHECK(s.coefficient(0) == 248);
    CHECK(s.coefficient(4) == 54000);
    CHECK(s.coefficient(5) == -171990);
    CHECK(check_kohnen_support(s, 1, 1));

    auto s4 = scalar_collapse(F41);
    CHECK(s4.coefficient(-4) == 2);
    CHECK(s4.coefficient(0) == -492);
    CHECK(s4.coefficient(4) == 285768);
}

TEST_CASE("kohnen support")
{
    std::map<long, mpq_class> th;
    for (long n = -6; n <= 6; ++n)
        th[n * n] += 1;
    CHECK(check_kohnen_support(QSeries::from_terms(1, th, Q(37)), 1, 1));
    auto bad = QSeries::from_terms(1, {{2, 1}, {3, 1}}, std::nullopt);
    CHECK_FALSE(check_kohnen_support(bad, 1, 1));
}

TEST_CASE("collapse rejects inconsistent residues")
{
    VectorForm f(2, 10);
    f.set_raw(1, 1, 1);
    f.set_raw(1, 3, 2);
    CHECK_THROWS_AS(scalar_collapse(f), CollisionError);
}

TEST_CASE("index raising")
{
    auto t = theta_vector(1, 40);
    auto u = raise_index(t, 2);
    CHECK(u.m() == 4);
    CHECK(check_support(u));
    CHECK(check_parity(u));
    for (long r = 0; r < 2; ++r)
        for (auto& [D, v] : t.raw_component(r))
            CHECK(u.coeff(4 * D, 2 * r) == v);
    // each residue r lifts to s r + 2 s m k, k mod s
    CHECK(u.raw_component(2) == u.raw_component(6));
}

}
