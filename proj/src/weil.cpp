#include "pm/weil.hpp"

#include "pm/arith.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace pm {

Complex e_of(double x)
{
    double t = 2 * M_PI * x;
    return {std::cos(t), std::sin(t)};
}

Complex e_frac(long num, long den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return e_of(static_cast<double>(mod(num, den)) / static_cast<double>(den));
}

Complex MetaplecticElement::upsilon(Complex tau) const
{
    Complex z(c * tau.real() + d, c * tau.imag());
    return static_cast<double>(branch) * std::sqrt(z);
}

Complex MetaplecticElement::act(Complex tau) const
{
    return (static_cast<double>(a) * tau + static_cast<double>(b)) /
           (static_cast<double>(c) * tau + static_cast<double>(d));
}

bool MetaplecticElement::operator==(const MetaplecticElement& o) const
{
    return a == o.a && b == o.b && c == o.c && d == o.d && branch == o.branch;
}

MetaplecticElement multiply(const MetaplecticElement& g, const MetaplecticElement& h)
{
    MetaplecticElement p{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                         g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d, 1};
    const Complex tau(0, 1);
    Complex v = g.upsilon(h.act(tau)) * h.upsilon(tau);
    Complex cand = p.upsilon(tau);
    double dp = std::abs(v - cand), dm = std::abs(v + cand);
    double near = std::min(dp, dm), far = std::max(dp, dm);
    double scale = std::max(1.0, std::abs(cand));
    if (near > 1e-6 * scale || far < 1e3 * near)
        throw InternalError(fmt::format("metaplectic branch is ambiguous: {} vs {}", dp, dm));
    p.branch = dp < dm ? 1 : -1;
    return p;
}

MetaplecticElement inverse(const MetaplecticElement& g)
{
    // the branch of g^-1 is whichever makes g * g^-1 the identity with branch +1
    MetaplecticElement h{g.d, -g.b, -g.c, g.a, 1};
    if (multiply(g, h).branch != 1)
        h.branch = -1;
    return h;
}

WeilMatrix::WeilMatrix(long m_) : m(m_), a(static_cast<size_t>(4 * m_ * m_)) {}

WeilMatrix WeilMatrix::identity(long m)
{
    WeilMatrix I(m);
    for (long r = 0; r < 2 * m; ++r)
        I(r, r) = 1;
    return I;
}

WeilMatrix WeilMatrix::operator*(const WeilMatrix& o) const
{
    if (m != o.m)
        throw DomainError("WeilMatrix: index mismatch");
    long n = dim();
    WeilMatrix r(m);
    for (long i = 0; i < n; ++i)
        for (long k = 0; k < n; ++k) {
            Complex x = (*this)(i, k);
            if (x == Complex(0))
                continue;
            for (long j = 0; j < n; ++j)
                r(i, j) += x * o(k, j);
        }
    return r;
}

WeilMatrix WeilMatrix::operator*(Complex z) const
{
    WeilMatrix r = *this;
    for (auto& x : r.a)
        x *= z;
    return r;
}

WeilMatrix WeilMatrix::adjoint() const
{
    WeilMatrix r(m);
    for (long i = 0; i < dim(); ++i)
        for (long j = 0; j < dim(); ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

WeilMatrix WeilMatrix::conj() const
{
    WeilMatrix r = *this;
    for (auto& x : r.a)
        x = std::conj(x);
    return r;
}

double WeilMatrix::max_abs_diff(const WeilMatrix& o) const
{
    if (m != o.m)
        throw DomainError("WeilMatrix: index mismatch");
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - o.a[i]));
    return d;
}

double WeilMatrix::unitarity_defect() const
{
    // Frobenius norm bounds the operator norm from above
    WeilMatrix P = adjoint() * (*this);
    double f = 0;
    for (long i = 0; i < dim(); ++i)
        for (long j = 0; j < dim(); ++j) {
            Complex x = P(i, j) - (i == j ? Complex(1) : Complex(0));
            f += std::norm(x);
        }
    return std::sqrt(f);
}

WeilMatrix gen_T(long m, long k)
{
    if (m < 1)
        throw DomainError("gen_T: m must be positive");
    WeilMatrix T(m);
    for (long r = 0; r < 2 * m; ++r)
        T(r, r) = e_frac(mod(k, 4 * m) * r * r, 4 * m);
    return T;
}

namespace {

WeilMatrix build_S(long m)
{
    WeilMatrix S(m);
    Complex pre = e_frac(-1, 8) / std::sqrt(2.0 * m);
    for (long s = 0; s < 2 * m; ++s)
        for (long r = 0; r < 2 * m; ++r)
            S(s, r) = pre * e_frac(-r * s, 2 * m);
    return S;
}

std::shared_ptr<const WeilMatrix> cached_S(long m)
{
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const WeilMatrix>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[m];
    if (!slot)
        slot = std::make_shared<const WeilMatrix>(build_S(m));
    return slot;
}

struct Letter {
    bool is_S;
    long k;    // exponent for T letters
};

// g = w_1 w_2 ... w_n as matrices in SL2(Z); returns the word and the sign
// needed so that the metaplectic product of the letters equals g.
std::vector<Letter> word_for(const MetaplecticElement& g, int& sign)
{
    if (g.a * g.d - g.b * g.c != 1)
        throw DomainError("metaplectic element must have determinant 1");
    std::vector<Letter> w;
    long a = g.a, b = g.b, c = g.c, d = g.d;
    while (c != 0) {
        // g = T^q S g' with g' = (c, d; -(a - qc), -(b - qd))
        long q = a / c;
        if (a % c != 0 && ((a < 0) != (c < 0)))
            --q;    // floor division
        w.push_back({false, q});
        w.push_back({true, 0});
        long a2 = a - q * c, b2 = b - q * d;
        a = c;
        b = d;
        c = -a2;
        d = -b2;
    }
    if (a == 1) {
        w.push_back({false, b});
    } else {
        // (-1, b; 0, -1) = T^-b (-I) and -I = S^2
        w.push_back({false, -b});
        w.push_back({true, 0});
        w.push_back({true, 0});
    }
    MetaplecticElement acc;
    for (auto& L : w)
        acc = multiply(acc, L.is_S ? MetaplecticElement::S() : MetaplecticElement::T(L.k));
    if (acc.a != g.a || acc.b != g.b || acc.c != g.c || acc.d != g.d)
        throw InternalError("generator word does not reproduce the element");
    sign = acc.branch == g.branch ? 1 : -1;
    return w;
}

} // namespace

WeilMatrix gen_S(long m)
{
    if (m < 1)
        throw DomainError("gen_S: m must be positive");
    return *cached_S(m);
}

WeilMatrix rho(long m, const MetaplecticElement& g)
{
    if (m < 1)
        throw DomainError("rho: m must be positive");
    std::vector<long> all(2 * m);
    for (long r = 0; r < 2 * m; ++r)
        all[r] = r;
    auto rows = rho_rows(m, g, all);
    WeilMatrix out(m);
    for (long s = 0; s < 2 * m; ++s)
        for (long r = 0; r < 2 * m; ++r)
            out(s, r) = rows[s][r];
    return out;
}

WeilMatrix rho_dual(long m, const MetaplecticElement& g)
{
    return rho(m, g).conj();
}

std::vector<std::vector<Complex>> rho_rows(long m, const MetaplecticElement& g,
                                           const std::vector<long>& rows)
{
    if (m < 1)
        throw DomainError("rho_rows: m must be positive");
    int sign = 1;
    auto w = word_for(g, sign);
    auto S = cached_S(m);
    long n = 2 * m, M4 = 4 * m;
    std::vector<Complex> E(M4);
    for (long j = 0; j < M4; ++j)
        E[j] = e_frac(j, M4);
    std::vector<std::vector<Complex>> out;
    std::vector<Complex> tmp(n);
    for (size_t i = 0; i < rows.size(); ++i) {
        long r = mod(rows[i], n);
        // the flip r -> -r commutes with rho, so row -r is row r read backwards
        size_t j = 0;
        while (j < i && mod(-rows[j], n) != r)
            ++j;
        if (j < i) {
            std::vector<Complex> v(n);
            for (long t = 0; t < n; ++t)
                v[t] = out[j][mod(-t, n)];
            out.push_back(std::move(v));
            continue;
        }
        std::vector<Complex> v(n);
        v[r] = static_cast<double>(sign);
        for (auto& L : w) {
            if (L.is_S) {
                std::fill(tmp.begin(), tmp.end(), Complex(0));
                for (long s = 0; s < n; ++s) {
                    if (v[s] == Complex(0))
                        continue;
                    const Complex* row = &(*S)(s, 0);
                    for (long t = 0; t < n; ++t)
                        tmp[t] += v[s] * row[t];
                }
                v.swap(tmp);
            } else if (L.k != 0) {
                long k = mod(L.k, M4);
                for (long t = 0; t < n; ++t)
                    v[t] *= E[(k * t % M4) * t % M4];
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace pm
