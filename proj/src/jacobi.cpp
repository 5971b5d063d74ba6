#include "pm/jacobi.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace pm {

VectorForm::VectorForm(long m, long dmax, int weight_parity)
    : m_(m), dmax_(dmax), k_(weight_parity), comp_(static_cast<size_t>(2 * m))
{
    if (m < 1)
        throw DomainError("VectorForm: m must be positive");
}

mpq_class VectorForm::coeff(long D, long r) const
{
    if (D > dmax_)
        throw DomainError(fmt::format("VectorForm: D={} is beyond dmax={}", D, dmax_));
    const auto& c = comp_[mod(r, 2 * m_)];
    auto it = c.find(D);
    return it == c.end() ? mpq_class(0) : it->second;
}

void VectorForm::set_raw(long D, long r, const mpq_class& v)
{
    if (D > dmax_)
        throw DomainError(fmt::format("VectorForm: D={} is beyond dmax={}", D, dmax_));
    auto& c = comp_[mod(r, 2 * m_)];
    if (v == 0)
        c.erase(D);
    else
        c[D] = v;
}

void VectorForm::set(long D, long r, const mpq_class& v)
{
    set_raw(D, r, v);
    if (mod(-r, 2 * m_) != mod(r, 2 * m_))
        set_raw(D, -r, (k_ % 2) ? v : mpq_class(-v));
}

void VectorForm::add_to(long D, long r, const mpq_class& v)
{
    set_raw(D, r, coeff(D, r) + v);
}

QSeries VectorForm::component(long r) const
{
    mpq_class order(dmax_ + 1, 4 * m_);
    order.canonicalize();
    return QSeries::from_terms(4 * m_, comp_[mod(r, 2 * m_)], order);
}

const std::map<long, mpq_class>& VectorForm::raw_component(long r) const
{
    return comp_[mod(r, 2 * m_)];
}

VectorForm VectorForm::truncated(long dmax) const
{
    VectorForm f(m_, std::min(dmax, dmax_), k_);
    for (long r = 0; r < 2 * m_; ++r)
        for (auto& [D, v] : comp_[r])
            if (D <= f.dmax_)
                f.comp_[r][D] = v;
    return f;
}

VectorForm VectorForm::scaled(const mpq_class& c) const
{
    VectorForm f(m_, dmax_, k_);
    if (c == 0)
        return f;
    for (long r = 0; r < 2 * m_; ++r)
        for (auto& [D, v] : comp_[r])
            f.comp_[r][D] = v * c;
    return f;
}

VectorForm VectorForm::plus(const VectorForm& o) const
{
    if (o.m_ != m_)
        throw DomainError("VectorForm: index mismatch");
    VectorForm f = truncated(std::min(dmax_, o.dmax_));
    for (long r = 0; r < 2 * m_; ++r)
        for (auto& [D, v] : o.comp_[r])
            if (D <= f.dmax_)
                f.add_to(D, r, v);
    return f;
}

bool VectorForm::operator==(const VectorForm& o) const
{
    return m_ == o.m_ && dmax_ == o.dmax_ && k_ == o.k_ && comp_ == o.comp_;
}

std::vector<long> VectorForm::support_discriminants() const
{
    std::set<long> s;
    for (auto& c : comp_)
        for (auto& [D, v] : c)
            s.insert(D);
    return {s.begin(), s.end()};
}

QSeries theta_null(long m, long r, long order)
{
    if (m < 1 || order < 1)
        throw DomainError("theta_null: need m >= 1 and order >= 1");
    // sum over x = r mod 2m of q^(x^2/4m), exponents below `order`
    std::map<long, mpq_class> t;
    long M = 2 * m, r0 = mod(r, M);
    for (long x = r0; x * x < 4 * m * order; x += M)
        t[x * x] += 1;
    for (long x = r0 - M; x * x < 4 * m * order; x -= M)
        t[x * x] += 1;
    return QSeries::from_terms(4 * m, std::move(t), mpq_class(order));
}

VectorForm theta_vector_scaled(long m, long k2, long dmax)
{
    long k = 0;
    while (k * k < k2)
        ++k;
    if (k * k != k2 || k < 1)
        throw DomainError(fmt::format("theta_vector_scaled: {} is not a positive square", k2));
    VectorForm f(m, dmax, 1);
    for (long x = 0; k2 * x * x <= dmax; ++x) {
        f.add_to(k2 * x * x, k * x, 1);
        if (x != 0)
            f.add_to(k2 * x * x, -k * x, 1);
    }
    return f;
}

VectorForm theta_vector(long m, long dmax)
{
    return theta_vector_scaled(m, 1, dmax);
}

OmegaMatrix OmegaMatrix::operator*(const OmegaMatrix& o) const
{
    if (m != o.m)
        throw DomainError("OmegaMatrix: index mismatch");
    long N = 2 * m;
    OmegaMatrix r{m, 0, std::vector<int>(static_cast<size_t>(N * N))};
    for (long i = 0; i < N; ++i)
        for (long k = 0; k < N; ++k)
            if ((*this)(i, k))
                for (long j = 0; j < N; ++j)
                    r.e[i * N + j] += (*this)(i, k) * o(k, j);
    return r;
}

OmegaMatrix omega_matrix(long m, long n)
{
    if (m < 1 || n < 1 || m % n)
        throw DomainError(fmt::format("omega_matrix: {} does not divide {}", n, m));
    long N = 2 * m;
    OmegaMatrix W{m, n, std::vector<int>(static_cast<size_t>(N * N))};
    for (long r = 0; r < N; ++r)
        for (long s = 0; s < N; ++s)
            if (mod(r + s, 2 * n) == 0 && mod(r - s, 2 * (m / n)) == 0)
                W.e[r * N + s] = 1;
    return W;
}

VectorForm apply_eichler_zagier(const VectorForm& f, long n)
{
    long m = f.m();
    long a = a_of(m, n);
    VectorForm g(m, f.dmax(), f.weight_parity());
    for (long r = 0; r < 2 * m; ++r)
        for (auto& [D, v] : f.raw_component(r * a))
            g.set_raw(D, r, v);
    return g;
}

RationalMatrix mat_identity(long dim)
{
    RationalMatrix I(dim, std::vector<mpq_class>(dim));
    for (long i = 0; i < dim; ++i)
        I[i][i] = 1;
    return I;
}

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b)
{
    size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    RationalMatrix r(n, std::vector<mpq_class>(p));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t)
            if (a[i][t] != 0)
                for (size_t j = 0; j < p; ++j)
                    r[i][j] += a[i][t] * b[t][j];
    return r;
}

RationalMatrix projector(long m, const OmCharacter& alpha)
{
    if (alpha.m != m)
        throw DomainError("projector: character belongs to a different m");
    auto ex = exact_divisors(m).elements;
    long N = 2 * m;
    RationalMatrix P(N, std::vector<mpq_class>(N));
    mpq_class w(1, static_cast<long>(ex.size()));
    w.canonicalize();
    for (long n : ex) {
        OmegaMatrix W = omega_matrix(m, n);
        int s = alpha.value(n);
        for (long r = 0; r < N; ++r)
            for (long c = 0; c < N; ++c)
                if (W(r, c))
                    P[r][c] += s * w;
    }
    return P;
}

VectorForm apply_matrix(const RationalMatrix& P, const VectorForm& f)
{
    long N = 2 * f.m();
    if (static_cast<long>(P.size()) != N)
        throw DomainError("apply_matrix: dimension mismatch");
    VectorForm g(f.m(), f.dmax(), f.weight_parity());
    for (long r = 0; r < N; ++r)
        for (long s = 0; s < N; ++s) {
            if (P[r][s] == 0)
                continue;
            for (auto& [D, v] : f.raw_component(s))
                g.add_to(D, r, P[r][s] * v);
        }
    return g;
}

CheckResult check_support(const VectorForm& f)
{
    long m = f.m();
    for (long r = 0; r < 2 * m; ++r)
        for (auto& [D, v] : f.raw_component(r))
            if (mod(D - r * r, 4 * m) != 0)
                return {false, fmt::format("C({},{}) = {} but D is not r^2 mod {}", D, r,
                                           v.get_str(), 4 * m)};
    return {};
}

CheckResult check_parity(const VectorForm& f)
{
    long m = f.m();
    int sign = (f.weight_parity() % 2) ? 1 : -1;
    for (long r = 0; r < 2 * m; ++r)
        for (auto& [D, v] : f.raw_component(r))
            if (f.coeff(D, -r) != sign * v)
                return {false, fmt::format("C({},{}) = {} but C({},{}) = {}", D, r, v.get_str(),
                                           D, mod(-r, 2 * m), f.coeff(D, -r).get_str())};
    return {};
}

CheckResult check_optimality(const VectorForm& f, long D0)
{
    for (long r = 0; r < 2 * f.m(); ++r)
        for (auto& [D, v] : f.raw_component(r))
            if (D < 0 && D != D0)
                return {false, fmt::format("polar term C({},{}) = {} with D != {}", D, r,
                                           v.get_str(), D0)};
    return {};
}

CheckResult check_lambency_condition(const VectorForm& f, long D0, const Lambency& ell)
{
    long m = f.m();
    if (ell.m != m)
        throw DomainError("check_lambency_condition: level mismatch");
    auto roots = sqrt_classes(D0, m);
    if (roots.empty())
        return {false, fmt::format("{} is not a square mod {}", D0, 4 * m)};
    long r0 = roots.front();
    std::set<long> orbit;
    for (long n : ell.K)
        orbit.insert(mod(r0 * a_of(m, n), 2 * m));
    if (D0 > f.dmax())
        return {};
    mpq_class c0 = f.coeff(D0, r0);
    for (long r = 0; r < 2 * m; ++r) {
        mpq_class want = orbit.count(r) ? c0 : mpq_class(0);
        if (f.coeff(D0, r) != want)
            return {false, fmt::format("C({},{}) = {}, expected {}", D0, r,
                                       f.coeff(D0, r).get_str(), want.get_str())};
    }
    return {};
}

CheckResult check_symmetry(const VectorForm& f, const Lambency& ell)
{
    long m = f.m();
    for (long n : ell.K) {
        long a = a_of(m, n);
        for (long r = 0; r < 2 * m; ++r) {
            if (f.raw_component(r * a) != f.raw_component(r))
                return {false, fmt::format("f_{} differs from f_{} (n={})", mod(r * a, 2 * m), r,
                                           n)};
        }
    }
    return {};
}

CollisionError::CollisionError(long D_, long r_, long r2_)
    : DomainError(fmt::format("scalar collapse loses information at D={}: r={} and r={} differ",
                              D_, r_, r2_)),
      D(D_), r(r_), r2(r2_)
{
}

QSeries scalar_collapse(const VectorForm& f)
{
    long m = f.m();
    std::map<long, mpq_class> t;
    std::map<long, std::pair<long, mpq_class>> seen;    // D -> first (r, C)
    for (long r = 0; r < 2 * m; ++r) {
        for (auto& [D, v] : f.raw_component(r)) {
            auto it = seen.find(D);
            if (it == seen.end())
                seen.emplace(D, std::make_pair(r, v));
            t[D] += v;
        }
    }
    // every residue sharing D must carry the same coefficient, zero entries included
    for (auto& [D, first] : seen)
        for (long r = 0; r < 2 * m; ++r)
            if (mod(D - r * r, 4 * m) == 0 && f.coeff(D, r) != first.second)
                throw CollisionError(D, first.first, r);
    return QSeries::from_terms(1, std::move(t), mpq_class(f.dmax() + 1));
}

CheckResult check_kohnen_support(const QSeries& f, long m, int sign)
{
    for (auto& [e, v] : f.terms()) {
        mpq_class x(e, f.denom());
        x.canonicalize();
        if (x.get_den() != 1)
            return {false, fmt::format("non-integral exponent {}", x.get_str())};
        long n = sign * x.get_num().get_si();
        if (sqrt_classes(n, m).empty())
            return {false, fmt::format("exponent {} is not a square class mod {}", n * sign,
                                       4 * m)};
    }
    return {};
}

VectorForm raise_index(const VectorForm& f, long s)
{
    if (s < 1)
        throw DomainError("raise_index: s must be positive");
    long m = f.m(), M = s * s * m;
    VectorForm g(M, s * s * f.dmax(), f.weight_parity());
    for (long r = 0; r < 2 * m; ++r)
        for (auto& [D, v] : f.raw_component(r))
            for (long k = 0; k < s; ++k)
                g.set_raw(s * s * D, s * r + 2 * s * m * k, v);
    return g;
}

} // namespace pm
