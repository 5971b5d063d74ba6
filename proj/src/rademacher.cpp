#include "pm/rademacher.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <mutex>
#include <thread>

namespace pm {

Complex chi_eval(long n, long h, long v, long a, long b, long c, long d)
{
    if (n < 1 || h < 1)
        throw DomainError("chi_eval: n and h must be positive");
    if (a * d - b * c != 1)
        throw DomainError("chi_eval: matrix is not in SL2(Z)");
    if (mod(c, n) != 0)
        throw DomainError(fmt::format("chi_eval: c={} is not divisible by n={}", c, n));
    // c d v / (n h) reduced mod 1 with exact integer arithmetic
    __int128 num = static_cast<__int128>(c) * d * v;
    long den = n * h;
    long red = static_cast<long>(((num % den) + den) % den);
    return e_frac(-red, den);
}

double bessel_I_half(double x)
{
    if (!(x > 0))
        throw DomainError("bessel_I_half: x must be positive");
    return std::sqrt(2.0 / (M_PI * x)) * std::sinh(x);
}

double bessel_I_series(double alpha, double x, int terms)
{
    double s = 0;
    for (int k = 0; k < terms; ++k)
        s += std::exp((2 * k + alpha) * std::log(x / 2) - std::lgamma(k + alpha + 1) -
                      std::lgamma(k + 1.0));
    return s;
}

MetaplecticElement completion_of(long a, long c)
{
    if (c < 1 || a < 0 || a >= c)
        throw DomainError("completion_of: need 0 <= a < c");
    if (gcd(a, c) != 1)
        throw DomainError(fmt::format("completion_of: gcd({}, {}) != 1", a, c));
    if (c == 1)
        return {0, -1, 1, 0, 1};
    // d = a^-1 mod c by the extended Euclidean algorithm
    long r0 = a, r1 = c, s0 = 1, s1 = 0;
    while (r1) {
        long q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    long d = mod(s0, c);
    long b = (a * d - 1) / c;
    return {a, b, c, d, 1};
}

bool RademacherResult::shell_decay_ok(size_t burn_in_blocks) const
{
    std::vector<double> block;
    for (size_t i = 0, lo = 1; i < shell_norm.size(); lo *= 2) {
        double mx = 0;
        for (; i < shell_norm.size() && i + 1 < 2 * lo; ++i)
            mx = std::max(mx, shell_norm[i]);
        block.push_back(mx);
    }
    for (size_t k = burn_in_blocks + 1; k < block.size(); ++k)
        if (block[k] > block[k - 1])
            return false;
    return true;
}

namespace {

struct Plan {
    long m, M2, M4;
    std::vector<long> srows;       // distinct residues s with mu_s != 0
    std::vector<long> Ds;          // distinct target discriminants
    std::vector<DR> targets;
    std::vector<size_t> t_dindex;  // target -> index into Ds
    double mu;
};

Complex bessel_factor(const Plan& P, long D, long c)
{
    const Complex e18 = e_frac(-1, 8);
    double mu = P.mu;
    if (D == 0)
        return e18 * std::sqrt(-mu) / (std::sqrt(M_PI) / 2) * std::pow(2 * M_PI / c, 1.5);
    double x = 4 * M_PI / c * std::sqrt(-static_cast<double>(D) * mu / (4.0 * P.m));
    double quart = std::pow(-4.0 * P.m * mu / D, 0.25);
    return e18 * quart * (2 * M_PI / c) * bessel_I_half(x);
}

// contributions of one shell c to every target
void shell(const RademacherSpec& S, const Plan& P, long c, std::vector<Complex>& out)
{
    std::fill(out.begin(), out.end(), Complex(0));
    std::vector<Complex> B(P.Ds.size());
    for (size_t i = 0; i < P.Ds.size(); ++i)
        B[i] = bessel_factor(P, P.Ds[i], c);
    std::vector<Complex> ed(P.Ds.size());
    const long mc4 = P.M4 * c;
    for (long a = 0; a < c; ++a) {
        if (gcd(a, c) != 1)
            continue;
        MetaplecticElement g = completion_of(a, c);
        auto rows = rho_rows(P.m, g, P.srows);
        Complex chi = chi_eval(S.n, S.h, S.v, g.a, g.b, g.c, g.d);
        // e(mu a / c) = e(D0 a / 4mc)
        Complex emu = e_frac(mod(S.D0 * a, mc4), mc4);
        for (size_t i = 0; i < P.Ds.size(); ++i)
            ed[i] = e_frac(mod(P.Ds[i] % mc4 * g.d, mc4), mc4) * chi * emu * B[i];
        for (size_t t = 0; t < P.targets.size(); ++t) {
            long r = mod(P.targets[t].second, P.M2);
            Complex acc = 0;
            for (auto& row : rows)
                acc += std::conj(row[r]);
            out[t] += ed[P.t_dindex[t]] * acc;
        }
    }
}

Plan make_plan(const RademacherSpec& S, const std::vector<DR>& targets)
{
    if (S.m < 1 || S.n < 1 || S.h < 1 || S.cmax < 1)
        throw DomainError("rademacher: m, n, h, cmax must be positive");
    if (S.D0 >= 0 || mod(S.D0 - S.r0 * S.r0, 4 * S.m) != 0)
        throw DomainError("rademacher: need D0 < 0 with D0 = r0^2 mod 4m");
    Plan P;
    P.m = S.m;
    P.M2 = 2 * S.m;
    P.M4 = 4 * S.m;
    P.mu = static_cast<double>(S.D0) / (4.0 * S.m);
    std::set<long> sr{mod(S.r0, P.M2), mod(-S.r0, P.M2)};
    P.srows.assign(sr.begin(), sr.end());
    std::set<long> Ds;
    for (auto& [D, r] : targets) {
        if (D < 0)
            throw DomainError(fmt::format("rademacher: D={} < 0 is part of the polar seed", D));
        if (mod(D - r * r, P.M4) != 0)
            throw DomainError(fmt::format("rademacher: (D={}, r={}) violates D = r^2 mod {}", D,
                                          r, P.M4));
        Ds.insert(D);
    }
    P.Ds.assign(Ds.begin(), Ds.end());
    P.targets = targets;
    for (auto& [D, r] : targets)
        P.t_dindex.push_back(static_cast<size_t>(
            std::lower_bound(P.Ds.begin(), P.Ds.end(), D) - P.Ds.begin()));
    return P;
}

struct Kahan {
    double s = 0, c = 0;
    void add(double x)
    {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

} // namespace

Complex rademacher_summand(const RademacherSpec& spec, long D, long r, long a, long c, long d)
{
    Plan P = make_plan(spec, {{D, r}});
    if (mod(a * d - 1, c) != 0)
        throw DomainError("rademacher_summand: d is not an inverse of a mod c");
    long b = (a * d - 1) / c;
    MetaplecticElement g{a, b, c, d, 1};
    auto rows = rho_rows(P.m, g, P.srows);
    Complex acc = 0;
    for (auto& row : rows)
        acc += std::conj(row[mod(r, P.M2)]);
    long mc4 = P.M4 * c;
    Complex K = e_frac(mod(D % mc4 * d, mc4), mc4) * chi_eval(spec.n, spec.h, spec.v, a, b, c, d) *
                e_frac(mod(spec.D0 * a, mc4), mc4);
    return bessel_factor(P, D, c) * K * acc;
}

RademacherResult rademacher_raw(const RademacherSpec& spec, const std::vector<DR>& targets)
{
    Plan P = make_plan(spec, targets);
    std::vector<long> cs;
    for (long c = spec.n; c <= spec.cmax; c += spec.n)
        cs.push_back(c);
    std::vector<std::vector<Complex>> parts(cs.size(), std::vector<Complex>(targets.size()));

    unsigned W = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    W = std::min<unsigned>(W, static_cast<unsigned>(std::max<size_t>(1, cs.size())));
    std::atomic<size_t> next{0};
    std::atomic<size_t> done{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        try {
            for (size_t i; (i = next.fetch_add(1)) < cs.size();) {
                shell(spec, P, cs[i], parts[i]);
                size_t k = ++done;
                if (spec.progress) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    spec.progress(cs[k - 1], spec.cmax);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            err = std::current_exception();
            next = cs.size();
        }
    };
    if (W == 1) {
        for (size_t i = 0; i < cs.size(); ++i) {
            shell(spec, P, cs[i], parts[i]);
            if (spec.progress)
                spec.progress(cs[i], spec.cmax);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < W; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
        if (err)
            std::rethrow_exception(err);
    }

    RademacherResult res;
    res.m = spec.m;
    res.shell_norm.assign(cs.size(), 0);
    for (size_t t = 0; t < targets.size(); ++t) {
        Kahan re, im;
        double half_re = 0, half_im = 0;
        for (size_t i = 0; i < cs.size(); ++i) {
            re.add(parts[i][t].real());
            im.add(parts[i][t].imag());
            res.shell_norm[i] += std::abs(parts[i][t]);
            if (cs[i] <= spec.cmax / 2) {
                half_re = re.s;
                half_im = im.s;
            }
        }
        CoefficientDiagnostics dg;
        dg.value = re.s;
        dg.imag = im.s;
        // a single shell can vanish by accident (Kloosterman zeros), so take the tail maximum
        for (size_t i = cs.size() > 16 ? cs.size() - 16 : 0; i < cs.size(); ++i)
            dg.last_shell = std::max(dg.last_shell, std::abs(parts[i][t]));
        dg.doubling_delta = std::hypot(re.s - half_re, im.s - half_im);
        dg.distance = std::abs(re.s - std::nearbyint(re.s));
        dg.converged = dg.last_shell < spec.gate_eps * std::max(1.0, std::abs(re.s));
        res.raw[targets[t]] = re.s;
        res.diagnostics[targets[t]] = dg;
        if (dg.distance < spec.tol)
            res.rounded[targets[t]] = mpz_class(static_cast<long>(std::nearbyint(re.s)));
    }
    return res;
}

double coefficient(const RademacherSpec& spec, long D, long r)
{
    return rademacher_raw(spec, {{D, r}}).raw.at({D, r});
}

NormalizedSum normalized_sum(const Lambdency& lam, long n, long h, long v, long cmax, long dmax,
                             double tol, unsigned workers, std::function<void(long, long)> progress)
{
    long m = lam.m();
    if (dmax < 1)
        throw DomainError("normalized_sum: dmax must be at least 1 (C(1,1) fixes the theta part)");
    OmCharacter alpha = OmCharacter::with_kernel(m, lam.ell.K);

    RademacherSpec spec;
    spec.m = m;
    spec.D0 = lam.D0;
    spec.r0 = lam.r0;
    spec.n = n;
    spec.h = h;
    spec.v = v;
    spec.cmax = cmax;
    spec.dmax = dmax;
    spec.workers = workers;
    spec.progress = std::move(progress);

    std::vector<DR> targets;
    for (long D = 0; D <= dmax; ++D)
        for (long r : sqrt_classes(D, m))
            targets.push_back({D, r});
    RademacherResult raw = rademacher_raw(spec, targets);

    // R_raw including its polar seed: coefficient 1 at (D0, +-r0)
    std::map<DR, double> R = raw.raw;
    R[{lam.D0, mod(lam.r0, 2 * m)}] = 1;
    R[{lam.D0, mod(-lam.r0, 2 * m)}] = 1;

    RationalMatrix P = projector(m, alpha);
    std::map<DR, double> PR;
    std::map<DR, double> Pshell;
    std::set<long> Ds;
    for (auto& [k, x] : R)
        Ds.insert(k.first);
    for (long D : Ds)
        for (long r : sqrt_classes(D, m)) {
            double s = 0, sh = 0;
            for (long t = 0; t < 2 * m; ++t) {
                if (P[r][t] == 0)
                    continue;
                auto it = R.find({D, t});
                if (it == R.end())
                    continue;
                s += P[r][t].get_d() * it->second;
                if (D >= 0)
                    sh += std::abs(P[r][t].get_d()) * raw.diagnostics.at({D, t}).last_shell;
            }
            PR[{D, r}] = s;
            Pshell[{D, r}] = sh;
        }
    VectorForm theta = apply_matrix(P, theta_vector(m, dmax));

    NormalizedSum out;
    out.lambdency = lam;
    double pol = PR.at({lam.D0, lam.r0});
    if (std::abs(pol) < 1e-12)
        throw DomainError("normalized_sum: projected polar coefficient vanishes");
    out.a = 1 / pol;
    double th11 = theta.coeff(1, 1).get_d();
    if (th11 == 0)
        throw DomainError("normalized_sum: theta pattern at (1,1) is degenerate");
    out.b = -out.a * PR.at({1, 1}) / th11;

    long C = lam.C_D0r0;
    out.rounded = VectorForm(m, dmax, 1);
    for (auto& [k, x] : PR) {
        auto [D, r] = k;
        double val = out.a * x + (D >= 0 ? out.b * theta.coeff(D, r).get_d() : 0.0);
        out.value[k] = val;
        CoefficientDiagnostics dg;
        if (D >= 0) {
            const auto& rd = raw.diagnostics.at({D, r});
            dg.imag = out.a * rd.imag;
            dg.doubling_delta = std::abs(out.a) * rd.doubling_delta;
        }
        dg.value = val;
        dg.last_shell = std::abs(out.a) * Pshell[k];
        double y = val * C;
        dg.distance = std::abs(y - std::nearbyint(y));
        dg.converged = dg.last_shell < 1e-3 * std::max(1.0, std::abs(val));
        out.diagnostics[k] = dg;
        if (dg.distance < tol * C) {
            mpq_class q(static_cast<long>(std::nearbyint(y)), C);
            q.canonicalize();
            out.rounded.set_raw(D, r, q);
        } else {
            out.failures.push_back(k);
        }
    }
    return out;
}

} // namespace pm
