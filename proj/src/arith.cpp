#include "pm/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace pm {

long mod(long a, long n)
{
    long r = a % n;
    return r < 0 ? r + n : r;
}

long gcd(long a, long b)
{
    a = std::labs(a);
    b = std::labs(b);
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool ExactDivisorGroup::contains(long n) const
{
    return std::binary_search(elements.begin(), elements.end(), n);
}

bool is_exact_divisor(long m, long n)
{
    return n >= 1 && m % n == 0 && gcd(n, m / n) == 1;
}

ExactDivisorGroup exact_divisors(long m)
{
    if (m < 1)
        throw DomainError("exact_divisors: m must be positive");
    ExactDivisorGroup g;
    g.m = m;
    for (long n = 1; n <= m; ++n)
        if (is_exact_divisor(m, n))
            g.elements.push_back(n);
    return g;
}

long star(long n, long n2)
{
    if (n == 0 && n2 == 0)
        throw DomainError("star: both arguments zero");
    long g = gcd(n, n2);
    return (n / g) * (n2 / g);
}

long a_of(long m, long n)
{
    if (m < 1 || !is_exact_divisor(m, n))
        throw DomainError("a_of: n is not an exact divisor of m");
    long M = 2 * m;
    for (long a = 0; a < M; ++a)
        if (mod(a + 1, 2 * n) == 0 && mod(a - 1, 2 * (m / n)) == 0)
            return a;
    throw InternalError("a_of: no solution");
}

std::vector<long> sqrt_classes(long D, long m)
{
    if (m < 1)
        throw DomainError("sqrt_classes: m must be positive");
    std::vector<long> out;
    for (long r = 0; r < 2 * m; ++r)
        if (mod(r * r - D, 4 * m) == 0)
            out.push_back(r);
    return out;
}

bool is_squarefree(long n)
{
    n = std::labs(n);
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return n != 0;
}

bool is_fundamental(long D)
{
    if (D >= 0)
        throw DomainError("is_fundamental: D must be negative");
    if (mod(D, 4) == 1)
        return is_squarefree(D);
    if (mod(D, 4) == 0) {
        long e = D / 4;
        long r = mod(e, 4);
        return is_squarefree(e) && (r == 2 || r == 3);
    }
    return false;
}

long gamma0_index(long N)
{
    if (N < 1)
        throw DomainError("gamma0_index: N must be positive");
    long idx = N, n = N;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        while (n % p == 0)
            n /= p;
        idx = idx / p * (p + 1);
    }
    if (n > 1)
        idx = idx / n * (n + 1);
    return idx;
}

mpq_class sturm_bound(long k, long m, long N_star)
{
    if (k < 1 || k % 2 || m < 1 || N_star < 1)
        throw DomainError("sturm_bound: need even k >= 2 and positive m, N*");
    mpq_class b(k, 12);
    b.canonicalize();
    return b * gamma0_index(4 * m * N_star);
}

namespace {

int jacobi_odd(long a, long n)
{
    // n odd positive
    a = mod(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long r = n % 8;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

} // namespace

int kronecker_symbol(long a, long b)
{
    if (b == 0)
        return std::labs(a) == 1 ? 1 : 0;
    int t = 1;
    if (b < 0) {
        b = -b;
        if (a < 0)
            t = -t;
    }
    int v = 0;
    while (b % 2 == 0) {
        b /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0)
            return 0;
        if (v % 2) {
            long r = mod(a, 8);
            if (r == 3 || r == 5)
                t = -t;
        }
    }
    if (b == 1)
        return t;
    return t * jacobi_odd(a, b);
}

bool is_subgroup(long m, const std::vector<long>& K)
{
    if (std::find(K.begin(), K.end(), 1) == K.end())
        return false;
    for (long x : K) {
        if (!is_exact_divisor(m, x))
            return false;
        for (long y : K)
            if (std::find(K.begin(), K.end(), star(x, y)) == K.end())
                return false;
    }
    return true;
}

namespace {

std::vector<long> star_closure(long m, std::vector<long> gens)
{
    std::set<long> s{1};
    for (long g : gens) {
        if (!is_exact_divisor(m, g))
            throw DomainError("lambency: " + std::to_string(g) +
                              " is not an exact divisor of " + std::to_string(m));
        s.insert(g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<long> cur(s.begin(), s.end());
        for (long x : cur)
            for (long y : cur)
                grew |= s.insert(star(x, y)).second;
    }
    return {s.begin(), s.end()};
}

long parse_long(const std::string& s, const char* what)
{
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw DomainError(std::string(what) + ": bad integer '" + s + "'");
    }
    if (pos != s.size())
        throw DomainError(std::string(what) + ": bad integer '" + s + "'");
    return v;
}

Lambency parse_bare(const std::string& text)
{
    Lambency L;
    auto plus = text.find('+');
    L.m = parse_long(text.substr(0, plus), "lambency");
    if (L.m < 1)
        throw DomainError("lambency: level must be positive");
    std::vector<long> gens;
    if (plus != std::string::npos) {
        std::stringstream ss(text.substr(plus + 1));
        std::string tok;
        while (std::getline(ss, tok, ','))
            gens.push_back(parse_long(tok, "lambency"));
        if (gens.empty())
            throw DomainError("lambency: empty divisor list in '" + text + "'");
    }
    L.K = star_closure(L.m, gens);
    L.fricke = L.in_K(L.m);
    L.genus_zero = false;
    return L;
}

} // namespace

Lambency Lambency::parse(const std::string& text)
{
    Lambency L = parse_bare(text);
    // compare as groups: a printed label may list a non-closed generating set
    for (auto& e : fricke_genus_zero_table()) {
        Lambency t = parse_bare(e.label);
        if (t.m == L.m && t.K == L.K) {
            L.genus_zero = true;
            L.admissible = e.d0;
        }
    }
    return L;
}

std::string Lambency::str() const
{
    std::string s = std::to_string(m);
    bool first = true;
    for (long n : K) {
        if (n == 1)
            continue;
        s += first ? "+" : ",";
        s += std::to_string(n);
        first = false;
    }
    return s;
}

bool Lambency::in_K(long n) const
{
    return std::find(K.begin(), K.end(), n) != K.end();
}

bool Lambency::admits(long D0) const
{
    return std::find(admissible.begin(), admissible.end(), D0) != admissible.end();
}

OmCharacter OmCharacter::trivial(long m)
{
    return with_kernel(m, exact_divisors(m).elements);
}

OmCharacter OmCharacter::with_kernel(long m, std::vector<long> kernel)
{
    std::sort(kernel.begin(), kernel.end());
    kernel.erase(std::unique(kernel.begin(), kernel.end()), kernel.end());
    if (!is_subgroup(m, kernel))
        throw DomainError("OmCharacter: kernel is not a subgroup of Ex_m");
    size_t ex = exact_divisors(m).elements.size();
    if (kernel.size() != ex && 2 * kernel.size() != ex)
        throw DomainError("OmCharacter: kernel must have index 1 or 2");
    OmCharacter a;
    a.m = m;
    a.kernel = std::move(kernel);
    return a;
}

int OmCharacter::value(long n) const
{
    if (!is_exact_divisor(m, n))
        throw DomainError("OmCharacter: not an exact divisor");
    return std::binary_search(kernel.begin(), kernel.end(), n) ? 1 : -1;
}

std::vector<OmCharacter> all_om_characters(long m)
{
    // Ex_m is elementary abelian with basis the prime-power exact divisors.
    std::vector<long> basis;
    long n = m;
    for (long p = 2; p <= n; ++p) {
        if (n % p)
            continue;
        long q = 1;
        while (n % p == 0) {
            n /= p;
            q *= p;
        }
        basis.push_back(q);
    }
    auto ex = exact_divisors(m).elements;
    std::vector<OmCharacter> out;
    for (unsigned long mask = 0; mask < (1ul << basis.size()); ++mask) {
        std::vector<long> ker;
        for (long e : ex) {
            int sign = 1;
            for (size_t i = 0; i < basis.size(); ++i)
                if ((mask >> i & 1) && e % basis[i] == 0)
                    sign = -sign;
            if (sign == 1)
                ker.push_back(e);
        }
        out.push_back(OmCharacter::with_kernel(m, ker));
    }
    return out;
}

long smallest_root(long D0, long m)
{
    auto roots = sqrt_classes(D0, m);
    if (roots.empty())
        throw DomainError("D0 = " + std::to_string(D0) + " is not a square mod " +
                          std::to_string(4 * m));
    return roots.front();
}

Lambdency Lambdency::parse(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw DomainError("lambdency: expected 'D0:lambency', got '" + text + "'");
    Lambdency L;
    L.D0 = parse_long(text.substr(0, colon), "lambdency");
    if (L.D0 >= 0 || !is_fundamental(L.D0))
        throw DomainError("lambdency: D0 must be a negative fundamental discriminant");
    L.ell = Lambency::parse(text.substr(colon + 1));
    L.r0 = smallest_root(L.D0, L.ell.m);
    return L;
}

std::string Lambdency::str() const
{
    return std::to_string(D0) + ":" + ell.str();
}

} // namespace pm
