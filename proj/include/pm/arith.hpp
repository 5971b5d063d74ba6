#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace pm {

// Bad input or violated precondition.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Something that should not happen given valid input (numerics, bookkeeping).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

long mod(long a, long n);
long gcd(long a, long b);

// Exact divisors n || m, i.e. n | m and gcd(n, m/n) = 1.
struct ExactDivisorGroup {
    long m = 1;
    std::vector<long> elements;
    bool contains(long n) const;
};

ExactDivisorGroup exact_divisors(long m);
bool is_exact_divisor(long m, long n);

// n * n' = n n' / gcd(n, n')^2
long star(long n, long n2);

// a = -1 mod 2n, a = 1 mod 2m/n, returned in [0, 2m)
long a_of(long m, long n);

std::vector<long> sqrt_classes(long D, long m);
bool is_fundamental(long D);
bool is_squarefree(long n);

long gamma0_index(long N);
mpq_class sturm_bound(long k, long m, long N_star);
int kronecker_symbol(long a, long b);

struct FrickeEntry {
    const char* label;
    std::vector<int> d0;
};
const std::vector<FrickeEntry>& fricke_genus_zero_table();

// l = m+n,n',...  K is the star-closure of the listed divisors together with 1.
struct Lambency {
    long m = 1;
    std::vector<long> K;
    bool fricke = true;
    bool genus_zero = true;
    std::vector<int> admissible;    // D0 values flagged in the table

    static Lambency parse(const std::string& text);
    std::string str() const;
    bool in_K(long n) const;
    bool admits(long D0) const;
};

// Character of O_m = {a(n)}, determined by its kernel (index 1 or 2).
struct OmCharacter {
    long m = 1;
    std::vector<long> kernel;

    static OmCharacter trivial(long m);
    static OmCharacter with_kernel(long m, std::vector<long> kernel);
    int value(long n) const;    // alpha(a(n))
};

std::vector<OmCharacter> all_om_characters(long m);
bool is_subgroup(long m, const std::vector<long>& K);

// (D0, l) together with the group constants from the shipped tables.
struct Lambdency {
    long D0 = -3;
    Lambency ell;
    long r0 = 1;
    std::string group_name;
    long C_D0r0 = 1;
    long C_00 = 0;

    // "D0:l", e.g. "-3:21+3,7,21"; group fields are left at defaults
    static Lambdency parse(const std::string& text);
    std::string str() const;
    long m() const { return ell.m; }
};

long smallest_root(long D0, long m);

} // namespace pm
