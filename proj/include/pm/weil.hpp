#pragma once

#include <complex>
#include <vector>

namespace pm {

using Complex = std::complex<double>;

// e(x) = exp(2 pi i x)
Complex e_of(double x);
// e(num/den) with the fraction reduced first, so large arguments stay accurate
Complex e_frac(long num, long den);

// (gamma, upsilon) with upsilon(tau) = branch * sqrt(c tau + d), principal root.
struct MetaplecticElement {
    long a = 1, b = 0, c = 0, d = 1;
    int branch = 1;

    static MetaplecticElement identity() { return {}; }
    static MetaplecticElement S() { return {0, -1, 1, 0, 1}; }
    static MetaplecticElement T(long k = 1) { return {1, k, 0, 1, 1}; }

    Complex upsilon(Complex tau) const;
    Complex act(Complex tau) const;
    bool operator==(const MetaplecticElement& o) const;
};

MetaplecticElement multiply(const MetaplecticElement& g, const MetaplecticElement& h);
MetaplecticElement inverse(const MetaplecticElement& g);

// 2m x 2m complex matrix indexed by residues mod 2m, row-major.
struct WeilMatrix {
    long m = 1;
    std::vector<Complex> a;

    WeilMatrix() = default;
    explicit WeilMatrix(long m);
    static WeilMatrix identity(long m);

    long dim() const { return 2 * m; }
    Complex& operator()(long s, long r) { return a[s * dim() + r]; }
    const Complex& operator()(long s, long r) const { return a[s * dim() + r]; }

    WeilMatrix operator*(const WeilMatrix& o) const;
    WeilMatrix operator*(Complex z) const;
    WeilMatrix adjoint() const;
    WeilMatrix conj() const;
    double max_abs_diff(const WeilMatrix& o) const;
    double unitarity_defect() const;    // operator 2-norm of U*U - I, via Frobenius bound
};

WeilMatrix gen_T(long m, long k = 1);
WeilMatrix gen_S(long m);
WeilMatrix rho(long m, const MetaplecticElement& g);
WeilMatrix rho_dual(long m, const MetaplecticElement& g);

// Rows of rho(m, g) for the given residues, computed by propagating row vectors
// through the generator word.  result[i] is row rows[i].
std::vector<std::vector<Complex>> rho_rows(long m, const MetaplecticElement& g,
                                           const std::vector<long>& rows);

} // namespace pm
