#pragma once

#include "pm/arith.hpp"
#include "pm/jacobi.hpp"
#include "pm/weil.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace pm {

// e(-c d v / (n h)) for gamma = (a b; c d) in Gamma0(n)
Complex chi_eval(long n, long h, long v, long a, long b, long c, long d);

double bessel_I_half(double x);
// sum_{k>=0} (x/2)^(2k+alpha) / (Gamma(k+alpha+1) k!)
double bessel_I_series(double alpha, double x, int terms = 30);

// (a b; c d) with 0 <= d < c (d = 0 when c = 1), branch +1
MetaplecticElement completion_of(long a, long c);

using DR = std::pair<long, long>;    // (D, r)

struct RademacherSpec {
    long m = 1;
    long D0 = -3;
    long r0 = 1;
    long n = 1;
    long h = 1;
    long v = 0;
    long cmax = 256;
    long dmax = 21;
    double tol = 0.2;          // integrality tolerance (scaled by the caller's C)
    double gate_eps = 1e-3;    // last-shell / value threshold
    unsigned workers = 0;      // 0 = hardware concurrency
    // called as shells finish with (c, cmax), c the k-th shell when k are done; may be empty
    std::function<void(long, long)> progress;
};

struct CoefficientDiagnostics {
    double value = 0;           // real part of the sum
    double imag = 0;            // imaginary part (should vanish)
    double last_shell = 0;      // max |shell contribution| over the final 16 shells
    double doubling_delta = 0;  // |S(cmax) - S(cmax/2)|
    double distance = 0;        // to the nearest integer (after any scaling)
    bool converged = false;     // last_shell < gate_eps * max(1, |value|)
};

struct RademacherResult {
    long m = 1;
    std::map<DR, double> raw;
    std::map<DR, mpq_class> rounded;
    std::map<DR, CoefficientDiagnostics> diagnostics;
    std::vector<double> shell_norm;    // sum over targets of |shell contribution|, per shell
    // block maxima of shell_norm over dyadic ranges of c decrease after a burn-in
    bool shell_decay_ok(size_t burn_in_blocks = 2) const;
};

// raw Rademacher coefficients at the given (D, r), D >= 0
RademacherResult rademacher_raw(const RademacherSpec& spec, const std::vector<DR>& targets);
double coefficient(const RademacherSpec& spec, long D, long r);

// the summand for one (a, c, d) as a check that d -> d + c leaves it unchanged
Complex rademacher_summand(const RademacherSpec& spec, long D, long r, long a, long c, long d);

struct NormalizedSum {
    Lambdency lambdency;
    double a = 0, b = 0;
    std::map<DR, double> value;                       // normalized R, unrounded
    std::map<DR, CoefficientDiagnostics> diagnostics; // distance measured on C(D0,r0) * R
    VectorForm rounded;                               // rationals k / C(D0,r0) where diagnostics pass
    std::vector<DR> failures;
    bool ok() const { return failures.empty(); }
};

NormalizedSum normalized_sum(const Lambdency& lam, long n, long h, long v, long cmax, long dmax,
                             double tol = 0.2, unsigned workers = 0,
                             std::function<void(long, long)> progress = {});

} // namespace pm
