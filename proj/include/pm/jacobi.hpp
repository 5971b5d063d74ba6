#pragma once

#include "pm/arith.hpp"
#include "pm/qseries.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pm {

// Theta-coefficients (f_r) for r mod 2m.  Coefficients are keyed by the
// discriminant D (exponent D/4m).  Everything with D > dmax is unknown.
class VectorForm {
public:
    VectorForm() = default;
    VectorForm(long m, long dmax, int weight_parity = 1);

    long m() const { return m_; }
    long dmax() const { return dmax_; }
    int weight_parity() const { return k_; }

    // C(D, r); throws for D > dmax.  r is taken mod 2m.
    mpq_class coeff(long D, long r) const;
    // sets C(D, r) and, for parity, C(D, -r) = (-1)^(k+1) C(D, r)
    void set(long D, long r, const mpq_class& v);
    void set_raw(long D, long r, const mpq_class& v);    // no parity mirroring
    void add_to(long D, long r, const mpq_class& v);

    // component r as a QSeries in q^(1/4m)
    QSeries component(long r) const;
    const std::map<long, mpq_class>& raw_component(long r) const;

    VectorForm truncated(long dmax) const;
    VectorForm scaled(const mpq_class& c) const;
    VectorForm plus(const VectorForm& o) const;
    bool operator==(const VectorForm& o) const;

    // discriminants with at least one nonzero entry
    std::vector<long> support_discriminants() const;

private:
    long m_ = 1;
    long dmax_ = 0;
    int k_ = 1;
    std::vector<std::map<long, mpq_class>> comp_;
};

QSeries theta_null(long m, long r, long order);
VectorForm theta_vector(long m, long dmax);
// theta_m(k2 tau): component r collects x with k x = r mod 2m, exponent k2 x^2/4m
VectorForm theta_vector_scaled(long m, long k2, long dmax);

struct OmegaMatrix {
    long m = 1;
    long n = 1;
    std::vector<int> e;    // 2m x 2m, row-major
    int operator()(long r, long s) const { return e[r * 2 * m + s]; }
    OmegaMatrix operator*(const OmegaMatrix& o) const;
    bool operator==(const OmegaMatrix& o) const { return m == o.m && e == o.e; }
};

OmegaMatrix omega_matrix(long m, long n);
VectorForm apply_eichler_zagier(const VectorForm& f, long n);

using RationalMatrix = std::vector<std::vector<mpq_class>>;
RationalMatrix projector(long m, const OmCharacter& alpha);
RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix mat_identity(long dim);
// (P f)_r = sum_s P[r][s] f_s
VectorForm apply_matrix(const RationalMatrix& P, const VectorForm& f);

struct CheckResult {
    bool ok = true;
    std::string detail;    // first failure, if any
    explicit operator bool() const { return ok; }
};

CheckResult check_support(const VectorForm& f);
CheckResult check_parity(const VectorForm& f);
CheckResult check_optimality(const VectorForm& f, long D0);
CheckResult check_lambency_condition(const VectorForm& f, long D0, const Lambency& ell);
CheckResult check_symmetry(const VectorForm& f, const Lambency& ell);

struct CollisionError : DomainError {
    long D, r, r2;
    CollisionError(long D, long r, long r2);
};

// sum_r f_r(4m tau), a series in integral powers of q
QSeries scalar_collapse(const VectorForm& f);
CheckResult check_kohnen_support(const QSeries& f, long m, int sign);

// index raising z -> sz: (D, r) of the index-m form lands at (s^2 D, s r) for index s^2 m
VectorForm raise_index(const VectorForm& f, long s);

} // namespace pm
