#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pm {

// Truncated Laurent series in q^(1/N) with rational coefficients.  Exponents are
// stored as numerators over denom().  Everything at or above order() is unknown;
// an empty order means the series is exact (a finite sum).
class QSeries {
public:
    QSeries() = default;

    static QSeries zero(std::optional<mpq_class> order = std::nullopt);
    static QSeries monomial(const mpq_class& coeff, const mpq_class& exponent,
                            std::optional<mpq_class> order = std::nullopt);
    static QSeries from_terms(long denom, std::map<long, mpq_class> terms,
                              std::optional<mpq_class> order);

    long denom() const { return N_; }
    const std::map<long, mpq_class>& terms() const { return c_; }
    const std::optional<mpq_class>& order() const { return order_; }
    bool exact() const { return !order_.has_value(); }

    // lowest stored exponent, if any
    std::optional<mpq_class> valuation() const;
    // the coefficient at exponent e; DomainError if e is in the unknown region
    mpq_class coefficient(const mpq_class& e) const;
    bool known(const mpq_class& e) const;

    QSeries truncate(const mpq_class& order) const;
    // re-express on denominator M (a multiple of the current one)
    std::map<long, mpq_class> terms_over(long M) const;

    bool operator==(const QSeries& o) const;
    bool operator!=(const QSeries& o) const { return !(*this == o); }

    std::string str(size_t max_terms = 12) const;

private:
    long N_ = 1;
    std::map<long, mpq_class> c_;
    std::optional<mpq_class> order_;
    void normalize();
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const mpq_class& c);
QSeries power(const QSeries& a, unsigned k);
QSeries substitute_q_power(const QSeries& f, long M);
// 1/f for f with invertible leading term, by Newton iteration
QSeries reciprocal(const QSeries& f);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

QSeries eta(long order);
QSeries eisenstein_e4(long order);
QSeries delta(long order);
QSeries j_invariant(long order);

// one line per term, "num/den_exponent : coefficient", plus an "order" line
std::vector<std::string> format_series(const QSeries& f);
QSeries parse_series(const std::vector<std::string>& lines);

} // namespace pm
