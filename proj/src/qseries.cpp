#include "pm/qseries.hpp"

#include "pm/arith.hpp"

#include <fmt/format.h>

#include <numeric>
#include <sstream>

namespace pm {

namespace {

mpq_class make_q(long num, long den)
{
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

long lcm(long a, long b) { return a / std::gcd(a, b) * b; }

long den_of(const mpq_class& q) { return q.get_den().get_si(); }

std::optional<mpq_class> min_order(const std::optional<mpq_class>& a,
                                   const std::optional<mpq_class>& b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return *a < *b ? a : b;
}

} // namespace

QSeries QSeries::zero(std::optional<mpq_class> order)
{
    QSeries s;
    s.order_ = order;
    s.normalize();
    return s;
}

QSeries QSeries::monomial(const mpq_class& coeff, const mpq_class& exponent,
                          std::optional<mpq_class> order)
{
    QSeries s;
    s.N_ = den_of(exponent);
    s.c_[exponent.get_num().get_si()] = coeff;
    s.order_ = order;
    s.normalize();
    return s;
}

QSeries QSeries::from_terms(long denom, std::map<long, mpq_class> terms,
                            std::optional<mpq_class> order)
{
    if (denom < 1)
        throw DomainError("QSeries: denominator must be positive");
    QSeries s;
    s.N_ = denom;
    s.c_ = std::move(terms);
    s.order_ = order;
    s.normalize();
    return s;
}

void QSeries::normalize()
{
    for (auto it = c_.begin(); it != c_.end();) {
        bool drop = it->second == 0;
        if (!drop && order_ && make_q(it->first, N_) >= *order_)
            drop = true;
        it = drop ? c_.erase(it) : std::next(it);
    }
    long g = N_;
    for (auto& [e, v] : c_)
        g = std::gcd(g, e);
    if (g > 1) {
        std::map<long, mpq_class> r;
        for (auto& [e, v] : c_)
            r.emplace_hint(r.end(), e / g, v);
        c_ = std::move(r);
        N_ /= g;
    }
}

std::optional<mpq_class> QSeries::valuation() const
{
    if (c_.empty())
        return std::nullopt;
    return make_q(c_.begin()->first, N_);
}

bool QSeries::known(const mpq_class& e) const
{
    return !order_ || e < *order_;
}

mpq_class QSeries::coefficient(const mpq_class& e) const
{
    if (!known(e))
        throw DomainError(fmt::format("QSeries: exponent {} is at or above the truncation order {}",
                                      e.get_str(), order_->get_str()));
    mpq_class scaled = e * N_;
    if (scaled.get_den() != 1)
        return 0;
    auto it = c_.find(scaled.get_num().get_si());
    return it == c_.end() ? mpq_class(0) : it->second;
}

QSeries QSeries::truncate(const mpq_class& order) const
{
    QSeries s = *this;
    s.order_ = min_order(order_, order);
    s.normalize();
    return s;
}

std::map<long, mpq_class> QSeries::terms_over(long M) const
{
    if (M % N_)
        throw DomainError("QSeries: target denominator is not a multiple");
    long f = M / N_;
    std::map<long, mpq_class> r;
    for (auto& [e, v] : c_)
        r.emplace_hint(r.end(), e * f, v);
    return r;
}

bool QSeries::operator==(const QSeries& o) const
{
    return N_ == o.N_ && c_ == o.c_ && order_ == o.order_;
}

std::string QSeries::str(size_t max_terms) const
{
    std::string s;
    size_t n = 0;
    for (auto& [e, v] : c_) {
        if (n++ == max_terms) {
            s += " + ...";
            break;
        }
        if (!s.empty())
            s += v < 0 ? " - " : " + ";
        else if (v < 0)
            s += "-";
        mpq_class a = abs(v);
        s += a.get_str() + "q^" + make_q(e, N_).get_str();
    }
    if (s.empty())
        s = "0";
    if (order_)
        s += " + O(q^" + order_->get_str() + ")";
    return s;
}

QSeries add(const QSeries& a, const QSeries& b)
{
    long M = lcm(a.denom(), b.denom());
    auto t = a.terms_over(M);
    for (auto& [e, v] : b.terms_over(M))
        t[e] += v;
    return QSeries::from_terms(M, std::move(t), min_order(a.order(), b.order()));
}

QSeries scale(const QSeries& a, const mpq_class& c)
{
    auto t = a.terms();
    for (auto& [e, v] : t)
        v *= c;
    return QSeries::from_terms(a.denom(), std::move(t), a.order());
}

QSeries sub(const QSeries& a, const QSeries& b)
{
    return add(a, scale(b, -1));
}

QSeries mul(const QSeries& a, const QSeries& b)
{
    auto va = a.valuation(), vb = b.valuation();
    // O(q^o) times b is O(q^(o + val b)); an exact zero kills everything
    if ((!va && a.exact()) || (!vb && b.exact()))
        return QSeries::zero();
    mpq_class la = va ? *va : *a.order();
    mpq_class lb = vb ? *vb : *b.order();
    std::optional<mpq_class> order;
    if (a.order())
        order = *a.order() + lb;
    if (b.order())
        order = min_order(order, *b.order() + la);

    long M = lcm(a.denom(), b.denom());
    auto ta = a.terms_over(M), tb = b.terms_over(M);
    std::map<long, mpq_class> t;
    long cut = 0;
    bool has_cut = order.has_value();
    if (has_cut) {
        // exponents e/M with e >= ceil(order*M) are dropped
        mpq_class s = *order * M;
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        cut = q.get_si();
    }
    for (auto& [ea, xa] : ta) {
        for (auto& [eb, xb] : tb) {
            long e = ea + eb;
            if (has_cut && e >= cut)
                break;
            t[e] += xa * xb;
        }
    }
    return QSeries::from_terms(M, std::move(t), order);
}

QSeries power(const QSeries& a, unsigned k)
{
    QSeries r = QSeries::monomial(1, 0);
    QSeries b = a;
    while (k) {
        if (k & 1)
            r = mul(r, b);
        k >>= 1;
        if (k)
            b = mul(b, b);
    }
    return r;
}

QSeries substitute_q_power(const QSeries& f, long M)
{
    if (M < 1)
        throw DomainError("substitute_q_power: M must be positive");
    std::map<long, mpq_class> t;
    for (auto& [e, v] : f.terms())
        t.emplace_hint(t.end(), e * M, v);
    std::optional<mpq_class> order;
    if (f.order())
        order = *f.order() * M;
    return QSeries::from_terms(f.denom(), std::move(t), order);
}

QSeries reciprocal(const QSeries& f)
{
    auto v = f.valuation();
    if (!v)
        throw DomainError("reciprocal: series has no known leading term");
    mpq_class lead = f.coefficient(*v);
    // f = lead q^v h with h = 1 + O(q^(1/N))
    QSeries h = mul(scale(f, 1 / lead), QSeries::monomial(1, -*v));
    if (h.exact() && h.terms().size() == 1)
        return QSeries::monomial(1 / lead, -*v);
    mpq_class target = h.order() ? *h.order() : mpq_class(0);
    if (h.exact()) {
        // exact non-monomial: the inverse is an infinite series, nothing to truncate at
        throw DomainError("reciprocal: exact input needs an explicit truncation order");
    }
    QSeries u = QSeries::monomial(1, 0);
    mpq_class prec(1, h.denom());
    prec.canonicalize();
    QSeries two = QSeries::monomial(2, 0);
    for (;;) {
        prec = prec * 2;
        if (prec > target)
            prec = target;
        // u is right to half the new precision; treated as exact, Newton doubles it
        QSeries ue = QSeries::from_terms(u.denom(), u.terms(), std::nullopt);
        QSeries hu = mul(h.truncate(prec), ue).truncate(prec);
        u = mul(ue, sub(two, hu)).truncate(prec);
        if (prec == target)
            break;
    }
    return mul(scale(u, 1 / lead), QSeries::monomial(1, -*v));
}

QSeries eta(long order)
{
    if (order < 1)
        throw DomainError("eta: order must be >= 1");
    // q^(1/24) sum_k (-1)^k q^(k(3k-1)/2), pentagonal numbers grow with |k|
    std::map<long, mpq_class> t;
    for (long k = 0; k * (3 * k - 1) / 2 < order; ++k) {
        t[24 * (k * (3 * k - 1) / 2) + 1] = (k % 2) ? -1 : 1;
        long p = k * (3 * k + 1) / 2;
        if (k > 0 && p < order)
            t[24 * p + 1] = (k % 2) ? -1 : 1;
    }
    return QSeries::from_terms(24, std::move(t), mpq_class(order));
}

QSeries eisenstein_e4(long order)
{
    if (order < 1)
        throw DomainError("eisenstein_e4: order must be >= 1");
    std::map<long, mpq_class> t;
    t[0] = 1;
    for (long n = 1; n < order; ++n) {
        mpz_class s = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0)
                s += mpz_class(d) * d * d;
        t[n] = 240 * s;
    }
    return QSeries::from_terms(1, std::move(t), mpq_class(order));
}

QSeries delta(long order)
{
    return power(eta(order), 24).truncate(order);
}

QSeries j_invariant(long order)
{
    if (order < 1)
        throw DomainError("j_invariant: order must be >= 1");
    long w = order + 2;
    QSeries e4 = eisenstein_e4(w);
    QSeries r = mul(power(e4, 3), reciprocal(delta(w)));
    r = sub(r, QSeries::monomial(744, 0));
    return r.truncate(order);
}

std::vector<std::string> format_series(const QSeries& f)
{
    std::vector<std::string> out;
    for (auto& [e, v] : f.terms())
        out.push_back(fmt::format("{}/{} : {}", e, f.denom(), v.get_str()));
    out.push_back("order : " + (f.order() ? f.order()->get_str() : std::string("exact")));
    return out;
}

QSeries parse_series(const std::vector<std::string>& lines)
{
    std::map<mpq_class, mpq_class> terms;
    std::optional<mpq_class> order;
    bool saw_order = false;
    long N = 1;
    for (size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw DomainError(fmt::format("series line {}: missing ':'", i + 1));
        std::string lhs = line.substr(0, colon), rhs = line.substr(colon + 1);
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        lhs = trim(lhs);
        rhs = trim(rhs);
        try {
            if (lhs == "order") {
                saw_order = true;
                if (rhs != "exact")
                    order = mpq_class(rhs);
                continue;
            }
            mpq_class e(lhs), v(rhs);
            e.canonicalize();
            v.canonicalize();
            N = lcm(N, den_of(e));
            terms[e] = v;
        } catch (const std::invalid_argument&) {
            throw DomainError(fmt::format("series line {}: bad rational", i + 1));
        }
    }
    if (!saw_order)
        throw DomainError("series: missing order line (truncated stream?)");
    std::map<long, mpq_class> t;
    for (auto& [e, v] : terms)
        t[mpq_class(e * N).get_num().get_si()] = v;
    return QSeries::from_terms(N, std::move(t), order);
}

} // namespace pm
