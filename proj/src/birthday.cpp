#include "percolab/birthday.hpp"

#include "percolab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <vector>

namespace percolab {

namespace {

using Poly = std::vector<mpz_class>;

// Polynomials are stored scaled by S = m!, so the coefficient of z^j in a
// power of e_k is S times a rational whose denominator divides j!.
struct ScaledRing {
    std::size_t max_degree;
    mpz_class scale;

    Poly square(const Poly& a) const
    {
        const std::size_t deg = std::min(max_degree, 2 * (a.size() - 1));
        Poly out(deg + 1);
        mpz_class acc;
        for (std::size_t j = 0; j <= deg; ++j) {
            acc = 0;
            const std::size_t lo = j >= a.size() ? j - (a.size() - 1) : 0;
            std::size_t i = lo;
            for (; 2 * i < j; ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), a[j - i].get_mpz_t());
            acc *= 2;
            if (2 * i == j) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), a[i].get_mpz_t());
            mpz_divexact(out[j].get_mpz_t(), acc.get_mpz_t(), scale.get_mpz_t());
        }
        return out;
    }

    Poly multiply(const Poly& a, const Poly& b) const
    {
        const std::size_t deg = std::min(max_degree, a.size() + b.size() - 2);
        Poly out(deg + 1);
        mpz_class acc;
        for (std::size_t j = 0; j <= deg; ++j) {
            acc = 0;
            const std::size_t lo = j >= b.size() ? j - (b.size() - 1) : 0;
            const std::size_t hi = std::min(j, a.size() - 1);
            for (std::size_t i = lo; i <= hi; ++i)
                mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[j - i].get_mpz_t());
            mpz_divexact(out[j].get_mpz_t(), acc.get_mpz_t(), scale.get_mpz_t());
        }
        return out;
    }
};

void validate(std::uint64_t n_days, int k)
{
    if (n_days < 1) throw ParameterError("the number of days must be at least 1");
    if (k < 2) throw ParameterError("k must be at least 2");
}

} // namespace

mpz_class coincidence_free_count(std::uint64_t n_days, std::uint64_t m_people, int k, double budget)
{
    validate(n_days, k);
    if (m_people == 0) return 1;
    // Pigeonhole: some day gets k people.
    const auto cap = static_cast<long double>(n_days) * static_cast<long double>(k - 1);
    if (static_cast<long double>(m_people) > cap) return 0;

    const double d = static_cast<double>(m_people) + 1.0;
    const double work = std::log2(static_cast<double>(n_days) + 1.0) * (d * d / 2.0 + d * k);
    if (work > budget)
        throw BudgetError(fmt::format("exact birthday computation needs about {:.3g} big-integer products, budget is {:.3g}",
                                      work, budget));

    const auto m = static_cast<std::size_t>(m_people);
    ScaledRing ring{m, 1};
    mpz_fac_ui(ring.scale.get_mpz_t(), m_people);

    // e_k scaled: m!/i! for i < k.
    Poly base(std::min<std::size_t>(static_cast<std::size_t>(k - 1), m) + 1);
    base[0] = ring.scale;
    for (std::size_t i = 1; i < base.size(); ++i) mpz_divexact_ui(base[i].get_mpz_t(), base[i - 1].get_mpz_t(), i);

    Poly result = base;
    const int top = std::bit_width(n_days) - 1;
    for (int bit = top - 1; bit >= 0; --bit) {
        result = ring.square(result);
        if ((n_days >> bit) & 1U) result = ring.multiply(result, base);
    }
    return m < result.size() ? result[m] : mpz_class(0);
}

mpq_class truncated_exp_power_coefficient(std::uint64_t n_days, std::uint64_t m_people, int k, double budget)
{
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), m_people);
    mpq_class q(coincidence_free_count(n_days, m_people, k, budget), fact);
    q.canonicalize();
    return q;
}

mpq_class birthday_exact(std::uint64_t n_days, std::uint64_t m_people, int k, double budget)
{
    const mpz_class count = coincidence_free_count(n_days, m_people, k, budget);
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), n_days, m_people);
    mpq_class q(count, total);
    q.canonicalize();
    return q;
}

BirthdayAsymptotic birthday_asymptotic(double n_days, double m_people, int k)
{
    if (!(n_days >= 1.0)) throw ParameterError("the number of days must be at least 1");
    if (!(m_people >= 0.0)) throw ParameterError("the number of people must be nonnegative");
    if (k < 2) throw ParameterError("k must be at least 2");
    BirthdayAsymptotic out;
    const double lf = std::lgamma(k + 1.0);
    const double log_m = std::log(m_people);
    const double log_n = std::log(n_days);
    out.value = m_people == 0.0 ? 1.0 : std::exp(-std::exp(k * log_m - lf - (k - 1) * log_n));
    out.regime_ratio = m_people == 0.0 ? 0.0 : std::exp((k + 1) * log_m - k * log_n);
    out.regime_warning = out.regime_ratio > 0.1;
    return out;
}

namespace {

struct Moments {
    long double log_f;
    long double mean;
    long double var;
};

Moments truncated_exp_moments(int k, long double rho)
{
    // Weights rho^i / i!, normalized by the largest to stay finite.
    std::vector<long double> logw(static_cast<std::size_t>(k));
    const long double lr = std::log(rho);
    long double top = -INFINITY;
    for (int i = 0; i < k; ++i) {
        logw[static_cast<std::size_t>(i)] = i * lr - std::lgamma(static_cast<long double>(i) + 1.0L);
        top = std::max(top, logw[static_cast<std::size_t>(i)]);
    }
    long double s0 = 0, s1 = 0, s2 = 0;
    for (int i = 0; i < k; ++i) {
        const long double w = std::exp(logw[static_cast<std::size_t>(i)] - top);
        s0 += w;
        s1 += i * w;
        s2 += static_cast<long double>(i) * i * w;
    }
    const long double mean = s1 / s0;
    return {top + std::log(s0), mean, std::max(s2 / s0 - mean * mean, 0.0L)};
}

} // namespace

double gardy_rho(int k, double m, double n)
{
    if (k < 2) throw ParameterError("k must be at least 2");
    if (!(m >= 1.0 && n >= 1.0)) throw ParameterError("m and n must be at least 1");
    const long double target = static_cast<long double>(m) / static_cast<long double>(n);
    if (!(target < k - 1))
        throw DomainError(fmt::format("rho f'/f = m/n has no positive solution: m/n = {} is not below k-1 = {}",
                                      static_cast<double>(target), k - 1));

    long double lo = 0.0L, hi = 1.0L;
    for (int i = 0; truncated_exp_moments(k, hi).mean <= target; ++i) {
        if (i > 4000 || !std::isfinite(hi)) throw DomainError("no solution found in bracket");
        lo = hi;
        hi *= 2.0L;
    }
    long double rho = (lo + hi) / 2.0L;
    for (int iter = 0; iter < 500; ++iter) {
        const Moments mo = truncated_exp_moments(k, rho);
        const long double r = mo.mean - target;
        if (std::fabs(r) <= 1e-16L * target) break;
        if (r < 0) lo = rho;
        else hi = rho;
        long double next = mo.var > 0 ? rho - r * rho / mo.var : (lo + hi) / 2.0L;
        if (!(next > lo && next < hi)) next = (lo + hi) / 2.0L;
        if (next == rho || hi - lo <= 4 * std::numeric_limits<long double>::epsilon() * hi) {
            rho = next;
            break;
        }
        rho = next;
    }
    return static_cast<double>(rho);
}

double gardy_log_coefficient_asymptotic(int k, double m, double n)
{
    const double rho = gardy_rho(k, m, n);
    const auto mo = truncated_exp_moments(k, rho);
    return static_cast<double>(n * mo.log_f) - m * std::log(rho) - 0.5 * std::log(2.0 * std::numbers::pi * m);
}

double gardy_coefficient_asymptotic(int k, double m, double n)
{
    return std::exp(gardy_log_coefficient_asymptotic(k, m, n));
}

double log_of(const mpz_class& z)
{
    if (sgn(z) <= 0) throw DomainError("log of a nonpositive integer");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

double log_of(const mpq_class& q)
{
    if (sgn(q) <= 0) throw DomainError("log of a nonpositive rational");
    return log_of(q.get_num()) - log_of(q.get_den());
}

} // namespace percolab
