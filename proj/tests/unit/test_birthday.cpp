#include <doctest.h>

#include "percolab/birthday.hpp"
#include "percolab/errors.hpp"

#include <cmath>
#include <vector>

using namespace percolab;

namespace {

// Enumerates all n^m assignments of people to days.
mpq_class brute_force(unsigned n, unsigned m, int k)
{
    std::vector<unsigned> day(m, 0);
    std::vector<int> load(n, 0);
    unsigned long good = 0, total = 0;
    for (;;) {
        std::fill(load.begin(), load.end(), 0);
        bool ok = true;
        for (unsigned d : day)
            if (++load[d] >= k) ok = false;
        good += ok;
        ++total;
        unsigned i = 0;
        while (i < m && ++day[i] == n) day[i++] = 0;
        if (i == m) break;
    }
    mpq_class q(static_cast<long>(good), static_cast<long>(total));
    q.canonicalize();
    return q;
}

mpq_class falling_factorial(unsigned n, unsigned m)
{
    mpq_class q(1);
    for (unsigned i = 0; i < m; ++i) {
        mpq_class f(n - i, n);
        f.canonicalize();
        q *= f;
    }
    return q;
}

} // namespace

TEST_CASE("hand-checked values")
{
    CHECK(birthday_exact(2, 3, 3) == mpq_class(3, 4));
    CHECK(birthday_exact(7, 1, 2) == 1);
    CHECK(birthday_exact(7, 0, 2) == 1);
    CHECK(birthday_exact(3, 4, 2) == 0); // pigeonhole
    CHECK(birthday_exact(3, 7, 3) == 0);
    CHECK(birthday_exact(5, 3, 10) == 1);
}

TEST_CASE("exact value equals brute-force enumeration")
{
    for (unsigned n = 1; n <= 1000; ++n)
        for (unsigned m = 1; m <= 20; ++m) {
            if (std::pow(static_cast<double>(n), static_cast<double>(m)) > 2e5) break;
            for (int k = 2; k <= 4; ++k) REQUIRE(birthday_exact(n, m, k) == brute_force(n, m, k));
        }
}

TEST_CASE("k = 2 is the falling factorial")
{
    CHECK(birthday_exact(365, 23, 2) == falling_factorial(365, 23));
    CHECK(birthday_exact(365, 23, 2).get_d() == doctest::Approx(0.4927027656760145));
    for (unsigned n : {10U, 50U, 200U})
        for (unsigned m = 1; m <= n; m += 7) CHECK(birthday_exact(n, m, 2) == falling_factorial(n, m));
}

TEST_CASE("coefficient and count agree")
{
    const mpz_class count = coincidence_free_count(10, 6, 3);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), 6);
    CHECK(truncated_exp_power_coefficient(10, 6, 3) * fact == mpq_class(count));
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), 10, 6);
    mpq_class want(count, total);
    want.canonicalize();
    CHECK(birthday_exact(10, 6, 3) == want);
}

TEST_CASE("asymptotic formula against the exact value")
{
    auto a = birthday_asymptotic(1e4, 100, 2);
    CHECK(a.value == doctest::Approx(std::exp(-0.5)));
    CHECK(birthday_exact(10000, 100, 2).get_d() == doctest::Approx(a.value).epsilon(0.02));

    auto b = birthday_asymptotic(1e4, 300, 3);
    CHECK(b.value == doctest::Approx(std::exp(-0.045)));
    CHECK(birthday_exact(10000, 300, 3).get_d() == doctest::Approx(b.value).epsilon(0.05));
    CHECK_FALSE(b.regime_warning);

    CHECK(birthday_asymptotic(1e12, 5, 2).value == doctest::Approx(1.0));
    CHECK(birthday_asymptotic(100, 90, 2).regime_warning);
}

TEST_CASE("saddle point")
{
    // k = 2: rho / (1 + rho) = m/n.
    CHECK(gardy_rho(2, 100, 1000) == doctest::Approx(100.0 / 900.0).epsilon(1e-13));
    for (int k : {2, 3, 4, 6})
        for (double n : {10.0, 1e3, 1e6})
            for (double frac : {1e-4, 0.01, 0.3, 0.9}) {
                const double m = std::max(1.0, frac * n * (k - 1));
                if (m / n >= k - 1) continue;
                const double rho = gardy_rho(k, m, n);
                double s0 = 0, s1 = 0, t = 1;
                for (int i = 0; i < k; ++i) {
                    s0 += t;
                    s1 += i * t;
                    t *= rho / (i + 1);
                }
                CHECK(std::fabs(s1 / s0 - m / n) < 1e-12 * std::max(1.0, m / n));
            }
    CHECK_THROWS_AS(gardy_rho(2, 10, 10), DomainError);
    CHECK_THROWS_AS(gardy_rho(3, 25, 10), DomainError);
}

TEST_CASE("saddle-point coefficient against the exact coefficient")
{
    const double exact = log_of(truncated_exp_power_coefficient(10000, 100, 3));
    CHECK(std::exp(gardy_log_coefficient_asymptotic(3, 100, 10000) - exact) == doctest::Approx(1.0).epsilon(0.03));

    // k = 2, m = floor(n^{2/3}): the ratio approaches 1.
    double prev_err = 1.0;
    for (unsigned n : {1000U, 10000U}) {
        const auto m = static_cast<unsigned>(std::floor(std::cbrt(static_cast<double>(n) * n) + 1e-9));
        const double ex = log_of(truncated_exp_power_coefficient(n, m, 2));
        const double err = std::fabs(std::exp(gardy_log_coefficient_asymptotic(2, m, n) - ex) - 1.0);
        CHECK(err < prev_err);
        CHECK(err < 0.1);
        prev_err = err;
    }
}

TEST_CASE("budget and preconditions")
{
    CHECK_THROWS_AS(birthday_exact(1000000, 100000, 3), BudgetError);
    CHECK_THROWS_AS(birthday_exact(10, 5, 1), ParameterError);
    CHECK_THROWS_AS(birthday_exact(0, 5, 2), ParameterError);
}

TEST_CASE("logs of big numbers")
{
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 400);
    CHECK(log_of(big) == doctest::Approx(400 * std::log(10.0)));
    CHECK(log_of(mpq_class(1, 8)) == doctest::Approx(-std::log(8.0)));
    CHECK_THROWS_AS(log_of(mpz_class(0)), DomainError);
}
