#pragma once

// Generalized birthday problem: m people, n equally likely days, and the
// event that no day receives k or more people.

#include <cstdint>
#include <gmpxx.h>

namespace percolab {

/// Rough count of big-integer multiplications allowed per exact call.
inline constexpr double kBirthdayDefaultBudget = 2e8;

/// Number of maps [m] -> [n] whose fibers all have size < k, i.e. m! [z^m] e_k(z)^n.
mpz_class coincidence_free_count(std::uint64_t n_days, std::uint64_t m_people, int k,
                                 double budget = kBirthdayDefaultBudget);

/// [z^m] e_k(z)^n as an exact rational, where e_k(z) = sum_{i<k} z^i / i!.
mpq_class truncated_exp_power_coefficient(std::uint64_t n_days, std::uint64_t m_people, int k,
                                          double budget = kBirthdayDefaultBudget);

/// Exact probability that no day receives k or more of the m people.
mpq_class birthday_exact(std::uint64_t n_days, std::uint64_t m_people, int k,
                         double budget = kBirthdayDefaultBudget);

struct BirthdayAsymptotic {
    double value = 0.0;
    double regime_ratio = 0.0; ///< m^{k+1} / n^k; the formula wants this small
    bool regime_warning = false;
};

/// exp(-m^k / (k! n^{k-1})); flags a warning when m^{k+1}/n^k exceeds 0.1.
BirthdayAsymptotic birthday_asymptotic(double n_days, double m_people, int k);

/// Positive root of rho f'(rho) / f(rho) = m / n for f = e_k. Needs m/n < k-1.
double gardy_rho(int k, double m, double n);

/// log of f(rho)^n / (rho^m sqrt(2 pi m)), the saddle-point estimate of [z^m] f^n.
double gardy_log_coefficient_asymptotic(int k, double m, double n);
double gardy_coefficient_asymptotic(int k, double m, double n);

/// Natural log of a positive rational too large or small for a double.
double log_of(const mpq_class& q);
double log_of(const mpz_class& z);

} // namespace percolab
