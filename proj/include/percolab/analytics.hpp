#pragma once

// Closed-form asymptotics for bootstrap percolation on Z_m^d x K_n and
// Z_m x K_n^2, plus the elementary probability tools they rest on.
//
// Throughout, ell = ceil((theta - 1) / 2) and gamma = log m / log n.
// Every Prediction carries a validity note restating the regime assumptions;
// the values are leading-order asymptotics, not finite-size probabilities.

#include <optional>
#include <string>

namespace percolab {

enum class Regime {
    sharp_odd,
    gradual_odd,
    even,
    theta2,
    boundary,
    lattice_low,
    lattice_high,
    plane,
};

std::string regime_label(Regime r);

struct Prediction {
    double value = 0.0;
    Regime regime = Regime::plane;
    std::string note;
    /// Leading constant in front of the n- and m-dependent factor, when one exists.
    std::optional<double> constant;
};

int ell_of(int theta);
double factorial(int k);

/// log applied `times` times; DomainError once an iterate is not positive.
double iterated_log(double x, int times);

/// Critical probability on Z_m^d x K_n. lambda is the lattice scaling
/// constant, needed (and only used) when theta <= d.
Prediction pc_cycle_complete(int d, int theta, double m, double n, std::optional<double> lambda = std::nullopt);

/// Critical probability on Z_m x K_n^2. For the gradual branch m defaults to n^gamma.
/// Odd theta with gamma == 1/ell throws BoundaryError (see mixed_limit).
Prediction pc_zk2(int theta, double gamma, double n, std::optional<double> m = std::nullopt);

/// 1 - exp(-2 a^{ell+1} / (ell+1)!).
double gradual_limit_phi(double a, int ell);

/// (ell! / ell)^{1/ell}: the scarce/abundant threshold for a.
double abundance_threshold(int ell);

/// 0 below the abundance threshold, gradual_limit_phi above, BoundaryError at it.
double mixed_limit(double a, int ell);

/// m = n^{1/ell} / (log n)^{1+1/ell}, rounded to the nearest integer >= 1.
long long boundary_m(double n, int ell);

/// p = a (log n)^{1/ell} / n^{1+1/ell}.
double p_sharp_form(double a, int theta, double n);
/// p = a / (n^{1+1/(ell+1)} m^{1/(ell+1)}).
double p_gradual_form(double a, int theta, double n, double m);

enum class PlaneEvent {
    not_viable,        ///< not ell-viable (ell >= 2)
    not_odd_is,        ///< not (2ell-1)-IS, equivalently (2ell-1)-II (ell >= 2)
    not_even_is,       ///< not (2ell)-IS, equivalently (2ell)-II (ell >= 2)
    above_is,          ///< (2ell+1)-IS under the sharp p-form (ell >= 1)
    gradual_is,        ///< (2ell+1)-IS under the gradual p-form
    theta2_not_is,     ///< theta = 2: not 2-IS
    theta3_is,         ///< theta = 3: 3-IS
};

std::string plane_event_label(PlaneEvent e);

/// Asymptotic probability of a single-plane event. `m` is required for gradual_is.
Prediction plane_probability(PlaneEvent event, int theta, double a, double n,
                             std::optional<double> m = std::nullopt);

/// Exact P(no two consecutive 1s) in k Bernoulli(r) trials, via the
/// two-eigenvalue closed form with S = sqrt(1 + 2r - 3r^2).
double no_double_ones_exact(int k, double r);
/// exp(-k r^2).
double no_double_ones_approx(int k, double r);

struct TailBounds {
    double lower; ///< bound on P(Bin(n,p) <= (1-eps) n p): exp(-n p eps^2 / 2)
    double upper; ///< bound on P(Bin(n,p) >= (1+eps) n p): exp(-n p eps^2 / 3)
};
TailBounds binomial_tail_bounds(long long n, double p, double eps);

} // namespace percolab
