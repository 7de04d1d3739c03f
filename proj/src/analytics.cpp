#include "percolab/analytics.hpp"

#include "percolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace percolab {

std::string regime_label(Regime r)
{
    switch (r) {
    case Regime::sharp_odd: return "sharp-odd";
    case Regime::gradual_odd: return "gradual-odd";
    case Regime::even: return "even";
    case Regime::theta2: return "theta2";
    case Regime::boundary: return "boundary";
    case Regime::lattice_low: return "lattice-low";
    case Regime::lattice_high: return "lattice-high";
    case Regime::plane: return "plane";
    }
    return "unknown";
}

std::string plane_event_label(PlaneEvent e)
{
    switch (e) {
    case PlaneEvent::not_viable: return "not-viable";
    case PlaneEvent::not_odd_is: return "not-odd-is";
    case PlaneEvent::not_even_is: return "not-even-is";
    case PlaneEvent::above_is: return "above-is";
    case PlaneEvent::gradual_is: return "gradual-is";
    case PlaneEvent::theta2_not_is: return "theta2-not-is";
    case PlaneEvent::theta3_is: return "theta3-is";
    }
    return "unknown";
}

int ell_of(int theta)
{
    if (theta < 1) throw ParameterError("theta must be at least 1");
    return theta / 2; // ceil((theta - 1) / 2)
}

double factorial(int k)
{
    return std::tgamma(static_cast<double>(k) + 1.0);
}

double iterated_log(double x, int times)
{
    for (int i = 0; i < times; ++i) {
        if (!(x > 0.0)) throw DomainError(fmt::format("iterated log: iterate {} is not positive", i));
        x = std::log(x);
    }
    if (times > 0 && !(x > 0.0))
        throw DomainError(fmt::format("iterated log of order {} is not positive; m is too small", times));
    return x;
}

namespace {

void require_size(double v, const char* name, double min)
{
    if (!(v >= min)) throw ParameterError(fmt::format("{} must be at least {}", name, min));
}

bool near(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

} // namespace

Prediction pc_cycle_complete(int d, int theta, double m, double n, std::optional<double> lambda)
{
    if (d < 1) throw ParameterError("d must be at least 1");
    if (theta < 2) throw ParameterError("theta must be at least 2");
    require_size(m, "m", 2.0);
    require_size(n, "n", 2.0);
    Prediction p;
    if (theta <= d) {
        if (!lambda) throw ParameterError("theta <= d needs the lattice scaling constant lambda(d, theta)");
        if (!(*lambda > 0.0)) throw ParameterError("lambda must be positive");
        const int power = d - theta + 1;
        const double lg = iterated_log(m, theta - 1);
        p.value = std::pow(*lambda / lg, power) / n;
        p.constant = std::pow(*lambda, power);
        p.regime = Regime::lattice_low;
        p.note = "theta <= d: leading order as n -> infinity with log m ~ gamma log n; "
                 "lambda(d, theta) is user-supplied; sharp transition";
    } else {
        const int e = std::max(2 * d + 1 - theta, 0);
        const double c = static_cast<double>(d) / std::ldexp(1.0, e);
        p.value = c * std::log(m) / n;
        p.constant = c;
        p.regime = Regime::lattice_high;
        p.note = "theta > d: leading order as n -> infinity with log m ~ gamma log n; sharp transition";
    }
    return p;
}

Prediction pc_zk2(int theta, double gamma, double n, std::optional<double> m)
{
    if (theta < 2) throw ParameterError("theta must be at least 2");
    if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
    require_size(n, "n", 2.0);
    const int ell = ell_of(theta);
    const double logn = std::log(n);
    Prediction p;
    if (theta == 2) {
        p.constant = 0.5 * gamma;
        p.value = *p.constant * logn / (n * n);
        p.regime = Regime::theta2;
        p.note = "theta = 2: p = a log n / n^2 with critical a = gamma/2; sharp transition";
    } else if (theta % 2 == 0) {
        p.constant = std::pow(0.25 * gamma * factorial(ell), 1.0 / ell);
        p.value = *p.constant * std::pow(logn, 1.0 / ell) / std::pow(n, 1.0 + 1.0 / ell);
        p.regime = Regime::even;
        p.note = "even theta >= 4: sharp transition for every gamma > 0";
    } else {
        const double boundary = 1.0 / ell;
        if (near(gamma, boundary))
            throw BoundaryError(fmt::format("gamma = 1/ell = {} is the boundary case for odd theta; "
                                            "use the mixed model (--model mixed)",
                                            boundary));
        if (gamma > boundary) {
            p.constant = std::pow(0.5 * (gamma + boundary) * factorial(ell), 1.0 / ell);
            p.value = *p.constant * std::pow(logn, 1.0 / ell) / std::pow(n, 1.0 + 1.0 / ell);
            p.regime = Regime::sharp_odd;
            p.note = "odd theta, requires gamma > 1/ell: sharp transition";
        } else {
            const double mm = m ? *m : std::pow(n, gamma);
            require_size(mm, "m", 1.0);
            const double e = 1.0 / (ell + 1);
            p.constant = std::pow(0.5 * factorial(ell + 1) * std::log(2.0), e);
            p.value = *p.constant / (std::pow(n, 1.0 + e) * std::pow(mm, e));
            p.regime = Regime::gradual_odd;
            p.note = "odd theta, requires gamma < 1/ell: gradual transition, P(Span) -> 1 - exp(-2a^{ell+1}/(ell+1)!)";
        }
    }
    return p;
}

double gradual_limit_phi(double a, int ell)
{
    if (!(a >= 0.0)) throw ParameterError("a must be nonnegative");
    if (ell < 1) throw ParameterError("ell must be at least 1");
    return -std::expm1(-2.0 * std::pow(a, ell + 1) / factorial(ell + 1));
}

double abundance_threshold(int ell)
{
    if (ell < 1) throw ParameterError("ell must be at least 1");
    return std::pow(factorial(ell) / ell, 1.0 / ell);
}

double mixed_limit(double a, int ell)
{
    const double threshold = abundance_threshold(ell);
    if (!(a > 0.0)) throw ParameterError("a must be positive");
    if (near(a, threshold))
        throw BoundaryError(fmt::format("a = {} sits on the abundance threshold; the limit is not determined", a));
    return a < threshold ? 0.0 : gradual_limit_phi(a, ell);
}

long long boundary_m(double n, int ell)
{
    require_size(n, "n", 3.0);
    if (ell < 1) throw ParameterError("ell must be at least 1");
    const double v = std::pow(n, 1.0 / ell) / std::pow(std::log(n), 1.0 + 1.0 / ell);
    return std::max(1LL, std::llround(v));
}

double p_sharp_form(double a, int theta, double n)
{
    const int ell = ell_of(theta);
    if (ell < 1) throw ParameterError("the sharp p-form needs theta >= 2");
    require_size(n, "n", 2.0);
    return a * std::pow(std::log(n), 1.0 / ell) / std::pow(n, 1.0 + 1.0 / ell);
}

double p_gradual_form(double a, int theta, double n, double m)
{
    const int ell = ell_of(theta);
    require_size(n, "n", 2.0);
    require_size(m, "m", 1.0);
    const double e = 1.0 / (ell + 1);
    return a / (std::pow(n, 1.0 + e) * std::pow(m, e));
}

Prediction plane_probability(PlaneEvent event, int theta, double a, double n, std::optional<double> m)
{
    if (!(a > 0.0)) throw ParameterError("a must be positive");
    require_size(n, "n", 2.0);
    const int ell = ell_of(theta);
    const double logn = std::log(n);
    auto need_ell2 = [&] {
        if (ell < 2) throw ParameterError(fmt::format("{} needs ell >= 2 (theta >= 4)", plane_event_label(event)));
    };
    Prediction p;
    p.regime = Regime::plane;
    switch (event) {
    case PlaneEvent::not_viable:
        need_ell2();
        p.value = std::pow(n, -2.0 * std::pow(a, ell) / factorial(ell));
        p.note = "P(plane not ell-viable) ~ n^{-2a^ell/ell!}, sharp p-form, ell >= 2";
        break;
    case PlaneEvent::not_odd_is:
        need_ell2();
        p.value = std::pow(n, -2.0 * std::pow(a, ell) / factorial(ell));
        p.note = "P(plane not (2ell-1)-IS) ~ P((2ell-1)-II) ~ n^{-2a^ell/ell!}, sharp p-form, ell >= 2";
        break;
    case PlaneEvent::not_even_is:
        need_ell2();
        p.value = 2.0 * std::pow(n, -std::pow(a, ell) / factorial(ell));
        p.note = "P(plane not (2ell)-IS) ~ P((2ell)-II) ~ 2 n^{-a^ell/ell!}, sharp p-form, ell >= 2";
        break;
    case PlaneEvent::above_is:
        if (theta < 2) throw ParameterError("above-is needs theta >= 2");
        p.value = 2.0 * std::pow(a, ell + 1) / factorial(ell + 1) * std::pow(logn, 1.0 + 1.0 / ell) /
                  std::pow(n, 1.0 / ell);
        p.note = "P(plane (2ell+1)-IS) ~ (2a^{ell+1}/(ell+1)!) (log n)^{1+1/ell} / n^{1/ell}, sharp p-form";
        break;
    case PlaneEvent::gradual_is:
        if (!m) throw ParameterError("gradual-is needs m");
        require_size(*m, "m", 1.0);
        p.value = 2.0 * std::pow(a, ell + 1) / factorial(ell + 1) / *m;
        p.note = "P(plane (2ell+1)-IS) ~ (2a^{ell+1}/(ell+1)!) / m, gradual p-form, gamma < 1/ell";
        break;
    case PlaneEvent::theta2_not_is:
        if (theta != 2) throw ParameterError("theta2-not-is needs theta = 2");
        p.value = a * logn / std::pow(n, a);
        p.note = "theta = 2: P(plane not 2-IS) ~ a log n / n^a with p = a log n / n^2";
        break;
    case PlaneEvent::theta3_is:
        if (theta != 3) throw ParameterError("theta3-is needs theta = 3");
        p.value = a * a * logn * logn / n;
        p.note = "theta = 3: P(plane 3-IS) ~ a^2 (log n)^2 / n with p = a log n / n^2";
        break;
    }
    return p;
}

double no_double_ones_exact(int k, double r)
{
    if (k < 0) throw ParameterError("k must be nonnegative");
    if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("r must lie in [0,1]");
    if (k <= 1 || r == 0.0) return 1.0;
    if (r == 1.0) return 0.0;
    const double s = std::sqrt((1.0 - r) * (1.0 + 3.0 * r));
    const double big = (1.0 - r + s) / 2.0;
    const double small = (1.0 - r - s) / 2.0;
    const double v = (1.0 + r + s) / (2.0 * s) * std::pow(big, k) - (1.0 + r - s) / (2.0 * s) * std::pow(small, k);
    return std::clamp(v, 0.0, 1.0);
}

double no_double_ones_approx(int k, double r)
{
    if (k < 0) throw ParameterError("k must be nonnegative");
    return std::exp(-static_cast<double>(k) * r * r);
}

TailBounds binomial_tail_bounds(long long n, double p, double eps)
{
    if (n < 0) throw ParameterError("n must be nonnegative");
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0,1)");
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0,1)");
    const double np = static_cast<double>(n) * p;
    return {std::exp(-np * eps * eps / 2.0), std::exp(-np * eps * eps / 3.0)};
}

} // namespace percolab
