#include "discmodes/specfun.hpp"

#include <cmath>

#include "discmodes/errors.hpp"

namespace discmodes {

double lbeta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("lbeta: arguments must be positive");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta(double a, double b) { return std::exp(lbeta(a, b)); }

// Recurrence up past x = 12, then the Bernoulli asymptotic series; the
// neglected tail is below 1e-17 there.  Good to a few ulp on (0, inf); both
// callers stay inside the convergence windows where the arguments are positive.
double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    return acc + std::log(x) - 0.5 / x -
           r * (1.0 / 12.0 -
                r * (1.0 / 120.0 -
                     r * (1.0 / 252.0 -
                          r * (1.0 / 240.0 -
                               r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
}

double trigamma(double x) {
    if (!(x > 0.0)) throw DomainError("trigamma: argument must be positive");
    double acc = 0.0;
    while (x < 12.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    return acc +
           (1.0 + 0.5 / x +
            r * (1.0 / 6.0 -
                 r * (1.0 / 30.0 -
                      r * (1.0 / 42.0 -
                           r * (1.0 / 30.0 -
                                r * (5.0 / 66.0 - r * (691.0 / 2730.0))))))) /
               x;
}

}  // namespace discmodes
