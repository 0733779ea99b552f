#pragma once

namespace discmodes {

/// log B(a, b) for a, b > 0.
double lbeta(double a, double b);

/// B(a, b) for a, b > 0.
double beta(double a, double b);

/// psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

/// psi'(x), x > 0.
double trigamma(double x);

}  // namespace discmodes
