#pragma once

#include <complex>

#include "discmodes/errors.hpp"

namespace discmodes {

using Complex = std::complex<double>;

enum class Sign { plus, minus };

constexpr Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
const char* to_string(Sign s);

/// The five dimensionless spin-connection strengths, the angular mode index n
/// and the disc scale rho0.  n is kept as a real so non-integer probes are
/// possible; validate_params records whether it is integer-valued.
struct CouplingParams {
    double f56 = 0.0;
    double ft56 = 0.0;
    double ft3 = 0.0;
    double ftp = 0.0;   // strength coupling component II into the I equation
    double ftm = 0.0;   // strength coupling component I into the II equation
    double n = 0.0;
    double rho0 = 1.0;
    bool n_is_integer = true;
};

/// Checks finiteness and rho0 > 0, and sets the integer-intent flag on n
/// (|n - round(n)| <= 1e-9).  Throws NonFiniteError / NonPositiveScaleError.
CouplingParams validate_params(const CouplingParams& raw);

/// f and its exact radial derivatives at one radius.
/// f = 1 + rho^2/(2 rho0)^2,  df = rho/(2 rho0^2),  half_dlogf = df/(2f).
struct VielbeinSample {
    double rho;
    double f;
    double df;
    double half_dlogf;
};

VielbeinSample vielbein(double rho, double rho0);

}  // namespace discmodes
