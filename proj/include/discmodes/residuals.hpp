#pragma once

#include <array>

#include "discmodes/profiles.hpp"

namespace discmodes {

/// Left-hand sides of the two massless equations of one branch at one radius,
/// plus the largest single-term magnitude for relative-error reporting.
struct MasslessResidual {
    Complex r1, r2;
    double scale = 0.0;
};

MasslessResidual massless_residual_A(const std::pair<Complex, Complex>& values,
                                     const std::pair<Complex, Complex>& derivs,
                                     const CouplingParams& c, double rho);

MasslessResidual massless_residual_B(const std::pair<Complex, Complex>& values,
                                     const std::pair<Complex, Complex>& derivs,
                                     const CouplingParams& c, double rho);

MasslessResidual massless_residual(Branch branch, const std::pair<Complex, Complex>& values,
                                   const std::pair<Complex, Complex>& derivs,
                                   const CouplingParams& c, double rho);

/// The four left-hand sides of the coupled system with mass term m.
struct CoupledResidual {
    Complex rA1, rA2, rB1, rB2;
    double m = 0.0;
    double scale = 0.0;
};

/// derivs = (daI, daII, dbI, dbII)/drho.
CoupledResidual coupled_residual(const SpinorState& state,
                                 const std::array<Complex, 4>& derivs,
                                 const CouplingParams& c, double m, double rho);

/// The coupled system solved for the four radial derivatives.  At m = 0 the
/// A and B pairs are exactly independent of each other.
std::array<Complex, 4> coupled_rhs(const SpinorState& state, const CouplingParams& c,
                                   double m, double rho);

}  // namespace discmodes
