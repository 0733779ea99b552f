#include "discmodes/residuals.hpp"

#include <algorithm>
#include <cmath>

namespace discmodes {

namespace {

struct BranchCoefs {
    double radial;   // multiplies value/rho inside (d/drho - radial/rho)
    double diag_I;   // f-log coefficient of the same component, I equation
    double diag_II;  // II equation
};

BranchCoefs branch_coefs(Branch branch, const CouplingParams& c) {
    // diag = 2*conformal_power -+ 2*ft3; radial = n for A, -(n+1) for B.
    const double two_sigma = 2.0 * conformal_power(branch, c);
    const double radial = branch == Branch::A ? c.n : -(c.n + 1.0);
    return {radial, two_sigma - 2.0 * c.ft3, two_sigma + 2.0 * c.ft3};
}

MasslessResidual residual_impl(Branch branch, const std::pair<Complex, Complex>& values,
                               const std::pair<Complex, Complex>& derivs,
                               const CouplingParams& c, double rho) {
    if (rho <= 0.0) throw DomainError("massless_residual: rho must be > 0");
    const VielbeinSample vb = vielbein(rho, c.rho0);
    const double h = vb.half_dlogf;
    const BranchCoefs k = branch_coefs(branch, c);

    const Complex t1a = derivs.first;
    const Complex t1b = -(k.radial / rho) * values.first;
    const Complex t1c = -h * k.diag_I * values.first;
    const Complex t1d = -h * 2.0 * c.ftp * values.second;
    const Complex t2a = derivs.second;
    const Complex t2b = -(k.radial / rho) * values.second;
    const Complex t2c = -h * k.diag_II * values.second;
    const Complex t2d = -h * 2.0 * c.ftm * values.first;

    MasslessResidual r;
    r.r1 = t1a + t1b + t1c + t1d;
    r.r2 = t2a + t2b + t2c + t2d;
    for (const Complex& t : {t1a, t1b, t1c, t1d, t2a, t2b, t2c, t2d})
        r.scale = std::max(r.scale, std::abs(t));
    return r;
}

}  // namespace

MasslessResidual massless_residual_A(const std::pair<Complex, Complex>& values,
                                     const std::pair<Complex, Complex>& derivs,
                                     const CouplingParams& c, double rho) {
    return residual_impl(Branch::A, values, derivs, c, rho);
}

MasslessResidual massless_residual_B(const std::pair<Complex, Complex>& values,
                                     const std::pair<Complex, Complex>& derivs,
                                     const CouplingParams& c, double rho) {
    return residual_impl(Branch::B, values, derivs, c, rho);
}

MasslessResidual massless_residual(Branch branch, const std::pair<Complex, Complex>& values,
                                   const std::pair<Complex, Complex>& derivs,
                                   const CouplingParams& c, double rho) {
    return residual_impl(branch, values, derivs, c, rho);
}

CoupledResidual coupled_residual(const SpinorState& state, const std::array<Complex, 4>& derivs,
                                 const CouplingParams& c, double m, double rho) {
    const MasslessResidual ra =
        residual_impl(Branch::A, {state.aI, state.aII}, {derivs[0], derivs[1]}, c, rho);
    const MasslessResidual rb =
        residual_impl(Branch::B, {state.bI, state.bII}, {derivs[2], derivs[3]}, c, rho);
    const double f = vielbein(rho, c.rho0).f;
    const Complex mif(0.0, -f);  // the -if prefactor

    CoupledResidual out;
    out.m = m;
    out.rA1 = mif * ra.r1 + m * state.bI;
    out.rA2 = mif * ra.r2 + m * state.bII;
    out.rB1 = mif * rb.r1 + m * state.aI;
    out.rB2 = mif * rb.r2 + m * state.aII;
    out.scale = f * std::max(ra.scale, rb.scale);
    for (const Complex& v : {state.aI, state.aII, state.bI, state.bII})
        out.scale = std::max(out.scale, std::abs(m) * std::abs(v));
    return out;
}

std::array<Complex, 4> coupled_rhs(const SpinorState& state, const CouplingParams& c,
                                   double m, double rho) {
    if (rho <= 0.0) throw DomainError("coupled_rhs: rho must be > 0");
    const VielbeinSample vb = vielbein(rho, c.rho0);
    const double h = vb.half_dlogf;
    const BranchCoefs ka = branch_coefs(Branch::A, c);
    const BranchCoefs kb = branch_coefs(Branch::B, c);

    std::array<Complex, 4> d;
    d[0] = (ka.radial / rho + h * ka.diag_I) * state.aI + h * 2.0 * c.ftp * state.aII;
    d[1] = (ka.radial / rho + h * ka.diag_II) * state.aII + h * 2.0 * c.ftm * state.aI;
    d[2] = (kb.radial / rho + h * kb.diag_I) * state.bI + h * 2.0 * c.ftp * state.bII;
    d[3] = (kb.radial / rho + h * kb.diag_II) * state.bII + h * 2.0 * c.ftm * state.bI;
    if (m != 0.0) {
        // mass coupling with the -if prefactor inverted: -i (m/f) partner
        const Complex im(0.0, m / vb.f);
        d[0] -= im * state.bI;
        d[1] -= im * state.bII;
        d[2] -= im * state.aI;
        d[3] -= im * state.aII;
    }
    return d;
}

}  // namespace discmodes
