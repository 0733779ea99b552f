#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "discmodes/residuals.hpp"

namespace discmodes {

enum class IntegrationStatus { ok, step_underflow, non_finite, max_steps };
const char* to_string(IntegrationStatus s);

/// Accepted states of one propagation, endpoints included.  On failure the
/// trajectory ends at the last good state.
struct IntegrationResult {
    std::vector<SpinorState> states;
    IntegrationStatus status = IntegrationStatus::ok;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
};

struct IntegratorOptions {
    double tol = 1e-10;             // per-step relative error target
    double h_floor_factor = 1e-14;  // step floor in units of rho0
    std::size_t max_steps = 2000000;
};

/// Adaptive embedded Runge-Kutta 5(4) propagation of the coupled system from
/// init.rho to rho_end.  Error control is family-wise relative (A components
/// against the A scale, B against B) so the rho^n / rho^(-n-1) magnitudes do
/// not mask each other.
IntegrationResult integrate(const CouplingParams& c, double m, const SpinorState& init,
                            double rho_end, double tol);
IntegrationResult integrate(const CouplingParams& c, double m, const SpinorState& init,
                            double rho_end, const IntegratorOptions& opt);

/// 100 log-spaced radii in [1e-3, 20] * rho0.
std::vector<double> default_radius_grid(double rho0, int points = 100);

struct VerifyReport {
    double max_residual_A = 0.0;
    double max_residual_B = 0.0;
    double propagation_error = 0.0;
    double residual_tol = 0.0;
    double propagation_tol = 0.0;
    bool degenerate = false;
    bool passed = false;
};

/// Residuals of the closed-form profiles over the grid (both branches, secular
/// partner included when degenerate) plus an independent ODE propagation check
/// from 1e-4*rho0 to 10*rho0 against the analytic endpoint.
VerifyReport verify_analytic(const CouplingParams& c, Sign sign, std::span<const double> grid,
                             double tol, double propagation_tol = 1e-6);

}  // namespace discmodes
