#pragma once

#include <utility>

#include "discmodes/mixing.hpp"
#include "discmodes/params.hpp"

namespace discmodes {

enum class Branch { A, B };
const char* to_string(Branch b);

/// One closed-form massless profile: a branch, an eigenmode, an overall
/// complex amplitude and the parameter set.  `secular` selects the ln f
/// partner solution of a degenerate mode.
struct ProfileSpec {
    Branch branch = Branch::A;
    EigenMode mode;
    Complex amplitude = 1.0;
    CouplingParams params;
    bool secular = false;
};

ProfileSpec make_profile(Branch branch, const CouplingParams& c, Sign sign,
                         Complex amplitude = 1.0, bool secular = false);

/// The four radial profile values at one radius.
struct SpinorState {
    double rho = 0.0;
    Complex aI, aII, bI, bII;
};

/// rho-power of the profile: n on branch A, -n-1 on branch B.
double radial_power(const ProfileSpec& spec);

/// f-exponent without the mixing part: (1 -+ 2 f56 - 2 ft56)/2 for A/B.
double conformal_power(Branch branch, const CouplingParams& c);

/// Total f-exponent of the profile, conformal_power + alpha.
Complex f_exponent(const ProfileSpec& spec);

std::pair<Complex, Complex> massless_profile_A(const ProfileSpec& spec, double rho);
std::pair<Complex, Complex> massless_profile_B(const ProfileSpec& spec, double rho);
std::pair<Complex, Complex> massless_profile(const ProfileSpec& spec, double rho);

/// Exact d/drho of the two components (chain rule on the closed form).
/// rho = 0 is allowed when the derivative is regular there.
std::pair<Complex, Complex> profile_derivative(const ProfileSpec& spec, double rho);

/// Component-wise sum of the two sign branches.  The specs must share
/// parameters and branch and differ in sign.
std::pair<Complex, Complex> superpose(const ProfileSpec& plus, const ProfileSpec& minus,
                                      double rho);

/// Bundles the A- and B-branch profiles of one mode into a SpinorState.
SpinorState analytic_state(const ProfileSpec& a_spec, const ProfileSpec& b_spec, double rho);

}  // namespace discmodes
