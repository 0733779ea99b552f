#pragma once

#include <utility>
#include <vector>

#include "discmodes/profiles.hpp"

namespace discmodes {

/// Reading of the printed B-branch window: paper_literal takes the printed
/// variable to be n itself, shifted_index takes it to be the subscript n+1
/// (so the bounds shift down by one as a condition on n).
enum class WindowConvention { paper_literal, shifted_index };
enum class ConventionMatch { paper_literal, shifted_index, both, neither, not_applicable };
enum class Divergence { none, origin, infinity, both };

const char* to_string(WindowConvention c);
const char* to_string(ConventionMatch m);
const char* to_string(Divergence d);

/// Open interval of mode indices n with a convergent norm integral.
struct WindowInterval {
    double lower = 0.0;
    double upper = 0.0;
    Branch branch = Branch::A;
    Sign sign = Sign::plus;
    WindowConvention convention = WindowConvention::shifted_index;

    bool contains(double n) const { return lower < n && n < upper; }
    std::vector<long> integer_modes(long lo, long hi) const;
};

/// (-1, 2(f56 + ft56 +/- root)).  For D < 0 the root is replaced by
/// Re alpha = 0; at D = 0 it is 0 and both signs coincide.
WindowInterval window_A(const CouplingParams& c, Sign sign);

/// Printed bounds (2(f56 - ft56 +/- root), 1); shifted_index lowers both by
/// one as a condition on n.
WindowInterval window_B(const CouplingParams& c, Sign sign, WindowConvention convention);

/// Printed-window sign that describes the mode eigen_mode(c, mode_sign).
/// Forced by the integrand exponents: branch A pairs with the opposite alpha
/// branch, branch B (shifted reading) with the same one.
Sign matching_window_sign(Branch branch, Sign mode_sign);

struct IntegralValue {
    double value = 0.0;
    double error = 0.0;
    Divergence divergence = Divergence::none;
    bool tolerance_met = true;

    bool finite() const { return divergence == Divergence::none; }
};

/// Exponent pair of the norm integrand rho^(2a-1) * (1 + rho^2/(2 rho0)^2)^(-b)
/// (times a quadratic in ln f when secular); convergent iff 0 < a < b.
struct NormExponents {
    double a = 0.0;
    double b = 0.0;
    bool secular = false;
};
NormExponents norm_exponents(const ProfileSpec& spec);

/// rho * f^(-2) * (|component I|^2 + |component II|^2); 0 at rho = 0 when the
/// profile is regular there.
double norm_integrand(const ProfileSpec& spec, double rho);

/// Beta-function evaluation of the norm integral; Divergent outside
/// 0 < a < b, tagged with the failing endpoint.
IntegralValue norm_closed_form(const ProfileSpec& spec);

struct QuadratureOptions {
    double rel_tol = 1e-9;
    // Endpoint power measurement: Richardson-refined log2 slopes based at
    // probe_scale; powers within slope_margin of -1 count as divergent
    // (strict-inequality windows make marginal cases divergent).
    double probe_scale = 1e-6;
    double slope_margin = 1e-3;
    // Integration cut: [cut, 1 - cut] in t, with analytic power-law tails
    // beyond the cut.
    double cut = 1e-10;
    // Partial-integral ratio test at infinity: doublings of R past
    // ratio_radius_factor * rho0 must all grow by ratio_growth to fire.
    double ratio_radius_factor = 1e3;
    double ratio_growth = 1.5;
    int ratio_doublings = 5;
    std::size_t max_panels = 4000;
};

/// Adaptive Gauss-Kronrod quadrature of the norm integral under the
/// substitution rho = 2 rho0 t/(1-t), t in [0,1).  Divergence is decided by
/// endpoint power measurement plus the partial-integral ratio test; a result
/// that misses rel_tol comes back with tolerance_met = false, never a throw.
IntegralValue norm_quadrature(const ProfileSpec& spec, double tol);
IntegralValue norm_quadrature(const ProfileSpec& spec, const QuadratureOptions& opt);

/// Window prediction, closed form, and quadrature for one mode, reconciled.
struct NormReport {
    Branch branch = Branch::A;
    Sign mode_sign = Sign::plus;
    double n = 0.0;
    bool window_verdict = false;
    bool window_paper_literal = false;  // branch B: per-convention raw verdicts
    bool window_shifted_index = false;
    IntegralValue closed_form;
    IntegralValue quadrature;
    bool agree = false;
    ConventionMatch convention_used = ConventionMatch::not_applicable;
    WindowInterval window;  // the interval behind window_verdict
};

/// One branch of the mode eigen_mode(c, sign), reconciled.  Branch B
/// adjudicates the window convention against quadrature; window_verdict there
/// follows the shifted_index reading.
NormReport classify_branch(const CouplingParams& c, Sign sign, Branch branch,
                           const QuadratureOptions& opt = {});

/// Both branches of the mode eigen_mode(c, sign).
std::pair<NormReport, NormReport> classify_mode(const CouplingParams& c, Sign sign,
                                                const QuadratureOptions& opt = {});

/// Rescales the amplitude to unit norm; DomainError when not normalizable.
ProfileSpec with_unit_norm(const ProfileSpec& spec);

/// A superposition of both alpha branches is normalizable iff the mode with
/// the larger Re alpha is: it controls the rho -> infinity falloff and its
/// window is the narrower one.
struct SuperpositionReport {
    Sign dominant_sign = Sign::plus;
    NormReport dominant;
    NormReport subdominant;
    bool normalizable = false;
};
SuperpositionReport classify_superposition(const CouplingParams& c, Branch branch,
                                           const QuadratureOptions& opt = {});

}  // namespace discmodes
