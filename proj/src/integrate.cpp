#include "discmodes/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "discmodes/errors.hpp"
#include "discmodes/profiles.hpp"

namespace discmodes {

namespace {

using State4 = std::array<Complex, 4>;

State4 pack(const SpinorState& s) { return {s.aI, s.aII, s.bI, s.bII}; }

SpinorState unpack(double rho, const State4& y) { return {rho, y[0], y[1], y[2], y[3]}; }

bool finite(const State4& y) {
    for (const Complex& v : y)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

// Dormand-Prince 5(4) coefficients.  The last stage reuses the first one of
// the next step (FSAL), so an accepted step costs six evaluations.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

State4 rhs(const CouplingParams& c, double m, double rho, const State4& y) {
    return coupled_rhs(unpack(rho, y), c, m, rho);
}

// max |err| / scale taken family-wise: A components against the A magnitude,
// B against B.  tiny floors the scale so an identically zero family does not
// divide out.
double error_norm(const State4& err, const State4& y0, const State4& y1, double tol) {
    constexpr double tiny = 1e-300;
    double worst = 0.0;
    for (int fam = 0; fam < 2; ++fam) {
        const int i = 2 * fam, j = 2 * fam + 1;
        const double mag = std::max({std::abs(y0[i]), std::abs(y0[j]), std::abs(y1[i]),
                                     std::abs(y1[j])});
        const double scale = tol * mag + tiny;
        worst = std::max(worst, std::max(std::abs(err[i]), std::abs(err[j])) / scale);
    }
    return worst;
}

}  // namespace

const char* to_string(IntegrationStatus s) {
    switch (s) {
        case IntegrationStatus::ok: return "ok";
        case IntegrationStatus::step_underflow: return "step_underflow";
        case IntegrationStatus::non_finite: return "non_finite";
        case IntegrationStatus::max_steps: return "max_steps";
    }
    return "?";
}

IntegrationResult integrate(const CouplingParams& c, double m, const SpinorState& init,
                            double rho_end, double tol) {
    IntegratorOptions opt;
    opt.tol = tol;
    return integrate(c, m, init, rho_end, opt);
}

IntegrationResult integrate(const CouplingParams& cp, double m, const SpinorState& init,
                            double rho_end, const IntegratorOptions& opt) {
    const CouplingParams c = validate_params(cp);
    if (!(init.rho > 0.0) || !(rho_end > 0.0))
        throw DomainError("integrate: radii must be positive");
    if (!(opt.tol > 0.0)) throw DomainError("integrate: tolerance must be positive");

    const double dir = (rho_end >= init.rho) ? 1.0 : -1.0;
    const double span = std::abs(rho_end - init.rho);
    const double h_floor = opt.h_floor_factor * c.rho0;

    IntegrationResult out;
    out.states.push_back(init);
    if (span == 0.0) return out;

    double rho = init.rho;
    State4 y = pack(init);
    if (!finite(y)) {
        out.status = IntegrationStatus::non_finite;
        return out;
    }

    double h = dir * std::min(0.01 * std::min(rho, rho_end), span);
    State4 k1 = rhs(c, m, rho, y);

    while (true) {
        if (out.steps_accepted + out.steps_rejected >= opt.max_steps) {
            out.status = IntegrationStatus::max_steps;
            return out;
        }
        bool last = false;
        if (dir * (rho + h - rho_end) >= 0.0) {
            h = rho_end - rho;
            last = true;
        }
        if (std::abs(h) < h_floor && !last) {
            out.status = IntegrationStatus::step_underflow;
            return out;
        }

        State4 t, k2, k3, k4, k5, k6, k7, ynew, err;
        for (int i = 0; i < 4; ++i) t[i] = y[i] + h * a21 * k1[i];
        k2 = rhs(c, m, rho + c2 * h, t);
        for (int i = 0; i < 4; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(c, m, rho + c3 * h, t);
        for (int i = 0; i < 4; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(c, m, rho + c4 * h, t);
        for (int i = 0; i < 4; ++i)
            t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(c, m, rho + c5 * h, t);
        for (int i = 0; i < 4; ++i)
            t[i] = y[i] +
                   h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = rhs(c, m, rho + h, t);
        for (int i = 0; i < 4; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = rhs(c, m, rho + h, ynew);
        for (int i = 0; i < 4; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);

        if (!finite(ynew)) {
            out.status = IntegrationStatus::non_finite;
            return out;
        }

        const double en = error_norm(err, y, ynew, opt.tol);
        if (en <= 1.0) {
            rho += h;
            y = ynew;
            k1 = k7;
            ++out.steps_accepted;
            out.states.push_back(unpack(rho, y));
            if (last) return out;
            const double grow = std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            h *= grow;
        } else {
            ++out.steps_rejected;
            h *= std::max(0.9 * std::pow(en, -0.2), 0.1);
            if (std::abs(h) < h_floor) {
                out.status = IntegrationStatus::step_underflow;
                return out;
            }
        }
    }
}

std::vector<double> default_radius_grid(double rho0, int points) {
    if (!(rho0 > 0.0)) throw NonPositiveScaleError("default_radius_grid: rho0 must be positive");
    if (points < 2) throw DomainError("default_radius_grid: need at least two points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double lo = std::log(1e-3 * rho0), hi = std::log(20.0 * rho0);
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            std::exp(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
    return grid;
}

namespace {

double relative_residual(const MasslessResidual& r) {
    const double mag = std::max(std::abs(r.r1), std::abs(r.r2));
    return r.scale > 0.0 ? mag / r.scale : mag;
}

double profile_residual_max(const ProfileSpec& spec, std::span<const double> grid) {
    double worst = 0.0;
    for (double rho : grid) {
        const std::pair<Complex, Complex> v = massless_profile(spec, rho);
        const std::pair<Complex, Complex> d = profile_derivative(spec, rho);
        worst = std::max(worst, relative_residual(massless_residual(spec.branch, v, d,
                                                                    spec.params, rho)));
    }
    return worst;
}

// Family-wise endpoint deviation of a propagated state against the analytic
// one, relative to the analytic family magnitude.
double endpoint_deviation(const SpinorState& got, const SpinorState& want) {
    double worst = 0.0;
    const Complex g[4] = {got.aI, got.aII, got.bI, got.bII};
    const Complex w[4] = {want.aI, want.aII, want.bI, want.bII};
    for (int fam = 0; fam < 2; ++fam) {
        const int i = 2 * fam, j = 2 * fam + 1;
        const double mag = std::max(std::abs(w[i]), std::abs(w[j]));
        if (mag == 0.0) continue;
        const double dev = std::max(std::abs(g[i] - w[i]), std::abs(g[j] - w[j]));
        worst = std::max(worst, dev / mag);
    }
    return worst;
}

double propagate_and_compare(const ProfileSpec& a_spec, const ProfileSpec& b_spec,
                             double rho0) {
    const double rho_start = 1e-4 * rho0, rho_end = 10.0 * rho0;
    const SpinorState init = analytic_state(a_spec, b_spec, rho_start);
    const IntegrationResult run = integrate(a_spec.params, 0.0, init, rho_end, 1e-10);
    if (run.status != IntegrationStatus::ok)
        throw Error(std::string("verify_analytic: propagation failed: ") +
                    to_string(run.status));
    const SpinorState want = analytic_state(a_spec, b_spec, rho_end);
    return endpoint_deviation(run.states.back(), want);
}

}  // namespace

VerifyReport verify_analytic(const CouplingParams& cp, Sign sign, std::span<const double> grid,
                             double tol, double propagation_tol) {
    const CouplingParams c = validate_params(cp);
    VerifyReport rep;
    rep.residual_tol = tol;
    rep.propagation_tol = propagation_tol;

    ProfileSpec a_spec = make_profile(Branch::A, c, sign);
    ProfileSpec b_spec = make_profile(Branch::B, c, sign);
    rep.degenerate = a_spec.mode.degenerate;

    rep.max_residual_A = profile_residual_max(a_spec, grid);
    rep.max_residual_B = profile_residual_max(b_spec, grid);
    rep.propagation_error = propagate_and_compare(a_spec, b_spec, c.rho0);

    if (rep.degenerate) {
        const ProfileSpec a_sec = make_profile(Branch::A, c, sign, 1.0, true);
        const ProfileSpec b_sec = make_profile(Branch::B, c, sign, 1.0, true);
        rep.max_residual_A = std::max(rep.max_residual_A, profile_residual_max(a_sec, grid));
        rep.max_residual_B = std::max(rep.max_residual_B, profile_residual_max(b_sec, grid));
        rep.propagation_error =
            std::max(rep.propagation_error, propagate_and_compare(a_sec, b_sec, c.rho0));
    }

    rep.passed = std::max(rep.max_residual_A, rep.max_residual_B) <= tol &&
                 rep.propagation_error <= propagation_tol;
    return rep;
}

}  // namespace discmodes
