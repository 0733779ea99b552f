#include "discmodes/scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "discmodes/errors.hpp"
#include "discmodes/integrate.hpp"
#include "discmodes/residuals.hpp"

namespace discmodes {

std::vector<double> axis_values(const AxisSpec& axis) {
    if (axis.count < 1) throw DomainError("axis: count must be >= 1");
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max))
        throw NonFiniteError("axis: bounds must be finite");
    if (axis.min > axis.max) throw DomainError("axis: min must be <= max");
    if (axis.count == 1) return {axis.min};
    std::vector<double> v(static_cast<std::size_t>(axis.count));
    for (int i = 0; i < axis.count; ++i)
        v[static_cast<std::size_t>(i)] =
            axis.min + (axis.max - axis.min) * static_cast<double>(i) / (axis.count - 1);
    return v;
}

GridSpec validate_grid(const GridSpec& g) {
    GridSpec out = g;
    for (const AxisSpec* a : {&out.f56, &out.ft56, &out.ft3, &out.ftp, &out.ftm})
        (void)axis_values(*a);  // bounds/count checks
    if (out.n_min > out.n_max) throw DomainError("grid: n_min must be <= n_max");
    if (!(out.rho0 > 0.0)) throw NonPositiveScaleError("grid: rho0 must be positive");
    if (out.sign_set.empty()) throw DomainError("grid: sign_set must not be empty");
    if (out.conventions.empty()) throw DomainError("grid: conventions must not be empty");
    if (!(out.residual_tol > 0.0)) throw DomainError("grid: residual_tol must be positive");
    if (!(out.quadrature.rel_tol > 0.0)) throw DomainError("grid: rel_tol must be positive");

    // Canonical orders keep the record sequence deterministic.
    auto has_sign = [&](Sign s) {
        return std::find(out.sign_set.begin(), out.sign_set.end(), s) != out.sign_set.end();
    };
    std::vector<Sign> signs;
    if (has_sign(Sign::plus)) signs.push_back(Sign::plus);
    if (has_sign(Sign::minus)) signs.push_back(Sign::minus);
    out.sign_set = signs;
    auto has_conv = [&](WindowConvention c) {
        return std::find(out.conventions.begin(), out.conventions.end(), c) !=
               out.conventions.end();
    };
    std::vector<WindowConvention> convs;
    if (has_conv(WindowConvention::shifted_index))
        convs.push_back(WindowConvention::shifted_index);
    if (has_conv(WindowConvention::paper_literal))
        convs.push_back(WindowConvention::paper_literal);
    out.conventions = convs;
    return out;
}

namespace {

// Max relative residual of the printed-window mode profile over integer n and
// a modest radius grid; the B branch skips rho small enough to underflow.
double point_residual(const CouplingParams& base, Sign mode_sign, Branch branch,
                      const GridSpec& g, const std::vector<double>& radii) {
    double worst = 0.0;
    for (long n = g.n_min; n <= g.n_max; ++n) {
        CouplingParams c = base;
        c.n = static_cast<double>(n);
        const ProfileSpec spec = make_profile(branch, c, mode_sign);
        for (double rho : radii) {
            const auto v = massless_profile(spec, rho);
            const auto d = profile_derivative(spec, rho);
            const MasslessResidual r = massless_residual(branch, v, d, c, rho);
            const double mag = std::max(std::abs(r.r1), std::abs(r.r2));
            worst = std::max(worst, r.scale > 0.0 ? mag / r.scale : mag);
        }
    }
    return worst;
}

ScanRecord make_record(const GridSpec& g, const CouplingParams& base, Sign window_sign,
                       Branch branch, const std::vector<double>& radii) {
    ScanRecord rec;
    rec.f56 = base.f56;
    rec.ft56 = base.ft56;
    rec.ft3 = base.ft3;
    rec.ftp = base.ftp;
    rec.ftm = base.ftm;
    rec.sign = window_sign;
    rec.branch = branch;
    rec.convention = g.conventions.front();
    const double d = discriminant(base);
    rec.degenerate = d == 0.0 && (base.ft3 != 0.0 || base.ftp != 0.0 || base.ftm != 0.0);
    rec.ftp_zero = base.ftp == 0.0;

    const WindowInterval w = branch == Branch::A
                                 ? window_A(base, window_sign)
                                 : window_B(base, window_sign, rec.convention);
    rec.window_lower = w.lower;
    rec.window_upper = w.upper;
    rec.modes = w.integer_modes(g.n_min, g.n_max);

    const Sign mode_sign = matching_window_sign(branch, window_sign);
    try {
        if (g.verify)
            rec.max_residual = point_residual(base, mode_sign, branch, g, radii);
        if (g.quad_check) {
            bool all_ok = true;
            for (long n = g.n_min; n <= g.n_max; ++n) {
                CouplingParams c = base;
                c.n = static_cast<double>(n);
                const NormReport rep = classify_branch(c, mode_sign, branch, g.quadrature);
                const bool qf = rep.quadrature.finite();
                bool ok = w.contains(c.n) == qf && rep.closed_form.finite() == qf;
                if (ok && qf)
                    ok = rep.quadrature.tolerance_met &&
                         std::abs(rep.closed_form.value - rep.quadrature.value) <=
                             std::max(1e-8 * std::abs(rep.closed_form.value),
                                      rep.quadrature.error);
                if (!ok) all_ok = false;
            }
            rec.agree = all_ok;
            rec.checked = true;
        }
    } catch (const std::exception& e) {
        rec.note = e.what();
        rec.checked = false;
    }
    return rec;
}

}  // namespace

std::vector<ScanRecord> scan(const GridSpec& raw, ExecutionPolicy policy) {
    const GridSpec g = validate_grid(raw);
    const std::vector<double> vf56 = axis_values(g.f56);
    const std::vector<double> vft56 = axis_values(g.ft56);
    const std::vector<double> vft3 = axis_values(g.ft3);
    const std::vector<double> vftp = axis_values(g.ftp);
    const std::vector<double> vftm = axis_values(g.ftm);

    const std::size_t points =
        vf56.size() * vft56.size() * vft3.size() * vftp.size() * vftm.size();
    const std::size_t signs = g.sign_set.size();
    const std::size_t per_point = signs * 2;
    std::vector<ScanRecord> records(points * per_point);
    const std::vector<double> radii = g.verify ? default_radius_grid(g.rho0, 25)
                                               : std::vector<double>{};

    auto fill_point = [&](std::size_t p) {
        std::size_t rest = p;
        const std::size_t i4 = rest % vftm.size();
        rest /= vftm.size();
        const std::size_t i3 = rest % vftp.size();
        rest /= vftp.size();
        const std::size_t i2 = rest % vft3.size();
        rest /= vft3.size();
        const std::size_t i1 = rest % vft56.size();
        rest /= vft56.size();
        const std::size_t i0 = rest;
        CouplingParams base;
        base.f56 = vf56[i0];
        base.ft56 = vft56[i1];
        base.ft3 = vft3[i2];
        base.ftp = vftp[i3];
        base.ftm = vftm[i4];
        base.n = 0.0;
        base.rho0 = g.rho0;
        std::size_t slot = p * per_point;
        for (Sign s : g.sign_set)
            for (Branch b : {Branch::A, Branch::B})
                records[slot++] = make_record(g, base, s, b, radii);
    };

#ifdef _OPENMP
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long p = 0; p < static_cast<long>(points); ++p)
            fill_point(static_cast<std::size_t>(p));
        return records;
    }
#else
    (void)policy;  // without OpenMP the parallel policy degrades to serial
#endif
    for (std::size_t p = 0; p < points; ++p) fill_point(p);
    return records;
}

}  // namespace discmodes
