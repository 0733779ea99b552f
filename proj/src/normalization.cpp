#include "discmodes/normalization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "discmodes/errors.hpp"
#include "discmodes/specfun.hpp"

namespace discmodes {

const char* to_string(WindowConvention c) {
    return c == WindowConvention::paper_literal ? "paper_literal" : "shifted_index";
}

const char* to_string(ConventionMatch m) {
    switch (m) {
        case ConventionMatch::paper_literal: return "paper_literal";
        case ConventionMatch::shifted_index: return "shifted_index";
        case ConventionMatch::both: return "both";
        case ConventionMatch::neither: return "neither";
        case ConventionMatch::not_applicable: return "n/a";
    }
    return "?";
}

const char* to_string(Divergence d) {
    switch (d) {
        case Divergence::none: return "finite";
        case Divergence::origin: return "divergent(origin)";
        case Divergence::infinity: return "divergent(infinity)";
        case Divergence::both: return "divergent(both)";
    }
    return "?";
}

std::vector<long> WindowInterval::integer_modes(long lo, long hi) const {
    std::vector<long> out;
    for (long k = lo; k <= hi; ++k)
        if (contains(static_cast<double>(k))) out.push_back(k);
    return out;
}

namespace {

// Re sqrt(D) of the plus branch: the D < 0 extension replaces the printed
// square root by 0.
double effective_root(const CouplingParams& c) {
    const double d = discriminant(c);
    return d > 0.0 ? std::sqrt(d) : 0.0;
}

}  // namespace

WindowInterval window_A(const CouplingParams& c, Sign sign) {
    WindowInterval w;
    w.branch = Branch::A;
    w.sign = sign;
    w.lower = -1.0;
    w.upper = 2.0 * (c.f56 + c.ft56 + sign_value(sign) * effective_root(c));
    return w;
}

WindowInterval window_B(const CouplingParams& c, Sign sign, WindowConvention convention) {
    WindowInterval w;
    w.branch = Branch::B;
    w.sign = sign;
    w.convention = convention;
    w.lower = 2.0 * (c.f56 - c.ft56 + sign_value(sign) * effective_root(c));
    w.upper = 1.0;
    if (convention == WindowConvention::shifted_index) {
        w.lower -= 1.0;
        w.upper -= 1.0;
    }
    return w;
}

Sign matching_window_sign(Branch branch, Sign mode_sign) {
    return branch == Branch::A ? flip(mode_sign) : mode_sign;
}

NormExponents norm_exponents(const ProfileSpec& spec) {
    NormExponents e;
    e.secular = spec.secular;
    e.a = spec.branch == Branch::A ? spec.params.n + 1.0 : -spec.params.n;
    e.b = 2.0 - 2.0 * conformal_power(spec.branch, spec.params) -
          2.0 * spec.mode.alpha.real();
    return e;
}

namespace {

// Coefficients of the secular modulus: |w + v ln f|^2 summed over components
// = s0 + s1 ln f + (ln f)^2 for the unit eigenvector v and Jordan partner w.
struct SecularBracket {
    double s0 = 0.0, s1 = 0.0;
};

SecularBracket secular_bracket(const ProfileSpec& spec) {
    const auto [wI, wII] = generalized_amplitudes(spec.params);
    const Complex vI = spec.mode.amp_I, vII = spec.mode.amp_II;
    SecularBracket sb;
    sb.s0 = std::norm(wI) + std::norm(wII);
    sb.s1 = 2.0 * (std::conj(wI) * vI + std::conj(wII) * vII).real();
    return sb;
}

}  // namespace

double norm_integrand(const ProfileSpec& spec, double rho) {
    if (rho < 0.0) throw DomainError("norm_integrand: rho must be >= 0");
    const double p = radial_power(spec);
    if (rho == 0.0) {
        if (p < 0.0) throw SingularOriginError("norm_integrand: profile singular at rho = 0");
        return 0.0;  // the rho measure factor
    }
    const double amp2 = std::norm(spec.amplitude);
    if (amp2 == 0.0) return 0.0;
    const NormExponents e = norm_exponents(spec);
    // Log-space evaluation keeps intermediate powers in range at any radius.
    const double u = rho / (2.0 * spec.params.rho0);
    const double lf = std::log1p(u * u);
    const double lg = std::log(amp2) + (2.0 * e.a - 1.0) * std::log(rho) - e.b * lf;
    double bracket = 1.0;
    if (spec.secular) {
        const SecularBracket sb = secular_bracket(spec);
        bracket = sb.s0 + sb.s1 * lf + lf * lf;
    }
    return std::exp(lg) * bracket;
}

IntegralValue norm_closed_form(const ProfileSpec& spec) {
    IntegralValue out;
    const double amp2 = std::norm(spec.amplitude);
    if (amp2 == 0.0) return out;  // zero profile, trivially finite
    const NormExponents e = norm_exponents(spec);
    const bool origin_ok = e.a > 0.0;
    const bool infinity_ok = e.b - e.a > 0.0;
    if (!origin_ok || !infinity_ok) {
        out.divergence = !origin_ok && !infinity_ok ? Divergence::both
                         : !origin_ok              ? Divergence::origin
                                                   : Divergence::infinity;
        return out;
    }
    const double cc = 2.0 * spec.params.rho0;
    const double base = 0.5 * std::pow(cc, 2.0 * e.a) * std::exp(lbeta(e.a, e.b - e.a));
    if (!spec.secular) {
        out.value = amp2 * base;
        return out;
    }
    // Differentiating the Beta identity under b brings down ln f: the log and
    // log^2 moments are digamma/trigamma combinations of the same base value.
    const SecularBracket sb = secular_bracket(spec);
    const double dpsi = digamma(e.b) - digamma(e.b - e.a);
    const double m1 = base * dpsi;
    const double m2 = base * (dpsi * dpsi + trigamma(e.b - e.a) - trigamma(e.b));
    out.value = amp2 * (sb.s0 * base + sb.s1 * m1 + m2);
    return out;
}

namespace {

// Gauss-Kronrod 15(7) on [-1, 1]; outermost node first, Gauss nodes at the
// odd Kronrod indices.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// One panel in the local coordinate of either half of the substitution:
// s = t on the origin side, s = 1 - t on the infinity side.
struct Panel {
    double lo = 0.0, hi = 0.0;
    double integral = 0.0, err = 0.0;
    bool infinity_side = false;
};

bool panel_order(const Panel& a, const Panel& b) { return a.err < b.err; }

// The two halves of the substitution rho = 2 rho0 t/(1-t), each written in a
// coordinate that stays well-conditioned near its endpoint.
struct TransformedIntegrand {
    const ProfileSpec* spec;
    double cc;  // 2 rho0

    double origin_side(double t) const {
        const double om = 1.0 - t;
        return norm_integrand(*spec, cc * t / om) * cc / (om * om);
    }
    double infinity_side(double w) const {
        return norm_integrand(*spec, cc * (1.0 - w) / w) * cc / (w * w);
    }
    double eval(double s, bool inf_side) const {
        return inf_side ? infinity_side(s) : origin_side(s);
    }
};

Panel gk15_panel(const TransformedIntegrand& g, double lo, double hi, bool inf_side) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const double fc = g.eval(mid, inf_side);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = g.eval(mid - dx, inf_side);
        const double f2 = g.eval(mid + dx, inf_side);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.integral = resk * half;
    p.err = std::abs(resk - resg) * half;
    p.infinity_side = inf_side;
    return p;
}

struct Probe {
    double p_hat = 0.0;
    bool measured = false;
};

// Local power of g at s -> 0+ from log2 slopes at scale base and base/2,
// Richardson-combined to cancel the O(base) correction.
Probe probe_power(const TransformedIntegrand& g, bool inf_side, double base) {
    const double g0 = g.eval(base, inf_side);
    const double g1 = g.eval(0.5 * base, inf_side);
    const double g2 = g.eval(0.25 * base, inf_side);
    if (!std::isfinite(g0) || !std::isfinite(g1) || !std::isfinite(g2))
        return {-std::numeric_limits<double>::infinity(), true};
    if (!(g0 > 0.0) || !(g1 > 0.0) || !(g2 > 0.0)) return {};  // vanishing endpoint
    const double s1 = std::log2(g0 / g1);
    const double s2 = std::log2(g1 / g2);
    return {2.0 * s2 - s1, true};
}

// Analytic continuation of the cut tail for a pure power g ~ C s^p,
// C calibrated at the cut.
double power_tail(double g_at_cut, double cut, double p) {
    return g_at_cut * cut / (p + 1.0);
}

// Secular infinity tail: g ~ w^q (c2 L^2 + c1 L + c0) with L = -ln w.  The
// coefficients come from quadratic interpolation at three scales; each
// integral of w^q L^j has an elementary antiderivative.
double log_tail(const TransformedIntegrand& g, double cut, double q) {
    double lv[3], y[3];
    for (int i = 0; i < 3; ++i) {
        const double w = cut * static_cast<double>(1 << i);
        lv[i] = -std::log(w);
        y[i] = g.infinity_side(w) * std::pow(w, -q);
    }
    const double d01 = (y[1] - y[0]) / (lv[1] - lv[0]);
    const double d12 = (y[2] - y[1]) / (lv[2] - lv[1]);
    const double d012 = (d12 - d01) / (lv[2] - lv[0]);
    const double c2 = d012;
    const double c1 = d01 - d012 * (lv[0] + lv[1]);
    const double c0 = y[0] - d01 * lv[0] + d012 * lv[0] * lv[1];

    const double q1 = q + 1.0;
    const double wq1 = std::pow(cut, q1);
    const double L = -std::log(cut);
    const double t0 = wq1 / q1;
    const double t1 = wq1 * (L / q1 + 1.0 / (q1 * q1));
    const double t2 = wq1 * (L * L / q1 + 2.0 * L / (q1 * q1) + 2.0 / (q1 * q1 * q1));
    return c2 * t2 + c1 * t1 + c0 * t0;
}

Divergence combine_divergence(bool origin, bool infinity) {
    if (origin && infinity) return Divergence::both;
    if (origin) return Divergence::origin;
    return Divergence::infinity;
}

}  // namespace

IntegralValue norm_quadrature(const ProfileSpec& spec, double tol) {
    if (!(tol > 0.0)) throw DomainError("norm_quadrature: tolerance must be positive");
    QuadratureOptions opt;
    opt.rel_tol = tol;
    return norm_quadrature(spec, opt);
}

IntegralValue norm_quadrature(const ProfileSpec& spec, const QuadratureOptions& opt) {
    const CouplingParams params = validate_params(spec.params);
    IntegralValue out;
    if (std::norm(spec.amplitude) == 0.0) return out;

    const TransformedIntegrand g{&spec, 2.0 * params.rho0};
    const NormExponents e = norm_exponents(spec);
    const double p_origin = 2.0 * e.a - 1.0;
    const double q_infinity = 2.0 * (e.b - e.a) - 1.0;

    // Integrability screening at both endpoints by measured local power;
    // marginal powers (within slope_margin of -1) are divergent, matching the
    // strict window inequalities.
    const Probe origin = probe_power(g, false, opt.probe_scale);
    const Probe infinity = probe_power(g, true, opt.probe_scale);
    const bool origin_div = origin.measured && origin.p_hat <= -1.0 + opt.slope_margin;
    const bool infinity_div = infinity.measured && infinity.p_hat <= -1.0 + opt.slope_margin;
    if (origin_div || infinity_div) {
        out.divergence = combine_divergence(origin_div, infinity_div);
        return out;
    }

    // The measured powers must reproduce the profile exponents; the secular
    // infinity slope carries a known O(1/ln) log bias, so its band is wider.
    bool suspect = false;
    if (origin.measured && std::abs(origin.p_hat - p_origin) > 0.05) suspect = true;
    if (infinity.measured &&
        std::abs(infinity.p_hat - q_infinity) > (spec.secular ? 0.25 : 0.05))
        suspect = true;

    // Seed both halves with a geometric mesh toward the endpoints; the
    // infinity side adds the ratio-test radii as breakpoints so partial
    // integrals over [0, R] fall out of the final panel set.
    const int doublings = std::max(opt.ratio_doublings, 1);
    std::vector<double> ratio_w(static_cast<std::size_t>(doublings) + 1);
    for (int k = 0; k <= doublings; ++k) {
        const double radius = opt.ratio_radius_factor * params.rho0 * std::ldexp(1.0, k);
        ratio_w[static_cast<std::size_t>(k)] = g.cc / (g.cc + radius);
    }

    std::vector<Panel> heap;
    double toterr = 0.0;
    auto seed_side = [&](bool inf_side) {
        std::vector<double> cuts;
        for (double s = opt.cut; s < 0.45; s *= 4.0) cuts.push_back(s);
        if (inf_side)
            for (double wk : ratio_w)
                if (wk > opt.cut && wk < 0.5) cuts.push_back(wk);
        cuts.push_back(0.5);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            heap.push_back(gk15_panel(g, cuts[i], cuts[i + 1], inf_side));
            toterr += heap.back().err;
            std::push_heap(heap.begin(), heap.end(), panel_order);
        }
    };
    seed_side(false);
    seed_side(true);

    auto current_total = [&] {
        double s = 0.0;
        for (const Panel& p : heap) s += p.integral;
        return s;
    };

    bool met = true;
    while (heap.size() < opt.max_panels) {
        const double total = current_total();
        if (!std::isfinite(total) || !std::isfinite(toterr)) {
            met = false;
            break;
        }
        if (toterr <= opt.rel_tol * std::abs(total) + 1e-300) break;
        std::pop_heap(heap.begin(), heap.end(), panel_order);
        Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo) || !(mid < worst.hi)) {  // width underflow
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), panel_order);
            met = false;
            break;
        }
        toterr -= worst.err;
        for (const Panel& child : {gk15_panel(g, worst.lo, mid, worst.infinity_side),
                                   gk15_panel(g, mid, worst.hi, worst.infinity_side)}) {
            toterr += child.err;
            heap.push_back(child);
            std::push_heap(heap.begin(), heap.end(), panel_order);
        }
    }

    double left = 0.0, right = 0.0;
    for (const Panel& p : heap) (p.infinity_side ? right : left) += p.integral;
    if (heap.size() >= opt.max_panels && toterr > opt.rel_tol * std::abs(left + right))
        met = false;

    const double tail_origin = power_tail(g.origin_side(opt.cut), opt.cut, p_origin);
    const double tail_infinity = spec.secular
                                     ? log_tail(g, opt.cut, q_infinity)
                                     : power_tail(g.infinity_side(opt.cut), opt.cut, q_infinity);

    // Literal ratio test on the cumulative integrals over [0, R], R doubling:
    // sustained growth past the asymptotic radius overrides the value path.
    {
        const double base_below = tail_origin + left;
        std::vector<double> cumulative;
        for (double wk : ratio_w) {
            double above = 0.0;
            for (const Panel& p : heap)
                if (p.infinity_side && p.lo >= wk) above += p.integral;
            cumulative.push_back(base_below + above);
        }
        bool rising = true;
        for (std::size_t k = 1; k < cumulative.size(); ++k)
            if (!(cumulative[k] >= opt.ratio_growth * cumulative[k - 1])) rising = false;
        if (rising && !cumulative.empty() && cumulative.front() > 0.0) {
            out.divergence = Divergence::infinity;
            return out;
        }
    }

    out.value = tail_origin + left + right + tail_infinity;
    out.error = toterr + 1e-9 * (std::abs(tail_origin) + std::abs(tail_infinity));
    out.tolerance_met = met && !suspect;
    return out;
}

NormReport classify_branch(const CouplingParams& raw, Sign sign, Branch branch,
                           const QuadratureOptions& opt) {
    const CouplingParams c = validate_params(raw);
    NormReport rep;
    rep.branch = branch;
    rep.mode_sign = sign;
    rep.n = c.n;

    const ProfileSpec spec = make_profile(branch, c, sign);
    const Sign wsign = matching_window_sign(branch, sign);
    if (branch == Branch::A) {
        rep.window = window_A(c, wsign);
        rep.window_verdict = rep.window.contains(c.n);
        rep.window_paper_literal = rep.window_shifted_index = rep.window_verdict;
        rep.convention_used = ConventionMatch::not_applicable;
    } else {
        const WindowInterval printed = window_B(c, wsign, WindowConvention::paper_literal);
        const WindowInterval shifted = window_B(c, wsign, WindowConvention::shifted_index);
        rep.window_paper_literal = printed.contains(c.n);
        rep.window_shifted_index = shifted.contains(c.n);
        rep.window = shifted;
        rep.window_verdict = rep.window_shifted_index;
    }

    rep.closed_form = norm_closed_form(spec);
    rep.quadrature = norm_quadrature(spec, opt);
    const bool quad_finite = rep.quadrature.finite();
    if (branch == Branch::B) {
        const bool match_printed = rep.window_paper_literal == quad_finite;
        const bool match_shifted = rep.window_shifted_index == quad_finite;
        rep.convention_used = match_printed && match_shifted ? ConventionMatch::both
                              : match_printed               ? ConventionMatch::paper_literal
                              : match_shifted               ? ConventionMatch::shifted_index
                                                            : ConventionMatch::neither;
    }

    bool agree = rep.window_verdict == rep.closed_form.finite() &&
                 rep.closed_form.finite() == quad_finite;
    if (agree && quad_finite)
        agree = rep.quadrature.tolerance_met &&
                std::abs(rep.closed_form.value - rep.quadrature.value) <=
                    std::max(1e-8 * std::abs(rep.closed_form.value), rep.quadrature.error);
    rep.agree = agree;
    return rep;
}

std::pair<NormReport, NormReport> classify_mode(const CouplingParams& raw, Sign sign,
                                                const QuadratureOptions& opt) {
    const CouplingParams c = validate_params(raw);
    return {classify_branch(c, sign, Branch::A, opt), classify_branch(c, sign, Branch::B, opt)};
}

ProfileSpec with_unit_norm(const ProfileSpec& spec) {
    const IntegralValue cf = norm_closed_form(spec);
    if (!cf.finite() || !(cf.value > 0.0))
        throw DomainError("with_unit_norm: profile is not normalizable");
    ProfileSpec scaled = spec;
    scaled.amplitude = spec.amplitude / std::sqrt(cf.value);
    return scaled;
}

SuperpositionReport classify_superposition(const CouplingParams& raw, Branch branch,
                                           const QuadratureOptions& opt) {
    const CouplingParams c = validate_params(raw);
    const double re_plus = eigen_mode(c, Sign::plus).alpha.real();
    SuperpositionReport rep;
    rep.dominant_sign = re_plus >= -re_plus ? Sign::plus : Sign::minus;
    rep.dominant = classify_branch(c, rep.dominant_sign, branch, opt);
    rep.subdominant = classify_branch(c, flip(rep.dominant_sign), branch, opt);
    rep.normalizable = rep.dominant.quadrature.finite();
    return rep;
}

}  // namespace discmodes
