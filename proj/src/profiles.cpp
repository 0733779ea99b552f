#include "discmodes/profiles.hpp"

#include <cmath>
#include <tuple>

namespace discmodes {

const char* to_string(Branch b) { return b == Branch::A ? "A" : "B"; }

ProfileSpec make_profile(Branch branch, const CouplingParams& c, Sign sign,
                         Complex amplitude, bool secular) {
    ProfileSpec spec;
    spec.branch = branch;
    spec.mode = eigen_mode(c, sign);
    spec.amplitude = amplitude;
    spec.params = c;
    spec.secular = secular && spec.mode.degenerate;
    return spec;
}

double radial_power(const ProfileSpec& spec) {
    return spec.branch == Branch::A ? spec.params.n : -spec.params.n - 1.0;
}

double conformal_power(Branch branch, const CouplingParams& c) {
    const double s = branch == Branch::A ? -1.0 : 1.0;
    return 0.5 * (1.0 + s * 2.0 * c.f56 - 2.0 * c.ft56);
}

Complex f_exponent(const ProfileSpec& spec) {
    return conformal_power(spec.branch, spec.params) + spec.mode.alpha;
}

namespace {

// rho^p for rho >= 0; the caller guarantees p >= 0 when rho = 0.
double rho_power(double rho, double p) {
    if (rho == 0.0) return p == 0.0 ? 1.0 : 0.0;
    return std::pow(rho, p);
}

Complex f_power(double f, Complex k) {
    return std::exp(k * std::log(f));
}

void check_origin(const ProfileSpec& spec, double rho, double p) {
    if (rho < 0.0) throw DomainError("profile: rho must be >= 0");
    if (rho == 0.0 && p < 0.0)
        throw SingularOriginError(spec.branch == Branch::A
                                      ? "profile A singular at rho = 0 for n < 0"
                                      : "profile B singular at rho = 0 for n > -1");
}

std::pair<Complex, Complex> evaluate(const ProfileSpec& spec, double rho) {
    const double p = radial_power(spec);
    check_origin(spec, rho, p);
    const VielbeinSample vb = vielbein(rho, spec.params.rho0);
    const double rp = rho_power(rho, p);
    if (spec.secular) {
        const double sigma = conformal_power(spec.branch, spec.params);
        const auto [wI, wII] = generalized_amplitudes(spec.params);
        const double lf = std::log(vb.f);
        const Complex common = spec.amplitude * rp * f_power(vb.f, sigma);
        return {common * (wI + spec.mode.amp_I * lf), common * (wII + spec.mode.amp_II * lf)};
    }
    const Complex common = spec.amplitude * rp * f_power(vb.f, f_exponent(spec));
    return {common * spec.mode.amp_I, common * spec.mode.amp_II};
}

}  // namespace

std::pair<Complex, Complex> massless_profile_A(const ProfileSpec& spec, double rho) {
    if (spec.branch != Branch::A) throw MismatchedSpecsError("massless_profile_A: branch B spec");
    return evaluate(spec, rho);
}

std::pair<Complex, Complex> massless_profile_B(const ProfileSpec& spec, double rho) {
    if (spec.branch != Branch::B) throw MismatchedSpecsError("massless_profile_B: branch A spec");
    return evaluate(spec, rho);
}

std::pair<Complex, Complex> massless_profile(const ProfileSpec& spec, double rho) {
    return evaluate(spec, rho);
}

std::pair<Complex, Complex> profile_derivative(const ProfileSpec& spec, double rho) {
    const double p = radial_power(spec);
    if (rho < 0.0) throw DomainError("profile_derivative: rho must be >= 0");
    if (rho == 0.0 && !(p == 0.0 || p >= 1.0))
        throw SingularOriginError("profile_derivative: singular at rho = 0");
    const VielbeinSample vb = vielbein(rho, spec.params.rho0);

    // d/drho [rho^p f^k u(f)] written term by term so rho = 0 stays exact.
    const double rp = rho_power(rho, p);
    const double rp1 = p == 0.0 ? 0.0 : p * rho_power(rho, p - 1.0);

    if (spec.secular) {
        const double sigma = conformal_power(spec.branch, spec.params);
        const auto [wI, wII] = generalized_amplitudes(spec.params);
        const Complex vI = spec.mode.amp_I, vII = spec.mode.amp_II;
        const double lf = std::log(vb.f);
        const Complex fs = f_power(vb.f, sigma);
        const Complex uI = wI + vI * lf, uII = wII + vII * lf;
        const Complex cpow = rp1 * fs + rp * sigma * f_power(vb.f, sigma - 1.0) * vb.df;
        const Complex clog = rp * fs * (vb.df / vb.f);
        return {spec.amplitude * (cpow * uI + clog * vI),
                spec.amplitude * (cpow * uII + clog * vII)};
    }

    const Complex k = f_exponent(spec);
    const Complex common =
        spec.amplitude * (rp1 * f_power(vb.f, k) + rp * k * f_power(vb.f, k - 1.0) * vb.df);
    return {common * spec.mode.amp_I, common * spec.mode.amp_II};
}

std::pair<Complex, Complex> superpose(const ProfileSpec& plus, const ProfileSpec& minus,
                                      double rho) {
    const CouplingParams &a = plus.params, &b = minus.params;
    const bool same_params = a.f56 == b.f56 && a.ft56 == b.ft56 && a.ft3 == b.ft3 &&
                             a.ftp == b.ftp && a.ftm == b.ftm && a.n == b.n && a.rho0 == b.rho0;
    if (!same_params || plus.branch != minus.branch || plus.mode.sign == minus.mode.sign)
        throw MismatchedSpecsError("superpose: specs must share params/branch and differ in sign");
    const auto [pI, pII] = massless_profile(plus, rho);
    const auto [mI, mII] = massless_profile(minus, rho);
    return {pI + mI, pII + mII};
}

SpinorState analytic_state(const ProfileSpec& a_spec, const ProfileSpec& b_spec, double rho) {
    if (a_spec.branch != Branch::A || b_spec.branch != Branch::B)
        throw MismatchedSpecsError("analytic_state: expects (A, B) specs");
    SpinorState st;
    st.rho = rho;
    std::tie(st.aI, st.aII) = massless_profile(a_spec, rho);
    std::tie(st.bI, st.bII) = massless_profile(b_spec, rho);
    return st;
}

}  // namespace discmodes
