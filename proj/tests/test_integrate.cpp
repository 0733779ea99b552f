#include <doctest.h>

#include <cmath>
#include <complex>

#include "discmodes/integrate.hpp"
#include "discmodes/residuals.hpp"
#include "support/random.hpp"

using namespace discmodes;
using discmodes::testing::ParamRng;

namespace {

double endpoint_deviation(const SpinorState& got, const SpinorState& want) {
    const double a_scale = std::max({std::abs(want.aI), std::abs(want.aII), 1e-300});
    const double b_scale = std::max({std::abs(want.bI), std::abs(want.bII), 1e-300});
    return std::max({std::abs(got.aI - want.aI) / a_scale,
                     std::abs(got.aII - want.aII) / a_scale,
                     std::abs(got.bI - want.bI) / b_scale,
                     std::abs(got.bII - want.bII) / b_scale});
}

SpinorState analytic_at(const CouplingParams& c, Sign s, double rho) {
    const ProfileSpec a_spec = make_profile(Branch::A, c, s);
    const ProfileSpec b_spec = make_profile(Branch::B, c, s);
    return analytic_state(a_spec, b_spec, rho);
}

}  // namespace

TEST_CASE("propagating analytic data reproduces the analytic endpoint") {
    ParamRng rng(401);
    for (int i = 0; i < 10; ++i) {
        const CouplingParams c =
            testing::random_params(rng, testing::cycle_class(static_cast<std::size_t>(i)));
        const SpinorState init = analytic_at(c, Sign::plus, 1e-4 * c.rho0);
        const IntegrationResult res = integrate(c, 0.0, init, 10.0 * c.rho0, 1e-10);
        REQUIRE(res.status == IntegrationStatus::ok);
        REQUIRE_FALSE(res.states.empty());
        CHECK(res.states.front().rho == init.rho);
        CHECK(res.states.back().rho == doctest::Approx(10.0 * c.rho0).epsilon(1e-14));
        const SpinorState want = analytic_at(c, Sign::plus, res.states.back().rho);
        CHECK(endpoint_deviation(res.states.back(), want) <= 1e-6);
    }
}

TEST_CASE("zero initial state stays zero") {
    CouplingParams c;
    c.ft3 = 0.3;
    c.ftp = 0.2;
    c.n = 1.0;
    c = validate_params(c);
    SpinorState init;
    init.rho = 0.01;
    const IntegrationResult res = integrate(c, 0.3, init, 5.0, 1e-10);
    REQUIRE(res.status == IntegrationStatus::ok);
    for (const SpinorState& st : res.states) {
        CHECK(std::abs(st.aI) == 0.0);
        CHECK(std::abs(st.aII) == 0.0);
        CHECK(std::abs(st.bI) == 0.0);
        CHECK(std::abs(st.bII) == 0.0);
    }
}

TEST_CASE("a mass term pushes the state off the massless solution") {
    ParamRng rng(402);
    const CouplingParams c = testing::random_params(rng, testing::DiscClass::positive);
    const double m = 0.5 / c.rho0;
    const SpinorState init = analytic_at(c, Sign::plus, 1e-2 * c.rho0);
    const IntegrationResult res = integrate(c, m, init, 5.0 * c.rho0, 1e-10);
    REQUIRE(res.status == IntegrationStatus::ok);
    const SpinorState want = analytic_at(c, Sign::plus, res.states.back().rho);
    CHECK(endpoint_deviation(res.states.back(), want) > 1e-3);
}

TEST_CASE("tightening the tolerance tightens the endpoint") {
    ParamRng rng(403);
    const CouplingParams c = testing::random_params(rng, testing::DiscClass::positive);
    const SpinorState init = analytic_at(c, Sign::minus, 1e-3 * c.rho0);
    auto err_at = [&](double tol) {
        const IntegrationResult res = integrate(c, 0.0, init, 8.0 * c.rho0, tol);
        REQUIRE(res.status == IntegrationStatus::ok);
        return endpoint_deviation(res.states.back(),
                                  analytic_at(c, Sign::minus, res.states.back().rho));
    };
    const double e6 = err_at(1e-6);
    const double e8 = err_at(1e-8);
    const double e10 = err_at(1e-10);
    CHECK(e8 <= e6 * 1.5);
    CHECK(e10 <= e8 * 1.5);
    CHECK(e10 < e6);
}

TEST_CASE("step budget exhaustion is reported, not hidden") {
    CouplingParams c;
    c.n = 1.0;
    c = validate_params(c);
    SpinorState init = analytic_at(c, Sign::plus, 0.1);
    IntegratorOptions opt;
    opt.tol = 1e-10;
    opt.max_steps = 3;
    const IntegrationResult res = integrate(c, 0.0, init, 10.0, opt);
    CHECK(res.status == IntegrationStatus::max_steps);
}

TEST_CASE("integrate validates its inputs and handles the empty interval") {
    const CouplingParams c = validate_params(CouplingParams{});
    SpinorState init;
    init.rho = 1.0;
    const IntegrationResult res = integrate(c, 0.0, init, 1.0, 1e-10);  // empty interval
    CHECK(res.status == IntegrationStatus::ok);
    CHECK(res.states.size() == 1);
    CHECK_THROWS(integrate(c, 0.0, init, 2.0, 0.0));     // bad tolerance
    init.rho = 0.0;
    CHECK_THROWS(integrate(c, 0.0, init, 1.0, 1e-10));   // start at the singular point
}

TEST_CASE("default radius grid is ascending and spans the contract range") {
    const std::vector<double> g = default_radius_grid(2.0, 100);
    REQUIRE(g.size() == 100);
    CHECK(g.front() == doctest::Approx(2e-3).epsilon(1e-12));
    CHECK(g.back() == doctest::Approx(40.0).epsilon(1e-12));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("verify_analytic passes for valid parameters of every class") {
    ParamRng rng(404);
    for (auto cls : {testing::DiscClass::positive, testing::DiscClass::negative,
                     testing::DiscClass::zero, testing::DiscClass::diagonal}) {
        const CouplingParams c = testing::random_params(rng, cls);
        const std::vector<double> grid = default_radius_grid(c.rho0);
        for (Sign s : {Sign::plus, Sign::minus}) {
            const VerifyReport rep = verify_analytic(c, s, grid, 1e-8);
            CHECK(rep.passed);
            CHECK(rep.max_residual_A <= 1e-10);
            CHECK(rep.max_residual_B <= 1e-10);
            CHECK(rep.propagation_error <= 1e-6);
            CHECK(rep.degenerate == (cls == testing::DiscClass::zero));
        }
    }
}

TEST_CASE("a wrong exponent is caught by the residual check") {
    ParamRng rng(405);
    const CouplingParams c = testing::random_params(rng, testing::DiscClass::positive);
    ProfileSpec spec = make_profile(Branch::A, c, Sign::plus);
    spec.mode.alpha += 0.1;  // deliberately broken solution
    const double rho = 1.5 * c.rho0;
    const auto v = massless_profile(spec, rho);
    const auto d = profile_derivative(spec, rho);
    const MasslessResidual r = massless_residual(Branch::A, v, d, c, rho);
    CHECK(std::max(std::abs(r.r1), std::abs(r.r2)) / r.scale > 1e-3);
}
