#include "discmodes/params.hpp"

#include <cmath>

namespace discmodes {

const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

CouplingParams validate_params(const CouplingParams& raw) {
    const double fields[] = {raw.f56, raw.ft56, raw.ft3, raw.ftp, raw.ftm, raw.n, raw.rho0};
    for (double v : fields) {
        if (!std::isfinite(v)) throw NonFiniteError("validate_params: non-finite field");
    }
    if (raw.rho0 <= 0.0) throw NonPositiveScaleError("validate_params: rho0 must be > 0");
    CouplingParams out = raw;
    out.n_is_integer = std::abs(raw.n - std::round(raw.n)) <= 1e-9;
    return out;
}

VielbeinSample vielbein(double rho, double rho0) {
    if (rho < 0.0) throw DomainError("vielbein: rho must be >= 0");
    if (rho0 <= 0.0) throw NonPositiveScaleError("vielbein: rho0 must be > 0");
    const double u = rho / (2.0 * rho0);
    VielbeinSample s;
    s.rho = rho;
    s.f = 1.0 + u * u;
    s.df = rho / (2.0 * rho0 * rho0);
    s.half_dlogf = s.df / (2.0 * s.f);
    return s;
}

}  // namespace discmodes
