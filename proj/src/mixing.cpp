#include "discmodes/mixing.hpp"

#include <cmath>

namespace discmodes {

namespace {

constexpr double kDegenerateRel = 1e-13;

double frob2(const CouplingParams& c) {
    return 2.0 * c.ft3 * c.ft3 + c.ftp * c.ftp + c.ftm * c.ftm;
}

bool is_degenerate(const CouplingParams& c) {
    const double m2 = frob2(c);
    if (m2 == 0.0) return false;  // zero matrix: every vector is an eigenvector
    return std::abs(discriminant(c)) <= kDegenerateRel * m2;
}

}  // namespace

double discriminant(const CouplingParams& c) {
    return c.ft3 * c.ft3 + c.ftp * c.ftm;
}

std::pair<Complex, Complex> alpha_branches(const CouplingParams& c) {
    const double d = discriminant(c);
    Complex plus;
    if (d >= 0.0)
        plus = Complex(std::sqrt(d), 0.0);
    else
        plus = Complex(0.0, std::sqrt(-d));
    return {plus, -plus};
}

std::array<std::array<double, 2>, 2> coupling_matrix(const CouplingParams& c) {
    return {{{-c.ft3, c.ftp}, {c.ftm, c.ft3}}};
}

EigenMode eigen_mode(const CouplingParams& c, Sign sign) {
    EigenMode mode;
    mode.sign = sign;

    // Diagonal case: the components decouple and the exponents are -+ft3.
    // Convention at ft3 = 0: minus keeps component I.
    if (c.ftp == 0.0 && c.ftm == 0.0) {
        const bool minus_is_I = (c.ft3 >= 0.0);
        const bool take_I = (sign == Sign::minus) == minus_is_I;
        mode.alpha = take_I ? Complex(-c.ft3) : Complex(c.ft3);
        mode.amp_I = take_I ? 1.0 : 0.0;
        mode.amp_II = take_I ? 0.0 : 1.0;
        return mode;
    }

    if (is_degenerate(c)) {
        mode.degenerate = true;
        mode.alpha = 0.0;
    } else {
        auto [ap, am] = alpha_branches(c);
        mode.alpha = (sign == Sign::plus) ? ap : am;
    }

    // Eigenvector from the better-conditioned row of (M - alpha I).  Each row
    // encodes one of the two equivalent amplitude-ratio formulas; picking the
    // row of larger norm avoids the 0/0 of the literal ratios near alpha = +-ft3.
    const Complex r1a = -c.ft3 - mode.alpha, r1b = c.ftp;
    const Complex r2a = c.ftm, r2b = c.ft3 - mode.alpha;
    const double n1 = std::norm(r1a) + std::norm(r1b);
    const double n2 = std::norm(r2a) + std::norm(r2b);
    Complex vI, vII;
    if (n1 >= n2) {
        vI = r1b;
        vII = -r1a;
    } else {
        vI = r2b;
        vII = -r2a;
    }
    const double nv = std::sqrt(std::norm(vI) + std::norm(vII));
    mode.amp_I = vI / nv;
    mode.amp_II = vII / nv;
    return mode;
}

std::pair<Complex, Complex> generalized_amplitudes(const CouplingParams& c) {
    const EigenMode mode = eigen_mode(c, Sign::plus);
    // Minimal-norm w with M w = v.  M is rank one here, so w = M^T v / ||M||_F^2.
    const auto m = coupling_matrix(c);
    const double m2 = frob2(c);
    const Complex wI = (m[0][0] * mode.amp_I + m[1][0] * mode.amp_II) / m2;
    const Complex wII = (m[0][1] * mode.amp_I + m[1][1] * mode.amp_II) / m2;
    return {wI, wII};
}

}  // namespace discmodes
