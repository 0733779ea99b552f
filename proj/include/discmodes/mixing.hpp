#pragma once

#include <array>
#include <utility>

#include "discmodes/params.hpp"

namespace discmodes {

/// Radicand of the mixing exponent, D = ft3^2 + ftp*ftm.  May be negative
/// (purely imaginary exponents) or zero (Jordan block unless the matrix
/// itself vanishes).
double discriminant(const CouplingParams& c);

/// (+sqrt(D), -sqrt(D)) for D >= 0, (+i sqrt(-D), -i sqrt(-D)) for D < 0.
std::pair<Complex, Complex> alpha_branches(const CouplingParams& c);

/// The 2x2 coupling matrix M = [[-ft3, ftp], [ftm, +ft3]].  Its eigenvalues
/// are the two mixing exponents; trace(M) = 0 and det(M) = -D.
std::array<std::array<double, 2>, 2> coupling_matrix(const CouplingParams& c);

/// One branch of the mixing eigenproblem: exponent alpha and a unit-normalized
/// amplitude pair (amp_I, amp_II) with M v = alpha v.
///
/// `degenerate` is set when D vanishes (relative to ||M||^2) while M itself is
/// nonzero; alpha is then exactly 0 and the single eigenvector is returned for
/// both signs.  The secular partner solution lives with the profile code.
struct EigenMode {
    Complex alpha;
    Complex amp_I;
    Complex amp_II;
    bool degenerate = false;
    Sign sign = Sign::plus;
};

EigenMode eigen_mode(const CouplingParams& c, Sign sign);

/// Generalized amplitude pair w for a degenerate mode: minimal-norm solution
/// of M w = v where v is the eigenvector.  Only meaningful when
/// eigen_mode(c, .).degenerate is true.
std::pair<Complex, Complex> generalized_amplitudes(const CouplingParams& c);

}  // namespace discmodes
