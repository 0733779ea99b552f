#pragma once

#include <stdexcept>
#include <string>

namespace discmodes {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// validate_params
struct NonFiniteError : Error {
    using Error::Error;
};
struct NonPositiveScaleError : Error {
    using Error::Error;
};

// radius out of the allowed domain (rho < 0, or rho <= 0 where 1/rho terms appear)
struct DomainError : Error {
    using Error::Error;
};

// profile evaluation at rho = 0 where the radial power is negative
struct SingularOriginError : Error {
    using Error::Error;
};

// superposition of specs that do not share parameters/branch
struct MismatchedSpecsError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace discmodes
