#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace wsvd {

using Point  = Eigen::Vector2d;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index  = Eigen::Index;

// Common base so callers can catch everything the library throws in one clause.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicatePoints : Error {
    using Error::Error;
};

struct TooFewPoints : Error {
    using Error::Error;
};

struct UnsupportedDomain : Error {
    using Error::Error;
};

struct DegenerateRule : Error {
    using Error::Error;
};

struct EigenFailure : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct EmptyGrid : Error {
    using Error::Error;
};

// Carries the condition estimate so callers can report how singular the system was.
struct SingularMatrix : Error {
    double cond_estimate;
    SingularMatrix(const std::string& what, double cond)
        : Error(what), cond_estimate(cond) {}
};

} // namespace wsvd
