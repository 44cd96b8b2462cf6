#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpack {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

struct NonHermitianInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularBase : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptySupport : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SupportViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LabelMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EnumerationTooLarge : std::length_error {
    using std::length_error::length_error;
};

struct DimensionTooLarge : std::length_error {
    using std::length_error::length_error;
};

// Raised when dyadic refinement exhausts its budget; carries the last two
// iterates and their gap so callers can inspect how far off the run was.
struct QuadratureDidNotConverge : std::runtime_error {
    Matrix last;
    Matrix previous;
    double gap;

    QuadratureDidNotConverge(const std::string& msg, Matrix last_, Matrix previous_, double gap_)
        : std::runtime_error(msg), last(std::move(last_)), previous(std::move(previous_)), gap(gap_) {}
};

// Fixed-point iteration failure; carries the residual trajectory.
struct DidNotConverge : std::runtime_error {
    std::vector<double> residuals;

    DidNotConverge(const std::string& msg, std::vector<double> residuals_)
        : std::runtime_error(msg), residuals(std::move(residuals_)) {}
};

} // namespace qpack
