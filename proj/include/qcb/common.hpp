// common.hpp — Shared aliases, tolerances and error types for the qcb library.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qcb {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Validation tolerances shared across modules.
inline constexpr double tol_herm = 1e-12;    // max |M - M†| entrywise
inline constexpr double tol_trace = 1e-10;   // |Tr rho - 1|
inline constexpr double eig_floor = -1e-12;  // admissible eigenvalue undershoot
inline constexpr double rank_tol = 1e-10;    // eigenvalues above this count toward rank
inline constexpr double tol_weights = 1e-12; // |sum of weights - 1|

// ----------------------------- error types ----------------------------------

struct NonHermitianError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct DimMismatchError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct InvalidStateError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct InvalidRankError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct BasisMismatchError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct NegativeInputError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct OutOfRangeError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct EnergyBelowGroundError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct BracketFailureError : std::runtime_error { using std::runtime_error::runtime_error; };
struct EqualMeasuresError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct LabelMismatchError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct ConstraintViolatedError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct ArityMismatchError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct IndexOutOfRangeError : std::out_of_range { using std::out_of_range::out_of_range; };
struct CutoffTooSmallError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct DimensionTooLargeError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct InfeasibleConstraintError : std::invalid_argument { using std::invalid_argument::invalid_argument; };
struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };

// ----------------------------- scalar helpers -------------------------------

// eta(x) = -x ln x with eta(0) = 0
inline double eta(double x) noexcept {
    return x > 0.0 ? -x * std::log(x) : 0.0;
}

inline bool nearly_equal(double a, double b, double tol) noexcept {
    return std::abs(a - b) <= tol;
}

} // namespace qcb
