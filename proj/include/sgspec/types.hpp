#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace sgspec {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Dense real d x d generator A of the semigroup e^{tA}.
// Entries are rates (units 1/time); invariant: square, d >= 1, all finite.
struct GeneratorMatrix {
    Matrix entries;
    std::string label;

    GeneratorMatrix() = default;
    explicit GeneratorMatrix(Matrix m, std::string lbl = {});

    int dim() const { return static_cast<int>(entries.rows()); }
};

// Max-row-sum norm (operator norm for the sup norm on vectors).
// All tolerance scalings project-wide use this norm.
double inf_norm(const Matrix& m);
double inf_norm(const CMatrix& m);

// Logarithmic norm for the sup norm: max_i (a_ii + sum_{j != i} |a_ij|).
// Upper bound: ||e^{tA}||_inf <= e^{t * log_norm(A)} for t >= 0.
double log_norm_inf(const Matrix& m);

bool is_metzler(const Matrix& m, double tol = 0.0);

// --- error taxonomy ---

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file (JSON/CSV); carries a human-readable position.
struct ParseError : Error {
    using Error::Error;
};

// Precondition violation on operation arguments.
struct DomainError : Error {
    using Error::Error;
};

// Result would exceed the double exponent range; never returned as silent Inf.
struct OverflowError : Error {
    using Error::Error;
};

// Requested point too close to the spectrum / cluster not separated.
struct NearSingularError : Error {
    double distance;
    NearSingularError(const std::string& msg, double dist)
        : Error(msg), distance(dist) {}
};

// Operation requires a (semi)simple eigenvalue cluster but got a defective one.
struct DefectiveError : Error {
    using Error::Error;
};

// Brute-force enumeration requested above the configured cap.
struct CapacityError : Error {
    using Error::Error;
};

// Iterative kernel failed to converge or produced an inconsistent result.
struct NumericalError : Error {
    using Error::Error;
};

// Rank-one asymptotics unavailable (rank > 1 or zero spectral gap).
struct NoRankOneLimitError : Error {
    using Error::Error;
};

// --- default tolerances (pinned project-wide) ---

namespace defaults {
// Eigenvalue clustering: cluster_tol = factor * ||A||_inf.
inline constexpr double cluster_tol_factor = 1e-8;
// Digraph edge detection: zero_tol = factor * ||A||_inf.
inline constexpr double zero_tol_factor = 1e-12;
// Peripheral band: peri_tol = base * (1 + |spb|).
inline constexpr double peri_tol_base = 1e-8;
// Positivity entry slack, relative to ||e^{tA}||_inf per evaluation time.
inline constexpr double entry_tol_factor = 1e-10;
// Strict positivity threshold, relative to the max entry magnitude.
inline constexpr double strict_tol_factor = 1e-8;
// Resolvent distance guard: tol = factor * (1 + ||A||_inf).
inline constexpr double resolvent_tol_factor = 1e-12;
// Krylov pairing threshold (relative).
inline constexpr double pairing_tol = 1e-12;
// Domination deficit threshold (relative to per-time semigroup scale).
inline constexpr double deficit_tol = 1e-8;
// sigma_min of the cluster left/right pairing Gramian below this => defective.
inline constexpr double defect_tol = 1e-6;
// 2^d enumeration cap; SGSPEC_BRUTE_CAP overrides in the CLI.
inline constexpr int brute_force_cap = 16;
inline constexpr double t_max = 50.0;
inline constexpr double grid_step = 0.05;
// exp(x) for x > this exceeds the double range.
inline constexpr double overflow_exponent = 700.0;
}  // namespace defaults

inline double cluster_tol_for(const Matrix& a) {
    return defaults::cluster_tol_factor * inf_norm(a);
}
inline double zero_tol_for(const Matrix& a) {
    return defaults::zero_tol_factor * inf_norm(a);
}
inline double peri_tol_for(double spb) {
    return defaults::peri_tol_base * (1.0 + std::abs(spb));
}

}  // namespace sgspec
