#pragma once

#include "sgspec/linalg.hpp"
#include "sgspec/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sgspec {

enum class SignClass { strictly_positive, nonnegative_with_zeros, sign_mixed };

const char* to_string(SignClass s);

// Sign pattern of a vector after normalizing its largest-magnitude entry to
// be positive: all entries > strict_tol => strictly_positive; none below
// -strict_tol => nonnegative_with_zeros; else sign_mixed.
SignClass classify_sign(const Vector& v, double strict_tol = -1.0);

double spectral_bound(const EigenData& e);

// Perron-Frobenius-style certificate for the spectral bound.
struct PFCertificate {
    double spectral_bound = 0.0;
    bool is_real_dominant = false;  // spb attained by a real eigenvalue,
                                    // strictly dominant in real part
    bool is_simple = false;
    SignClass right_vector_positive = SignClass::sign_mixed;
    SignClass left_vector_positive = SignClass::sign_mixed;
    double gap = 0.0;  // spb minus the second-largest real part
                       // (multiplicity counted); +inf when d = 1
    std::optional<Vector> right_vector;  // set when a real dominant
    std::optional<Vector> left_vector;   // eigenvector could be extracted
};

PFCertificate pf_certificate(const GeneratorMatrix& a);
PFCertificate pf_certificate(const GeneratorMatrix& a, const EigenData& e);

enum class PositivityKind { eventually_positive, refuted, inconclusive };

const char* to_string(PositivityKind k);

// Certified analytic tail: min entry of e^{tA} stays >= 0 for t >= T_cert
// because ||e^{t(A-spb)} - P||_inf <= C e^{-g t} is dominated by the
// strictly positive entries of P. `structural` marks the Metzler case
// (e^{tA} >= 0 for all t >= 0 by sign structure, no decay estimate needed).
struct TailBound {
    double T_cert = 0.0;
    double C = 0.0;
    double g = 0.0;
    bool structural = false;
};

struct RefutationWitness {
    std::string description;
    Vector vector;
};

struct PositivityCertificate {
    PositivityKind kind = PositivityKind::inconclusive;
    std::optional<double> t0;        // grid-resolved entry into positivity
    std::optional<double> t_strict;  // entry into eventual strong positivity
    std::optional<TailBound> tail_bound;
    std::vector<std::pair<double, double>> trace;  // (t, min entry of e^{tA})
    std::optional<RefutationWitness> refutation_witness;
};

PositivityCertificate eventual_positivity_scan(
    const GeneratorMatrix& a, double t_max = defaults::t_max,
    double grid_step = defaults::grid_step);

// Smallest sampled t1 such that for all sampled t in [t1, t_max] every
// column x of e^{tA} dominates c*u for some c >= strict_tol (u normalized
// to ||u||_inf = 1 internally). Absent if never achieved.
std::optional<double> strong_positivity_scan(const GeneratorMatrix& a,
                                             const Vector& u,
                                             double t_max = defaults::t_max,
                                             double grid_step = defaults::grid_step);

// Max over columns j of || negative part of column j of e^{t(A-spb)} ||_1;
// equals the sup of dist_1(e^{t(A-spb)}f, E_+) over the positive l1 unit
// ball (attained at basis vectors).
double asymptotic_positivity_deficit(const GeneratorMatrix& a, double t);

// True iff phi^T A^k f != 0 for some k in {0..d-1}. By analyticity of
// t -> phi^T e^{tA} f this decides whether the pairing vanishes for all t.
bool weak_condition_check(const GeneratorMatrix& a, const Vector& f,
                          const Vector& phi,
                          double pairing_tol = defaults::pairing_tol);

// Searches for a verified violating pair (f, phi). Heuristic: absence of a
// result is not a proof that the condition holds.
std::optional<std::pair<Vector, Vector>> weak_condition_search(
    const GeneratorMatrix& a, int cap = defaults::brute_force_cap);

}  // namespace sgspec
