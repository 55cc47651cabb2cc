#pragma once

#include "sgspec/linalg.hpp"
#include "sgspec/positivity.hpp"
#include "sgspec/types.hpp"

#include <optional>
#include <vector>

namespace sgspec {

// Structure of the peripheral spectrum {lambda : Re lambda = spb} (up to
// peri_tol). alpha is the arithmetic-progression step fitted to the
// imaginary parts; the report never claims pole-ness for non-dominant
// peripheral members.
struct PeripheralReport {
    double spb = 0.0;
    std::vector<Complex> peripheral;
    std::vector<int> peripheral_indices;
    bool is_dominant = false;  // peripheral collapses to one cluster
    double alpha = 0.0;
    double alpha_residual = 0.0;
    double gap = 0.0;  // spb minus max Re over non-peripheral spectrum;
                       // +inf when the peripheral set is everything
};

PeripheralReport peripheral_report(const EigenData& e, double peri_tol = -1.0);

bool dominance_check(const EigenData& e);

// Pole order and spectral projection data at the spectral bound.
// u, phi present iff the projection has rank one; then <phi,u> = 1 and
// ||u||_inf = 1 with the largest entry positive.
struct PoleData {
    int pole_order = 0;
    int projection_rank = 0;
    std::optional<Vector> u;
    std::optional<Vector> phi;
    SignClass u_positive = SignClass::sign_mixed;
    SignClass phi_positive = SignClass::sign_mixed;
};

PoleData pole_data(const GeneratorMatrix& a);
PoleData pole_data(const GeneratorMatrix& a, const EigenData& e);

// log(||e^{TA}||_inf) / T; converges to spb(A) as T grows.
double growth_bound_estimate(const GeneratorMatrix& a, double t);

}  // namespace sgspec
