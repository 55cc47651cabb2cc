#pragma once

#include "sgspec/types.hpp"

#include <utility>
#include <vector>

namespace sgspec {

enum class DominationKind { certified_zero, decaying, refuted, inconclusive };

const char* to_string(DominationKind k);

struct BoundaryMatch {
    Complex eigenvalue_a;
    Complex nearest_peripheral_b;
    double distance;
};

// Uniform asymptotic domination of e^{tA} by e^{tB} (both rescaled by
// spb(B)) together with its spectral consequences: spb(A) <= spb(B) and
// the boundary inclusion spec(A) on spb(B)+iR landing inside perSpec(B).
struct DominationReport {
    std::vector<std::pair<double, double>> deficit_trace;
    DominationKind dominated = DominationKind::inconclusive;
    double sb_A = 0.0;
    double sb_B = 0.0;
    bool sb_inequality_holds = false;
    bool boundary_inclusion_holds = false;
    std::vector<BoundaryMatch> boundary_details;
};

// Max over columns j of || negative part of column j of
// (e^{t(B-spb(B))} - e^{t(A-spb(B))}) ||_1.
double domination_deficit(const GeneratorMatrix& a, const GeneratorMatrix& b,
                          double t);

DominationReport asymptotic_domination_check(
    const GeneratorMatrix& a, const GeneratorMatrix& b,
    double t_max = defaults::t_max, double grid_step = defaults::grid_step);

}  // namespace sgspec
