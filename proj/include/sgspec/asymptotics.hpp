#pragma once

#include "sgspec/linalg.hpp"
#include "sgspec/spectral.hpp"
#include "sgspec/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sgspec {

// Rank-one uniform limit of the rescaled semigroup: e^{t(A-spb)} -> u phi^T.
struct RankOneLimit {
    Vector u;
    Vector phi;
    double gap = 0.0;  // spb minus max Re outside the dominant cluster
    std::vector<std::pair<double, double>> residual_trace;
    double fitted_rate = 0.0;
};

// Requires rank-one spectral projection at spb and a positive gap; throws
// NoRankOneLimitError carrying the obstruction otherwise.
RankOneLimit rank_one_limit(const GeneratorMatrix& a,
                            const std::vector<double>& times);

enum class LongTermKind {
    converges_to_zero,
    converges_rank_one,
    converges_projection,
    oscillates,
    diverges,
};

const char* to_string(LongTermKind k);

struct AsymptoticClass {
    LongTermKind kind = LongTermKind::diverges;
    int projection_rank = 0;  // boundary multiplicity for the converging kinds
    std::string witness;      // supporting spectral data
};

// Classification of the UNrescaled semigroup from its spectrum; callers
// wanting the rescaled picture pass A - spb(A).
AsymptoticClass classify_longterm(const GeneratorMatrix& a);
AsymptoticClass classify_longterm(const GeneratorMatrix& a, const EigenData& e);

// JdLG-type splitting at the imaginary axis (spb <= 0 required; boundary
// clusters must be semisimple). reversible + stable = identity.
struct BoundaryDecomposition {
    Matrix reversible_projection;
    Matrix stable_projection;
};

BoundaryDecomposition boundary_decomposition(const GeneratorMatrix& a);

// Residuals ||e^{t(A-spb)} - P||_inf at the given times; P must be
// idempotent within 1e-10.
std::vector<std::pair<double, double>> convergence_trace(
    const GeneratorMatrix& a, const Matrix& p, const std::vector<double>& times);

}  // namespace sgspec
