#pragma once

#include "sgspec/types.hpp"

#include <vector>

namespace sgspec {

// Full eigendecomposition of a real generator.
//
// Eigenvalues are sorted by descending real part (ties: descending imaginary
// part) and grouped into clusters by transitive closure of pairwise distance
// <= cluster_tol. Right/left eigenvectors are unit columns; "left" means
// phi^T A = lambda phi^T (bilinear pairing, so left vectors of A are right
// vectors of A^T for the same eigenvalue). A cluster is flagged defective
// when the left/right pairing Gramian is numerically singular.
struct EigenData {
    int dim = 0;
    double matrix_norm = 0.0;  // ||A||_inf, for tolerance derivation
    double cluster_tol = 0.0;
    CVector eigenvalues;
    CMatrix right_vectors;
    CMatrix left_vectors;
    Vector residuals;  // ||A v - lambda v||_2 per pair
    std::vector<std::vector<int>> clusters;
    std::vector<bool> cluster_defective;

    int cluster_of(int eig_index) const;

    // Index of the cluster holding the spectral bound. Prefers a real
    // cluster among those attaining max Re (conjugate pairs never qualify
    // as "the" dominant eigenvalue on their own).
    int dominant_cluster() const;
};

// e^{tA}. Scaling-and-squaring with Pade approximation; relative accuracy
// ~1e-12 for well-conditioned inputs. Throws OverflowError instead of
// returning Inf when t*spb(A) exceeds the double exponent range.
Matrix expm(const Matrix& a, double t);
Matrix expm(const GeneratorMatrix& a, double t);

EigenData eig(const Matrix& a, double cluster_tol = -1.0);
EigenData eig(const GeneratorMatrix& a, double cluster_tol = -1.0);

// (lambda - A)^{-1}. Throws NearSingularError (carrying the distance) when
// lambda is within resolvent_tol of the spectrum.
CMatrix resolvent(const Matrix& a, Complex lambda, double resolvent_tol = -1.0);
CMatrix resolvent(const GeneratorMatrix& a, Complex lambda,
                  double resolvent_tol = -1.0);

// Spectral projection onto the generalized eigenspace of one cluster.
// Simple/semisimple clusters go through left/right eigenvector products;
// defective clusters through a trapezoid contour integral of the resolvent.
// The cluster must be separated from the rest of the spectrum by more than
// cluster_tol. Result is complex in general; real up to rounding when the
// cluster is closed under conjugation.
CMatrix spectral_projection(const Matrix& a, const EigenData& e,
                            int cluster_index);

// Real-part wrapper for conjugation-closed clusters; throws NumericalError
// if the imaginary residue is not negligible.
Matrix spectral_projection_real(const Matrix& a, const EigenData& e,
                                int cluster_index);

}  // namespace sgspec
