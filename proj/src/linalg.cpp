#include "sgspec/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace sgspec {

namespace {

bool eig_order(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

// Greedy nearest-eigenvalue assignment between the spectra computed from A
// and A^T. Both are the same multiset up to rounding; within a tight cluster
// the pairing is arbitrary, which is fine (the cluster Gramian decides
// defectiveness, not individual pairs).
std::vector<int> match_eigenvalues(const CVector& target, const CVector& pool) {
    const int d = static_cast<int>(target.size());
    std::vector<int> assignment(d, -1);
    std::vector<bool> used(d, false);
    for (int i = 0; i < d; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_j = -1;
        for (int j = 0; j < d; ++j) {
            if (used[j]) continue;
            const double dist = std::abs(target(i) - pool(j));
            if (dist < best) {
                best = dist;
                best_j = j;
            }
        }
        assignment[i] = best_j;
        used[best_j] = true;
    }
    return assignment;
}

std::vector<std::vector<int>> cluster_indices(const CVector& values,
                                              double tol) {
    const int d = static_cast<int>(values.size());
    std::vector<int> parent(d);
    for (int i = 0; i < d; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            if (std::abs(values(i) - values(j)) <= tol) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<std::vector<int>> clusters;
    std::vector<int> root_to_cluster(d, -1);
    for (int i = 0; i < d; ++i) {
        const int r = find(i);
        if (root_to_cluster[r] < 0) {
            root_to_cluster[r] = static_cast<int>(clusters.size());
            clusters.emplace_back();
        }
        clusters[root_to_cluster[r]].push_back(i);
    }
    return clusters;
}

double spectral_bound_of(const CVector& values) {
    double spb = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        spb = std::max(spb, values(i).real());
    }
    return spb;
}

}  // namespace

int EigenData::cluster_of(int eig_index) const {
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
        for (int i : clusters[c]) {
            if (i == eig_index) return c;
        }
    }
    throw DomainError("eigenvalue index out of range");
}

int EigenData::dominant_cluster() const {
    const double spb = spectral_bound_of(eigenvalues);
    const double tol = peri_tol_for(spb);
    int fallback = -1;
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
        bool attains = false;
        bool real_cluster = true;
        for (int i : clusters[c]) {
            if (eigenvalues(i).real() >= spb - tol) attains = true;
            if (std::abs(eigenvalues(i).imag()) > tol) real_cluster = false;
        }
        if (!attains) continue;
        if (real_cluster) return c;
        if (fallback < 0) fallback = c;
    }
    return fallback;
}

Matrix expm(const Matrix& a, double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw DomainError("expm requires finite t >= 0, got " +
                          std::to_string(t));
    }
    // Cheap sufficient bound first; exact spectral check only when needed.
    if (t * log_norm_inf(a) > defaults::overflow_exponent) {
        const Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success) {
            throw NumericalError("eigensolver failed during overflow check");
        }
        const double spb = spectral_bound_of(es.eigenvalues());
        if (t * spb > defaults::overflow_exponent) {
            throw OverflowError("t*spb(A) = " + std::to_string(t * spb) +
                                " exceeds the double exponent range");
        }
    }
    Matrix result = (t * a).exp();
    if (!result.allFinite()) {
        throw OverflowError("matrix exponential overflowed at t = " +
                            std::to_string(t));
    }
    return result;
}

Matrix expm(const GeneratorMatrix& a, double t) { return expm(a.entries, t); }

EigenData eig(const Matrix& a, double cluster_tol) {
    const int d = static_cast<int>(a.rows());
    if (d < 1 || a.rows() != a.cols()) {
        throw DomainError("eig requires a square matrix with dim >= 1");
    }
    if (cluster_tol < 0.0) cluster_tol = cluster_tol_for(a);

    Eigen::EigenSolver<Matrix> es_right(a, true);
    if (es_right.info() != Eigen::Success) {
        throw NumericalError(
            "eigensolver did not converge within " + std::to_string(40 * d) +
            " implicit QR iterations");
    }
    Eigen::EigenSolver<Matrix> es_left(a.transpose(), true);
    if (es_left.info() != Eigen::Success) {
        throw NumericalError(
            "eigensolver (transpose pass) did not converge within " +
            std::to_string(40 * d) + " implicit QR iterations");
    }

    // Deterministic ordering: descending real part, then descending imag.
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    const CVector raw_vals = es_right.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        if (raw_vals(i) == raw_vals(j)) return i < j;
        return eig_order(raw_vals(i), raw_vals(j));
    });

    EigenData e;
    e.dim = d;
    e.matrix_norm = inf_norm(a);
    e.cluster_tol = cluster_tol;
    e.eigenvalues.resize(d);
    e.right_vectors.resize(d, d);
    for (int k = 0; k < d; ++k) {
        e.eigenvalues(k) = raw_vals(order[k]);
        e.right_vectors.col(k) = es_right.eigenvectors().col(order[k]);
    }

    const std::vector<int> match =
        match_eigenvalues(e.eigenvalues, es_left.eigenvalues());
    e.left_vectors.resize(d, d);
    for (int k = 0; k < d; ++k) {
        e.left_vectors.col(k) = es_left.eigenvectors().col(match[k]);
    }

    e.residuals.resize(d);
    for (int k = 0; k < d; ++k) {
        e.residuals(k) =
            (a * e.right_vectors.col(k) - e.eigenvalues(k) * e.right_vectors.col(k))
                .norm();
    }

    e.clusters = cluster_indices(e.eigenvalues, cluster_tol);
    e.cluster_defective.resize(e.clusters.size(), false);
    for (size_t c = 0; c < e.clusters.size(); ++c) {
        const auto& idx = e.clusters[c];
        const int m = static_cast<int>(idx.size());
        CMatrix gram(m, m);
        for (int r = 0; r < m; ++r) {
            for (int s = 0; s < m; ++s) {
                gram(r, s) = e.left_vectors.col(idx[r]).transpose() *
                             e.right_vectors.col(idx[s]);
            }
        }
        const Eigen::JacobiSVD<CMatrix> svd(gram);
        const double smin = svd.singularValues().minCoeff();
        e.cluster_defective[c] = smin <= defaults::defect_tol;
    }
    return e;
}

EigenData eig(const GeneratorMatrix& a, double cluster_tol) {
    return eig(a.entries, cluster_tol);
}

CMatrix resolvent(const Matrix& a, Complex lambda, double resolvent_tol) {
    const int d = static_cast<int>(a.rows());
    if (resolvent_tol < 0.0) {
        resolvent_tol = defaults::resolvent_tol_factor * (1.0 + inf_norm(a));
    }
    const EigenData e = eig(a);
    double dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        dist = std::min(dist, std::abs(lambda - e.eigenvalues(i)));
    }
    if (dist <= resolvent_tol) {
        throw NearSingularError(
            "lambda is within " + std::to_string(dist) +
                " of the spectrum (tolerance " + std::to_string(resolvent_tol) + ")",
            dist);
    }
    CMatrix shifted = -a.cast<Complex>();
    shifted.diagonal().array() += lambda;
    return Eigen::PartialPivLU<CMatrix>(shifted).solve(CMatrix::Identity(d, d));
}

CMatrix resolvent(const GeneratorMatrix& a, Complex lambda, double tol) {
    return resolvent(a.entries, lambda, tol);
}

namespace {

// Trapezoid contour integral of the resolvent around one cluster. The
// integrand is analytic in the annulus between the cluster and the rest of
// the spectrum, so the rule converges geometrically in the node count.
CMatrix contour_projection(const Matrix& a, const EigenData& e,
                           const std::vector<int>& idx, double r_in,
                           double r_out, Complex center) {
    const int d = static_cast<int>(a.rows());
    const double radius = std::sqrt(std::max(r_in, 1e-3 * r_out) * r_out);
    const double q =
        std::max(r_in > 0.0 ? r_in / radius : 0.0, radius / r_out);
    int nodes = 64;
    if (q > 0.0 && q < 1.0) {
        nodes = static_cast<int>(std::ceil(std::log(1e-15) / std::log(q)));
        nodes = std::clamp(nodes, 64, 8192);
    }
    const CMatrix id = CMatrix::Identity(d, d);
    CMatrix acc = CMatrix::Zero(d, d);
    for (int k = 0; k < nodes; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / nodes;
        const Complex w = std::polar(1.0, theta);
        const Complex z = center + radius * w;
        CMatrix shifted = -a.cast<Complex>();
        shifted.diagonal().array() += z;
        acc += w * Eigen::PartialPivLU<CMatrix>(shifted).solve(id);
    }
    (void)idx;
    return (radius / nodes) * acc;
}

}  // namespace

CMatrix spectral_projection(const Matrix& a, const EigenData& e,
                            int cluster_index) {
    if (cluster_index < 0 ||
        cluster_index >= static_cast<int>(e.clusters.size())) {
        throw DomainError("cluster index out of range");
    }
    const auto& idx = e.clusters[cluster_index];
    const int d = e.dim;
    const int m = static_cast<int>(idx.size());
    if (m == d) return CMatrix::Identity(d, d);

    Complex center(0, 0);
    for (int i : idx) center += e.eigenvalues(i);
    center /= static_cast<double>(m);
    double r_in = 0.0;
    for (int i : idx) r_in = std::max(r_in, std::abs(e.eigenvalues(i) - center));
    double r_out = std::numeric_limits<double>::infinity();
    double separation = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) {
        if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
        r_out = std::min(r_out, std::abs(e.eigenvalues(j) - center));
        for (int i : idx) {
            separation =
                std::min(separation, std::abs(e.eigenvalues(j) - e.eigenvalues(i)));
        }
    }
    if (separation <= e.cluster_tol) {
        throw NearSingularError(
            "cluster is not separated from the rest of the spectrum (gap " +
                std::to_string(separation) + ")",
            separation);
    }

    CMatrix p(d, d);
    if (!e.cluster_defective[cluster_index]) {
        CMatrix v(d, m), w(d, m);
        for (int k = 0; k < m; ++k) {
            v.col(k) = e.right_vectors.col(idx[k]);
            w.col(k) = e.left_vectors.col(idx[k]);
        }
        const CMatrix gram = w.transpose() * v;  // bilinear pairing
        p = v * Eigen::PartialPivLU<CMatrix>(gram).solve(w.transpose());
    } else {
        p = contour_projection(a, e, idx, r_in, r_out, center);
    }

    const double scale = std::max(1.0, inf_norm(p));
    if (inf_norm(CMatrix(p * p - p)) > 1e-8 * scale) {
        throw NumericalError("spectral projection failed idempotence check");
    }
    return p;
}

Matrix spectral_projection_real(const Matrix& a, const EigenData& e,
                                int cluster_index) {
    const CMatrix p = spectral_projection(a, e, cluster_index);
    const double imag_resid = p.imag().cwiseAbs().maxCoeff();
    if (imag_resid > 1e-8 * std::max(1.0, inf_norm(p))) {
        throw NumericalError(
            "projection is genuinely complex (cluster not conjugation-closed)");
    }
    return p.real();
}

}  // namespace sgspec
