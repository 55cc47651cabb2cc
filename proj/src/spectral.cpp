#include "sgspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sgspec {

namespace {

// Candidate step sizes: the distinct imaginary parts themselves and their
// consecutive gaps. Among candidates whose nearest-multiple deviation is
// below the fit tolerance, pick the largest (every grid refines itself).
void fit_alpha(const std::vector<double>& imag_parts, double fit_tol,
               double& alpha, double& residual) {
    std::vector<double> im = imag_parts;
    std::sort(im.begin(), im.end());
    double max_abs = 0.0;
    for (double b : im) max_abs = std::max(max_abs, std::abs(b));
    if (max_abs <= fit_tol) {
        alpha = 0.0;
        residual = max_abs;
        return;
    }
    std::vector<double> candidates;
    for (double b : im) {
        if (std::abs(b) > fit_tol) candidates.push_back(std::abs(b));
    }
    for (size_t i = 1; i < im.size(); ++i) {
        const double gap = im[i] - im[i - 1];
        if (gap > fit_tol) candidates.push_back(gap);
    }
    auto deviation = [&](double cand) {
        double dev = 0.0;
        for (double b : im) {
            const double k = std::round(b / cand);
            dev = std::max(dev, std::abs(b - k * cand));
        }
        return dev;
    };
    double best_alpha = 0.0, best_dev = std::numeric_limits<double>::infinity();
    double best_feasible = -1.0, best_feasible_dev = 0.0;
    for (double cand : candidates) {
        const double dev = deviation(cand);
        if (dev <= fit_tol && cand > best_feasible) {
            best_feasible = cand;
            best_feasible_dev = dev;
        }
        if (dev < best_dev) {
            best_dev = dev;
            best_alpha = cand;
        }
    }
    if (best_feasible > 0.0) {
        alpha = best_feasible;
        residual = best_feasible_dev;
    } else {
        alpha = best_alpha;
        residual = best_dev;
    }
}

}  // namespace

PeripheralReport peripheral_report(const EigenData& e, double peri_tol) {
    PeripheralReport rep;
    rep.spb = spectral_bound(e);
    if (peri_tol < 0.0) peri_tol = peri_tol_for(rep.spb);

    double non_peripheral_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < e.dim; ++i) {
        if (e.eigenvalues(i).real() >= rep.spb - peri_tol) {
            rep.peripheral_indices.push_back(i);
            rep.peripheral.push_back(e.eigenvalues(i));
        } else {
            non_peripheral_max =
                std::max(non_peripheral_max, e.eigenvalues(i).real());
        }
    }
    rep.gap = rep.spb - non_peripheral_max;  // +inf when everything peripheral

    const int first_cluster = e.cluster_of(rep.peripheral_indices.front());
    rep.is_dominant =
        std::all_of(rep.peripheral_indices.begin(), rep.peripheral_indices.end(),
                    [&](int i) { return e.cluster_of(i) == first_cluster; });

    std::vector<double> imag_parts;
    imag_parts.reserve(rep.peripheral.size());
    for (const Complex& z : rep.peripheral) imag_parts.push_back(z.imag());
    const double fit_tol =
        std::max(1e-9, peri_tol);
    fit_alpha(imag_parts, fit_tol, rep.alpha, rep.alpha_residual);
    return rep;
}

bool dominance_check(const EigenData& e) {
    return peripheral_report(e).is_dominant;
}

PoleData pole_data(const GeneratorMatrix& a) { return pole_data(a, eig(a)); }

PoleData pole_data(const GeneratorMatrix& a, const EigenData& e) {
    const double spb = spectral_bound(e);
    const int dom = e.dominant_cluster();
    if (dom < 0) throw DomainError("no dominant cluster found");
    const auto& idx = e.clusters[dom];
    const int mult = static_cast<int>(idx.size());

    // Throws NearSingularError when the cluster is not isolated.
    const CMatrix p = spectral_projection(a.entries, e, dom);

    PoleData pd;
    pd.projection_rank = static_cast<int>(std::lround(p.trace().real()));

    // Pole order = nilpotency index of (A - spb) restricted to the cluster.
    const CMatrix nil =
        (a.entries.cast<Complex>() - spb * CMatrix::Identity(e.dim, e.dim)) * p;
    const double ref = std::max(1.0, e.matrix_norm);
    CMatrix power = nil;
    int order = 1;
    double tol_k = 1e-9 * ref;
    while (order <= mult && inf_norm(power) > tol_k) {
        power = power * nil;
        ++order;
        tol_k *= ref;
    }
    if (order > mult) {
        throw NumericalError(
            "nilpotent part of the dominant cluster did not vanish within the "
            "algebraic multiplicity (extraction failure)");
    }
    pd.pole_order = order;

    if (pd.projection_rank == 1) {
        if (p.imag().cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, inf_norm(p))) {
            // Dominant complex pair member: no real rank-one data to extract.
            return pd;
        }
        const Matrix pr = p.real();
        const Eigen::JacobiSVD<Matrix> svd(
            pr, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Vector u = svd.matrixU().col(0);
        int arg_max = 0;
        u.cwiseAbs().maxCoeff(&arg_max);
        if (u(arg_max) < 0.0) u = -u;
        u /= u.cwiseAbs().maxCoeff();  // ||u||_inf = 1, largest entry positive
        Vector phi = pr.transpose() * u / u.squaredNorm();
        const double pairing = phi.dot(u);
        if (std::abs(pairing) < 1e-12) {
            throw DefectiveError(
                "rank-one extraction failed: left/right pairing vanishes");
        }
        phi /= pairing;  // <phi, u> = 1
        pd.u = u;
        pd.phi = phi;
        pd.u_positive = classify_sign(u);
        pd.phi_positive = classify_sign(phi);
    }
    return pd;
}

double growth_bound_estimate(const GeneratorMatrix& a, double t) {
    if (!(t > 0.0)) throw DomainError("growth_bound_estimate requires T > 0");
    return std::log(inf_norm(expm(a, t))) / t;
}

}  // namespace sgspec
