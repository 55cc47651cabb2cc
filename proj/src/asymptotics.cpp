#include "sgspec/asymptotics.hpp"

#include "sgspec/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sgspec {

const char* to_string(LongTermKind k) {
    switch (k) {
        case LongTermKind::converges_to_zero: return "converges_to_zero";
        case LongTermKind::converges_rank_one: return "converges_rank_one";
        case LongTermKind::converges_projection: return "converges_projection";
        case LongTermKind::oscillates: return "oscillates";
        case LongTermKind::diverges: return "diverges";
    }
    return "?";
}

RankOneLimit rank_one_limit(const GeneratorMatrix& a,
                            const std::vector<double>& times) {
    const EigenData e = eig(a);
    const double spb = spectral_bound(e);
    const PoleData pd = pole_data(a, e);
    if (pd.projection_rank != 1 || !pd.u || !pd.phi) {
        throw NoRankOneLimitError(
            "spectral projection at spb has rank " +
            std::to_string(pd.projection_rank) + "; no rank-one limit");
    }
    const int dom = e.dominant_cluster();
    double second = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < e.dim; ++i) {
        if (e.cluster_of(i) != dom) {
            second = std::max(second, e.eigenvalues(i).real());
        }
    }
    const double gap = spb - second;  // +inf only when d == 1
    if (!(gap > 0.0)) {
        throw NoRankOneLimitError("spectral gap is zero (second real part " +
                                  std::to_string(second) + ")");
    }

    RankOneLimit limit;
    limit.u = *pd.u;
    limit.phi = *pd.phi;
    limit.gap = gap;

    const Matrix p = limit.u * limit.phi.transpose();
    const Matrix rescaled = a.entries - spb * Matrix::Identity(a.dim(), a.dim());
    for (double t : times) {
        limit.residual_trace.emplace_back(t, inf_norm(Matrix(expm(rescaled, t) - p)));
    }

    // Least-squares slope of log residual over the tail half, skipping
    // samples at the numerical floor.
    const double floor_cut = std::max(1e-14, 1e-13 * inf_norm(p));
    const size_t tail_start = limit.residual_trace.size() / 2;
    std::vector<std::pair<double, double>> pts;
    for (size_t i = tail_start; i < limit.residual_trace.size(); ++i) {
        const auto& [t, r] = limit.residual_trace[i];
        if (r > floor_cut) pts.emplace_back(t, std::log(r));
    }
    if (pts.size() < 2) {
        for (const auto& [t, r] : limit.residual_trace) {
            if (r > floor_cut) pts.emplace_back(t, std::log(r));
        }
    }
    if (pts.size() >= 2) {
        double st = 0, sy = 0, stt = 0, sty = 0;
        for (const auto& [t, y] : pts) {
            st += t;
            sy += y;
            stt += t * t;
            sty += t * y;
        }
        const double n = static_cast<double>(pts.size());
        const double denom = n * stt - st * st;
        if (denom > 0.0) limit.fitted_rate = -(n * sty - st * sy) / denom;
    }
    return limit;
}

AsymptoticClass classify_longterm(const GeneratorMatrix& a) {
    return classify_longterm(a, eig(a));
}

AsymptoticClass classify_longterm(const GeneratorMatrix& a, const EigenData& e) {
    (void)a;
    const double spb = spectral_bound(e);
    const double tol = peri_tol_for(spb);

    AsymptoticClass cls;
    std::ostringstream witness;
    if (spb < -tol) {
        cls.kind = LongTermKind::converges_to_zero;
        witness << "spb = " << spb << " < 0";
        cls.witness = witness.str();
        return cls;
    }
    if (spb > tol) {
        cls.kind = LongTermKind::diverges;
        witness << "spb = " << spb << " > 0";
        cls.witness = witness.str();
        return cls;
    }

    // spb = 0: inspect the boundary clusters.
    bool defective = false;
    bool imaginary = false;
    int boundary_rank = 0;
    for (size_t c = 0; c < e.clusters.size(); ++c) {
        bool on_boundary = false;
        for (int i : e.clusters[c]) {
            if (e.eigenvalues(i).real() >= -tol) {
                on_boundary = true;
                if (std::abs(e.eigenvalues(i).imag()) > tol) imaginary = true;
            }
        }
        if (!on_boundary) continue;
        boundary_rank += static_cast<int>(e.clusters[c].size());
        if (e.cluster_defective[c]) defective = true;
    }
    if (defective) {
        cls.kind = LongTermKind::diverges;
        cls.witness = "spb = 0 with a defective boundary cluster";
        return cls;
    }
    if (imaginary) {
        cls.kind = LongTermKind::oscillates;
        cls.witness = "semisimple boundary spectrum with nonzero imaginary parts";
        return cls;
    }
    cls.projection_rank = boundary_rank;
    cls.kind = boundary_rank == 1 ? LongTermKind::converges_rank_one
                                  : LongTermKind::converges_projection;
    witness << "spb = 0 semisimple, boundary multiplicity " << boundary_rank;
    cls.witness = witness.str();
    return cls;
}

BoundaryDecomposition boundary_decomposition(const GeneratorMatrix& a) {
    const EigenData e = eig(a);
    const double spb = spectral_bound(e);
    const double tol = peri_tol_for(spb);
    if (spb > tol) {
        throw DomainError("boundary decomposition requires spb(A) <= 0 "
                          "(rescale by spb first)");
    }

    const int d = a.dim();
    CMatrix reversible = CMatrix::Zero(d, d);
    for (size_t c = 0; c < e.clusters.size(); ++c) {
        const bool on_boundary =
            std::any_of(e.clusters[c].begin(), e.clusters[c].end(), [&](int i) {
                return e.eigenvalues(i).real() >= -tol;
            });
        if (!on_boundary) continue;
        if (e.cluster_defective[c]) {
            throw DefectiveError(
                "boundary cluster is defective; orbits are unbounded");
        }
        reversible += spectral_projection(a.entries, e, static_cast<int>(c));
    }
    const double imag_resid = reversible.imag().cwiseAbs().maxCoeff();
    if (imag_resid > 1e-8 * std::max(1.0, inf_norm(reversible))) {
        throw NumericalError("boundary projection has a complex residue");
    }

    BoundaryDecomposition dec;
    dec.reversible_projection = reversible.real();
    dec.stable_projection = Matrix::Identity(d, d) - dec.reversible_projection;
    return dec;
}

std::vector<std::pair<double, double>> convergence_trace(
    const GeneratorMatrix& a, const Matrix& p,
    const std::vector<double>& times) {
    if (inf_norm(Matrix(p * p - p)) > 1e-10 * std::max(1.0, inf_norm(p))) {
        throw DomainError("P is not idempotent within 1e-10");
    }
    const EigenData e = eig(a);
    const double spb = spectral_bound(e);
    const Matrix rescaled = a.entries - spb * Matrix::Identity(a.dim(), a.dim());
    std::vector<std::pair<double, double>> trace;
    trace.reserve(times.size());
    for (double t : times) {
        trace.emplace_back(t, inf_norm(Matrix(expm(rescaled, t) - p)));
    }
    return trace;
}

}  // namespace sgspec
