#include "sgspec/domination.hpp"

#include "sgspec/linalg.hpp"
#include "sgspec/positivity.hpp"
#include "sgspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sgspec {

const char* to_string(DominationKind k) {
    switch (k) {
        case DominationKind::certified_zero: return "certified_zero";
        case DominationKind::decaying: return "decaying";
        case DominationKind::refuted: return "refuted";
        case DominationKind::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

double column_neg_part_max(const Matrix& m) {
    double deficit = 0.0;
    for (int j = 0; j < m.cols(); ++j) {
        deficit = std::max(deficit, m.col(j).cwiseMin(0.0).cwiseAbs().sum());
    }
    return deficit;
}

}  // namespace

double domination_deficit(const GeneratorMatrix& a, const GeneratorMatrix& b,
                          double t) {
    if (a.dim() != b.dim()) {
        throw DomainError("domination requires equal dimensions, got " +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
    }
    const double sb_b = spectral_bound(eig(b));
    const Matrix shift = sb_b * Matrix::Identity(a.dim(), a.dim());
    const Matrix diff =
        expm(Matrix(b.entries - shift), t) - expm(Matrix(a.entries - shift), t);
    return column_neg_part_max(diff);
}

DominationReport asymptotic_domination_check(const GeneratorMatrix& a,
                                             const GeneratorMatrix& b,
                                             double t_max, double grid_step) {
    if (a.dim() != b.dim()) {
        throw DomainError("domination requires equal dimensions, got " +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
    }
    if (!(t_max > 0.0) || !(grid_step > 0.0)) {
        throw DomainError("check requires t_max > 0 and grid_step > 0");
    }
    const EigenData ea = eig(a);
    const EigenData eb = eig(b);

    DominationReport rep;
    rep.sb_A = spectral_bound(ea);
    rep.sb_B = spectral_bound(eb);
    rep.sb_inequality_holds = rep.sb_A <= rep.sb_B + 1e-10;

    const int d = a.dim();
    const Matrix shift = rep.sb_B * Matrix::Identity(d, d);
    const Matrix step_a = expm(Matrix(a.entries - shift), grid_step);
    const Matrix step_b = expm(Matrix(b.entries - shift), grid_step);
    Matrix xa = Matrix::Identity(d, d);
    Matrix xb = Matrix::Identity(d, d);

    const int n_steps = static_cast<int>(std::floor(t_max / grid_step + 1e-9));
    std::vector<double> scales;
    bool all_zero = true;
    for (int k = 0; k <= n_steps; ++k) {
        const double t = k * grid_step;
        const double deficit = column_neg_part_max(Matrix(xb - xa));
        const double scale = std::max({1.0, inf_norm(xa), inf_norm(xb)});
        rep.deficit_trace.emplace_back(t, deficit);
        scales.push_back(scale);
        if (deficit > 1e-12 * scale) all_zero = false;
        if (k < n_steps) {
            xa = xa * step_a;
            xb = xb * step_b;
        }
    }

    if (all_zero) {
        rep.dominated = DominationKind::certified_zero;
    } else {
        // Decide from the tail third: refutation needs a 10x margin
        // persisting over the whole tail; decay needs a monotone drop
        // below the threshold.
        const size_t n = rep.deficit_trace.size();
        const size_t tail_begin = n - std::max<size_t>(1, n / 3);
        double tail_min = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (size_t i = tail_begin; i < n; ++i) {
            const double rel = rep.deficit_trace[i].second / scales[i];
            tail_min = std::min(tail_min, rel);
            if (i > tail_begin &&
                rep.deficit_trace[i].second >
                    rep.deficit_trace[i - 1].second + 1e-12 * scales[i]) {
                monotone = false;
            }
        }
        const double tail_last =
            rep.deficit_trace.back().second / scales.back();
        if (tail_min > 10.0 * defaults::deficit_tol) {
            rep.dominated = DominationKind::refuted;
        } else if (monotone && tail_last <= defaults::deficit_tol) {
            rep.dominated = DominationKind::decaying;
        } else {
            rep.dominated = DominationKind::inconclusive;
        }
    }

    // Boundary inclusion: every eigenvalue of A with Re = spb(B) (up to
    // peri_tol) must land within peri_tol of a member of perSpec(B).
    const double peri = peri_tol_for(rep.sb_B);
    const PeripheralReport per_b = peripheral_report(eb);
    rep.boundary_inclusion_holds = true;
    for (int i = 0; i < ea.dim; ++i) {
        const Complex lam = ea.eigenvalues(i);
        if (std::abs(lam.real() - rep.sb_B) > peri) continue;
        BoundaryMatch match;
        match.eigenvalue_a = lam;
        match.distance = std::numeric_limits<double>::infinity();
        for (const Complex& mu : per_b.peripheral) {
            const double dist = std::abs(lam - mu);
            if (dist < match.distance) {
                match.distance = dist;
                match.nearest_peripheral_b = mu;
            }
        }
        if (!(match.distance <= peri)) rep.boundary_inclusion_holds = false;
        rep.boundary_details.push_back(match);
    }
    return rep;
}

}  // namespace sgspec
