#include "sgspec/positivity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace sgspec {

const char* to_string(SignClass s) {
    switch (s) {
        case SignClass::strictly_positive: return "strictly_positive";
        case SignClass::nonnegative_with_zeros: return "nonnegative_with_zeros";
        case SignClass::sign_mixed: return "sign_mixed";
    }
    return "?";
}

const char* to_string(PositivityKind k) {
    switch (k) {
        case PositivityKind::eventually_positive: return "eventually_positive";
        case PositivityKind::refuted: return "refuted";
        case PositivityKind::inconclusive: return "inconclusive";
    }
    return "?";
}

SignClass classify_sign(const Vector& v, double strict_tol) {
    const double max_abs = v.cwiseAbs().maxCoeff();
    if (strict_tol < 0.0) strict_tol = defaults::strict_tol_factor * max_abs;
    Vector w = v;
    int arg_max = 0;
    v.cwiseAbs().maxCoeff(&arg_max);
    if (w(arg_max) < 0.0) w = -w;
    if ((w.array() > strict_tol).all()) return SignClass::strictly_positive;
    if ((w.array() >= -strict_tol).all()) return SignClass::nonnegative_with_zeros;
    return SignClass::sign_mixed;
}

double spectral_bound(const EigenData& e) {
    if (e.dim < 1) throw DomainError("empty eigendata");
    double spb = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < e.dim; ++i) {
        spb = std::max(spb, e.eigenvalues(i).real());
    }
    return spb;
}

namespace {

// Rotate the phase so the largest-magnitude component is real positive,
// then drop the (checked small) imaginary part.
std::optional<Vector> real_eigenvector(const CVector& v) {
    int arg_max = 0;
    v.cwiseAbs().maxCoeff(&arg_max);
    const Complex pivot = v(arg_max);
    if (std::abs(pivot) == 0.0) return std::nullopt;
    CVector rotated = v * (std::conj(pivot) / std::abs(pivot));
    if (rotated.imag().cwiseAbs().maxCoeff() > 1e-8) return std::nullopt;
    Vector out = rotated.real();
    return out / out.norm();
}

}  // namespace

PFCertificate pf_certificate(const GeneratorMatrix& a) {
    return pf_certificate(a, eig(a));
}

PFCertificate pf_certificate(const GeneratorMatrix& a, const EigenData& e) {
    (void)a;
    PFCertificate cert;
    cert.spectral_bound = spectral_bound(e);
    const double peri = peri_tol_for(cert.spectral_bound);

    std::vector<int> peripheral;
    for (int i = 0; i < e.dim; ++i) {
        if (e.eigenvalues(i).real() >= cert.spectral_bound - peri) {
            peripheral.push_back(i);
        }
    }

    // gap = spb minus the second-largest real part, multiplicity counted.
    if (e.dim == 1) {
        cert.gap = std::numeric_limits<double>::infinity();
    } else {
        std::vector<double> re(e.dim);
        for (int i = 0; i < e.dim; ++i) re[i] = e.eigenvalues(i).real();
        std::sort(re.begin(), re.end(), std::greater<>());
        cert.gap = std::max(0.0, re[0] - re[1]);
    }

    const int dom = e.dominant_cluster();
    bool dom_real = false;
    if (dom >= 0) {
        dom_real = true;
        for (int i : e.clusters[dom]) {
            if (std::abs(e.eigenvalues(i).imag()) > peri) dom_real = false;
        }
    }
    if (dom_real) {
        cert.is_real_dominant =
            std::all_of(peripheral.begin(), peripheral.end(), [&](int i) {
                return e.cluster_of(i) == dom;
            });
        cert.is_simple = e.clusters[dom].size() == 1;
        if (e.cluster_defective[dom]) {
            throw DefectiveError(
                "dominant eigenvalue cluster is defective; eigenvector "
                "classification unavailable");
        }
        const int lead = e.clusters[dom].front();
        // For a multiple (semisimple) dominant eigenvalue this classifies one
        // basis vector of the eigenspace; refutation logic never relies on it
        // unless the eigenvalue is simple.
        auto u = real_eigenvector(e.right_vectors.col(lead));
        auto phi = real_eigenvector(e.left_vectors.col(lead));
        if (u) {
            cert.right_vector_positive = classify_sign(*u);
            int arg_max = 0;
            u->cwiseAbs().maxCoeff(&arg_max);
            if ((*u)(arg_max) < 0.0) *u = -*u;
            cert.right_vector = *u;
        }
        if (phi) {
            cert.left_vector_positive = classify_sign(*phi);
            int arg_max = 0;
            phi->cwiseAbs().maxCoeff(&arg_max);
            if ((*phi)(arg_max) < 0.0) *phi = -*phi;
            cert.left_vector = *phi;
        }
    } else {
        // No real eigenvalue attains the spectral bound (a dominant complex
        // conjugate pair); there is no positive eigenvector candidate.
        cert.is_real_dominant = false;
        cert.is_simple = false;
        cert.right_vector_positive = SignClass::sign_mixed;
        cert.left_vector_positive = SignClass::sign_mixed;
    }
    return cert;
}

namespace {

struct GridSample {
    double t;
    double min_entry;
    double max_abs;
    double norm_inf;
};

// Smallest grid time from which the predicate holds through t_max.
template <typename Pred>
std::optional<double> suffix_entry(const std::vector<GridSample>& samples,
                                   Pred&& ok) {
    std::optional<double> entry;
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        if (!ok(*it)) break;
        entry = it->t;
    }
    return entry;
}

}  // namespace

PositivityCertificate eventual_positivity_scan(const GeneratorMatrix& a,
                                               double t_max, double grid_step) {
    if (!(t_max > 0.0) || !(grid_step > 0.0)) {
        throw DomainError("scan requires t_max > 0 and grid_step > 0");
    }
    const EigenData e = eig(a);
    const double spb = spectral_bound(e);
    if (t_max * spb > defaults::overflow_exponent) {
        throw OverflowError("t_max*spb(A) = " + std::to_string(t_max * spb) +
                            " exceeds the double exponent range");
    }

    const bool metzler =
        is_metzler(a.entries, 1e-14 * std::max(1.0, inf_norm(a.entries)));
    std::optional<PFCertificate> pf;
    try {
        pf = pf_certificate(a, e);
    } catch (const DefectiveError&) {
        // Grid evidence only; certificate stays inconclusive below.
    }

    PositivityCertificate cert;

    const Matrix step = expm(a, grid_step);
    Matrix x = Matrix::Identity(a.dim(), a.dim());
    std::vector<GridSample> samples;
    const int n_steps = static_cast<int>(std::floor(t_max / grid_step + 1e-9));
    for (int k = 0; k <= n_steps; ++k) {
        const double t = k * grid_step;
        GridSample s;
        s.t = t;
        s.min_entry = x.minCoeff();
        s.max_abs = x.cwiseAbs().maxCoeff();
        s.norm_inf = inf_norm(x);
        samples.push_back(s);
        cert.trace.emplace_back(t, s.min_entry);
        if (k < n_steps) x = x * step;
    }

    const auto entry_ok = [](const GridSample& s) {
        return s.min_entry >= -defaults::entry_tol_factor * s.norm_inf;
    };
    const auto strict_ok = [](const GridSample& s) {
        return s.min_entry > defaults::strict_tol_factor * s.max_abs;
    };
    cert.t0 = suffix_entry(samples, entry_ok);
    cert.t_strict = suffix_entry(samples, strict_ok);

    if (metzler) {
        // Metzler <=> e^{tA} >= 0 for all t >= 0; the sign structure itself
        // certifies the whole half-line.
        cert.kind = PositivityKind::eventually_positive;
        cert.t0 = 0.0;
        cert.tail_bound = TailBound{0.0, 0.0, 0.0, /*structural=*/true};
        return cert;
    }

    if (pf && pf->is_simple &&
        (pf->right_vector_positive == SignClass::sign_mixed ||
         pf->left_vector_positive == SignClass::sign_mixed)) {
        cert.kind = PositivityKind::refuted;
        RefutationWitness w;
        if (pf->right_vector_positive == SignClass::sign_mixed && pf->right_vector) {
            w.description =
                "dominant eigenvalue has a sign-mixed (right) eigenvector";
            w.vector = *pf->right_vector;
        } else if (pf->left_vector) {
            w.description =
                "dominant eigenvalue has a sign-mixed left eigenvector";
            w.vector = *pf->left_vector;
        } else {
            w.description = "dominant eigenvector could not be realified";
            w.vector = Vector::Zero(a.dim());
        }
        if (!samples.empty() && !entry_ok(samples.back())) {
            w.description += "; min entry still negative at t_max";
        }
        cert.refutation_witness = w;
        return cert;
    }

    // Analytic tail: needs a simple dominant eigenvalue with strictly
    // positive left/right eigenvectors and a positive gap.
    if (pf && pf->is_simple && pf->gap > 0.0 &&
        pf->right_vector_positive == SignClass::strictly_positive &&
        pf->left_vector_positive == SignClass::strictly_positive &&
        pf->right_vector && pf->left_vector) {
        const Vector& u = *pf->right_vector;
        const Vector& phi = *pf->left_vector;
        const double pairing = phi.dot(u);
        const Matrix p = (u * phi.transpose()) / pairing;
        const double min_p = p.minCoeff();
        const double g = pf->gap;
        const Matrix rescaled = a.entries - spb * Matrix::Identity(a.dim(), a.dim());

        const int n_res = 24;
        double c_est = 0.0;
        bool have_usable = false;
        for (int k = 1; k <= n_res; ++k) {
            const double t = t_max * k / n_res;
            const double r = inf_norm(Matrix(expm(rescaled, t) - p));
            if (r < 1e-13 * std::max(1.0, inf_norm(p))) continue;
            have_usable = true;
            // r * e^{gt} is ~constant in the clean decay regime.
            if (g * t < defaults::overflow_exponent) {
                c_est = std::max(c_est, r * std::exp(g * t));
            }
        }
        if (!have_usable) c_est = std::max(1.0, inf_norm(p));
        const double c_bound = 2.0 * c_est;

        double t_cert = std::log(2.0 * c_bound / min_p) / g;
        t_cert = std::max(t_cert, 0.0);

        bool tail_valid = true;
        const double lo = std::max(t_cert, grid_step);
        const double hi = 2.0 * lo;
        for (int k = 0; k < 10 && tail_valid; ++k) {
            const double tau = lo * std::pow(hi / lo, k / 9.0);
            const Matrix xr = expm(rescaled, tau);
            const double resid = inf_norm(Matrix(xr - p));
            const double bound = g * tau < defaults::overflow_exponent
                                     ? c_bound * std::exp(-g * tau)
                                     : 0.0;
            if (resid > bound * (1.0 + 1e-6) + 1e-12 * std::max(1.0, inf_norm(p))) {
                tail_valid = false;
            }
            if (xr.minCoeff() < -defaults::entry_tol_factor * inf_norm(xr)) {
                tail_valid = false;
            }
        }
        // The sampled grid ends at t_max; if the certified tail starts later,
        // bridge the gap with extra rescaled samples (sign-equivalent).
        if (tail_valid && t_cert > t_max) {
            for (int k = 0; k <= 32 && tail_valid; ++k) {
                const double tau = t_max + (t_cert - t_max) * k / 32.0;
                const Matrix xr = expm(rescaled, tau);
                if (xr.minCoeff() < -defaults::entry_tol_factor * inf_norm(xr)) {
                    tail_valid = false;
                }
            }
        }
        if (tail_valid && cert.t0) {
            cert.kind = PositivityKind::eventually_positive;
            cert.tail_bound = TailBound{t_cert, c_bound, g, false};
            return cert;
        }
    }

    cert.kind = PositivityKind::inconclusive;
    return cert;
}

std::optional<double> strong_positivity_scan(const GeneratorMatrix& a,
                                             const Vector& u, double t_max,
                                             double grid_step) {
    if (u.size() != a.dim()) throw DomainError("u has wrong dimension");
    const double u_max = u.cwiseAbs().maxCoeff();
    if (u_max <= 0.0) throw DomainError("u must be nonzero");
    if (u.minCoeff() < -1e-12 * u_max) {
        throw DomainError("u must be entrywise nonnegative");
    }
    const Vector uh = u / u_max;
    const double support_tol = 1e-12;

    const EigenData e = eig(a);
    if (t_max * spectral_bound(e) > defaults::overflow_exponent) {
        throw OverflowError("t_max*spb(A) exceeds the double exponent range");
    }

    const int d = a.dim();
    const Matrix step = expm(a, grid_step);
    Matrix x = Matrix::Identity(d, d);
    const int n_steps = static_cast<int>(std::floor(t_max / grid_step + 1e-9));
    std::vector<std::pair<double, bool>> cond;
    for (int k = 0; k <= n_steps; ++k) {
        const double t = k * grid_step;
        const double max_abs = x.cwiseAbs().maxCoeff();
        const double strict_tol = defaults::strict_tol_factor * max_abs;
        const double entry_tol = defaults::entry_tol_factor * inf_norm(x);
        bool ok = true;
        for (int j = 0; j < d && ok; ++j) {
            double c = std::numeric_limits<double>::infinity();
            for (int i = 0; i < d && ok; ++i) {
                if (uh(i) > support_tol) {
                    c = std::min(c, x(i, j) / uh(i));
                } else if (x(i, j) < -entry_tol) {
                    ok = false;  // x >= c*u needs x_i >= 0 where u_i = 0
                }
            }
            if (c < strict_tol) ok = false;
        }
        cond.emplace_back(t, ok);
        if (k < n_steps) x = x * step;
    }

    std::optional<double> t1;
    for (auto it = cond.rbegin(); it != cond.rend(); ++it) {
        if (!it->second) break;
        t1 = it->first;
    }
    return t1;
}

double asymptotic_positivity_deficit(const GeneratorMatrix& a, double t) {
    const EigenData e = eig(a);
    const double spb = spectral_bound(e);
    const Matrix rescaled =
        a.entries - spb * Matrix::Identity(a.dim(), a.dim());
    const Matrix x = expm(rescaled, t);
    double deficit = 0.0;
    for (int j = 0; j < a.dim(); ++j) {
        deficit = std::max(deficit, x.col(j).cwiseMin(0.0).cwiseAbs().sum());
    }
    return deficit;
}

namespace {

void require_nonneg_nonzero(const Vector& v, const char* name) {
    const double max_abs = v.cwiseAbs().maxCoeff();
    if (max_abs <= 0.0) {
        throw DomainError(std::string(name) + " must be nonzero");
    }
    if (v.minCoeff() < -1e-12 * max_abs) {
        throw DomainError(std::string(name) +
                          " must be entrywise nonnegative, got a negative entry");
    }
}

}  // namespace

bool weak_condition_check(const GeneratorMatrix& a, const Vector& f,
                          const Vector& phi, double pairing_tol) {
    if (f.size() != a.dim() || phi.size() != a.dim()) {
        throw DomainError("f and phi must match the generator dimension");
    }
    require_nonneg_nonzero(f, "f");
    require_nonneg_nonzero(phi, "phi");

    // Normalized Krylov sweep: the analytic pairing t -> phi^T e^{tA} f
    // vanishes identically iff phi^T A^k f = 0 for k = 0..d-1.
    Vector v = f / f.norm();
    const double phi_norm = phi.norm();
    for (int k = 0; k < a.dim(); ++k) {
        const double pairing = phi.dot(v);
        if (std::abs(pairing) > pairing_tol * phi_norm) return true;
        v = a.entries * v;
        const double len = v.norm();
        if (len == 0.0) break;
        v /= len;
    }
    return false;
}

namespace {

// Coordinates where every normalized Krylov iterate A^k f vanishes.
std::vector<int> krylov_vanishing_set(const Matrix& a, const Vector& f) {
    const int d = static_cast<int>(a.rows());
    std::vector<bool> vanishes(d, true);
    Vector v = f / f.cwiseAbs().maxCoeff();
    for (int k = 0; k < d; ++k) {
        for (int i = 0; i < d; ++i) {
            if (std::abs(v(i)) > 1e-11) vanishes[i] = false;
        }
        v = a * v;
        const double len = v.cwiseAbs().maxCoeff();
        if (len <= std::numeric_limits<double>::min()) break;
        v /= len;
    }
    std::vector<int> out;
    for (int i = 0; i < d; ++i) {
        if (vanishes[i]) out.push_back(i);
    }
    return out;
}

Vector clamp_nonneg(const Vector& v) { return v.cwiseMax(0.0); }

// Nonnegative directions inside a subspace given by (roughly orthonormal)
// basis vectors: single vectors up to sign plus pairwise +- combinations.
std::vector<Vector> nonneg_in_span(const std::vector<Vector>& basis) {
    std::vector<Vector> out;
    auto consider = [&](const Vector& v) {
        const double max_abs = v.cwiseAbs().maxCoeff();
        if (max_abs <= 0.0) return;
        if (v.minCoeff() >= -1e-10 * max_abs) out.push_back(clamp_nonneg(v));
        if (v.maxCoeff() <= 1e-10 * max_abs) out.push_back(clamp_nonneg(-v));
    };
    for (const auto& v : basis) consider(v);
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = i + 1; j < basis.size(); ++j) {
            consider(basis[i] + basis[j]);
            consider(basis[i] - basis[j]);
        }
    }
    return out;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
    const Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    std::vector<Vector> basis;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) <= tol) basis.push_back(svd.matrixV().col(i));
    }
    return basis;
}

}  // namespace

std::optional<std::pair<Vector, Vector>> weak_condition_search(
    const GeneratorMatrix& a, int cap) {
    const int d = a.dim();
    if (d > cap) {
        throw CapacityError("dimension " + std::to_string(d) +
                            " exceeds brute-force cap " + std::to_string(cap));
    }

    auto verified = [&](const Vector& f,
                        const Vector& phi) -> std::optional<std::pair<Vector, Vector>> {
        if (f.cwiseAbs().maxCoeff() <= 0.0 || phi.cwiseAbs().maxCoeff() <= 0.0) {
            return std::nullopt;
        }
        if (f.minCoeff() < 0.0 || phi.minCoeff() < 0.0) return std::nullopt;
        if (!weak_condition_check(a, f, phi)) return std::make_pair(f, phi);
        return std::nullopt;
    };

    // Kernel pairs first (fixed vectors of the semigroup and its adjoint).
    const auto ker_a = nonneg_in_span(kernel_basis(a.entries));
    const auto ker_at = nonneg_in_span(kernel_basis(a.entries.transpose()));
    for (const auto& f : ker_a) {
        for (const auto& phi : ker_at) {
            if (auto hit = verified(f, phi)) return hit;
        }
    }

    // Coordinate-face indicators, smallest supports first.
    std::vector<unsigned> subsets;
    for (unsigned s = 1; s + 1 < (1u << d); ++s) subsets.push_back(s);
    std::sort(subsets.begin(), subsets.end(), [](unsigned x, unsigned y) {
        const int px = std::popcount(x), py = std::popcount(y);
        return px != py ? px < py : x < y;
    });
    for (unsigned s : subsets) {
        Vector f = Vector::Zero(d);
        for (int i = 0; i < d; ++i) {
            if (s & (1u << i)) f(i) = 1.0;
        }
        const auto zero_set = krylov_vanishing_set(a.entries, f);
        if (zero_set.empty()) continue;
        Vector phi = Vector::Zero(d);
        for (int i : zero_set) phi(i) = 1.0;
        if (auto hit = verified(f, phi)) return hit;
    }

    // Weighted face candidates: kernel vectors of the single-target Krylov
    // constraint matrices (only for moderate d; the search stays heuristic).
    if (d <= 10) {
        std::vector<Matrix> powers;
        powers.push_back(Matrix::Identity(d, d));
        for (int k = 1; k < d; ++k) {
            Matrix next = a.entries * powers.back();
            const double len = next.cwiseAbs().maxCoeff();
            if (len > 0.0) next /= len;
            powers.push_back(std::move(next));
        }
        for (unsigned s : subsets) {
            std::vector<int> support;
            for (int i = 0; i < d; ++i) {
                if (s & (1u << i)) support.push_back(i);
            }
            for (int target = 0; target < d; ++target) {
                if (s & (1u << target)) continue;
                Matrix constraints(d, static_cast<int>(support.size()));
                for (int k = 0; k < d; ++k) {
                    for (size_t c = 0; c < support.size(); ++c) {
                        constraints(k, static_cast<int>(c)) =
                            powers[k](target, support[c]);
                    }
                }
                for (const auto& sub : nonneg_in_span(kernel_basis(constraints))) {
                    Vector f = Vector::Zero(d);
                    for (size_t c = 0; c < support.size(); ++c) {
                        f(support[c]) = sub(static_cast<int>(c));
                    }
                    if (f.cwiseAbs().maxCoeff() <= 0.0) continue;
                    const auto zero_set = krylov_vanishing_set(a.entries, f);
                    if (zero_set.empty()) continue;
                    Vector phi = Vector::Zero(d);
                    for (int i : zero_set) phi(i) = 1.0;
                    if (auto hit = verified(f, phi)) return hit;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace sgspec
