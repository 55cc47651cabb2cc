#include "sgspec/casestudies.hpp"

#include "sgspec/linalg.hpp"
#include "sgspec/positivity.hpp"

#include <cmath>

namespace sgspec {
namespace casestudies {

// splitmix64; full-period, trivially portable.
std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

Model counterexample_s2() {
    Matrix a(4, 4);
    a << 0, 0, -1, 1,
         0, 0, 1, -1,
         -1, 1, 0, 0,
         1, -1, 0, 0;
    Model m;
    m.generator = GeneratorMatrix(a, "s2");
    Vector f(4), phi(4);
    f << 1, 1, 0, 0;
    phi << 0, 0, 1, 1;
    m.designated_vectors["f"] = f;
    m.designated_vectors["phi"] = phi;
    m.provenance =
        "symmetric 4x4 block generator with antisymmetric sign pattern; "
        "strongly connected digraph but a vanishing pairing on the kernel";
    m.expected["irreducible"] = true;
    m.expected["eventually_positive"] = false;
    m.expected["weak_condition_violated"] = true;
    return m;
}

Model a1() {
    Matrix a(3, 3);
    a << 7, -1, 3,
         -1, 7, 3,
         3, 3, 3;
    Model m;
    m.generator = GeneratorMatrix(a, "a1");
    m.designated_vectors["u"] = Vector::Ones(3);
    m.provenance =
        "3x3 symmetric block with spectrum {9, 8, 0}; sign-mixed entries but "
        "a strictly positive Perron direction";
    m.expected["irreducible"] = true;
    m.expected["eventually_positive"] = true;
    return m;
}

GeneratorMatrix dirichlet_laplacian(int n) {
    if (n < 1) throw DomainError("dirichlet_laplacian requires n >= 1");
    const double scale = static_cast<double>(n + 1) * (n + 1);
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = -2.0 * scale;
        if (i > 0) a(i, i - 1) = scale;
        if (i + 1 < n) a(i, i + 1) = scale;
    }
    return GeneratorMatrix(a, "dirichlet-" + std::to_string(n));
}

Model coupled_system(int n) {
    if (n < 1) throw DomainError("coupled_system requires n >= 1");
    const int d = 3 + n;
    const double h = 1.0 / (n + 1);
    Matrix c = Matrix::Zero(d, d);
    c.topLeftCorner(3, 3) = a1().generator.entries;
    c.bottomRightCorner(n, n) = dirichlet_laplacian(n).entries;
    // Trapezoid quadrature of a grid function with zero boundary values:
    // integral ~ h * sum of interior values, fed into coordinate 3.
    for (int j = 0; j < n; ++j) c(2, 3 + j) = h;
    // z -> z_3 * (all-ones grid vector).
    for (int i = 0; i < n; ++i) c(3 + i, 2) = 1.0;

    Model m;
    m.generator = GeneratorMatrix(c, "coupled-" + std::to_string(n));
    m.designated_vectors["u"] = Vector::Ones(d);
    m.provenance =
        "3-component block coupled to a Dirichlet Laplacian on (0,1), "
        "central differences on " + std::to_string(n) +
        " interior points, trapezoid quadrature coupling (mass ~1)";
    m.expected["persistently_irreducible"] = true;
    m.expected["eventually_positive"] = true;
    m.expected["rank_one_limit"] = true;
    return m;
}

GeneratorMatrix random_metzler(int d, double density, std::uint64_t seed) {
    if (d < 1) throw DomainError("random_metzler requires d >= 1");
    if (!(density > 0.0) || density > 1.0) {
        throw DomainError("density must lie in (0, 1]");
    }
    Rng rng(seed);
    Matrix a = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == j) {
                a(i, j) = rng.uniform(-2.0, 0.0);
            } else {
                const double coin = rng.uniform();
                const double mag = rng.uniform();  // drawn unconditionally to
                a(i, j) = coin < density ? mag : 0.0;  // keep the stream fixed
            }
        }
    }
    return GeneratorMatrix(a, "metzler-d" + std::to_string(d) + "-s" +
                                  std::to_string(seed));
}

GeneratorMatrix random_eventually_positive(int d, std::uint64_t seed) {
    if (d < 2) throw DomainError("random_eventually_positive requires d >= 2");
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vector u(d), phi(d);
        for (int i = 0; i < d; ++i) u(i) = rng.uniform(0.5, 1.5);
        for (int i = 0; i < d; ++i) phi(i) = rng.uniform(0.5, 1.5);
        Matrix q0(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                q0(i, j) = q0(j, i) = rng.uniform(-1.0, 1.0);
            }
        }
        // Orthogonal projector onto the complement of span{u, phi}.
        Matrix w(d, 2);
        w.col(0) = u;
        w.col(1) = phi;
        const Matrix proj =
            Matrix::Identity(d, d) -
            w * (w.transpose() * w).ldlt().solve(w.transpose());
        const Matrix q = proj * q0 * proj;

        const double spb_q = spectral_bound(eig(q));
        const double sigma = spb_q + 1.0 + rng.uniform(0.1, 0.5);
        const Matrix a = sigma * (u * phi.transpose()) / phi.dot(u) + q;
        if (a.minCoeff() < 0.0) {
            return GeneratorMatrix(a, "ep-d" + std::to_string(d) + "-s" +
                                          std::to_string(seed));
        }
    }
    throw NumericalError("could not realize a negative entry in 64 attempts");
}

}  // namespace casestudies
}  // namespace sgspec
