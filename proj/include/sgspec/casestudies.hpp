#pragma once

#include "sgspec/types.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace sgspec {
namespace casestudies {

// A built-in model: generator plus designated vectors and the analysis
// outcomes the model is expected to reproduce.
struct Model {
    GeneratorMatrix generator;
    std::map<std::string, Vector> designated_vectors;  // "f", "phi", "u", ...
    std::string provenance;
    std::map<std::string, bool> expected;
};

// Symmetric 4x4 with an irreducible semigroup that is not eventually
// positive; f and phi span the kernel and pair to zero for all times.
Model counterexample_s2();

// The 3x3 block with spectrum {9, 8, 0} and Perron direction (1,1,1).
Model a1();

// (n+1)^2 * tridiag(1,-2,1) on n interior points of (0,1).
GeneratorMatrix dirichlet_laplacian(int n);

// Coupled (3+n)-dimensional generator: a1 block, Dirichlet Laplacian block,
// trapezoid-quadrature row coupling into coordinate 3 and a ones-column
// coupling out of it.
Model coupled_system(int n);

// Off-diagonal entries >= 0 sampled with the given density (uniform [0,1)
// magnitudes), diagonal uniform [-2,0); bit-identical per seed.
GeneratorMatrix random_metzler(int d, double density, std::uint64_t seed);

// sigma * u phi^T / <phi,u> + Q with strictly positive random u, phi,
// symmetric Q annihilating u and phi, and sigma > spb(Q) + 1, resampled
// until some entry is negative. Simple dominant eigenvalue with strictly
// positive eigenvectors and gap > 1 by construction.
GeneratorMatrix random_eventually_positive(int d, std::uint64_t seed);

// Deterministic uniform double stream (independent of std distribution
// implementations, so seeds reproduce bit-identically everywhere).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);

  private:
    std::uint64_t next();
    std::uint64_t state_;
};

}  // namespace casestudies
}  // namespace sgspec
