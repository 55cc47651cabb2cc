#pragma once

#include "sgspec/types.hpp"

#include <optional>
#include <vector>

namespace sgspec {

// Weighted digraph of a generator: edge i -> j iff |a_ij| > zero_tol.
struct Digraph {
    struct Edge {
        int from;
        int to;
        double weight;
    };
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adjacency;  // out-neighbors
};

Digraph digraph_of(const GeneratorMatrix& a, double zero_tol = -1.0);

// Strongly connected components in topological order of the condensation
// (every edge between components goes from an earlier to a later one).
std::vector<std::vector<int>> strongly_connected_components(const Digraph& g);

bool strongly_connected(const Digraph& g);

enum class InvarianceMode { generator, semigroup_sampled, persistent_sampled };

// Enumerates all 2^d - 2 proper nonempty coordinate subsets S and returns
// those whose ideal J_S = {x : x_i = 0 for i not in S} is invariant:
//   generator:          a_ij = 0 (up to zero_tol) for all i not in S, j in S
//   semigroup_sampled:  same block of e^{tA} vanishes at every sampled t
//   persistent_sampled: only sampled t >= max(times)/2 are required
// Throws CapacityError above the cap.
std::vector<std::vector<int>> ideal_invariance_bruteforce(
    const GeneratorMatrix& a, InvarianceMode mode,
    const std::vector<double>& times = {}, double zero_tol = -1.0,
    int cap = defaults::brute_force_cap);

struct IrreducibilityOptions {
    double zero_tol = -1.0;
    std::vector<double> times = {0.1, 0.5, 1.0, 2.0};
    int brute_force_cap = defaults::brute_force_cap;
};

// Per-criterion verdicts for the six-way matrix irreducibility equivalence.
struct IrreducibilityReport {
    bool scc_connected = false;
    std::optional<std::vector<int>> block_triangular_witness;
    bool abs_matrix_irreducible = false;
    bool brute_force_skipped = false;  // d above cap; the three lists unset
    std::vector<std::vector<int>> ideal_invariant_sets;       // generator mode
    std::vector<std::vector<int>> semigroup_invariant_sets;   // sampled mode
    std::vector<std::vector<int>> persistent_invariant_sets;  // eventual mode
    bool verdict = false;
    bool consistent = true;  // false if any available criterion disagrees
};

IrreducibilityReport irreducibility_report(
    const GeneratorMatrix& a, const IrreducibilityOptions& opts = {});

}  // namespace sgspec
