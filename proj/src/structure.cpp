#include "sgspec/structure.hpp"

#include "sgspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stack>

namespace sgspec {

Digraph digraph_of(const GeneratorMatrix& a, double zero_tol) {
    if (zero_tol < 0.0) zero_tol = zero_tol_for(a.entries);
    const int d = a.dim();
    Digraph g;
    g.vertex_count = d;
    g.adjacency.resize(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double w = a.entries(i, j);
            if (std::abs(w) > zero_tol) {
                g.edges.push_back({i, j, w});
                g.adjacency[i].push_back(j);
            }
        }
    }
    return g;
}

// Iterative Tarjan. Components are emitted sinks-first; reversing gives the
// topological order of the condensation.
std::vector<std::vector<int>> strongly_connected_components(const Digraph& g) {
    const int n = g.vertex_count;
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack_scc;
    std::vector<std::vector<int>> components;
    int next_index = 0;

    struct Frame {
        int v;
        size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::stack<Frame> frames;
        frames.push({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack_scc.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.top();
            const int v = f.v;
            if (f.child < g.adjacency[v].size()) {
                const int w = g.adjacency[v][f.child++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack_scc.push_back(w);
                    on_stack[w] = true;
                    frames.push({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                frames.pop();
                if (!frames.empty()) {
                    lowlink[frames.top().v] =
                        std::min(lowlink[frames.top().v], lowlink[v]);
                }
                if (lowlink[v] == index[v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack_scc.back();
                        stack_scc.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                    } while (w != v);
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
            }
        }
    }
    std::reverse(components.begin(), components.end());
    return components;
}

bool strongly_connected(const Digraph& g) {
    if (g.vertex_count < 1) throw DomainError("digraph needs >= 1 vertex");
    return strongly_connected_components(g).size() == 1;
}

namespace {

// Invariance of J_S under one matrix: the (i not in S, j in S) block must
// vanish up to tol.
bool block_vanishes(const Matrix& m, unsigned subset, double tol) {
    const int d = static_cast<int>(m.rows());
    for (int i = 0; i < d; ++i) {
        if (subset & (1u << i)) continue;
        for (int j = 0; j < d; ++j) {
            if (!(subset & (1u << j))) continue;
            if (std::abs(m(i, j)) > tol) return false;
        }
    }
    return true;
}

std::vector<int> subset_to_indices(unsigned subset, int d) {
    std::vector<int> out;
    for (int i = 0; i < d; ++i) {
        if (subset & (1u << i)) out.push_back(i);
    }
    return out;
}

// (I + support(|A|))^(d-1) > 0 entrywise, on the boolean semiring.
bool abs_power_irreducible(const Matrix& a, double zero_tol) {
    const int d = static_cast<int>(a.rows());
    std::vector<std::vector<bool>> base(d, std::vector<bool>(d, false));
    for (int i = 0; i < d; ++i) {
        base[i][i] = true;
        for (int j = 0; j < d; ++j) {
            if (std::abs(a(i, j)) > zero_tol) base[i][j] = true;
        }
    }
    auto multiply = [d](const std::vector<std::vector<bool>>& x,
                        const std::vector<std::vector<bool>>& y) {
        std::vector<std::vector<bool>> z(d, std::vector<bool>(d, false));
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) {
                if (!x[i][k]) continue;
                for (int j = 0; j < d; ++j) {
                    if (y[k][j]) z[i][j] = true;
                }
            }
        }
        return z;
    };
    std::vector<std::vector<bool>> result(d, std::vector<bool>(d, false));
    for (int i = 0; i < d; ++i) result[i][i] = true;
    std::vector<std::vector<bool>> power = base;
    int exponent = d - 1;
    while (exponent > 0) {
        if (exponent & 1) result = multiply(result, power);
        exponent >>= 1;
        if (exponent > 0) power = multiply(power, power);
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (!result[i][j]) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<std::vector<int>> ideal_invariance_bruteforce(
    const GeneratorMatrix& a, InvarianceMode mode,
    const std::vector<double>& times, double zero_tol, int cap) {
    const int d = a.dim();
    if (d > cap) {
        throw CapacityError("dimension " + std::to_string(d) +
                            " exceeds brute-force cap " + std::to_string(cap));
    }
    if (mode != InvarianceMode::generator && times.empty()) {
        throw DomainError("sampled invariance modes need a nonempty time grid");
    }
    if (zero_tol < 0.0) zero_tol = zero_tol_for(a.entries);

    std::vector<Matrix> samples;
    std::vector<double> sample_tols;
    if (mode == InvarianceMode::generator) {
        samples.push_back(a.entries);
        sample_tols.push_back(zero_tol);
    } else {
        const double t_cut =
            mode == InvarianceMode::persistent_sampled
                ? *std::max_element(times.begin(), times.end()) / 2.0
                : -1.0;
        for (double t : times) {
            if (t < t_cut) continue;
            Matrix e = expm(a, t);
            sample_tols.push_back(defaults::zero_tol_factor *
                                  std::max(1.0, inf_norm(e)));
            samples.push_back(std::move(e));
        }
    }

    std::vector<std::vector<int>> invariant;
    const unsigned all = (1u << d) - 1u;
    for (unsigned subset = 1; subset < all; ++subset) {
        bool ok = true;
        for (size_t s = 0; s < samples.size() && ok; ++s) {
            ok = block_vanishes(samples[s], subset, sample_tols[s]);
        }
        if (ok) invariant.push_back(subset_to_indices(subset, d));
    }
    return invariant;
}

IrreducibilityReport irreducibility_report(const GeneratorMatrix& a,
                                           const IrreducibilityOptions& opts) {
    const int d = a.dim();
    const double zero_tol =
        opts.zero_tol < 0.0 ? zero_tol_for(a.entries) : opts.zero_tol;

    IrreducibilityReport rep;
    const Digraph g = digraph_of(a, zero_tol);
    const auto components = strongly_connected_components(g);
    rep.scc_connected = components.size() == 1;
    if (!rep.scc_connected) {
        // Concatenating the components in topological order block-upper-
        // triangularizes PAP^{-1}; in particular the lower-left block is zero.
        std::vector<int> witness;
        for (const auto& comp : components) {
            witness.insert(witness.end(), comp.begin(), comp.end());
        }
        rep.block_triangular_witness = std::move(witness);
    }
    rep.abs_matrix_irreducible = abs_power_irreducible(a.entries, zero_tol);

    if (d <= opts.brute_force_cap) {
        rep.ideal_invariant_sets = ideal_invariance_bruteforce(
            a, InvarianceMode::generator, {}, zero_tol, opts.brute_force_cap);
        rep.semigroup_invariant_sets = ideal_invariance_bruteforce(
            a, InvarianceMode::semigroup_sampled, opts.times, zero_tol,
            opts.brute_force_cap);
        rep.persistent_invariant_sets = ideal_invariance_bruteforce(
            a, InvarianceMode::persistent_sampled, opts.times, zero_tol,
            opts.brute_force_cap);
    } else {
        rep.brute_force_skipped = true;
    }

    rep.verdict = rep.scc_connected;
    rep.consistent = rep.abs_matrix_irreducible == rep.scc_connected &&
                     rep.block_triangular_witness.has_value() != rep.scc_connected;
    if (!rep.brute_force_skipped) {
        rep.consistent = rep.consistent &&
                         rep.ideal_invariant_sets.empty() == rep.scc_connected &&
                         rep.semigroup_invariant_sets.empty() == rep.scc_connected &&
                         rep.persistent_invariant_sets.empty() == rep.scc_connected;
    }
    return rep;
}

}  // namespace sgspec
