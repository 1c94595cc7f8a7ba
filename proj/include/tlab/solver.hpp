#ifndef TLAB_SOLVER_HPP
#define TLAB_SOLVER_HPP

#include <tlab/hypergraph.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace tlab {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

struct SolveOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
    /// Decision mode: stop once an edge-free set of this size is found, and
    /// prune every subtree that cannot reach it.
    std::optional<std::size_t> target;
};

/// Result of a maximum edge-free subset search. `alpha` is the size of
/// `witness`; [lower_bound, upper_bound] always brackets the true alpha.
struct SolveResult {
    std::size_t alpha = 0;
    std::size_t lower_bound = 0;
    std::size_t upper_bound = 0;
    VertexSubset witness;
    std::uint64_t node_count = 0;
    bool exact = false;  ///< lower_bound == upper_bound == alpha
    bool budget_exhausted = false;
};

/// Maximum S with no edge of H inside S (hypergraph independence number).
/// Without a target: Russian doll search over the vertex order. With a
/// target: split bound over vertex halves, then branch and bound on
/// unsatisfied edges.
SolveResult alpha_exact(const UniformHypergraph& h, const SolveOptions& options = {});

/// Same, restricted to the vertex subset x (alpha of H[x]); the witness is
/// expressed in H's vertex indices.
SolveResult alpha_on_subset(const UniformHypergraph& h, const VertexSubset& x,
                            const SolveOptions& options = {});

inline constexpr std::size_t kBruteForceLimit = 24;

/// Reference alpha by enumeration of all subsets; at most kBruteForceLimit vertices.
std::size_t alpha_bruteforce(const UniformHypergraph& h);

/// ex(G, F) for the host G given as a set of l-subsets of [n] (colex ranks):
/// alpha of the F-copy hypergraph induced on the host.
SolveResult turan_ex(std::size_t n, unsigned l, const UniformHypergraph& f, const VertexSubset& host,
                     const SolveOptions& options = {});

enum class Decision { True, False, Undecided };
std::string to_string(Decision d);

struct ArrowOutcome {
    Decision decision = Decision::Undecided;
    std::size_t threshold = 0;  ///< smallest integer >= eps*|X|
    SolveResult solve;
};

/// X ->_eps H: every Y in X with |Y| >= eps|X| contains an edge, i.e.
/// alpha(H[X]) < eps|X| compared exactly. Undecided when the node budget cuts
/// the search with bounds on both sides of the threshold.
ArrowOutcome arrow_decide(const UniformHypergraph& h, const VertexSubset& x, const Rational& eps,
                          const SolveOptions& options = {});

/// Decides alpha(H[X]) <= bound (True), > bound (False), or Undecided.
ArrowOutcome decide_alpha_at_most(const UniformHypergraph& h, const VertexSubset& x, std::size_t bound,
                                  const SolveOptions& options = {});

}  // namespace tlab

#endif  // TLAB_SOLVER_HPP
