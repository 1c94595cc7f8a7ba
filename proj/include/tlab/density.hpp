#ifndef TLAB_DENSITY_HPP
#define TLAB_DENSITY_HPP

#include <tlab/hypergraph.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tlab {

struct TuranReference {
    std::optional<Rational> value;  ///< nullopt: unknown, caller must supply alpha
    std::string provenance;         ///< "chromatic", "bipartite", "l-partite" or "unknown"
};

struct DensityReport {
    Rational m;
    std::vector<Vertex> witness;  ///< vertex set of the maximizing induced sub-hypergraph
    TuranReference pi;
};

/// d(F') = (e-1)/(v-l) for v > l and 1/l for v = l.
Rational hypergraph_density(std::size_t vertices, std::size_t edges, unsigned l);

/// m(F): maximum of d over induced sub-hypergraphs with at least one edge.
/// Ties go to the lexicographically smallest vertex set.
DensityReport m_of_hypergraph(const UniformHypergraph& f);

/// Reference Turan density: exact for graphs via the chromatic number and for
/// l-partite hypergraphs, unknown otherwise.
TuranReference turan_density_reference(const UniformHypergraph& f);

/// Exact chromatic number of a graph (uniformity 2).
unsigned chromatic_number(const UniformHypergraph& graph);

/// Whether V(F) splits into l classes with every edge meeting each class once.
bool is_l_partite(const UniformHypergraph& f);

struct InducedMinimum {
    std::size_t m = 0;
    std::size_t count = 0;
    std::vector<Vertex> witness;
    bool exact = true;
};

inline constexpr std::size_t kExactInducedLimit = 24;

/// Minimum of e(H[U]) over |U| = m. Exact by pruned enumeration up to
/// kExactInducedLimit vertices; above that a seeded local-search upper bound
/// flagged exact = false.
InducedMinimum min_induced_edges(const UniformHypergraph& h, std::size_t m,
                                 std::uint64_t seed = 0x5eed);

}  // namespace tlab

#endif  // TLAB_DENSITY_HPP
