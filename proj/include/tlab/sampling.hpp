#ifndef TLAB_SAMPLING_HPP
#define TLAB_SAMPLING_HPP

#include <tlab/hypergraph.hpp>

#include <cstdint>

namespace tlab {

/// Binomial random subset of {0..m-1}: index v is kept iff the v-th uniform
/// draw of SplitMix64(seed) is below q.
VertexSubset sample_subset(std::size_t m, double q, std::uint64_t seed);

}  // namespace tlab

#endif  // TLAB_SAMPLING_HPP
