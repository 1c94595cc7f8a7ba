#include <tlab/sampling.hpp>

#include <tlab/random.hpp>

namespace tlab {

VertexSubset sample_subset(std::size_t m, double q, std::uint64_t seed) {
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("sampling probability must lie in [0, 1]");
    VertexSubset out(m);
    if (q == 0.0) return out;
    if (q == 1.0) return VertexSubset::full(m);
    SplitMix64 rng(seed);
    for (std::size_t v = 0; v < m; ++v)
        if (rng.uniform() < q) out.insert(static_cast<Vertex>(v));
    return out;
}

}  // namespace tlab
