#include <tlab/density.hpp>

#include <tlab/random.hpp>

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>

namespace tlab {

Rational hypergraph_density(std::size_t vertices, std::size_t edges, unsigned l) {
    if (edges == 0) throw InputError("density needs at least one edge");
    if (vertices == l) return Rational(1, l);
    return Rational(static_cast<std::int64_t>(edges) - 1, static_cast<std::int64_t>(vertices - l));
}

namespace {

std::vector<std::uint64_t> edge_masks(const UniformHypergraph& f) {
    std::vector<std::uint64_t> masks;
    masks.reserve(f.edge_count());
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
        std::uint64_t m = 0;
        for (Vertex v : f.edge(e)) m |= std::uint64_t{1} << v;
        masks.push_back(m);
    }
    return masks;
}

std::vector<Vertex> members(std::uint64_t mask) {
    std::vector<Vertex> out;
    while (mask != 0) {
        out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

}  // namespace

DensityReport m_of_hypergraph(const UniformHypergraph& f) {
    if (f.edge_count() == 0) throw InputError("m(F) needs e(F) >= 1");
    if (f.vertex_count() > 26) throw InputError("m(F) enumeration limited to 26 vertices");
    const unsigned l = f.uniformity();
    const auto masks = edge_masks(f);
    const std::uint64_t limit = std::uint64_t{1} << f.vertex_count();

    DensityReport report;
    bool have = false;
    for (std::uint64_t s = 1; s < limit; ++s) {
        const auto v = static_cast<std::size_t>(std::popcount(s));
        if (v < l) continue;
        std::size_t e = 0;
        for (auto m : masks) e += (m & ~s) == 0 ? 1 : 0;
        if (e == 0) continue;
        const Rational d = hypergraph_density(v, e, l);
        if (!have || d > report.m) {
            report.m = d;
            report.witness = members(s);
            have = true;
        } else if (d == report.m) {
            auto w = members(s);
            if (w < report.witness) report.witness = std::move(w);
        }
    }
    report.pi = turan_density_reference(f);
    return report;
}

unsigned chromatic_number(const UniformHypergraph& graph) {
    if (graph.uniformity() != 2) throw InputError("chromatic number needs a graph (uniformity 2)");
    const std::size_t n = graph.vertex_count();
    if (n == 0) return 0;
    std::vector<std::vector<Vertex>> adj(n);
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        const auto edge = graph.edge(e);
        adj[edge[0]].push_back(edge[1]);
        adj[edge[1]].push_back(edge[0]);
    }
    std::vector<int> color(n, -1);
    for (unsigned colors = 1; colors <= n; ++colors) {
        std::fill(color.begin(), color.end(), -1);
        std::function<bool(std::size_t, unsigned)> assign = [&](std::size_t v, unsigned used) -> bool {
            if (v == n) return true;
            // Symmetry breaking: a new color may only be the next unused one.
            const unsigned options = std::min(colors, used + 1);
            for (unsigned c = 0; c < options; ++c) {
                const bool clash = std::any_of(adj[v].begin(), adj[v].end(),
                                               [&](Vertex w) { return color[w] == static_cast<int>(c); });
                if (clash) continue;
                color[v] = static_cast<int>(c);
                if (assign(v + 1, std::max(used, c + 1))) return true;
                color[v] = -1;
            }
            return false;
        };
        if (assign(0, 0)) return colors;
    }
    return static_cast<unsigned>(n);
}

bool is_l_partite(const UniformHypergraph& f) {
    const unsigned l = f.uniformity();
    const std::size_t n = f.vertex_count();
    std::vector<int> cls(n, -1);
    std::function<bool(std::size_t, unsigned)> assign = [&](std::size_t v, unsigned used) -> bool {
        if (v == n) return true;
        const unsigned options = std::min(l, used + 1);
        for (unsigned c = 0; c < options; ++c) {
            cls[v] = static_cast<int>(c);
            bool ok = true;
            for (std::uint32_t e : f.incident_edges(static_cast<Vertex>(v))) {
                // Every assigned pair of vertices in an edge must sit in distinct classes.
                for (Vertex w : f.edge(e)) {
                    if (w != v && cls[w] == static_cast<int>(c)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok && assign(v + 1, std::max(used, c + 1))) return true;
            cls[v] = -1;
        }
        return false;
    };
    return assign(0, 0);
}

TuranReference turan_density_reference(const UniformHypergraph& f) {
    const unsigned l = f.uniformity();
    if (l == 2) {
        const unsigned chi = chromatic_number(f);
        if (chi >= 3) return {Rational(1) - Rational(1, chi - 1), "chromatic"};
        return {Rational(0), "bipartite"};
    }
    if (is_l_partite(f)) return {Rational(0), "l-partite"};
    return {std::nullopt, "unknown"};
}

// ------------------------------------------------------------ induced minimum

namespace {

class ExactInducedSearch {
public:
    ExactInducedSearch(const UniformHypergraph& h, std::size_t m) : h_(h), m_(m), chosen_(h.vertex_count(), false) {
        closing_.resize(h.vertex_count());
        for (std::size_t e = 0; e < h.edge_count(); ++e) closing_[h.edge(e).back()].push_back(e);
    }

    InducedMinimum run() {
        best_count_ = std::numeric_limits<std::size_t>::max();
        descend(0, 0);
        InducedMinimum out;
        out.m = m_;
        out.count = best_count_;
        out.witness = best_;
        out.exact = true;
        return out;
    }

private:
    void descend(std::size_t v, std::size_t count) {
        if (count >= best_count_) return;
        if (path_.size() == m_) {
            best_count_ = count;
            best_ = path_;
            return;
        }
        const std::size_t n = h_.vertex_count();
        if (v == n || n - v < m_ - path_.size()) return;
        std::size_t closed = 0;
        for (std::size_t e : closing_[v]) {
            const auto edge = h_.edge(e);
            if (std::all_of(edge.begin(), edge.end() - 1, [&](Vertex w) { return chosen_[w]; })) ++closed;
        }
        chosen_[v] = true;
        path_.push_back(static_cast<Vertex>(v));
        descend(v + 1, count + closed);
        path_.pop_back();
        chosen_[v] = false;
        descend(v + 1, count);
    }

    const UniformHypergraph& h_;
    std::size_t m_;
    std::vector<bool> chosen_;
    std::vector<std::vector<std::size_t>> closing_;  // edges whose largest vertex is v
    std::vector<Vertex> path_;
    std::vector<Vertex> best_;
    std::size_t best_count_ = 0;
};

// Edges through v whose other vertices all lie in `in`.
std::size_t closed_at(const UniformHypergraph& h, const std::vector<char>& in, Vertex v) {
    std::size_t c = 0;
    for (std::uint32_t e : h.incident_edges(v)) {
        const auto edge = h.edge(e);
        if (std::all_of(edge.begin(), edge.end(), [&](Vertex w) { return w == v || in[w]; })) ++c;
    }
    return c;
}

InducedMinimum local_search(const UniformHypergraph& h, std::size_t m, std::uint64_t seed) {
    const std::size_t n = h.vertex_count();
    SplitMix64 rng(seed);
    InducedMinimum best;
    best.m = m;
    best.exact = false;
    best.count = std::numeric_limits<std::size_t>::max();
    constexpr int kRestarts = 16;
    for (int restart = 0; restart < kRestarts; ++restart) {
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), Vertex{0});
        for (std::size_t j = n; j > 1; --j) std::swap(perm[j - 1], perm[rng.below(j)]);
        std::vector<char> in(n, 0);
        for (std::size_t j = 0; j < m; ++j) in[perm[j]] = 1;
        std::size_t count = 0;
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            const auto edge = h.edge(e);
            if (std::all_of(edge.begin(), edge.end(), [&](Vertex w) { return in[w] != 0; })) ++count;
        }
        // First-improvement swaps until a full pass finds nothing.
        bool improved = m > 0 && m < n;
        while (improved) {
            improved = false;
            for (std::size_t a = 0; a < m && !improved; ++a) {
                const Vertex out_v = perm[a];
                in[out_v] = 0;
                const std::size_t loss = closed_at(h, in, out_v);
                for (std::size_t b = m; b < n; ++b) {
                    const Vertex in_v = perm[b];
                    const std::size_t gain = closed_at(h, in, in_v);
                    if (gain < loss) {
                        in[in_v] = 1;
                        std::swap(perm[a], perm[b]);
                        count = count - loss + gain;
                        improved = true;
                        break;
                    }
                }
                if (!improved) in[out_v] = 1;
            }
        }
        if (count < best.count) {
            best.count = count;
            best.witness.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
            std::sort(best.witness.begin(), best.witness.end());
        }
    }
    return best;
}

}  // namespace

InducedMinimum min_induced_edges(const UniformHypergraph& h, std::size_t m, std::uint64_t seed) {
    if (m > h.vertex_count()) throw InputError("m exceeds the vertex count");
    if (h.vertex_count() <= kExactInducedLimit) return ExactInducedSearch(h, m).run();
    return local_search(h, m, seed);
}

}  // namespace tlab
