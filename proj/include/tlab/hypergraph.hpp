#ifndef TLAB_HYPERGRAPH_HPP
#define TLAB_HYPERGRAPH_HPP

#include <tlab/types.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tlab {

using Vertex = std::uint32_t;

/// Domain meaning of a vertex: an integer of [n], a point of [n]^l, or an l-set of [n].
struct Label {
    enum class Kind : std::uint8_t { Integer, Point, Set };

    Kind kind = Kind::Integer;
    std::vector<std::int64_t> values;

    static Label integer(std::int64_t x) { return {Kind::Integer, {x}}; }
    static Label point(std::vector<std::int64_t> coords) { return {Kind::Point, std::move(coords)}; }
    static Label set(std::vector<std::int64_t> members) { return {Kind::Set, std::move(members)}; }

    auto operator<=>(const Label&) const = default;
};

/// "7", "(1,2)" or "{1,2}".
std::string format_label(const Label& label);
Label parse_label(const std::string& text);

/// Subset of the vertex indices 0..universe-1, stored as a bitmask.
class VertexSubset {
public:
    VertexSubset() = default;
    explicit VertexSubset(std::size_t universe);

    static VertexSubset full(std::size_t universe);
    static VertexSubset from_indices(std::size_t universe, std::span<const Vertex> members);

    std::size_t universe() const { return universe_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(Vertex v) const {
        return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
    }
    void insert(Vertex v);
    void erase(Vertex v);

    /// Members in increasing order.
    std::vector<Vertex> indices() const;
    bool is_subset_of(const VertexSubset& other) const;

    bool operator==(const VertexSubset& other) const = default;

private:
    void check_index(Vertex v) const;

    std::size_t universe_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

/// k-uniform hypergraph on dense vertex indices. Immutable after construction;
/// edges are sorted, deduplicated and kept in lexicographic order.
class UniformHypergraph {
public:
    UniformHypergraph() = default;

    UniformHypergraph(unsigned k, std::size_t vertex_count,
                      const std::vector<std::vector<Vertex>>& edges,
                      std::vector<Label> labels = {});

    /// Edges given as a flat array of edge_count * k vertex indices.
    UniformHypergraph(unsigned k, std::size_t vertex_count, std::vector<Vertex> flat_edges,
                      std::vector<Label> labels = {});

    unsigned uniformity() const { return k_; }
    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return k_ == 0 ? 0 : edges_.size() / k_; }

    std::span<const Vertex> edge(std::size_t e) const {
        return {edges_.data() + e * k_, k_};
    }
    std::span<const Vertex> flat_edges() const { return edges_; }

    /// Indices of the edges containing v, increasing.
    std::span<const std::uint32_t> incident_edges(Vertex v) const {
        return {incidence_.data() + incidence_offset_[v],
                incidence_offset_[v + 1] - incidence_offset_[v]};
    }
    std::size_t degree(Vertex v) const {
        return incidence_offset_[v + 1] - incidence_offset_[v];
    }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<Label>& labels() const { return labels_; }
    const Label& label(Vertex v) const { return labels_.at(v); }
    std::optional<Vertex> find_label(const Label& label) const;

    /// Same uniformity, vertex count and edge list; labels are not compared.
    bool same_structure(const UniformHypergraph& other) const {
        return k_ == other.k_ && vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
    }

private:
    void canonicalize();
    void build_index();

    unsigned k_ = 2;
    std::size_t vertex_count_ = 0;
    std::vector<Vertex> edges_;
    std::vector<std::size_t> incidence_offset_{0};
    std::vector<std::uint32_t> incidence_;
    std::vector<Label> labels_;
    std::map<Label, Vertex> label_index_;
};

struct InducedSubhypergraph {
    UniformHypergraph graph;
    std::vector<Vertex> to_parent;  ///< child index -> parent index
};

/// H[U] with vertices renumbered 0..|U|-1 in increasing parent order.
InducedSubhypergraph induced_subhypergraph(const UniformHypergraph& h, const VertexSubset& u);

/// Number of edges through v with at least i vertices in U \ {v}; i in [1, k-1].
std::size_t deg_i_count(const UniformHypergraph& h, Vertex v, const VertexSubset& u, unsigned i);

/// |E_U^i(W)|: edges of H[U] meeting W in at least i vertices; W must be a subset of U.
std::size_t count_E_U_i(const UniformHypergraph& h, const VertexSubset& u, const VertexSubset& w,
                        unsigned i);

/// e(H[U]), scanning only edges incident to members of U.
std::size_t count_induced_edges(const UniformHypergraph& h, const VertexSubset& u);

/// True iff no edge of h lies entirely inside s.
bool is_edge_free(const UniformHypergraph& h, const VertexSubset& s);

// Text format: "k <k> n <vertex_count> m <edge_count>", then one sorted edge per
// line. "# label <i> <text>" lines carry labels; other '#' lines are comments.
void write_hypergraph(std::ostream& out, const UniformHypergraph& h,
                      std::span<const std::string> comments = {});
UniformHypergraph read_hypergraph(std::istream& in);
UniformHypergraph read_hypergraph_file(const std::string& path);

/// Whitespace-separated vertex indices ('#' comment lines allowed).
VertexSubset read_subset(std::istream& in, std::size_t universe);

}  // namespace tlab

#endif  // TLAB_HYPERGRAPH_HPP
