#include <tlab/hypergraph.hpp>

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tlab {

std::string format_label(const Label& label) {
    std::string out;
    const char* open = "";
    const char* close = "";
    if (label.kind == Label::Kind::Point) {
        open = "(";
        close = ")";
    } else if (label.kind == Label::Kind::Set) {
        open = "{";
        close = "}";
    }
    out += open;
    for (std::size_t j = 0; j < label.values.size(); ++j) {
        if (j != 0) out += ',';
        out += std::to_string(label.values[j]);
    }
    out += close;
    return out;
}

Label parse_label(const std::string& text) {
    if (text.empty()) throw InputError("empty label");
    Label label;
    std::string body = text;
    if (text.front() == '(' || text.front() == '{') {
        const char close = text.front() == '(' ? ')' : '}';
        if (text.size() < 2 || text.back() != close) throw InputError("malformed label: " + text);
        label.kind = text.front() == '(' ? Label::Kind::Point : Label::Kind::Set;
        body = text.substr(1, text.size() - 2);
    }
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            label.values.push_back(std::stoll(item, &used));
            if (used != item.size()) throw InputError("malformed label: " + text);
        } catch (const std::logic_error&) {
            throw InputError("malformed label: " + text);
        }
    }
    if (label.kind == Label::Kind::Integer && label.values.size() != 1)
        throw InputError("malformed label: " + text);
    return label;
}

// ---------------------------------------------------------------- VertexSubset

VertexSubset::VertexSubset(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSubset VertexSubset::full(std::size_t universe) {
    VertexSubset s(universe);
    for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
    if (universe % 64 != 0 && !s.words_.empty())
        s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
    s.count_ = universe;
    return s;
}

VertexSubset VertexSubset::from_indices(std::size_t universe, std::span<const Vertex> members) {
    VertexSubset s(universe);
    for (Vertex v : members) s.insert(v);
    return s;
}

void VertexSubset::check_index(Vertex v) const {
    if (v >= universe_)
        throw InputError("vertex " + std::to_string(v) + " outside universe of size " +
                         std::to_string(universe_));
}

void VertexSubset::insert(Vertex v) {
    check_index(v);
    auto& word = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if ((word & bit) == 0) {
        word |= bit;
        ++count_;
    }
}

void VertexSubset::erase(Vertex v) {
    check_index(v);
    auto& word = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if ((word & bit) != 0) {
        word &= ~bit;
        --count_;
    }
}

std::vector<Vertex> VertexSubset::indices() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word != 0) {
            out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

bool VertexSubset::is_subset_of(const VertexSubset& other) const {
    if (count_ > other.count_) return false;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        const std::uint64_t theirs = w < other.words_.size() ? other.words_[w] : 0;
        if ((words_[w] & ~theirs) != 0) return false;
    }
    return true;
}

// ----------------------------------------------------------- UniformHypergraph

UniformHypergraph::UniformHypergraph(unsigned k, std::size_t vertex_count,
                                     const std::vector<std::vector<Vertex>>& edges,
                                     std::vector<Label> labels)
    : k_(k), vertex_count_(vertex_count), labels_(std::move(labels)) {
    if (k < 2) throw InputError("uniformity must be at least 2");
    edges_.reserve(edges.size() * k);
    for (const auto& e : edges) {
        if (e.size() != k)
            throw InputError("edge has " + std::to_string(e.size()) + " vertices, expected " +
                             std::to_string(k));
        edges_.insert(edges_.end(), e.begin(), e.end());
    }
    canonicalize();
    build_index();
}

UniformHypergraph::UniformHypergraph(unsigned k, std::size_t vertex_count,
                                     std::vector<Vertex> flat_edges, std::vector<Label> labels)
    : k_(k), vertex_count_(vertex_count), edges_(std::move(flat_edges)), labels_(std::move(labels)) {
    if (k < 2) throw InputError("uniformity must be at least 2");
    if (edges_.size() % k != 0) throw InputError("flat edge array length not a multiple of k");
    canonicalize();
    build_index();
}

void UniformHypergraph::canonicalize() {
    if (!labels_.empty() && labels_.size() != vertex_count_)
        throw InputError("label count does not match vertex count");
    const std::size_t m = edges_.size() / k_;
    for (std::size_t e = 0; e < m; ++e) {
        auto first = edges_.begin() + static_cast<std::ptrdiff_t>(e * k_);
        std::sort(first, first + k_);
        for (unsigned j = 0; j < k_; ++j) {
            if (first[j] >= vertex_count_)
                throw InputError("edge vertex " + std::to_string(first[j]) + " >= vertex count " +
                                 std::to_string(vertex_count_));
            if (j > 0 && first[j] == first[j - 1])
                throw InputError("edge repeats vertex " + std::to_string(first[j]));
        }
    }
    std::vector<std::size_t> order(m);
    for (std::size_t e = 0; e < m; ++e) order[e] = e;
    auto less = [this](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(edges_.begin() + a * k_, edges_.begin() + (a + 1) * k_,
                                            edges_.begin() + b * k_, edges_.begin() + (b + 1) * k_);
    };
    if (!std::is_sorted(order.begin(), order.end(), less))
        std::sort(order.begin(), order.end(), less);
    std::vector<Vertex> sorted;
    sorted.reserve(edges_.size());
    for (std::size_t idx = 0; idx < m; ++idx) {
        const std::size_t e = order[idx];
        if (idx > 0 && std::equal(edges_.begin() + e * k_, edges_.begin() + (e + 1) * k_,
                                  sorted.end() - k_))
            continue;
        sorted.insert(sorted.end(), edges_.begin() + e * k_, edges_.begin() + (e + 1) * k_);
    }
    edges_ = std::move(sorted);

    for (std::size_t v = 0; v < labels_.size(); ++v) {
        if (!label_index_.emplace(labels_[v], static_cast<Vertex>(v)).second)
            throw InputError("duplicate vertex label " + format_label(labels_[v]));
    }
}

void UniformHypergraph::build_index() {
    incidence_offset_.assign(vertex_count_ + 1, 0);
    for (Vertex v : edges_) ++incidence_offset_[v + 1];
    for (std::size_t v = 0; v < vertex_count_; ++v) incidence_offset_[v + 1] += incidence_offset_[v];
    incidence_.assign(edges_.size(), 0);
    std::vector<std::size_t> cursor(incidence_offset_.begin(), incidence_offset_.end() - 1);
    const std::size_t m = edge_count();
    for (std::size_t e = 0; e < m; ++e)
        for (Vertex v : edge(e)) incidence_[cursor[v]++] = static_cast<std::uint32_t>(e);
}

std::optional<Vertex> UniformHypergraph::find_label(const Label& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

// ------------------------------------------------------------------ operations

namespace {

void check_universe(const UniformHypergraph& h, const VertexSubset& s, const char* what) {
    if (s.universe() != h.vertex_count())
        throw InputError(std::string(what) + " has universe " + std::to_string(s.universe()) +
                         " but hypergraph has " + std::to_string(h.vertex_count()) + " vertices");
}

}  // namespace

InducedSubhypergraph induced_subhypergraph(const UniformHypergraph& h, const VertexSubset& u) {
    check_universe(h, u, "vertex subset");
    InducedSubhypergraph out;
    out.to_parent = u.indices();
    std::vector<Vertex> to_child(h.vertex_count(), 0);
    for (std::size_t c = 0; c < out.to_parent.size(); ++c)
        to_child[out.to_parent[c]] = static_cast<Vertex>(c);

    const unsigned k = h.uniformity();
    std::vector<Vertex> flat;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        const auto edge = h.edge(e);
        if (std::all_of(edge.begin(), edge.end(), [&](Vertex v) { return u.contains(v); }))
            for (Vertex v : edge) flat.push_back(to_child[v]);
    }
    std::vector<Label> labels;
    if (h.has_labels()) {
        labels.reserve(out.to_parent.size());
        for (Vertex p : out.to_parent) labels.push_back(h.label(p));
    }
    out.graph = UniformHypergraph(k, out.to_parent.size(), std::move(flat), std::move(labels));
    return out;
}

std::size_t deg_i_count(const UniformHypergraph& h, Vertex v, const VertexSubset& u, unsigned i) {
    check_universe(h, u, "vertex subset");
    if (v >= h.vertex_count()) throw InputError("vertex " + std::to_string(v) + " out of range");
    if (i < 1 || i >= h.uniformity())
        throw InputError("deg_i requires 1 <= i <= k-1, got i=" + std::to_string(i));
    std::size_t count = 0;
    for (std::uint32_t e : h.incident_edges(v)) {
        unsigned inside = 0;
        for (Vertex w : h.edge(e))
            if (w != v && u.contains(w)) ++inside;
        if (inside >= i) ++count;
    }
    return count;
}

std::size_t count_E_U_i(const UniformHypergraph& h, const VertexSubset& u, const VertexSubset& w,
                        unsigned i) {
    check_universe(h, u, "U");
    check_universe(h, w, "W");
    if (i > h.uniformity()) throw InputError("i must lie in [0, k]");
    if (!w.is_subset_of(u)) throw InputError("W is not a subset of U");
    std::size_t count = 0;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        unsigned in_w = 0;
        bool in_u = true;
        for (Vertex x : h.edge(e)) {
            if (!u.contains(x)) {
                in_u = false;
                break;
            }
            if (w.contains(x)) ++in_w;
        }
        if (in_u && in_w >= i) ++count;
    }
    return count;
}

std::size_t count_induced_edges(const UniformHypergraph& h, const VertexSubset& u) {
    check_universe(h, u, "vertex subset");
    std::size_t count = 0;
    for (Vertex v : u.indices()) {
        for (std::uint32_t e : h.incident_edges(v)) {
            const auto edge = h.edge(e);
            if (edge.front() != v) continue;  // count each edge at its smallest vertex
            if (std::all_of(edge.begin() + 1, edge.end(), [&](Vertex x) { return u.contains(x); }))
                ++count;
        }
    }
    return count;
}

bool is_edge_free(const UniformHypergraph& h, const VertexSubset& s) {
    return count_induced_edges(h, s) == 0;
}

// ------------------------------------------------------------------------ I/O

void write_hypergraph(std::ostream& out, const UniformHypergraph& h,
                      std::span<const std::string> comments) {
    out << "k " << h.uniformity() << " n " << h.vertex_count() << " m " << h.edge_count() << '\n';
    for (const auto& c : comments) out << "# " << c << '\n';
    if (h.has_labels())
        for (std::size_t v = 0; v < h.vertex_count(); ++v)
            out << "# label " << v << ' ' << format_label(h.label(static_cast<Vertex>(v))) << '\n';
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        const auto edge = h.edge(e);
        for (unsigned j = 0; j < edge.size(); ++j) out << (j == 0 ? "" : " ") << edge[j];
        out << '\n';
    }
}

UniformHypergraph read_hypergraph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("hypergraph file is empty");
    std::istringstream header(line);
    std::string tk, tn, tm;
    long long k = -1, n = -1, m = -1;
    if (!(header >> tk >> k >> tn >> n >> tm >> m) || tk != "k" || tn != "n" || tm != "m" ||
        k < 0 || n < 0 || m < 0)
        throw InputError("bad hypergraph header: '" + line + "'");

    std::vector<Vertex> flat;
    flat.reserve(static_cast<std::size_t>(m * k));
    std::vector<Label> labels;
    std::vector<bool> labelled;
    std::size_t edges_read = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream ls(line.substr(1));
            std::string word, text;
            long long idx = -1;
            if ((ls >> word) && word == "label") {
                if (!(ls >> idx >> text) || idx < 0 || idx >= n)
                    throw InputError("bad label line: '" + line + "'");
                if (labels.empty()) {
                    labels.resize(static_cast<std::size_t>(n));
                    labelled.assign(static_cast<std::size_t>(n), false);
                }
                labels[static_cast<std::size_t>(idx)] = parse_label(text);
                labelled[static_cast<std::size_t>(idx)] = true;
            }
            continue;
        }
        std::istringstream es(line);
        long long x = 0;
        std::size_t count = 0;
        while (es >> x) {
            if (x < 0 || x >= n) throw InputError("edge vertex out of range: '" + line + "'");
            flat.push_back(static_cast<Vertex>(x));
            ++count;
        }
        if (!es.eof() || count != static_cast<std::size_t>(k))
            throw InputError("bad edge line: '" + line + "'");
        ++edges_read;
    }
    if (edges_read != static_cast<std::size_t>(m))
        throw InputError("header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(edges_read));
    if (!labels.empty() && std::find(labelled.begin(), labelled.end(), false) != labelled.end())
        throw InputError("labels present for only some vertices");
    UniformHypergraph h(static_cast<unsigned>(k), static_cast<std::size_t>(n), std::move(flat),
                        std::move(labels));
    if (h.edge_count() != static_cast<std::size_t>(m))
        throw InputError("hypergraph file contains duplicate edges");
    return h;
}

UniformHypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open hypergraph file '" + path + "'");
    return read_hypergraph(in);
}

VertexSubset read_subset(std::istream& in, std::size_t universe) {
    VertexSubset s(universe);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '#') continue;
        std::istringstream ls(line);
        long long x = 0;
        while (ls >> x) {
            if (x < 0 || static_cast<std::size_t>(x) >= universe)
                throw InputError("subset index " + std::to_string(x) + " out of range");
            s.insert(static_cast<Vertex>(x));
        }
        if (!ls.eof()) throw InputError("bad subset line: '" + line + "'");
    }
    return s;
}

}  // namespace tlab
