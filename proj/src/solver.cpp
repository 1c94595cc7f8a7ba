#include <tlab/solver.hpp>

#include <tlab/generators.hpp>

#include <algorithm>
#include <bit>
#include <numeric>

namespace tlab {

namespace {

enum : std::uint8_t { kUndecided = 0, kIn = 1, kOut = 2 };

struct SearchAborted {};

constexpr std::size_t kUnknown = ~std::size_t{0};
constexpr std::uint32_t kNone = ~std::uint32_t{0};

// Greedy edge-free set, lowest degree first; sorted.
std::vector<Vertex> greedy_independent(const UniformHypergraph& h) {
    const std::size_t n = h.vertex_count();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return h.degree(a) < h.degree(b); });
    std::vector<std::uint32_t> count(h.edge_count(), 0);
    std::vector<Vertex> chosen;
    for (Vertex v : order) {
        const auto inc = h.incident_edges(v);
        const bool closes =
            std::any_of(inc.begin(), inc.end(), [&](std::uint32_t e) { return count[e] + 1 == h.uniformity(); });
        if (closes) continue;
        for (auto e : inc) ++count[e];
        chosen.push_back(v);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// Partial assignment shared by both searches. Every live edge (no excluded
// vertex) must still lose one of its undecided vertices.
class SearchState {
protected:
    SearchState(const UniformHypergraph& h, std::uint64_t budget, std::uint64_t& nodes)
        : h_(h),
          n_(h.vertex_count()),
          k_(h.uniformity()),
          m_(h.edge_count()),
          budget_(budget),
          nodes_(nodes),
          status_(n_, kUndecided),
          edge_in_(m_, 0),
          edge_out_(m_, 0),
          stamp_(n_, 0),
          undecided_(n_) {}

    void tick() {
        if (++nodes_ > budget_) throw SearchAborted{};
    }

    void include(Vertex v) {
        status_[v] = kIn;
        ++in_count_;
        --undecided_;
        trail_.push_back(v);
        for (std::uint32_t e : h_.incident_edges(v)) {
            if (++edge_in_[e] == k_ - 1 && edge_out_[e] == 0) forced_.push_back(e);
        }
    }

    void exclude(Vertex v) {
        status_[v] = kOut;
        --undecided_;
        trail_.push_back(v);
        for (std::uint32_t e : h_.incident_edges(v)) ++edge_out_[e];
    }

    // Excludes the last undecided vertex of every edge with k-1 included vertices.
    // Returns false on an edge that became fully included.
    bool propagate() {
        while (!forced_.empty()) {
            const std::uint32_t e = forced_.back();
            forced_.pop_back();
            if (edge_out_[e] != 0) continue;
            Vertex last = 0;
            bool found = false;
            for (Vertex u : h_.edge(e)) {
                if (status_[u] == kUndecided) {
                    last = u;
                    found = true;
                }
            }
            if (!found) {
                forced_.clear();
                return false;
            }
            exclude(last);
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        forced_.clear();
        while (trail_.size() > mark) {
            const Vertex v = trail_.back();
            trail_.pop_back();
            if (status_[v] == kIn) {
                for (std::uint32_t e : h_.incident_edges(v)) --edge_in_[e];
                --in_count_;
            } else {
                for (std::uint32_t e : h_.incident_edges(v)) --edge_out_[e];
            }
            status_[v] = kUndecided;
            ++undecided_;
        }
    }

    // Marks the undecided vertices of e for the current packing; false if one is taken.
    bool pack(std::uint32_t e) {
        const auto edge = h_.edge(e);
        const bool free = std::none_of(edge.begin(), edge.end(), [&](Vertex u) {
            return status_[u] == kUndecided && stamp_[u] == current_stamp_;
        });
        if (!free) return false;
        for (Vertex u : edge)
            if (status_[u] == kUndecided) stamp_[u] = current_stamp_;
        return true;
    }

    // Undecided vertices of the branching edge, highest weight first.
    template <class Weight>
    std::vector<Vertex> branch_vertices(Weight weight) const {
        std::vector<Vertex> branch;
        for (Vertex u : h_.edge(branch_edge_))
            if (status_[u] == kUndecided) branch.push_back(u);
        std::stable_sort(branch.begin(), branch.end(), [&](Vertex a, Vertex b) { return weight(a) > weight(b); });
        return branch;
    }

    // Child j includes branch[0..j-1] and excludes branch[j]; stop() ends the loop.
    template <class Descend, class Stop>
    void expand(const std::vector<Vertex>& branch, Descend descend, Stop stop) {
        const std::size_t mark = trail_.size();
        for (std::size_t j = 0; j < branch.size() && !stop(); ++j) {
            bool feasible = true;
            for (std::size_t t = 0; t < j && feasible; ++t) {
                if (status_[branch[t]] != kUndecided) {
                    feasible = status_[branch[t]] == kIn;
                    continue;
                }
                include(branch[t]);
                feasible = propagate();
            }
            // Propagation may already have excluded branch[j]; the child is the same.
            if (feasible && status_[branch[j]] != kIn) {
                if (status_[branch[j]] == kUndecided) exclude(branch[j]);
                descend();
            }
            undo_to(mark);
        }
    }

    std::vector<Vertex> current_set() const {
        std::vector<Vertex> out;
        for (Vertex u = 0; u < n_; ++u)
            if (status_[u] != kOut) out.push_back(u);
        return out;
    }

    const UniformHypergraph& h_;
    const std::size_t n_;
    const unsigned k_;
    const std::size_t m_;
    const std::uint64_t budget_;
    std::uint64_t& nodes_;

    std::vector<std::uint8_t> status_;
    std::vector<std::uint32_t> edge_in_;
    std::vector<std::uint32_t> edge_out_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t current_stamp_ = 0;
    std::uint32_t branch_edge_ = kNone;

    std::size_t in_count_ = 0;
    std::size_t undecided_;
    std::vector<Vertex> trail_;
    std::vector<std::uint32_t> forced_;
};

// Exact alpha by Russian doll search in vertex-index order. Step j computes
// suffix_[j] = alpha(H[{j, ..., n-1}]) from suffix_[j+1] by asking for an
// edge-free set that contains j and has suffix_[j+1] + 1 vertices. A node with
// undecided set U is bounded by
//   |in| + min over j' of (|U before j'| - packed(j') + suffix_[j']),
// where packed(j') counts a greedy family of live edges that are disjoint on
// U and whose undecided vertices all precede j'.
class DollSearch : SearchState {
public:
    DollSearch(const UniformHypergraph& h, std::uint64_t budget, std::uint64_t& nodes)
        : SearchState(h, budget, nodes), suffix_(n_ + 1, kUnknown), by_last_(n_) {
        suffix_[n_] = 0;
    }

    SolveResult run() {
        best_ = greedy_independent(h_);
        std::size_t upper = bound();
        bool aborted = false;
        try {
            for (std::size_t j = n_; j-- > 0 && upper > best_.size();) {
                solve_step(j);
                if (suffix_[j] > best_.size()) best_ = step_best_;
                upper = bound();
            }
        } catch (const SearchAborted&) {
            aborted = true;
            undo_to(0);
        }
        SolveResult result;
        result.alpha = best_.size();
        result.lower_bound = best_.size();
        result.upper_bound = std::max(best_.size(), upper);
        result.witness = VertexSubset::from_indices(n_, best_);
        result.node_count = nodes_;
        result.budget_exhausted = aborted;
        result.exact = result.upper_bound == result.lower_bound;
        return result;
    }

private:
    void solve_step(std::size_t j) {
        for (Vertex u = 0; u < j; ++u) exclude(u);
        goal_ = suffix_[j + 1] + 1;
        found_ = false;
        include(static_cast<Vertex>(j));
        if (propagate()) descend();
        undo_to(0);
        suffix_[j] = found_ ? goal_ : suffix_[j + 1];
    }

    std::size_t bound() {
        ++current_stamp_;
        branch_edge_ = kNone;
        unsigned smallest = k_ + 1;
        for (auto& bucket : by_last_) bucket.clear();
        for (std::uint32_t e = 0; e < m_; ++e) {
            if (edge_out_[e] != 0) continue;
            const unsigned residual = k_ - edge_in_[e];
            if (residual < smallest) {
                smallest = residual;
                branch_edge_ = e;
            }
            // Edges are sorted, so this is the largest undecided vertex.
            Vertex last = 0;
            for (Vertex u : h_.edge(e))
                if (status_[u] == kUndecided) last = u;
            by_last_[last].push_back(e);
        }
        std::size_t before = 0;
        std::size_t packed = 0;
        std::size_t best = kUnknown;
        for (std::size_t jp = 0; jp <= n_; ++jp) {
            if (suffix_[jp] != kUnknown) best = std::min(best, before - packed + suffix_[jp]);
            if (jp == n_) break;
            for (std::uint32_t e : by_last_[jp])
                if (pack(e)) ++packed;
            if (status_[jp] == kUndecided) ++before;
        }
        return in_count_ + best;
    }

    void descend() {
        tick();
        if (bound() < goal_) return;
        if (branch_edge_ == kNone) {
            step_best_ = current_set();
            found_ = true;
            return;
        }
        expand(branch_vertices([this](Vertex u) { return h_.degree(u); }), [this] { descend(); },
               [this] { return found_; });
    }

    std::vector<std::size_t> suffix_;
    std::vector<std::vector<std::uint32_t>> by_last_;
    std::size_t goal_ = 0;
    bool found_ = false;
    std::vector<Vertex> step_best_;
    std::vector<Vertex> best_;
};

// Decision search for an edge-free set of `target` vertices: depth-first
// branch and bound whose bound is |in| + |undecided| minus a greedy packing of
// live edges disjoint on the undecided vertices (smallest residue first).
class TargetSearch : SearchState {
public:
    TargetSearch(const UniformHypergraph& h, std::size_t target, std::uint64_t budget, std::uint64_t& nodes)
        : SearchState(h, budget, nodes), target_(target), buckets_(k_ + 1), live_degree_(n_, 0) {}

    // Edge-free set of size >= target, or empty once none exists.
    std::vector<Vertex> run() {
        if (target_ == 0) return {};
        descend();
        return found_;
    }

    std::size_t root_bound() { return bound(); }

private:
    std::size_t bound() {
        ++current_stamp_;
        branch_edge_ = kNone;
        unsigned smallest = k_ + 1;
        for (auto& bucket : buckets_) bucket.clear();
        std::fill(live_degree_.begin(), live_degree_.end(), 0);
        for (std::uint32_t e = 0; e < m_; ++e) {
            if (edge_out_[e] != 0) continue;
            const unsigned residual = k_ - edge_in_[e];
            buckets_[residual].push_back(e);
            for (Vertex u : h_.edge(e))
                if (status_[u] == kUndecided) ++live_degree_[u];
            if (residual < smallest) {
                smallest = residual;
                branch_edge_ = e;
            }
        }
        if (branch_edge_ != kNone) {
            std::size_t heaviest = 0;
            for (std::uint32_t e : buckets_[smallest]) {
                std::size_t weight = 0;
                for (Vertex u : h_.edge(e))
                    if (status_[u] == kUndecided) weight += live_degree_[u];
                if (weight > heaviest) {
                    heaviest = weight;
                    branch_edge_ = e;
                }
            }
        }
        std::size_t packed = 0;
        // Within a residue, lightest edges first (counting sort on the weight).
        for (auto& bucket : buckets_) {
            weights_.clear();
            std::uint32_t heaviest = 0;
            for (std::uint32_t e : bucket) {
                std::uint32_t weight = 0;
                for (Vertex u : h_.edge(e))
                    if (status_[u] == kUndecided) weight += live_degree_[u];
                weights_.push_back(weight);
                heaviest = std::max(heaviest, weight);
            }
            offsets_.assign(heaviest + 2, 0);
            for (std::uint32_t w : weights_) ++offsets_[w + 1];
            for (std::size_t w = 1; w < offsets_.size(); ++w) offsets_[w] += offsets_[w - 1];
            order_.resize(bucket.size());
            for (std::size_t i = 0; i < bucket.size(); ++i) order_[offsets_[weights_[i]]++] = bucket[i];
            for (std::uint32_t e : order_)
                if (pack(e)) ++packed;
        }
        return in_count_ + undecided_ - packed;
    }

    void descend() {
        tick();
        if (bound() < target_) return;
        if (branch_edge_ == kNone) {
            found_ = current_set();
            return;
        }
        expand(branch_vertices([this](Vertex u) { return live_degree_[u]; }), [this] { descend(); },
               [this] { return !found_.empty(); });
    }

    const std::size_t target_;
    std::vector<std::vector<std::uint32_t>> buckets_;
    std::vector<std::uint32_t> live_degree_;
    std::vector<std::uint32_t> weights_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> order_;
    std::vector<Vertex> found_;
};

// Below this many vertices a decision goes straight to TargetSearch.
constexpr std::size_t kSplitMinVertices = 48;

enum class Verdict { AtMost, Above };

// Decides alpha(H) <= s. Splits the vertices into two index halves A and B and
// tries alpha(H[A]) <= s_A and alpha(H[B]) <= s_B with s_A + s_B = s, which
// suffices because an edge-free set of H splits into edge-free sets of H[A]
// and H[B]. Falls back to TargetSearch on H. On Above, witness holds an
// edge-free set of more than s vertices.
Verdict decide_at_most(const UniformHypergraph& h, std::size_t s, std::uint64_t budget, std::uint64_t& nodes,
                       std::vector<Vertex>& witness) {
    auto greedy = greedy_independent(h);
    if (greedy.size() > s) {
        witness = std::move(greedy);
        return Verdict::Above;
    }
    const std::size_t n = h.vertex_count();
    if (n >= kSplitMinVertices) {
        VertexSubset a(n);
        VertexSubset b(n);
        for (Vertex v = 0; v < n; ++v) (v < n / 2 ? a : b).insert(v);
        const auto ha = induced_subhypergraph(h, a).graph;
        const auto hb = induced_subhypergraph(h, b).graph;
        const std::size_t ga = greedy_independent(ha).size();
        const std::size_t gb = greedy_independent(hb).size();
        if (ga + gb <= s) {
            const std::size_t sa = ga + (s - ga - gb) / 2;
            std::vector<Vertex> scratch;
            if (decide_at_most(ha, sa, budget, nodes, scratch) == Verdict::AtMost &&
                decide_at_most(hb, s - sa, budget, nodes, scratch) == Verdict::AtMost)
                return Verdict::AtMost;
        }
    }
    auto found = TargetSearch(h, s + 1, budget, nodes).run();
    if (found.empty()) return Verdict::AtMost;
    witness = std::move(found);
    return Verdict::Above;
}

SolveResult decide_target(const UniformHypergraph& h, std::size_t target, std::uint64_t budget) {
    std::uint64_t nodes = 0;
    SolveResult result;
    std::vector<Vertex> best = greedy_independent(h);
    std::size_t upper = h.vertex_count();
    if (target == 0 || best.size() >= target) {
        upper = std::max(best.size(), std::min(upper, TargetSearch(h, 0, budget, nodes).root_bound()));
    } else {
        try {
            std::vector<Vertex> witness;
            if (decide_at_most(h, target - 1, budget, nodes, witness) == Verdict::AtMost) {
                upper = target - 1;
            } else {
                best = std::move(witness);
                upper = std::max(best.size(), TargetSearch(h, 0, budget, nodes).root_bound());
            }
        } catch (const SearchAborted&) {
            result.budget_exhausted = true;
            std::uint64_t spare = 0;
            upper = TargetSearch(h, 0, ~std::uint64_t{0}, spare).root_bound();
        }
    }
    result.alpha = best.size();
    result.lower_bound = best.size();
    result.upper_bound = std::max(best.size(), upper);
    result.witness = VertexSubset::from_indices(h.vertex_count(), best);
    result.node_count = nodes;
    result.exact = result.upper_bound == result.lower_bound;
    return result;
}

}  // namespace

SolveResult alpha_exact(const UniformHypergraph& h, const SolveOptions& options) {
    if (options.target) return decide_target(h, *options.target, options.node_budget);
    std::uint64_t nodes = 0;
    return DollSearch(h, options.node_budget, nodes).run();
}

SolveResult alpha_on_subset(const UniformHypergraph& h, const VertexSubset& x, const SolveOptions& options) {
    const auto sub = induced_subhypergraph(h, x);
    SolveResult local = alpha_exact(sub.graph, options);
    std::vector<Vertex> parent;
    for (Vertex v : local.witness.indices()) parent.push_back(sub.to_parent[v]);
    local.witness = VertexSubset::from_indices(h.vertex_count(), parent);
    return local;
}

std::size_t alpha_bruteforce(const UniformHypergraph& h) {
    const std::size_t n = h.vertex_count();
    if (n > kBruteForceLimit)
        throw InputError("brute force limited to " + std::to_string(kBruteForceLimit) + " vertices");
    std::vector<std::uint32_t> masks;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        std::uint32_t m = 0;
        for (Vertex v : h.edge(e)) m |= std::uint32_t{1} << v;
        masks.push_back(m);
    }
    std::size_t best = 0;
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
        const auto size = static_cast<std::size_t>(std::popcount(s));
        if (size <= best) continue;
        if (std::none_of(masks.begin(), masks.end(), [&](std::uint32_t m) { return (m & ~s) == 0; })) best = size;
    }
    return best;
}

SolveResult turan_ex(std::size_t n, unsigned l, const UniformHypergraph& f, const VertexSubset& host,
                     const SolveOptions& options) {
    const auto copies = gen_fcopies(n, l, f);
    if (host.universe() != copies.vertex_count())
        throw InputError("host must be a subset of the " + std::to_string(copies.vertex_count()) + " l-subsets of [n]");
    return alpha_on_subset(copies, host, options);
}

std::string to_string(Decision d) {
    switch (d) {
        case Decision::True: return "true";
        case Decision::False: return "false";
        default: return "undecided";
    }
}

ArrowOutcome decide_alpha_at_most(const UniformHypergraph& h, const VertexSubset& x, std::size_t bound,
                                  const SolveOptions& options) {
    SolveOptions opts = options;
    opts.target = bound + 1;
    ArrowOutcome out;
    out.threshold = bound + 1;
    out.solve = alpha_on_subset(h, x, opts);
    if (out.solve.lower_bound > bound)
        out.decision = Decision::False;
    else if (out.solve.upper_bound <= bound)
        out.decision = Decision::True;
    else
        out.decision = Decision::Undecided;
    return out;
}

ArrowOutcome arrow_decide(const UniformHypergraph& h, const VertexSubset& x, const Rational& eps,
                          const SolveOptions& options) {
    if (eps <= 0 || eps > 1) throw InputError("epsilon must lie in (0, 1]");
    // Smallest integer t with t >= eps*|X|; the property fails iff alpha >= t.
    const auto size = static_cast<std::int64_t>(x.size());
    const std::int64_t num = eps.numerator() * size;
    const std::int64_t den = eps.denominator();
    const auto threshold = static_cast<std::size_t>((num + den - 1) / den);
    if (threshold == 0) {
        // Only the empty Y qualifies and it contains no edge.
        ArrowOutcome out;
        out.decision = Decision::False;
        out.threshold = 0;
        out.solve.exact = true;
        out.solve.witness = VertexSubset(h.vertex_count());
        return out;
    }
    ArrowOutcome out = decide_alpha_at_most(h, x, threshold - 1, options);
    out.threshold = threshold;
    return out;
}

}  // namespace tlab
