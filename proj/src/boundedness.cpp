#include <tlab/boundedness.hpp>

#include <tlab/matrix_lab.hpp>
#include <tlab/parallel.hpp>
#include <tlab/random.hpp>
#include <tlab/sampling.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace tlab {

namespace {

void check_probability(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("probability q must lie in [0, 1]");
}

// log C(m, s) by a running sum; exact enough for the small m used here and
// free of the shared state some lgamma implementations carry.
double log_choose(unsigned m, unsigned s) {
    s = std::min(s, m - s);
    double out = 0;
    for (unsigned r = 1; r <= s; ++r) out += std::log(static_cast<double>(m - s + r) / r);
    return out;
}

double binomial_pmf(unsigned m, unsigned s, double q) {
    if (q == 0.0) return s == 0 ? 1.0 : 0.0;
    if (q == 1.0) return s == m ? 1.0 : 0.0;
    return std::exp(log_choose(m, s) + s * std::log(q) + (m - s) * std::log1p(-q));
}

void check_i(unsigned i, unsigned k) {
    if (i < 1 || i + 1 > k) throw InputError("i must lie in [1, k-1] (k = " + std::to_string(k) + ")");
}

}  // namespace

double binomial_tail(unsigned m, int j, double q) {
    check_probability(q);
    if (j <= 0) return 1.0;
    const auto ju = static_cast<unsigned>(j);
    if (ju > m) return 0.0;
    if (q == 0.0) return 0.0;
    if (q == 1.0) return 1.0;
    // Sum whichever side of the mean holds fewer significant terms.
    if (ju > m * q) {
        double upper = 0;
        for (unsigned s = m + 1; s-- > ju;) upper += binomial_pmf(m, s, q);
        return std::min(upper, 1.0);
    }
    double lower = 0;
    for (unsigned s = 0; s < ju; ++s) lower += binomial_pmf(m, s, q);
    return std::clamp(1.0 - lower, 0.0, 1.0);
}

double joint_tail_prob(unsigned a, unsigned b, unsigned t, int i, double q) {
    check_probability(q);
    double total = 0;
    for (unsigned s = 0; s <= t; ++s) {
        const double shared = binomial_pmf(t, s, q);
        if (shared == 0.0) continue;
        const int rest = i - static_cast<int>(s);
        total += shared * binomial_tail(a, rest, q) * binomial_tail(b, rest, q);
    }
    return std::min(total, 1.0);
}

std::uint64_t OverlapProfile::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

OverlapProfile overlap_profile(const UniformHypergraph& h) {
    const unsigned k = h.uniformity();
    // Binomial moments S_j = sum_v sum_{|T| = j} c(v, T)^2, where c(v, T) counts
    // edges containing {v} and T, equal sum over pairs of C(t, j). N[t] follows
    // by binomial inversion.
    std::vector<__int128> moments(k, 0);
    std::vector<Vertex> keys;
    std::vector<std::size_t> order;
    std::vector<Vertex> others(k - 1);
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
        const auto inc = h.incident_edges(v);
        const auto deg = static_cast<__int128>(inc.size());
        moments[0] += deg * deg;
        for (unsigned j = 1; j < k; ++j) {
            keys.clear();
            for (auto e : inc) {
                std::size_t w = 0;
                for (Vertex u : h.edge(e))
                    if (u != v) others[w++] = u;
                // All j-subsets of the other k-1 vertices, as sorted tuples.
                std::vector<bool> pick(k - 1, false);
                std::fill(pick.begin(), pick.begin() + j, true);
                do {
                    for (unsigned p = 0; p + 1 < k; ++p)
                        if (pick[p]) keys.push_back(others[p]);
                } while (std::prev_permutation(pick.begin(), pick.end()));
            }
            const std::size_t items = keys.size() / j;
            order.resize(items);
            std::iota(order.begin(), order.end(), std::size_t{0});
            auto tuple_less = [&](std::size_t x, std::size_t y) {
                return std::lexicographical_compare(keys.begin() + x * j, keys.begin() + (x + 1) * j,
                                                    keys.begin() + y * j, keys.begin() + (y + 1) * j);
            };
            std::sort(order.begin(), order.end(), tuple_less);
            for (std::size_t x = 0; x < items;) {
                std::size_t y = x + 1;
                while (y < items && !tuple_less(order[x], order[y])) ++y;
                const auto run = static_cast<__int128>(y - x);
                moments[j] += run * run;
                x = y;
            }
        }
    }
    OverlapProfile profile;
    profile.k = k;
    profile.counts.assign(k, 0);
    for (unsigned t = 0; t < k; ++t) {
        __int128 value = 0;
        for (unsigned j = t; j < k; ++j) {
            const auto c = static_cast<__int128>(binomial(j, t));
            value += ((j - t) % 2 == 0 ? 1 : -1) * c * moments[j];
        }
        if (value < 0) throw ContractViolation("negative overlap count");
        profile.counts[t] = static_cast<std::uint64_t>(value);
    }
    return profile;
}

double mu_from_profile(const OverlapProfile& profile, unsigned i, double q) {
    check_i(i, profile.k);
    check_probability(q);
    double mu = 0;
    for (unsigned t = 0; t < profile.k; ++t) {
        if (profile.counts[t] == 0) continue;
        const unsigned exclusive = profile.k - 1 - t;
        mu += static_cast<double>(profile.counts[t]) *
              joint_tail_prob(exclusive, exclusive, t, static_cast<int>(i), q);
    }
    return mu;
}

double mu_exact(const UniformHypergraph& h, unsigned i, double q) {
    check_i(i, h.uniformity());
    check_probability(q);
    return mu_from_profile(overlap_profile(h), i, q);
}

std::uint64_t degree_square_sum(const UniformHypergraph& h, const VertexSubset& u, unsigned i) {
    check_i(i, h.uniformity());
    if (u.universe() != h.vertex_count()) throw InputError("subset universe does not match the hypergraph");
    std::vector<std::uint64_t> deg(h.vertex_count(), 0);
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        const auto edge = h.edge(e);
        unsigned inside = 0;
        for (Vertex v : edge) inside += u.contains(v) ? 1 : 0;
        if (inside < i) continue;
        for (Vertex v : edge)
            if (inside - (u.contains(v) ? 1 : 0) >= i) ++deg[v];
    }
    std::uint64_t sum = 0;
    for (auto d : deg) sum += d * d;
    return sum;
}

MonteCarloEstimate mu_montecarlo(const UniformHypergraph& h, unsigned i, double q, std::size_t trials,
                                 std::uint64_t seed, unsigned jobs) {
    check_i(i, h.uniformity());
    check_probability(q);
    if (trials == 0) throw InputError("trials must be at least 1");
    std::vector<double> values(trials);
    parallel_for(trials, jobs, [&](std::size_t t) {
        const auto sample = sample_subset(h.vertex_count(), q, derive_seed(seed, 0, t));
        values[t] = static_cast<double>(degree_square_sum(h, sample, i));
    });
    MonteCarloEstimate out;
    out.trials = trials;
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(trials);
    if (trials > 1) {
        double ss = 0;
        for (double x : values) ss += (x - out.mean) * (x - out.mean);
        out.std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
    }
    return out;
}

std::vector<double> make_q_grid(const QGridSpec& spec, double p_n) {
    // Slack for grid points that were computed from p_n in floating point.
    const double floor_q = p_n * (1.0 - 1e-12);
    if (!spec.explicit_q.empty()) {
        for (double q : spec.explicit_q) {
            if (!(q > 0.0 && q <= 1.0)) throw InputError("grid values must lie in (0, 1]");
            if (q < floor_q)
                throw InputError("grid value " + format_real(q) + " lies below p_n = " + format_real(p_n));
        }
        return spec.explicit_q;
    }
    if (spec.points == 0) throw InputError("q grid needs at least one point");
    if (!(spec.q_max > 0.0 && spec.q_max <= 1.0)) throw InputError("q_max must lie in (0, 1]");
    if (spec.q_max < floor_q) throw InputError("q_max lies below p_n = " + format_real(p_n));
    if (spec.points == 1) return {p_n};
    std::vector<double> grid(spec.points);
    const double ratio = std::log(spec.q_max / p_n);
    for (std::size_t j = 0; j < spec.points; ++j)
        grid[j] = p_n * std::exp(ratio * static_cast<double>(j) / static_cast<double>(spec.points - 1));
    grid.front() = p_n;
    grid.back() = spec.q_max;
    return grid;
}

BoundednessReport certify_boundedness(const ConfigSpec& family, const std::vector<std::size_t>& n_list,
                                      const std::vector<unsigned>& i_list, const QGridSpec& grid) {
    if (n_list.empty() || i_list.empty()) throw InputError("need at least one n and one i");
    BoundednessReport report;
    report.family = family.family_name();
    for (std::size_t n : n_list) {
        ConfigSpec spec = family;
        spec.n = n;
        validate(spec);
        report.theta = threshold_exponent(spec);
        const auto h = generate(spec);
        if (h.edge_count() == 0) throw InputError("empty configuration family");
        for (unsigned i : i_list) check_i(i, h.uniformity());
        const double p_n = std::pow(static_cast<double>(n), -to_double(report.theta));
        const auto qs = make_q_grid(grid, p_n);
        const auto profile = overlap_profile(h);
        const double v = static_cast<double>(h.vertex_count());
        const double e = static_cast<double>(h.edge_count());
        for (unsigned i : i_list) {
            KMin best{n, i, 0.0, 0.0};
            for (double q : qs) {
                BoundednessRow row{n, i, q, mu_from_profile(profile, i, q), 0.0};
                row.bound_ratio = row.mu * v / (std::pow(q, 2.0 * i) * e * e);
                if (row.bound_ratio > best.value) {
                    best.value = row.bound_ratio;
                    best.at_q = q;
                }
                report.rows.push_back(row);
            }
            report.k_min.push_back(best);
            report.overall_k_min = std::max(report.overall_k_min, best.value);
        }
    }
    return report;
}

nlohmann::json to_json(const BoundednessReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"n", r.n}, {"i", r.i}, {"q", r.q}, {"mu", r.mu}, {"bound_ratio", r.bound_ratio}});
    nlohmann::json kmin = nlohmann::json::array();
    for (const auto& k : report.k_min)
        kmin.push_back({{"n", k.n}, {"i", k.i}, {"k_min", k.value}, {"at_q", k.at_q}});
    return {{"family", report.family},
            {"theta", to_string(report.theta)},
            {"rows", rows},
            {"k_min", kmin},
            {"overall_k_min", report.overall_k_min}};
}

void write_csv(std::ostream& out, const BoundednessReport& report) {
    out << "n,i,q,mu,bound_ratio\n";
    for (const auto& r : report.rows)
        out << r.n << ',' << r.i << ',' << format_real(r.q) << ',' << format_real(r.mu) << ','
            << format_real(r.bound_ratio) << '\n';
}

PruneResult prune_check(const UniformHypergraph& h, double q, unsigned i, double eta, double k_const,
                        std::uint64_t seed) {
    check_probability(q);
    check_i(i, h.uniformity());
    if (!(eta > 0.0)) throw InputError("eta must be positive");
    const unsigned k = h.uniformity();
    const std::size_t n = h.vertex_count();

    PruneResult result;
    result.sample = sample_subset(n, q, seed);
    result.deleted = VertexSubset(n);
    if (n > 0) {
        const double e = static_cast<double>(h.edge_count());
        result.bound = std::pow(4.0, k) * k * k * k_const * std::pow(q, 2.0 * i) * e * e / static_cast<double>(n);
    }
    result.budget = std::min(static_cast<std::size_t>(std::floor(eta * q * static_cast<double>(n))),
                             result.sample.size());

    VertexSubset u = result.sample;
    std::vector<std::uint32_t> inside(h.edge_count(), 0);
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        for (Vertex v : h.edge(e)) inside[e] += u.contains(v) ? 1 : 0;
    std::vector<std::uint64_t> deg(n, 0);
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        for (Vertex v : h.edge(e))
            if (inside[e] - (u.contains(v) ? 1 : 0) >= i) ++deg[v];
    std::uint64_t sum = 0;
    for (auto d : deg) sum += d * d;
    result.initial_sum = static_cast<double>(sum);

    // Removing x only affects v != x on an edge where v sees exactly i others.
    // `support` counts the (edge, v) pairs that currently rely on x at all; it
    // breaks ties when no single deletion lowers the sum yet.
    std::vector<std::uint64_t> drop(n, 0);
    std::vector<Vertex> touched;
    std::uint64_t support = 0;
    auto collect = [&](Vertex x) {
        touched.clear();
        support = 0;
        for (auto e : h.incident_edges(x)) {
            for (Vertex v : h.edge(e)) {
                if (v == x) continue;
                const unsigned seen = inside[e] - (u.contains(v) ? 1 : 0);
                if (seen >= i) ++support;
                if (seen != i) continue;
                if (drop[v]++ == 0) touched.push_back(v);
            }
        }
    };

    for (std::size_t step = 0; step < result.budget && sum > 0; ++step) {
        std::uint64_t best_gain = 0;
        std::uint64_t best_support = 0;
        std::optional<Vertex> best;
        for (Vertex x : u.indices()) {
            collect(x);
            std::uint64_t gain = 0;
            for (Vertex v : touched) {
                gain += deg[v] * deg[v] - (deg[v] - drop[v]) * (deg[v] - drop[v]);
                drop[v] = 0;
            }
            if (!best || gain > best_gain || (gain == best_gain && support > best_support)) {
                best_gain = gain;
                best_support = support;
                best = x;
            }
        }
        if (!best || (best_gain == 0 && best_support == 0)) break;
        collect(*best);
        for (Vertex v : touched) {
            deg[v] -= drop[v];
            drop[v] = 0;
        }
        for (auto e : h.incident_edges(*best)) --inside[e];
        u.erase(*best);
        result.deleted.insert(*best);
        sum -= best_gain;
    }
    result.achieved_sum = static_cast<double>(sum);
    result.ok = result.achieved_sum <= result.bound;
    return result;
}

}  // namespace tlab
