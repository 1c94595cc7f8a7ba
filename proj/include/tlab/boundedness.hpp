#ifndef TLAB_BOUNDEDNESS_HPP
#define TLAB_BOUNDEDNESS_HPP

#include <tlab/generators.hpp>
#include <tlab/hypergraph.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace tlab {

/// P[Bin(m, q) >= j]; 1 for j <= 0.
double binomial_tail(unsigned m, int j, double q);

/// P[|A cap S| >= i and |B cap S| >= i] where |A \ B| = a, |B \ A| = b,
/// |A cap B| = t and S keeps each element independently with probability q.
double joint_tail_prob(unsigned a, unsigned b, unsigned t, int i, double q);

/// counts[t] = #{(v, e, e') : v in both edges, |(e cap e') \ {v}| = t} over
/// ordered edge pairs, t = 0..k-1.
struct OverlapProfile {
    unsigned k = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const;
};

OverlapProfile overlap_profile(const UniformHypergraph& h);

/// mu_i(H, q) = E[sum_v deg_i(v, V_q)^2], exactly from the overlap profile.
double mu_exact(const UniformHypergraph& h, unsigned i, double q);
double mu_from_profile(const OverlapProfile& profile, unsigned i, double q);

/// sum_v deg_i(v, U)^2 for one concrete U.
std::uint64_t degree_square_sum(const UniformHypergraph& h, const VertexSubset& u, unsigned i);

struct MonteCarloEstimate {
    double mean = 0;
    double std_error = 0;
    std::size_t trials = 0;
};

/// Sample mean of degree_square_sum over `trials` independent V_q; trial t
/// uses derive_seed(seed, 0, t), so the result does not depend on `jobs`.
MonteCarloEstimate mu_montecarlo(const UniformHypergraph& h, unsigned i, double q, std::size_t trials,
                                 std::uint64_t seed, unsigned jobs = 1);

/// q values for the boundedness grid: either explicit, or `points`
/// geometrically spaced values from p_n = n^-theta up to q_max.
struct QGridSpec {
    std::size_t points = 20;
    double q_max = 1.0;
    std::vector<double> explicit_q;
};

std::vector<double> make_q_grid(const QGridSpec& spec, double p_n);

struct BoundednessRow {
    std::size_t n = 0;
    unsigned i = 0;
    double q = 0;
    double mu = 0;
    double bound_ratio = 0;  ///< mu * |V| / (q^{2i} |E|^2)
};

struct KMin {
    std::size_t n = 0;
    unsigned i = 0;
    double value = 0;
    double at_q = 0;
};

struct BoundednessReport {
    std::string family;
    Rational theta;
    std::vector<BoundednessRow> rows;
    std::vector<KMin> k_min;  ///< one entry per (n, i), in input order
    double overall_k_min = 0;
};

/// Evaluates mu_exact over the grid q >= n^-theta for every n and i. The n
/// stored in `family` is ignored. Throws on an empty family or a grid point below p_n.
BoundednessReport certify_boundedness(const ConfigSpec& family, const std::vector<std::size_t>& n_list,
                                      const std::vector<unsigned>& i_list, const QGridSpec& grid);

nlohmann::json to_json(const BoundednessReport& report);
/// Columns n,i,q,mu,bound_ratio.
void write_csv(std::ostream& out, const BoundednessReport& report);

struct PruneResult {
    bool ok = false;
    VertexSubset sample;
    VertexSubset deleted;
    double initial_sum = 0;
    double achieved_sum = 0;
    double bound = 0;  ///< 4^k k^2 K q^{2i} |E|^2 / |V|
    std::size_t budget = 0;  ///< floor(eta q |V|)
};

/// Samples V_q from `seed` and greedily deletes up to floor(eta q |V|) sampled
/// vertices, each time the one whose removal lowers sum_v deg_i(v, V_q \ X)^2
/// the most. Ties go to the vertex supporting the most qualifying (edge, v)
/// incidences, then to the smallest index. Stops when the budget is spent or
/// the sum reaches 0. ok iff the remaining sum is at most the bound; false
/// means "not certified", not a refutation.
PruneResult prune_check(const UniformHypergraph& h, double q, unsigned i, double eta, double k_const,
                        std::uint64_t seed);

}  // namespace tlab

#endif  // TLAB_BOUNDEDNESS_HPP
