#ifndef TLAB_HARNESS_HPP
#define TLAB_HARNESS_HPP

#include <tlab/generators.hpp>
#include <tlab/sampling.hpp>
#include <tlab/solver.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tlab {

inline constexpr std::uint64_t kDefaultSeed = 20100101;
inline constexpr const char* kManifestSchema = "transference-lab/manifest/1";
inline constexpr const char* kCurveSchema = "transference-lab/curve/1";

/// Everything that determines a sweep's output. Worker count is deliberately
/// absent: it never changes results.
struct ExperimentManifest {
    ConfigSpec config;
    /// Arrow families: the fraction in X ->_eps. F-copies: slack over pi(F).
    Rational epsilon{1, 2};
    /// Exactly one of these is non-empty; c values scale q = c * n^-theta.
    std::vector<double> q_values;
    std::vector<double> c_grid;
    std::size_t trials = 100;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t budget = kDefaultNodeBudget;
    std::string curve_output;  ///< optional CSV path
    std::optional<Rational> turan_alpha;  ///< pi(F) override for F-copies

    /// The q schedule in order; throws unless every q lies in (0, 1].
    std::vector<double> schedule() const;
};

nlohmann::json manifest_to_json(const ExperimentManifest& m);
ExperimentManifest manifest_from_json(const nlohmann::json& j);
ExperimentManifest read_manifest_file(const std::string& path);

/// Throws InputError for an inconsistent manifest.
void validate(const ExperimentManifest& m);

struct CurveRow {
    double q = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::size_t failures = 0;
    std::size_t undecided = 0;
    std::size_t vacuous = 0;  ///< successes with an empty quantifier range
    double estimate = 0;  ///< successes / decided trials
    double ci_lo = 0;
    double ci_hi = 1;
    bool unreliable = false;  ///< more than 10% undecided
};

struct Crossing {
    std::optional<double> q_star;
    std::string method;
    std::string note;
};

struct ThresholdCurve {
    std::vector<CurveRow> rows;
    Crossing crossing;
};

/// 95% Wilson score interval for s successes out of n (z = 1.96).
std::pair<double, double> wilson_interval(std::size_t s, std::size_t n);

/// Decision problem behind one trial, resolved once per sweep.
class TrialDecider {
public:
    explicit TrialDecider(const ExperimentManifest& m);

    const UniformHypergraph& hypergraph() const { return h_; }
    bool turan() const { return turan_; }
    /// pi(F) used by the Turan variant.
    const Rational& pi() const { return pi_; }

    struct Outcome {
        Decision decision = Decision::Undecided;
        bool vacuous = false;
        std::size_t sample_size = 0;
        std::uint64_t nodes = 0;
    };

    /// Property check for the sample X: arrow families succeed iff
    /// alpha(H[X]) < eps|X|; F-copies succeed iff ex(G[X], F) <= (pi + eps)|X|.
    Outcome decide(const VertexSubset& x) const;

private:
    UniformHypergraph h_;
    Rational epsilon_;
    Rational pi_{0};
    bool turan_ = false;
    SolveOptions options_;
};

/// T seeded trials at q; trial t of schedule slot q_index samples with
/// derive_seed(seed, q_index, t).
CurveRow run_trials(const TrialDecider& decider, const ExperimentManifest& m, double q, std::size_t q_index,
                    unsigned jobs = 1);
CurveRow run_trials(const ExperimentManifest& m, double q, std::size_t q_index = 0, unsigned jobs = 1);

/// Runs every q of the schedule in order. on_row fires as each row completes.
ThresholdCurve sweep(const ExperimentManifest& m, unsigned jobs = 1,
                     const std::function<void(const CurveRow&)>& on_row = {});

/// Logistic fit of the success rate against log q (ridge on the slope keeps
/// separated data finite); q* is the fitted midpoint. "none" when every
/// estimate is below 0.25, every estimate above 0.75, or the fit degenerates.
Crossing estimate_crossing(const std::vector<CurveRow>& rows);

/// (q |V|, q^k |E|).
std::pair<double, double> expected_counts(const UniformHypergraph& h, double q);

struct FirstMoment {
    double expected_vertices = 0;
    double expected_edges = 0;
    double mean_vertices = 0;
    double mean_edges = 0;
    double se_vertices = 0;  ///< standard error of the mean
    double se_edges = 0;
    std::size_t trials = 0;
};

/// Empirical sampled-vertex and surviving-edge counts of V_q over seeded trials.
FirstMoment first_moment(const UniformHypergraph& h, double q, std::size_t trials, std::uint64_t seed,
                         unsigned jobs = 1);

// Curve CSV: '#' provenance lines, then q,trials,successes,undecided,estimate,ci_lo,ci_hi.
void write_curve_header(std::ostream& out, const ExperimentManifest& m);
void write_curve_row(std::ostream& out, const CurveRow& row);
void write_curve_footer(std::ostream& out, const ThresholdCurve& curve);
/// Reads the rows back (comment lines skipped); failures = trials - successes - undecided.
std::vector<CurveRow> read_curve_csv(std::istream& in);

nlohmann::json to_json(const Crossing& c);

}  // namespace tlab

#endif  // TLAB_HARNESS_HPP
