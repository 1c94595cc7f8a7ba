#include <tlab/harness.hpp>

#include <tlab/density.hpp>
#include <tlab/matrix_lab.hpp>
#include <tlab/parallel.hpp>
#include <tlab/random.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace tlab {

// ------------------------------------------------------------------ manifest

std::vector<double> ExperimentManifest::schedule() const {
    std::vector<double> qs = q_values;
    if (qs.empty()) {
        const double theta = to_double(threshold_exponent(config));
        const double p_n = std::pow(static_cast<double>(config.n), -theta);
        for (double c : c_grid) qs.push_back(c * p_n);
    }
    if (qs.empty()) throw InputError("empty q schedule");
    for (double q : qs)
        if (!(q > 0.0 && q <= 1.0)) throw InputError("scheduled q = " + format_real(q) + " lies outside (0, 1]");
    return qs;
}

void validate(const ExperimentManifest& m) {
    validate(m.config);
    if (!m.q_values.empty() && !m.c_grid.empty()) throw InputError("give either explicit q values or a c grid, not both");
    if (m.q_values.empty() && m.c_grid.empty()) throw InputError("empty q schedule");
    if (m.trials == 0) throw InputError("trials must be at least 1");
    if (m.budget == 0) throw InputError("solver budget must be positive");
    if (m.epsilon <= 0) throw InputError("epsilon must be positive");
    if (!m.config.is_turan() && m.epsilon > 1) throw InputError("epsilon must lie in (0, 1]");
    if (m.turan_alpha && !m.config.is_turan()) throw InputError("turan_alpha only applies to the fcopies family");
    (void)m.schedule();
}

nlohmann::json manifest_to_json(const ExperimentManifest& m) {
    nlohmann::json j;
    j["schema"] = kManifestSchema;
    j["config"] = config_to_json(m.config);
    j["epsilon"] = to_string(m.epsilon);
    if (!m.q_values.empty())
        j["schedule"] = {{"q", m.q_values}};
    else
        j["schedule"] = {{"c", m.c_grid}};
    j["trials"] = m.trials;
    j["seed"] = m.seed;
    j["budget"] = m.budget;
    j["outputs"] = nlohmann::json::object();
    if (!m.curve_output.empty()) j["outputs"]["curve"] = m.curve_output;
    if (m.turan_alpha) j["turan_alpha"] = to_string(*m.turan_alpha);
    return j;
}

ExperimentManifest manifest_from_json(const nlohmann::json& j) {
    try {
        if (j.contains("schema") && j.at("schema").get<std::string>() != kManifestSchema)
            throw InputError("unsupported manifest schema '" + j.at("schema").get<std::string>() + "'");
        ExperimentManifest m;
        m.config = config_from_json(j.at("config"));
        m.epsilon = parse_rational(j.at("epsilon").get<std::string>());
        const auto& schedule = j.at("schedule");
        if (schedule.contains("q")) m.q_values = schedule.at("q").get<std::vector<double>>();
        if (schedule.contains("c")) m.c_grid = schedule.at("c").get<std::vector<double>>();
        m.trials = j.value("trials", m.trials);
        m.seed = j.value("seed", m.seed);
        m.budget = j.value("budget", m.budget);
        if (j.contains("outputs") && j.at("outputs").contains("curve"))
            m.curve_output = j.at("outputs").at("curve").get<std::string>();
        if (j.contains("turan_alpha")) m.turan_alpha = parse_rational(j.at("turan_alpha").get<std::string>());
        validate(m);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad manifest JSON: ") + e.what());
    }
}

ExperimentManifest read_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open manifest '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("manifest '" + path + "' is not valid JSON: " + e.what());
    }
    return manifest_from_json(j);
}

// ------------------------------------------------------------------- trials

std::pair<double, double> wilson_interval(std::size_t s, std::size_t n) {
    if (n == 0) return {0.0, 1.0};
    constexpr double z = 1.96;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(s) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
    return {std::clamp(std::min(center - half, p), 0.0, 1.0), std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

TrialDecider::TrialDecider(const ExperimentManifest& m) : epsilon_(m.epsilon) {
    validate(m);
    h_ = generate(m.config);
    turan_ = m.config.is_turan();
    options_.node_budget = m.budget;
    if (turan_) {
        if (m.turan_alpha) {
            pi_ = *m.turan_alpha;
        } else {
            const auto& pattern = std::get<FCopiesFamily>(m.config.family).pattern;
            const auto ref = turan_density_reference(pattern);
            if (!ref.value) throw InputError("Turan density of the pattern is unknown; supply turan_alpha");
            pi_ = *ref.value;
        }
        if (pi_ < 0 || pi_ >= 1) throw InputError("Turan density must lie in [0, 1)");
        if (pi_ + epsilon_ >= 1) throw InputError("epsilon must lie in (0, 1 - pi(F))");
    }
}

TrialDecider::Outcome TrialDecider::decide(const VertexSubset& x) const {
    Outcome out;
    out.sample_size = x.size();
    const auto size = static_cast<std::int64_t>(x.size());
    if (turan_) {
        if (x.empty()) {
            out.decision = Decision::True;
            out.vacuous = true;
            return out;
        }
        const Rational limit = (pi_ + epsilon_) * size;
        const auto bound = static_cast<std::size_t>(limit.numerator() / limit.denominator());
        const auto res = decide_alpha_at_most(h_, x, bound, options_);
        out.decision = res.decision;
        out.nodes = res.solve.node_count;
        return out;
    }
    const auto res = arrow_decide(h_, x, epsilon_, options_);
    if (res.threshold == 0) {
        // No Y with |Y| >= eps|X| exists to violate the property.
        out.decision = Decision::True;
        out.vacuous = true;
        return out;
    }
    out.decision = res.decision;
    out.nodes = res.solve.node_count;
    return out;
}

CurveRow run_trials(const TrialDecider& decider, const ExperimentManifest& m, double q, std::size_t q_index,
                    unsigned jobs) {
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("q must lie in [0, 1]");
    const std::size_t vertices = decider.hypergraph().vertex_count();
    std::vector<TrialDecider::Outcome> outcomes(m.trials);
    parallel_for(m.trials, jobs, [&](std::size_t t) {
        outcomes[t] = decider.decide(sample_subset(vertices, q, derive_seed(m.seed, q_index, t)));
    });
    CurveRow row;
    row.q = q;
    row.trials = m.trials;
    for (const auto& o : outcomes) {
        switch (o.decision) {
            case Decision::True:
                ++row.successes;
                row.vacuous += o.vacuous ? 1 : 0;
                break;
            case Decision::False: ++row.failures; break;
            case Decision::Undecided: ++row.undecided; break;
        }
    }
    const std::size_t decided = row.successes + row.failures;
    row.estimate = decided == 0 ? std::numeric_limits<double>::quiet_NaN()
                                : static_cast<double>(row.successes) / static_cast<double>(decided);
    std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.successes, decided);
    row.unreliable = row.undecided * 10 > row.trials;
    return row;
}

CurveRow run_trials(const ExperimentManifest& m, double q, std::size_t q_index, unsigned jobs) {
    return run_trials(TrialDecider(m), m, q, q_index, jobs);
}

ThresholdCurve sweep(const ExperimentManifest& m, unsigned jobs, const std::function<void(const CurveRow&)>& on_row) {
    const TrialDecider decider(m);
    const auto qs = m.schedule();
    ThresholdCurve curve;
    for (std::size_t j = 0; j < qs.size(); ++j) {
        curve.rows.push_back(run_trials(decider, m, qs[j], j, jobs));
        if (on_row) on_row(curve.rows.back());
    }
    if (curve.rows.size() >= 2) curve.crossing = estimate_crossing(curve.rows);
    else curve.crossing = {std::nullopt, "logistic-ridge", "fewer than two rows"};
    return curve;
}

// ----------------------------------------------------------------- crossing

namespace {

constexpr double kSlopeRidge = 0.01;

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

Crossing estimate_crossing(const std::vector<CurveRow>& rows) {
    if (rows.size() < 2) throw InputError("crossing estimate needs at least two rows");
    Crossing out;
    out.method = "logistic-ridge";

    struct Point {
        double x, s, n;
    };
    std::vector<Point> pts;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0;
    for (const auto& r : rows) {
        const auto decided = r.successes + r.failures;
        if (decided == 0 || !(r.q > 0)) continue;
        pts.push_back({std::log(r.q), static_cast<double>(r.successes), static_cast<double>(decided)});
        lo = std::min(lo, r.q);
        hi = std::max(hi, r.q);
    }
    if (pts.size() < 2) {
        out.note = "fewer than two decided rows";
        return out;
    }
    const bool all_low = std::all_of(pts.begin(), pts.end(), [](const Point& p) { return p.s / p.n < 0.25; });
    const bool all_high = std::all_of(pts.begin(), pts.end(), [](const Point& p) { return p.s / p.n > 0.75; });
    if (all_low || all_high) {
        out.note = "curve never crosses [0.25, 0.75]";
        return out;
    }

    double xbar = 0;
    for (const auto& p : pts) xbar += p.x;
    xbar /= static_cast<double>(pts.size());

    auto objective = [&](double b0, double b1) {
        double ll = 0;
        for (const auto& p : pts) {
            const double eta = b0 + b1 * (p.x - xbar);
            ll += p.s * -softplus(-eta) + (p.n - p.s) * -softplus(eta);
        }
        return ll - 0.5 * kSlopeRidge * b1 * b1;
    };

    double b0 = 0, b1 = 0;
    double current = objective(b0, b1);
    for (int iter = 0; iter < 200; ++iter) {
        double g0 = 0, g1 = -kSlopeRidge * b1, h00 = 0, h01 = 0, h11 = kSlopeRidge;
        for (const auto& p : pts) {
            const double dx = p.x - xbar;
            const double prob = 1.0 / (1.0 + std::exp(-(b0 + b1 * dx)));
            const double w = p.n * prob * (1.0 - prob);
            g0 += p.s - p.n * prob;
            g1 += (p.s - p.n * prob) * dx;
            h00 += w;
            h01 += w * dx;
            h11 += w * dx * dx;
        }
        const double det = h00 * h11 - h01 * h01;
        if (!(det > 0)) break;
        double d0 = (h11 * g0 - h01 * g1) / det;
        double d1 = (h00 * g1 - h01 * g0) / det;
        double step = 1.0;
        double next = objective(b0 + d0, b1 + d1);
        while (next < current && step > 1e-8) {
            step *= 0.5;
            next = objective(b0 + step * d0, b1 + step * d1);
        }
        if (next < current) break;
        b0 += step * d0;
        b1 += step * d1;
        const bool done = std::abs(step * d0) + std::abs(step * d1) < 1e-12 || next - current < 1e-15;
        current = next;
        if (done) break;
    }
    if (!std::isfinite(b0) || !std::isfinite(b1) || std::abs(b1) < 1e-9) {
        out.note = "degenerate fit";
        return out;
    }
    const double q_star = std::exp(xbar - b0 / b1);
    if (!std::isfinite(q_star) || q_star < lo || q_star > hi) {
        out.note = "fitted midpoint outside the sampled q range";
        return out;
    }
    out.q_star = q_star;
    out.note = b1 > 0 ? "increasing fit" : "decreasing fit";
    return out;
}

nlohmann::json to_json(const Crossing& c) {
    nlohmann::json j;
    j["q_star"] = c.q_star ? nlohmann::json(*c.q_star) : nlohmann::json("none");
    j["method"] = c.method;
    j["note"] = c.note;
    return j;
}

// ------------------------------------------------------------ first moment

std::pair<double, double> expected_counts(const UniformHypergraph& h, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("q must lie in [0, 1]");
    return {q * static_cast<double>(h.vertex_count()),
            std::pow(q, static_cast<double>(h.uniformity())) * static_cast<double>(h.edge_count())};
}

FirstMoment first_moment(const UniformHypergraph& h, double q, std::size_t trials, std::uint64_t seed,
                         unsigned jobs) {
    if (trials == 0) throw InputError("trials must be at least 1");
    std::vector<double> vertices(trials), edges(trials);
    parallel_for(trials, jobs, [&](std::size_t t) {
        const auto x = sample_subset(h.vertex_count(), q, derive_seed(seed, 0, t));
        vertices[t] = static_cast<double>(x.size());
        edges[t] = static_cast<double>(count_induced_edges(h, x));
    });
    FirstMoment out;
    out.trials = trials;
    std::tie(out.expected_vertices, out.expected_edges) = expected_counts(h, q);
    auto stats = [&](const std::vector<double>& xs, double& mean, double& se) {
        mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(trials);
        if (trials < 2) return;
        double ss = 0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        se = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
    };
    stats(vertices, out.mean_vertices, out.se_vertices);
    stats(edges, out.mean_edges, out.se_edges);
    return out;
}

// ---------------------------------------------------------------- curve CSV

void write_curve_header(std::ostream& out, const ExperimentManifest& m) {
    out << "# schema " << kCurveSchema << '\n';
    out << "# tool " << kToolName << ' ' << kToolVersion << '\n';
    out << "# manifest " << manifest_to_json(m).dump() << '\n';
    out << "# seed " << m.seed << '\n';
    out << "q,trials,successes,undecided,estimate,ci_lo,ci_hi\n";
}

void write_curve_row(std::ostream& out, const CurveRow& row) {
    out << format_real(row.q) << ',' << row.trials << ',' << row.successes << ',' << row.undecided << ','
        << format_real(row.estimate) << ',' << format_real(row.ci_lo) << ',' << format_real(row.ci_hi) << '\n';
}

void write_curve_footer(std::ostream& out, const ThresholdCurve& curve) {
    for (const auto& r : curve.rows) {
        if (r.vacuous > 0) out << "# vacuous q=" << format_real(r.q) << " count=" << r.vacuous << '\n';
        if (r.unreliable) out << "# unreliable q=" << format_real(r.q) << " undecided=" << r.undecided << '\n';
    }
    out << "# crossing " << (curve.crossing.q_star ? format_real(*curve.crossing.q_star) : std::string("none"))
        << " method=" << curve.crossing.method << '\n';
}

namespace {

double parse_real(const std::string& s) {
    double x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("bad number '" + s + "' in curve CSV");
    return x;
}

std::size_t parse_count(const std::string& s) {
    std::size_t x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("bad count '" + s + "' in curve CSV");
    return x;
}

}  // namespace

std::vector<CurveRow> read_curve_csv(std::istream& in) {
    std::vector<CurveRow> rows;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != "q,trials,successes,undecided,estimate,ci_lo,ci_hi")
                throw InputError("curve CSV header mismatch: '" + line + "'");
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 7) throw InputError("curve CSV row needs 7 fields: '" + line + "'");
        CurveRow r;
        r.q = parse_real(f[0]);
        r.trials = parse_count(f[1]);
        r.successes = parse_count(f[2]);
        r.undecided = parse_count(f[3]);
        if (r.successes + r.undecided > r.trials) throw InputError("curve CSV row has more outcomes than trials");
        r.failures = r.trials - r.successes - r.undecided;
        r.estimate = parse_real(f[4]);
        r.ci_lo = parse_real(f[5]);
        r.ci_hi = parse_real(f[6]);
        r.unreliable = r.undecided * 10 > r.trials;
        rows.push_back(r);
    }
    if (!header) throw InputError("curve CSV has no header line");
    return rows;
}

}  // namespace tlab
