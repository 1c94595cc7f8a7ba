#include <tlab/generators.hpp>
#include <tlab/harness.hpp>
#include <tlab/random.hpp>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

using namespace tlab;

namespace {

ExperimentManifest ap_manifest(std::size_t n, Rational eps, std::vector<double> qs, std::size_t trials) {
    ExperimentManifest m;
    m.config = {ApFamily{3}, n};
    m.epsilon = eps;
    m.q_values = std::move(qs);
    m.trials = trials;
    return m;
}

CurveRow synthetic_row(double q, std::size_t successes, std::size_t trials) {
    CurveRow r;
    r.q = q;
    r.trials = trials;
    r.successes = successes;
    r.failures = trials - successes;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    return r;
}

}  // namespace

TEST_SUITE("harness") {
    TEST_CASE("binomial subsets") {
        CHECK(sample_subset(50, 0.0, 1).empty());
        CHECK(sample_subset(50, 1.0, 1).size() == 50);
        CHECK(sample_subset(0, 0.5, 1).universe() == 0);
        CHECK(sample_subset(300, 0.4, 99) == sample_subset(300, 0.4, 99));
        CHECK_FALSE(sample_subset(300, 0.4, 99) == sample_subset(300, 0.4, 100));
        CHECK_THROWS_AS(sample_subset(5, 1.5, 1), InputError);
        CHECK_THROWS_AS(sample_subset(5, -0.5, 1), InputError);
        // Frozen stream: the generator is part of the output contract.
        SplitMix64 rng(0);
        CHECK(rng() == 0xE220A8397B1DCDAFULL);
        CHECK(sample_subset(16, 0.5, 20100101).indices() == sample_subset(16, 0.5, 20100101).indices());
        // Inclusion follows the documented per-index draw.
        SplitMix64 replay(12345);
        const auto s = sample_subset(64, 0.3, 12345);
        for (Vertex v = 0; v < 64; ++v) CHECK(s.contains(v) == (replay.uniform() < 0.3));
    }

    TEST_CASE("sample sizes have the right mean") {
        double total = 0;
        const int reps = 2000;
        for (int t = 0; t < reps; ++t) total += static_cast<double>(sample_subset(500, 0.2, derive_seed(7, 0, static_cast<std::uint64_t>(t))).size());
        const double mean = total / reps;
        const double se = std::sqrt(500 * 0.2 * 0.8 / reps);
        CHECK(std::abs(mean - 100.0) < 4 * se);
    }

    TEST_CASE("Wilson interval") {
        const auto [lo, hi] = wilson_interval(5, 10);
        CHECK(lo == doctest::Approx(0.2366).epsilon(1e-3));
        CHECK(hi == doctest::Approx(0.7634).epsilon(1e-3));
        const auto none = wilson_interval(0, 0);
        CHECK(none.first == 0.0);
        CHECK(none.second == 1.0);
        for (std::size_t n : {1u, 7u, 50u})
            for (std::size_t s = 0; s <= n; ++s) {
                const auto [a, b] = wilson_interval(s, n);
                const double p = static_cast<double>(s) / static_cast<double>(n);
                CHECK(a <= p + 1e-12);
                CHECK(b >= p - 1e-12);
                CHECK(a >= 0.0);
                CHECK(b <= 1.0);
            }
    }

    TEST_CASE("run_trials examples") {
        const auto failing = run_trials(ap_manifest(9, Rational(1, 2), {1.0}, 20), 1.0);
        CHECK(failing.successes == 0);
        CHECK(failing.failures == 20);
        CHECK(failing.estimate == 0.0);
        const auto passing = run_trials(ap_manifest(9, Rational(3, 5), {1.0}, 20), 1.0);
        CHECK(passing.successes == 20);
        CHECK(passing.estimate == 1.0);
        const auto vacuous = run_trials(ap_manifest(9, Rational(1, 2), {1.0}, 1), 0.0);
        CHECK(vacuous.successes == 1);
        CHECK(vacuous.vacuous == 1);
        CHECK(vacuous.estimate == 1.0);
    }

    TEST_CASE("row accounting and parallel independence") {
        const auto m = ap_manifest(60, Rational(1, 2), {0.3}, 64);
        const auto a = run_trials(m, 0.3, 0, 1);
        const auto b = run_trials(m, 0.3, 0, 4);
        CHECK(a.successes + a.failures + a.undecided == a.trials);
        CHECK(a.ci_lo <= a.estimate);
        CHECK(a.estimate <= a.ci_hi);
        CHECK(a.successes == b.successes);
        CHECK(a.undecided == b.undecided);
        CHECK(a.vacuous == b.vacuous);
        // Each trial reproduces from its derived seed.
        const TrialDecider decider(m);
        std::size_t successes = 0;
        for (std::size_t t = 0; t < m.trials; ++t)
            successes += decider.decide(sample_subset(60, 0.3, derive_seed(m.seed, 0, t))).decision == Decision::True;
        CHECK(successes == a.successes);
    }

    TEST_CASE("tiny budgets mark rows unreliable") {
        auto m = ap_manifest(200, Rational(1, 2), {0.5}, 10);
        m.budget = 1;
        const auto row = run_trials(m, 0.5);
        CHECK(row.undecided > 1);
        CHECK(row.unreliable);
        CHECK(row.successes + row.failures + row.undecided == row.trials);
    }

    TEST_CASE("Turan variant") {
        ExperimentManifest m;
        m.config = {FCopiesFamily{2, complete_hypergraph(3, 2)}, 7};
        m.epsilon = Rational(1, 4);
        m.q_values = {1.0};
        m.trials = 3;
        const TrialDecider decider(m);
        CHECK(decider.turan());
        CHECK(decider.pi() == Rational(1, 2));
        // ex(K_7, K_3) = 12 <= floor(3/4 * 21) = 15.
        const auto full = decider.decide(VertexSubset::full(21));
        CHECK(full.decision == Decision::True);
        const auto empty = decider.decide(VertexSubset(21));
        CHECK(empty.decision == Decision::True);
        CHECK(empty.vacuous);
        m.epsilon = Rational(1, 2);
        CHECK_THROWS_AS(TrialDecider{m}, InputError);
        m.epsilon = Rational(1, 10);
        m.config = {FCopiesFamily{3, complete_hypergraph(4, 3)}, 6};
        CHECK_THROWS_AS(TrialDecider{m}, InputError);
        m.turan_alpha = Rational(5, 9);
        CHECK(TrialDecider(m).pi() == Rational(5, 9));
    }

    TEST_CASE("sweep rows and schedules") {
        auto m = ap_manifest(40, Rational(1, 2), {0.1, 0.5, 1.0}, 10);
        std::vector<double> seen;
        const auto curve = sweep(m, 1, [&](const CurveRow& r) { seen.push_back(r.q); });
        CHECK(curve.rows.size() == 3);
        CHECK(seen == std::vector<double>{0.1, 0.5, 1.0});
        for (const auto& r : curve.rows) {
            CHECK(r.estimate >= 0.0);
            CHECK(r.estimate <= 1.0);
        }
        m.q_values = {0.5};
        CHECK(sweep(m).rows.size() == 1);
        m.q_values.clear();
        CHECK_THROWS_AS(sweep(m), InputError);
        CHECK_THROWS_AS(validate(m), InputError);
        m.c_grid = {0.25, 0.5, 1, 2, 4, 8};
        m.config.n = 400;
        const auto qs = m.schedule();
        REQUIRE(qs.size() == 6);
        CHECK(qs[0] == doctest::Approx(0.25 / 20));
        CHECK(qs[5] == doctest::Approx(0.4));
        m.c_grid = {40};
        CHECK_THROWS_AS(m.schedule(), InputError);
    }

    TEST_CASE("crossing estimates") {
        const std::vector<double> qs = {0.01, 0.02, 0.04, 0.08};
        std::vector<CurveRow> zeros, ones, step;
        for (std::size_t j = 0; j < 4; ++j) {
            zeros.push_back(synthetic_row(qs[j], 0, 20));
            ones.push_back(synthetic_row(qs[j], 20, 20));
            step.push_back(synthetic_row(qs[j], j < 2 ? 0 : 20, 20));
        }
        CHECK_FALSE(estimate_crossing(zeros).q_star);
        CHECK_FALSE(estimate_crossing(ones).q_star);
        const auto c = estimate_crossing(step);
        REQUIRE(c.q_star);
        CHECK(*c.q_star > 0.02);
        CHECK(*c.q_star < 0.04);
        CHECK(c.method == "logistic-ridge");
        CHECK(to_json(c).at("q_star").get<double>() == *c.q_star);
        CHECK(to_json(estimate_crossing(zeros)).at("q_star") == "none");
        CHECK_THROWS_AS(estimate_crossing({zeros[0]}), InputError);
        // A smooth logistic curve is recovered near its midpoint.
        std::vector<CurveRow> smooth;
        for (double q = 0.005; q < 0.3; q *= 1.5) {
            const double p = 1.0 / (1.0 + std::pow(0.04 / q, 3));
            smooth.push_back(synthetic_row(q, static_cast<std::size_t>(std::lround(p * 1000)), 1000));
        }
        const auto fit = estimate_crossing(smooth);
        REQUIRE(fit.q_star);
        CHECK(*fit.q_star == doctest::Approx(0.04).epsilon(0.05));
    }

    TEST_CASE("expected counts") {
        const auto h = gen_ap(10, 3);
        const auto half = expected_counts(h, 0.5);
        CHECK(half.first == 5.0);
        CHECK(half.second == 2.5);
        CHECK(expected_counts(h, 1.0) == std::pair<double, double>{10.0, 20.0});
        CHECK(expected_counts(h, 0.0) == std::pair<double, double>{0.0, 0.0});
    }

    TEST_CASE("first moment") {
        const auto h = gen_ap(200, 3);
        const auto fm = first_moment(h, 0.2, 3000, 11);
        CHECK(fm.expected_vertices == doctest::Approx(40.0));
        CHECK(std::abs(fm.mean_vertices - fm.expected_vertices) <= 4 * fm.se_vertices);
        CHECK(std::abs(fm.mean_edges - fm.expected_edges) <= 4 * fm.se_edges);
        const auto again = first_moment(h, 0.2, 3000, 11, 3);
        CHECK(again.mean_edges == fm.mean_edges);
        CHECK(again.se_edges == fm.se_edges);
    }

    TEST_CASE("manifest serialization round trip") {
        ExperimentManifest m = ap_manifest(123, Rational(2, 7), {}, 77);
        m.c_grid = {0.25, 0.1 + 0.2, 1.0 / 3.0, 8};
        m.seed = 0xFFFFFFFFFFFFFFFFULL;
        m.budget = 12345;
        m.curve_output = "out/curve.csv";
        const auto j = manifest_to_json(m);
        CHECK(j.at("schema") == kManifestSchema);
        const auto back = manifest_from_json(nlohmann::json::parse(j.dump()));
        CHECK(manifest_to_json(back).dump() == j.dump());
        CHECK(back.c_grid == m.c_grid);
        CHECK(back.seed == m.seed);
        CHECK(back.epsilon == m.epsilon);

        ExperimentManifest t;
        t.config = {FCopiesFamily{3, complete_hypergraph(4, 3)}, 6};
        t.epsilon = Rational(1, 10);
        t.q_values = {0.5};
        t.turan_alpha = Rational(5, 9);
        const auto tj = manifest_to_json(t);
        CHECK(manifest_to_json(manifest_from_json(tj)).dump() == tj.dump());

        auto bad = j;
        bad["schema"] = "something/else";
        CHECK_THROWS_AS(manifest_from_json(bad), InputError);
        bad = j;
        bad["trials"] = 0;
        CHECK_THROWS_AS(validate(manifest_from_json(bad)), InputError);
        CHECK_THROWS_AS(read_manifest_file("/nonexistent/manifest.json"), InputError);
    }

    TEST_CASE("curve CSV round trip") {
        auto m = ap_manifest(40, Rational(1, 2), {0.1, 0.3, 0.9}, 12);
        const auto curve = sweep(m);
        std::stringstream out;
        write_curve_header(out, m);
        for (const auto& r : curve.rows) write_curve_row(out, r);
        write_curve_footer(out, curve);
        const std::string text = out.str();
        CHECK(text.rfind(std::string("# schema ") + kCurveSchema, 0) == 0);
        CHECK(text.find("q,trials,successes,undecided,estimate,ci_lo,ci_hi\n") != std::string::npos);
        CHECK(text.find("# crossing ") != std::string::npos);
        const auto rows = read_curve_csv(out);
        REQUIRE(rows.size() == curve.rows.size());
        for (std::size_t j = 0; j < rows.size(); ++j) {
            CHECK(rows[j].q == curve.rows[j].q);
            CHECK(rows[j].successes == curve.rows[j].successes);
            CHECK(rows[j].failures == curve.rows[j].failures);
            CHECK(rows[j].estimate == curve.rows[j].estimate);
        }
        std::istringstream bad("q,trials\n0.1,3\n");
        CHECK_THROWS_AS(read_curve_csv(bad), InputError);
    }
}
