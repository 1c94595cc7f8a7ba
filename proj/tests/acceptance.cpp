// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cli_runner.hpp"
#include "oracles.hpp"

#include <tlab/boundedness.hpp>
#include <tlab/density.hpp>
#include <tlab/generators.hpp>
#include <tlab/harness.hpp>
#include <tlab/matrix_lab.hpp>
#include <tlab/random.hpp>
#include <tlab/sampling.hpp>
#include <tlab/solver.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

using namespace tlab;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds, const std::function<Verdict()>& body) {
    const auto start = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds > limit_seconds) v.require(false, "time limit exceeded");
    std::ostringstream line;
    line << (v.pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title << " (" << std::fixed;
    line.precision(2);
    line << seconds << " s)";
    if (!v.detail.empty()) line << " - " << v.detail;
    std::cout << line.str() << std::endl;
    failures += v.pass ? 0 : 1;
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

using EdgeList = std::vector<std::vector<Vertex>>;

// Random induced pieces of every generator, kept to at most 20 vertices.
std::vector<UniformHypergraph> small_instances(std::size_t count, std::size_t max_vertices, std::uint64_t seed) {
    const std::vector<UniformHypergraph> hosts = {
        gen_ap(40, 3),
        gen_ap(40, 4),
        gen_homothetic(6, 2, {{0, 0}, {1, 0}, {0, 1}}),
        gen_linear(IntegerMatrix::from_rows({{1, 2, -3}}), 40),
        gen_schur(40),
        gen_fcopies(7, 2, complete_hypergraph(3, 2))};
    SplitMix64 rng(seed);
    std::vector<UniformHypergraph> out;
    while (out.size() < count) {
        const auto& host = hosts[out.size() % hosts.size()];
        const auto x = sample_subset(host.vertex_count(), 0.2 + 0.5 * rng.uniform(), rng());
        if (x.size() > max_vertices || x.size() < 4) continue;
        out.push_back(induced_subhypergraph(host, x).graph);
    }
    return out;
}

Verdict exponents() {
    Verdict v;
    for (unsigned k = 3; k <= 6; ++k) {
        const auto m = m_of_matrix(ap_matrix(k)).m;
        v.require(m == Rational(k - 1), "m(AP_" + std::to_string(k) + ") = " + to_string(m));
    }
    v.require(m_of_matrix(schur_matrix()).m == Rational(2), "m(1 1 -1) != 2");
    v.require(m_of_hypergraph(complete_hypergraph(3, 2)).m == Rational(2), "m(K_3) != 2");
    for (unsigned l = 2; l <= 6; ++l)
        v.require(m_of_hypergraph(complete_hypergraph(l, l)).m == Rational(1, l), "m(single edge) != 1/l");
    return v;
}

Verdict classification() {
    Verdict v;
    const auto schur = classify_matrix(schur_matrix());
    v.require(schur.partition_regular && !schur.density_regular, "Schur matrix misclassified");
    for (unsigned k = 3; k <= 6; ++k)
        v.require(classify_matrix(ap_matrix(k)).density_regular, "AP matrix not density regular");
    return v;
}

Verdict oracle_equivalence() {
    Verdict v;
    std::size_t alpha_checked = 0;
    for (const auto& h : small_instances(100, 20, 31)) {
        const auto r = alpha_exact(h);
        v.require(r.exact, "alpha search not exact");
        v.require(r.alpha == alpha_bruteforce(h), "alpha_exact != alpha_bruteforce");
        v.require(r.alpha == oracle::alpha(h), "alpha_exact != enumeration oracle");
        v.require(is_edge_free(h, r.witness) && r.witness.size() == r.alpha, "bad witness");
        ++alpha_checked;
    }
    const std::vector<Rational> eps = {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)};
    SplitMix64 rng(57);
    std::size_t arrow_checked = 0;
    for (const auto& h : small_instances(50, 16, 77)) {
        const auto x = VertexSubset::full(h.vertex_count());
        const auto& e = eps[rng.below(eps.size())];
        const auto out = arrow_decide(h, x, e);
        v.require(out.decision != Decision::Undecided, "arrow undecided");
        v.require((out.decision == Decision::True) == oracle::arrow(h, x.indices(), e), "arrow disagrees with brute force");
        ++arrow_checked;
    }
    v.detail = v.pass ? std::to_string(alpha_checked) + " alpha and " + std::to_string(arrow_checked) + " arrow instances" : v.detail;
    return v;
}

Verdict turan_anchor() {
    Verdict v;
    const auto k3 = complete_hypergraph(3, 2);
    std::string values;
    for (int n = 3; n <= 6; ++n) {
        const auto r = turan_ex(static_cast<std::size_t>(n), 2, k3, VertexSubset::full(binomial(static_cast<std::uint64_t>(n), 2)));
        const auto brute = oracle::triangle_free_max(n);
        v.require(r.exact && r.alpha == static_cast<std::size_t>(n * n / 4), "ex(K_n, K_3) != floor(n^2/4)");
        v.require(brute == static_cast<std::size_t>(n * n / 4), "oracle disagrees with floor(n^2/4)");
        values += (values.empty() ? "" : ",") + std::to_string(r.alpha);
    }
    if (v.pass) v.detail = "ex = " + values;
    return v;
}

Verdict mu_correctness() {
    Verdict v;
    const UniformHypergraph edge(3, 3, EdgeList{{0, 1, 2}});
    v.require(std::abs(mu_exact(edge, 1, 0.5) - 2.25) < 1e-12, "mu(single edge) != 9/4");
    const std::vector<UniformHypergraph> family = {
        gen_ap(100, 3), gen_ap(60, 5), gen_schur(60), gen_homothetic(8, 2, {{0, 0}, {1, 0}, {0, 1}}),
        gen_linear(IntegerMatrix::from_rows({{1, 2, -3}}), 60), gen_fcopies(7, 2, complete_hypergraph(3, 2))};
    for (const auto& h : family) {
        std::uint64_t total = 0;
        for (Vertex x = 0; x < h.vertex_count(); ++x) total += h.degree(x) * h.degree(x);
        for (unsigned i = 1; i < h.uniformity(); ++i)
            v.require(mu_exact(h, i, 1.0) == static_cast<double>(total), "mu(H, i, 1) != sum deg^2");
    }
    std::size_t cases = 0;
    double worst = 0;
    const std::vector<double> qs = {0.2, 0.5, 0.8};
    for (std::size_t c = 0; c < 20; ++c) {
        const auto& h = family[c % family.size()];
        const unsigned i = 1 + static_cast<unsigned>(c % (h.uniformity() - 1));
        const double q = qs[c % qs.size()];
        const auto mc = mu_montecarlo(h, i, q, 100000, derive_seed(5, c, 0));
        const double exact = mu_exact(h, i, q);
        const double z = mc.std_error > 0 ? std::abs(mc.mean - exact) / mc.std_error : (mc.mean == exact ? 0 : INFINITY);
        worst = std::max(worst, z);
        v.require(z <= 4, "Monte-Carlo off by " + fmt(z) + " standard errors");
        ++cases;
    }
    std::size_t tails = 0;
    for (unsigned a = 0; a <= 12; ++a)
        for (unsigned b = 0; a + b <= 12; ++b)
            for (unsigned t = 0; a + b + t <= 12; ++t)
                for (int i = 1; i <= 4; ++i)
                    for (double q : {0.1, 0.5, 0.75}) {
                        const double exact = oracle::joint_tail(a, b, t, i, q);
                        v.require(std::abs(joint_tail_prob(a, b, t, i, q) - exact) <= 1e-12 * std::max(1.0, exact),
                                  "joint tail mismatch");
                        ++tails;
                    }
    if (v.pass) v.detail = std::to_string(cases) + " Monte-Carlo cases, worst |z| = " + fmt(worst) + "; " + std::to_string(tails) + " joint tails";
    return v;
}

Verdict boundedness_stability() {
    Verdict v;
    const auto report = certify_boundedness({ApFamily{3}, 0}, {50, 100, 200}, {1}, QGridSpec{20, 1.0, {}});
    double lo = INFINITY, hi = 0;
    std::string values;
    for (const auto& km : report.k_min) {
        v.require(std::isfinite(km.value) && km.value > 0, "K_min not finite");
        lo = std::min(lo, km.value);
        hi = std::max(hi, km.value);
        values += (values.empty() ? "" : ", ") + fmt(km.value);
    }
    v.require(hi / lo <= 4, "K_min varies by a factor " + fmt(hi / lo));
    if (v.pass) v.detail = "K_min = " + values + "; factor " + fmt(hi / lo);
    return v;
}

Verdict two_regimes() {
    Verdict v;
    const std::vector<double> grid = {0.25, 0.5, 1, 2, 4, 8};
    std::vector<double> scaled;
    double low = 0, high = 0;
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t n : {100, 225, 400}) {
        ExperimentManifest m;
        m.config = {ApFamily{3}, n};
        m.epsilon = Rational(1, 2);
        m.c_grid = grid;
        m.trials = 200;
        m.seed = 7;
        const auto curve = sweep(m, jobs);
        for (const auto& row : curve.rows) v.require(!row.unreliable, "more than 10% undecided at q = " + fmt(row.q));
        if (!curve.crossing.q_star) {
            v.require(false, "no crossing for n = " + std::to_string(n) + " (" + curve.crossing.note + ")");
            continue;
        }
        scaled.push_back(*curve.crossing.q_star * std::sqrt(static_cast<double>(n)));
        if (n == 400) {
            low = curve.rows.front().estimate;
            high = curve.rows.back().estimate;
        }
    }
    v.require(high - low >= 0.5, "estimate gap " + fmt(high - low));
    if (scaled.size() == 3) {
        const double ratio = *std::max_element(scaled.begin(), scaled.end()) / *std::min_element(scaled.begin(), scaled.end());
        v.require(ratio <= 4, "crossing scaling ratio " + fmt(ratio));
        if (v.pass)
            v.detail = "gap " + fmt(high - low) + "; q* n^(1/2) = " + fmt(scaled[0]) + ", " + fmt(scaled[1]) + ", " + fmt(scaled[2]) +
                       "; ratio " + fmt(ratio);
    }
    return v;
}

Verdict first_moment_check() {
    Verdict v;
    const auto h = gen_ap(1000, 3);
    std::string detail;
    for (double q : {0.01, 0.05}) {
        const auto fm = first_moment(h, q, 10000, derive_seed(8, 0, static_cast<std::uint64_t>(q * 1000)));
        const double zv = std::abs(fm.mean_vertices - fm.expected_vertices) / fm.se_vertices;
        const double ze = std::abs(fm.mean_edges - fm.expected_edges) / fm.se_edges;
        v.require(zv <= 4, "vertex count off by " + fmt(zv) + " standard errors");
        v.require(ze <= 4, "edge count off by " + fmt(ze) + " standard errors");
        detail += (detail.empty() ? "" : "; ") + std::string("q=") + fmt(q) + ": |z| = " + fmt(zv) + ", " + fmt(ze);
    }
    if (v.pass) v.detail = detail;
    return v;
}

Verdict reproducibility() {
    Verdict v;
    const auto dir = cli::scratch_dir("acceptance");
    const std::string base = "sweep --family ap --n 225 --k 3 --eps 1/2 --c-grid 0.5,1,2,4 --trials 40 --seed 3";
    std::vector<std::string> csv, js;
    int run = 0;
    for (const char* jobs : {"1", "1", "2", "4"}) {
        const auto c = dir / ("c" + std::to_string(run) + ".csv");
        const auto j = dir / ("j" + std::to_string(run) + ".json");
        const auto r = cli::run(base + " --jobs " + jobs + " -o " + c.string() + " --json-output " + j.string());
        v.require(r.status == 0, "sweep exited with status " + std::to_string(r.status));
        csv.push_back(cli::slurp(c));
        js.push_back(cli::slurp(j));
        ++run;
    }
    for (std::size_t k = 1; k < csv.size(); ++k) {
        v.require(!csv[0].empty() && csv[k] == csv[0], "curve CSV differs between runs");
        v.require(!js[0].empty() && js[k] == js[0], "JSON differs between runs");
    }
    const auto b1 = cli::run("bounded --family ap --k 3 --n-list 50,100 --grid-points 8");
    const auto b2 = cli::run("bounded --family ap --k 3 --n-list 50,100 --grid-points 8");
    v.require(b1.status == 0 && b1.out == b2.out, "bounded output differs between runs");
    const auto m1 = cli::run("mu --family schur --n 60 --q 0.3 --trials 2000 --seed 4 --jobs 1");
    const auto m4 = cli::run("mu --family schur --n 60 --q 0.3 --trials 2000 --seed 4 --jobs 4");
    v.require(m1.status == 0 && m1.out == m4.out, "mu output depends on --jobs");
    std::filesystem::remove_all(dir);
    if (v.pass) v.detail = "4 sweeps (jobs 1,1,2,4), 2 bounded runs, 2 mu runs byte-identical";
    return v;
}

}  // namespace

int main() {
    criterion(1, "exponent golden values", 1, exponents);
    criterion(2, "classification golden values", 1, classification);
    criterion(3, "solver oracle equivalence", 300, oracle_equivalence);
    criterion(4, "Turan anchor ex(K_n, K_3) = floor(n^2/4)", 120, turan_anchor);
    criterion(5, "mu correctness", 300, mu_correctness);
    criterion(6, "boundedness stability for AP(3)", 120, boundedness_stability);
    criterion(7, "two-regime threshold behaviour for AP(3)", 1800, two_regimes);
    criterion(8, "first-moment validation", 120, first_moment_check);
    criterion(9, "reproducibility across runs and --jobs", 600, reproducibility);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
