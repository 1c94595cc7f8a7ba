#include "oracles.hpp"

#include <tlab/generators.hpp>
#include <tlab/random.hpp>
#include <tlab/sampling.hpp>
#include <tlab/solver.hpp>

#include <doctest.h>

using namespace tlab;

namespace {

using EdgeList = std::vector<std::vector<Vertex>>;

VertexSubset range_subset(std::size_t universe, std::size_t from, std::size_t to) {
    VertexSubset s(universe);
    for (std::size_t v = from; v < to; ++v) s.insert(static_cast<Vertex>(v));
    return s;
}

UniformHypergraph restrict(const UniformHypergraph& h, const VertexSubset& x) { return induced_subhypergraph(h, x).graph; }

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("alpha examples") {
        CHECK(alpha_exact(UniformHypergraph(3, 7, EdgeList{})).alpha == 7);
        const auto ap9 = alpha_exact(gen_ap(9, 3));
        CHECK(ap9.alpha == 5);
        CHECK(ap9.exact);
        CHECK(ap9.lower_bound == 5);
        CHECK(ap9.upper_bound == 5);
        CHECK(alpha_exact(gen_schur(5)).alpha == 3);
        CHECK(alpha_exact(UniformHypergraph(3, 3, EdgeList{{0, 1, 2}})).alpha == 2);
        CHECK(alpha_exact(UniformHypergraph()).alpha == 0);
    }

    TEST_CASE("brute-force alpha") {
        CHECK(alpha_bruteforce(UniformHypergraph(3, 3, EdgeList{{0, 1, 2}})) == 2);
        CHECK(alpha_bruteforce(gen_ap(9, 3)) == 5);
        const auto k4 = gen_fcopies(4, 2, complete_hypergraph(3, 2));
        CHECK(alpha_bruteforce(k4) == 4);
        CHECK(alpha_bruteforce(k4) == oracle::alpha(k4));
        CHECK_THROWS_AS(alpha_bruteforce(gen_ap(25, 3)), InputError);
    }

    TEST_CASE("alpha on known AP-free maxima") {
        // Largest 3-AP-free subsets of [n].
        const std::vector<std::size_t> r3 = {0, 1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8, 8, 8, 8, 8, 8, 9, 9, 9, 9, 10};
        for (std::size_t n = 1; n <= 24; ++n) CHECK(alpha_exact(gen_ap(n, 3)).alpha == r3[n]);
    }

    TEST_CASE("alpha agrees with the oracle and witnesses are edge-free") {
        SplitMix64 rng(606);
        const std::vector<UniformHypergraph> hosts = {
            gen_ap(40, 3), gen_ap(40, 4), gen_schur(40), gen_homothetic(6, 2, {{0, 0}, {1, 0}, {0, 1}}),
            gen_linear(IntegerMatrix::from_rows({{1, 2, -3}}), 40), gen_fcopies(7, 2, complete_hypergraph(3, 2))};
        for (int trial = 0; trial < 60; ++trial) {
            const auto& host = hosts[static_cast<std::size_t>(trial) % hosts.size()];
            const auto x = sample_subset(host.vertex_count(), 0.2 + 0.5 * rng.uniform(), rng());
            if (x.size() > 20) continue;
            const auto sub = restrict(host, x);
            const auto r = alpha_exact(sub);
            CHECK(r.exact);
            CHECK(r.alpha == oracle::alpha(sub));
            CHECK(r.alpha == alpha_bruteforce(sub));
            CHECK(r.witness.size() == r.alpha);
            CHECK(is_edge_free(sub, r.witness));
            const auto on = alpha_on_subset(host, x);
            CHECK(on.alpha == r.alpha);
            CHECK(on.witness.is_subset_of(x));
            CHECK(is_edge_free(host, on.witness));
        }
    }

    TEST_CASE("alpha is monotone under inclusion") {
        const auto h = gen_ap(60, 3);
        std::size_t previous = 0;
        for (std::size_t to = 0; to <= 60; to += 5) {
            const auto r = alpha_on_subset(h, range_subset(60, 0, to));
            CHECK(r.alpha >= previous);
            previous = r.alpha;
        }
        SplitMix64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            const auto big = sample_subset(60, 0.6, rng());
            VertexSubset small = big;
            for (Vertex v : big.indices())
                if (rng.below(3) == 0) small.erase(v);
            CHECK(alpha_on_subset(h, small).alpha <= alpha_on_subset(h, big).alpha);
        }
    }

    TEST_CASE("budget truncation keeps certified bounds") {
        const auto h = gen_ap(60, 3);
        SolveOptions tight;
        tight.node_budget = 50;
        const auto cut = alpha_exact(h, tight);
        const auto full = alpha_exact(h);
        CHECK(full.exact);
        CHECK(cut.budget_exhausted);
        CHECK_FALSE(cut.exact);
        CHECK(cut.lower_bound <= full.alpha);
        CHECK(cut.upper_bound >= full.alpha);
        CHECK(cut.witness.size() == cut.lower_bound);
        CHECK(is_edge_free(h, cut.witness));
    }

    TEST_CASE("decision mode with a target") {
        const auto h = gen_ap(30, 3);
        SolveOptions reach;
        reach.target = 10;
        const auto r = alpha_exact(h, reach);
        CHECK(r.alpha >= 10);
        CHECK(is_edge_free(h, r.witness));
        SolveOptions unreachable;
        unreachable.target = 13;
        const auto u = alpha_exact(h, unreachable);
        CHECK(u.upper_bound < 13);
    }

    TEST_CASE("Turan numbers") {
        const auto k3 = complete_hypergraph(3, 2);
        CHECK(turan_ex(5, 2, k3, VertexSubset::full(10)).alpha == 6);
        CHECK(turan_ex(5, 2, k3, VertexSubset(10)).alpha == 0);
        CHECK(turan_ex(3, 2, k3, VertexSubset::full(3)).alpha == 2);
        for (int n = 3; n <= 6; ++n) {
            const auto all = VertexSubset::full(binomial(static_cast<std::uint64_t>(n), 2));
            const auto value = turan_ex(static_cast<std::size_t>(n), 2, k3, all).alpha;
            CHECK(value == static_cast<std::size_t>(n * n / 4));
            CHECK(value == oracle::triangle_free_max(n));
        }
        // The 5-cycle host is already triangle-free.
        std::vector<Vertex> c5;
        for (auto [a, b] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}) {
            const std::vector<std::uint32_t> pair{a, b};
            c5.push_back(static_cast<Vertex>(colex_rank(pair)));
        }
        CHECK(turan_ex(5, 2, k3, VertexSubset::from_indices(10, c5)).alpha == 5);
        CHECK_THROWS_AS(turan_ex(5, 2, k3, VertexSubset::full(9)), InputError);
    }

    TEST_CASE("arrow examples") {
        const auto h9 = gen_ap(9, 3);
        const auto all9 = VertexSubset::full(9);
        const auto half = arrow_decide(h9, all9, Rational(1, 2));
        CHECK(half.decision == Decision::False);
        CHECK(half.threshold == 5);
        CHECK(arrow_decide(h9, all9, Rational(3, 5)).decision == Decision::True);
        CHECK(arrow_decide(gen_ap(3, 3), VertexSubset::full(3), Rational(1)).decision == Decision::True);
        CHECK(arrow_decide(h9, VertexSubset(9), Rational(1, 2)).decision == Decision::False);
        CHECK_THROWS_AS(arrow_decide(h9, all9, Rational(0)), InputError);
        CHECK_THROWS_AS(arrow_decide(h9, all9, Rational(3, 2)), InputError);
        CHECK(to_string(Decision::True) == "true");
        CHECK(to_string(Decision::Undecided) == "undecided");
    }

    TEST_CASE("arrow agrees with the literal definition") {
        SplitMix64 rng(42);
        const std::vector<UniformHypergraph> hosts = {gen_ap(30, 3), gen_schur(30), gen_ap(30, 4)};
        const std::vector<Rational> eps = {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(3, 4)};
        for (int trial = 0; trial < 40; ++trial) {
            const auto& h = hosts[static_cast<std::size_t>(trial) % hosts.size()];
            const auto x = sample_subset(30, 0.25 + 0.3 * rng.uniform(), rng());
            if (x.size() > 16) continue;
            const auto& e = eps[rng.below(eps.size())];
            const auto out = arrow_decide(h, x, e);
            REQUIRE(out.decision != Decision::Undecided);
            CHECK((out.decision == Decision::True) == oracle::arrow(h, x.indices(), e));
        }
    }

    TEST_CASE("alpha-at-most decisions") {
        const auto h = gen_ap(9, 3);
        CHECK(decide_alpha_at_most(h, VertexSubset::full(9), 5).decision == Decision::True);
        CHECK(decide_alpha_at_most(h, VertexSubset::full(9), 4).decision == Decision::False);
    }

    TEST_CASE("decisions on large sets agree with the exact alpha") {
        // Sets of 48 or more vertices take the split path of the decision search.
        const auto h = gen_ap(150, 3);
        std::vector<VertexSubset> sets = {range_subset(150, 0, 48), range_subset(150, 0, 56)};
        for (std::uint64_t t = 0; t < 6; ++t) sets.push_back(sample_subset(150, 0.36, derive_seed(11, 0, t)));
        for (const auto& x : sets) {
            CAPTURE(x.size());
            const auto exact = alpha_on_subset(h, x);
            REQUIRE(exact.exact);
            const auto below = decide_alpha_at_most(h, x, exact.alpha - 1);
            const auto at = decide_alpha_at_most(h, x, exact.alpha);
            CHECK(below.decision == Decision::False);
            CHECK(below.solve.lower_bound >= exact.alpha);
            CHECK(is_edge_free(h, below.solve.witness));
            CHECK(at.decision == Decision::True);
            CHECK(at.solve.upper_bound == exact.alpha);
            for (const auto* r : {&below.solve, &at.solve})
                CHECK((r->lower_bound <= exact.alpha && exact.alpha <= r->upper_bound));
        }
    }
}
