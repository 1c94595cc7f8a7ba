#include "cli_runner.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <unistd.h>

using nlohmann::json;

TEST_SUITE("cli") {
    TEST_CASE("gen writes the hypergraph format") {
        const auto r = cli::run("gen --family ap --n 10 --k 3");
        CHECK(r.status == 0);
        CHECK(r.out.find("k 3 n 10 m 20") != std::string::npos);
        CHECK(cli::run("gen --family schur --n 5").out.find("m 4") != std::string::npos);
        CHECK(cli::run("gen --family homothetic --n 3 --dim 2 --points \"0,0;1,0;0,1\"").out.find("m 5") != std::string::npos);
    }

    TEST_CASE("bad input exits with status 2") {
        CHECK(cli::run("gen --family ap --n 10 --k 2").status == 2);
        CHECK(cli::run("frobnicate").status == 2);
        CHECK(cli::run("gen --family spiral --n 10").status == 2);
        CHECK(cli::run("alpha --hypergraph /nonexistent/file").status == 2);
        CHECK(cli::run("sweep --family ap --n 20 --k 3 --eps 1/2").status == 2);
    }

    TEST_CASE("mparam on matrices and patterns") {
        const auto dir = cli::scratch_dir("mparam");
        cli::spit(dir / "schur.txt", "rows 1 cols 3\n1 1 -1\n");
        const auto r = cli::run("mparam --matrix " + (dir / "schur.txt").string());
        REQUIRE(r.status == 0);
        const auto j = json::parse(r.out);
        CHECK(j.at("m") == "2");
        CHECK(j.at("density_regular") == false);
        CHECK(j.at("partition_regular") == true);

        cli::spit(dir / "ap4.txt", "rows 2 cols 4\n1 -2 1 0\n0 1 -2 1\n");
        const auto ap = json::parse(cli::run("mparam --matrix " + (dir / "ap4.txt").string()).out);
        CHECK(ap.at("m") == "3");
        CHECK(ap.at("density_regular") == true);

        cli::spit(dir / "diag.txt", "rows 1 cols 2\n1 -1\n");
        const auto diag = cli::run("mparam --matrix " + (dir / "diag.txt").string());
        CHECK(diag.status == 0);
        CHECK(json::parse(diag.out).at("m").is_null());

        cli::spit(dir / "k3.txt", "k 2 n 3 m 3\n0 1\n0 2\n1 2\n");
        const auto k3 = json::parse(cli::run("mparam --hypergraph " + (dir / "k3.txt").string()).out);
        CHECK(k3.at("m") == "2");
        CHECK(k3.at("pi").at("value") == "1/2");
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("alpha, arrow and turan") {
        const auto dir = cli::scratch_dir("solve");
        const auto gen = cli::run("gen --family ap --n 9 --k 3 -o " + (dir / "ap9.txt").string());
        REQUIRE(gen.status == 0);
        const auto a = json::parse(cli::run("alpha --hypergraph " + (dir / "ap9.txt").string()).out);
        CHECK(a.at("alpha") == 5);
        CHECK(a.at("exact") == true);
        const auto half = cli::run("arrow --hypergraph " + (dir / "ap9.txt").string() + " --eps 1/2");
        CHECK(half.status == 0);
        CHECK(json::parse(half.out).at("decision") == "false");
        CHECK(json::parse(cli::run("arrow --hypergraph " + (dir / "ap9.txt").string() + " --eps 3/5").out).at("decision") == "true");
        const auto cut = cli::run("alpha --family ap --n 200 --k 3 --budget 10");
        CHECK(cut.status == 1);

        cli::spit(dir / "k3.txt", "k 2 n 3 m 3\n0 1\n0 2\n1 2\n");
        const auto t = json::parse(cli::run("turan --n 6 --F " + (dir / "k3.txt").string()).out);
        CHECK(t.at("ex") == 9);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("mu, bounded and prune emit CSV") {
        const auto mu = cli::run("mu --family ap --n 3 --k 3 --i 1 --q 0.5");
        CHECK(mu.status == 0);
        CHECK(mu.out.find("n,i,q,mu,bound_ratio") != std::string::npos);
        CHECK(mu.out.find("3,1,0.5,2.25,") != std::string::npos);
        const auto b = cli::run("bounded --family ap --k 3 --n-list 50,100 --grid-points 5");
        CHECK(b.status == 0);
        CHECK(b.out.find("n,i,q,mu,bound_ratio") != std::string::npos);
        CHECK(cli::run("bounded --family ap --k 3 --n 100 --q 0.01").status == 2);
        CHECK(cli::run("prune --family ap --n 200 --k 3 --q 0.2 --runs 5").status == 0);
        CHECK(cli::run("dense-probe --family ap --n 5 --k 3 --m 4").out.find("4,0,") != std::string::npos);
    }

    TEST_CASE("sweep output is byte-identical across runs and jobs") {
        const auto dir = cli::scratch_dir("sweep");
        const std::string base = "sweep --family ap --n 100 --k 3 --eps 1/2 --c-grid 0.5,1,2,4 --trials 30 --seed 9";
        const auto one = cli::run(base + " --jobs 1 -o " + (dir / "a.csv").string() + " --json-output " + (dir / "a.json").string());
        const auto again = cli::run(base + " --jobs 1 -o " + (dir / "b.csv").string() + " --json-output " + (dir / "b.json").string());
        const auto four = cli::run(base + " --jobs 4 -o " + (dir / "c.csv").string() + " --json-output " + (dir / "c.json").string());
        REQUIRE(one.status == 0);
        REQUIRE(again.status == 0);
        REQUIRE(four.status == 0);
        const auto a = cli::slurp(dir / "a.csv");
        CHECK(a.find("q,trials,successes,undecided,estimate,ci_lo,ci_hi") != std::string::npos);
        CHECK(a == cli::slurp(dir / "b.csv"));
        CHECK(a == cli::slurp(dir / "c.csv"));
        CHECK(cli::slurp(dir / "a.json") == cli::slurp(dir / "b.json"));
        CHECK(cli::slurp(dir / "a.json") == cli::slurp(dir / "c.json"));

        // The manifest written to JSON replays to the same curve.
        const auto manifest = json::parse(cli::slurp(dir / "a.json")).at("manifest");
        cli::spit(dir / "m.json", manifest.dump());
        const auto replay = cli::run("sweep --manifest " + (dir / "m.json").string() + " -o " + (dir / "d.csv").string());
        REQUIRE(replay.status == 0);
        CHECK(cli::slurp(dir / "d.csv") == a);

        const auto crossing = cli::run("crossing --curve " + (dir / "a.csv").string());
        CHECK(crossing.status == 0);
        CHECK(json::parse(crossing.out).contains("q_star"));
        std::filesystem::remove_all(dir);
    }
}
