// transference-lab: command-line front end for the tlab library.
//
// Exit status: 0 on success, 1 when a result is flagged unreliable (budget
// truncation, undecided trials), 2 on input errors.

#include <tlab/boundedness.hpp>
#include <tlab/density.hpp>
#include <tlab/generators.hpp>
#include <tlab/harness.hpp>
#include <tlab/hypergraph.hpp>
#include <tlab/matrix_lab.hpp>
#include <tlab/random.hpp>
#include <tlab/solver.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace tlab;
using nlohmann::json;

namespace {

constexpr int kExitUnreliable = 1;
constexpr int kExitInput = 2;

// Options that name files or worker counts never affect results, so they stay
// out of provenance headers; that keeps outputs byte-identical across them.
const std::vector<std::string> kNonSemantic = {"output", "json-output", "jobs"};

std::vector<std::string> provenance_lines(const CLI::App* sub) {
    std::vector<std::string> lines = {std::string("tool ") + kToolName + " " + kToolVersion,
                                      "command " + sub->get_name()};
    std::istringstream config(sub->config_to_str(true, false));
    for (std::string line; std::getline(config, line);) {
        if (line.empty() || line.front() == '#' || line.front() == '[') continue;
        const auto key = line.substr(0, line.find('='));
        bool skip = false;
        for (const auto& name : kNonSemantic) skip = skip || key == name;
        if (!skip) lines.push_back("config " + line);
    }
    return lines;
}

json provenance_json(const CLI::App* sub) {
    json config = json::array();
    for (const auto& line : provenance_lines(sub))
        if (line.rfind("config ", 0) == 0) config.push_back(line.substr(7));
    return {{"tool", kToolName}, {"version", kToolVersion}, {"command", sub->get_name()}, {"config", config}};
}

/// Writes to a file, or stdout for "" and "-".
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw InputError("cannot open '" + path + "' for writing");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void emit_json(const std::string& path, const json& j) {
    Sink sink(path);
    sink.stream() << j.dump(2) << '\n';
}

// -------------------------------------------------------------- family flags

struct FamilyOptions {
    std::string family;
    std::size_t n = 0;
    unsigned k = 3;
    unsigned dim = 1;
    std::string points;
    std::string matrix_file;
    unsigned l = 2;
    std::string pattern_file;
    std::string config_file;
    std::string hypergraph_file;
};

void add_family_options(CLI::App* sub, FamilyOptions& o, bool allow_file) {
    sub->add_option("--family", o.family, "ap | homothetic | linear | schur | fcopies")
        ->check(CLI::IsMember({"ap", "homothetic", "linear", "schur", "fcopies"}));
    sub->add_option("--n", o.n, "ambient size n");
    sub->add_option("--k", o.k, "progression length (ap)")->capture_default_str();
    sub->add_option("--dim", o.dim, "dimension of the point set (homothetic)")->capture_default_str();
    sub->add_option("--points", o.points, "points of F, e.g. \"0,0;1,0;0,1\" (homothetic)");
    sub->add_option("--matrix", o.matrix_file, "matrix text file (linear)");
    sub->add_option("--l", o.l, "uniformity of the pattern (fcopies)")->capture_default_str();
    sub->add_option("--pattern", o.pattern_file, "pattern hypergraph file (fcopies)");
    sub->add_option("--config", o.config_file, "configuration JSON instead of the flags above");
    if (allow_file) sub->add_option("--hypergraph", o.hypergraph_file, "hypergraph text file");
}

std::vector<Point> parse_points(const std::string& text, unsigned dim) {
    std::vector<std::vector<std::int64_t>> groups;
    std::stringstream outer(text);
    for (std::string group; std::getline(outer, group, ';');) {
        std::vector<std::int64_t> coords;
        std::stringstream inner(group);
        for (std::string c; std::getline(inner, c, ',');) {
            try {
                std::size_t used = 0;
                coords.push_back(std::stoll(c, &used));
                if (c.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                throw InputError("bad coordinate '" + c + "' in --points");
            }
        }
        groups.push_back(coords);
    }
    // In one dimension "1,2,3" lists three points.
    if (dim == 1 && groups.size() == 1 && groups[0].size() > 1) {
        std::vector<Point> out;
        for (auto x : groups[0]) out.push_back({x});
        return out;
    }
    for (const auto& g : groups)
        if (g.size() != dim) throw InputError("every point needs " + std::to_string(dim) + " coordinates");
    return groups;
}

ConfigSpec build_config(const FamilyOptions& o) {
    if (!o.config_file.empty()) {
        std::ifstream in(o.config_file);
        if (!in) throw InputError("cannot open '" + o.config_file + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InputError("configuration file is not valid JSON: " + std::string(e.what()));
        }
        return config_from_json(j);
    }
    if (o.family.empty()) throw InputError("--family (or --config) is required");
    ConfigSpec spec;
    spec.n = o.n;
    if (o.family == "ap") {
        spec.family = ApFamily{o.k};
    } else if (o.family == "homothetic") {
        if (o.points.empty()) throw InputError("--points is required for the homothetic family");
        spec.family = HomotheticFamily{o.dim, parse_points(o.points, o.dim)};
    } else if (o.family == "linear") {
        if (o.matrix_file.empty()) throw InputError("--matrix is required for the linear family");
        spec.family = LinearFamily{read_matrix_file(o.matrix_file)};
    } else if (o.family == "schur") {
        spec.family = SchurFamily{};
    } else {
        if (o.pattern_file.empty()) throw InputError("--pattern is required for the fcopies family");
        spec.family = FCopiesFamily{o.l, read_hypergraph_file(o.pattern_file)};
    }
    validate(spec);
    return spec;
}

bool has_family(const FamilyOptions& o) { return !o.family.empty() || !o.config_file.empty(); }

UniformHypergraph load_hypergraph(const FamilyOptions& o) {
    if (!o.hypergraph_file.empty()) {
        if (has_family(o)) throw InputError("give either --hypergraph or a family, not both");
        return read_hypergraph_file(o.hypergraph_file);
    }
    if (!has_family(o)) throw InputError("need --hypergraph or a family (--family/--config)");
    return generate(build_config(o));
}

VertexSubset load_subset(const std::string& path, std::size_t universe) {
    if (path.empty()) return VertexSubset::full(universe);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_subset(in, universe);
}

json column_set_json(const ColumnSet& cols) {
    json out = json::array();
    for (auto c : cols) out.push_back(c + 1);
    return out;
}

json vertices_json(const std::vector<Vertex>& vs) { return json(vs); }

json solve_json(const SolveResult& r, const UniformHypergraph& h) {
    json j = {{"alpha", r.alpha},
              {"lower_bound", r.lower_bound},
              {"upper_bound", r.upper_bound},
              {"exact", r.exact},
              {"budget_exhausted", r.budget_exhausted},
              {"node_count", r.node_count},
              {"witness", vertices_json(r.witness.indices())}};
    if (h.has_labels()) {
        json labels = json::array();
        for (Vertex v : r.witness.indices()) labels.push_back(format_label(h.label(v)));
        j["witness_labels"] = labels;
    }
    return j;
}

json turan_reference_json(const TuranReference& ref) {
    return {{"value", ref.value ? json(to_string(*ref.value)) : json("unknown")}, {"provenance", ref.provenance}};
}

// ---------------------------------------------------------------- commands

struct Context {
    CLI::App* sub = nullptr;
    std::function<int()> run;
};

Context make_gen(CLI::App& app) {
    auto* sub = app.add_subcommand("gen", "generate a configuration hypergraph");
    auto o = std::make_shared<FamilyOptions>();
    auto out = std::make_shared<std::string>();
    add_family_options(sub, *o, false);
    sub->add_option("-o,--output", *out, "output file (default stdout)");
    return {sub, [=] {
        const auto spec = build_config(*o);
        const auto h = generate(spec);
        auto lines = provenance_lines(sub);
        lines.push_back("spec " + config_to_json(spec).dump());
        Sink sink(*out);
        write_hypergraph(sink.stream(), h, lines);
        return 0;
    }};
}

Context make_mparam(CLI::App& app) {
    auto* sub = app.add_subcommand("mparam", "threshold parameters m(A) or m(F)");
    auto matrix = std::make_shared<std::string>();
    auto hyper = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto* m_opt = sub->add_option("--matrix", *matrix, "matrix text file");
    auto* h_opt = sub->add_option("--hypergraph", *hyper, "pattern hypergraph file F");
    m_opt->excludes(h_opt);
    sub->add_option("-o,--output", *out, "output file (default stdout)");
    return {sub, [=] {
        json j;
        j["provenance"] = provenance_json(sub);
        if (!matrix->empty()) {
            const auto a = read_matrix_file(*matrix);
            const auto cls = classify_matrix(a);
            j["rows"] = a.rows();
            j["cols"] = a.cols();
            j["rank"] = a.rank();
            j["irredundant"] = cls.irredundant;
            j["partition_regular"] = cls.partition_regular;
            j["density_regular"] = cls.density_regular;
            if (cls.failing_pair) j["failing_pair"] = {cls.failing_pair->first + 1, cls.failing_pair->second + 1};
            json blocks = json::array();
            for (const auto& b : cls.column_blocks) blocks.push_back(column_set_json(b));
            j["column_blocks"] = blocks;
            if (cls.irredundant && cls.partition_regular) {
                const auto d = m_of_matrix(a);
                j["m"] = to_string(d.m);
                j["W"] = column_set_json(d.w);
                j["Wbar"] = column_set_json(d.wbar);
                j["warnings"] = d.warnings;
            } else {
                j["m"] = nullptr;
                j["m_note"] = "m(A) is defined for irredundant partition regular matrices only";
            }
            j["columns"] = "1-based";
        } else if (!hyper->empty()) {
            const auto f = read_hypergraph_file(*hyper);
            const auto d = m_of_hypergraph(f);
            j["m"] = to_string(d.m);
            j["witness"] = vertices_json(d.witness);
            j["pi"] = turan_reference_json(d.pi);
        } else {
            throw InputError("mparam needs --matrix or --hypergraph");
        }
        emit_json(*out, j);
        return 0;
    }};
}

Context make_dense_probe(CLI::App& app) {
    auto* sub = app.add_subcommand("dense-probe", "minimum number of edges induced by m vertices");
    auto o = std::make_shared<FamilyOptions>();
    auto ms = std::make_shared<std::vector<std::size_t>>();
    auto seed = std::make_shared<std::uint64_t>(kDefaultSeed);
    auto out = std::make_shared<std::string>();
    add_family_options(sub, *o, true);
    sub->add_option("--m", *ms, "subset sizes (default: every size)")->delimiter(',');
    sub->add_option("--seed", *seed, "seed for the local search above the exact limit")->capture_default_str();
    sub->add_option("-o,--output", *out, "output CSV (default stdout)");
    return {sub, [=] {
        const auto h = load_hypergraph(*o);
        std::vector<std::size_t> sizes = *ms;
        if (sizes.empty())
            for (std::size_t m = 0; m <= h.vertex_count(); ++m) sizes.push_back(m);
        Sink sink(*out);
        auto& os = sink.stream();
        for (const auto& line : provenance_lines(sub)) os << "# " << line << '\n';
        os << "m,count,witness,exact\n";
        for (auto m : sizes) {
            const auto r = min_induced_edges(h, m, *seed);
            os << m << ',' << r.count << ',';
            for (std::size_t j = 0; j < r.witness.size(); ++j) os << (j ? " " : "") << r.witness[j];
            os << ',' << (r.exact ? "true" : "false") << '\n';
        }
        return 0;
    }};
}

Context make_mu(CLI::App& app) {
    auto* sub = app.add_subcommand("mu", "mu_i(H, q), exact and optionally sampled");
    auto o = std::make_shared<FamilyOptions>();
    auto is = std::make_shared<std::vector<unsigned>>(std::vector<unsigned>{1});
    auto qs = std::make_shared<std::vector<double>>();
    auto trials = std::make_shared<std::size_t>(0);
    auto seed = std::make_shared<std::uint64_t>(kDefaultSeed);
    auto jobs = std::make_shared<unsigned>(1);
    auto out = std::make_shared<std::string>();
    add_family_options(sub, *o, true);
    sub->add_option("--i", *is, "values of i in [1, k-1]")->delimiter(',')->capture_default_str();
    sub->add_option("--q", *qs, "probabilities")->delimiter(',')->required();
    sub->add_option("--trials", *trials, "Monte-Carlo trials (0: exact only)")->capture_default_str();
    sub->add_option("--seed", *seed, "master seed")->capture_default_str();
    sub->add_option("--jobs", *jobs, "worker threads")->capture_default_str();
    sub->add_option("-o,--output", *out, "output CSV (default stdout)");
    return {sub, [=] {
        const auto h = load_hypergraph(*o);
        if (h.edge_count() == 0) throw InputError("empty configuration family");
        const std::size_t n = has_family(*o) ? build_config(*o).n : h.vertex_count();
        const auto profile = overlap_profile(h);
        Sink sink(*out);
        auto& os = sink.stream();
        for (const auto& line : provenance_lines(sub)) os << "# " << line << '\n';
        os << "n,i,q,mu,bound_ratio" << (*trials > 0 ? ",mc_mean,mc_se" : "") << '\n';
        const double v = static_cast<double>(h.vertex_count());
        const double e = static_cast<double>(h.edge_count());
        for (unsigned i : *is) {
            for (double q : *qs) {
                const double mu = mu_from_profile(profile, i, q);
                const double ratio = q > 0 ? mu * v / (std::pow(q, 2.0 * i) * e * e) : 0.0;
                os << n << ',' << i << ',' << format_real(q) << ',' << format_real(mu) << ',' << format_real(ratio);
                if (*trials > 0) {
                    const auto mc = mu_montecarlo(h, i, q, *trials, *seed, *jobs);
                    os << ',' << format_real(mc.mean) << ',' << format_real(mc.std_error);
                }
                os << '\n';
            }
        }
        return 0;
    }};
}

Context make_bounded(CLI::App& app) {
    auto* sub = app.add_subcommand("bounded", "empirical (K, p)-boundedness over a q grid");
    auto o = std::make_shared<FamilyOptions>();
    auto ns = std::make_shared<std::vector<std::size_t>>();
    auto is = std::make_shared<std::vector<unsigned>>(std::vector<unsigned>{1});
    auto grid = std::make_shared<QGridSpec>();
    auto out = std::make_shared<std::string>();
    auto json_out = std::make_shared<std::string>();
    add_family_options(sub, *o, false);
    sub->add_option("--n-list", *ns, "ambient sizes (default: --n)")->delimiter(',');
    sub->add_option("--i", *is, "values of i in [1, k-1]")->delimiter(',')->capture_default_str();
    sub->add_option("--grid-points", grid->points, "geometric grid size")->capture_default_str();
    sub->add_option("--q-max", grid->q_max, "largest grid value")->capture_default_str();
    sub->add_option("--q", grid->explicit_q, "explicit q values instead of the geometric grid")->delimiter(',');
    sub->add_option("-o,--output", *out, "output CSV (default stdout)");
    sub->add_option("--json-output", *json_out, "also write the report as JSON");
    return {sub, [=] {
        const auto spec = build_config(*o);
        std::vector<std::size_t> list = *ns;
        if (list.empty()) list.push_back(spec.n);
        const auto report = certify_boundedness(spec, list, *is, *grid);
        {
            Sink sink(*out);
            auto& os = sink.stream();
            for (const auto& line : provenance_lines(sub)) os << "# " << line << '\n';
            for (const auto& k : report.k_min)
                os << "# k_min n=" << k.n << " i=" << k.i << " value=" << format_real(k.value)
                   << " at_q=" << format_real(k.at_q) << '\n';
            write_csv(os, report);
        }
        if (!json_out->empty()) {
            json j = to_json(report);
            j["provenance"] = provenance_json(sub);
            emit_json(*json_out, j);
        }
        return 0;
    }};
}

Context make_prune(CLI::App& app) {
    auto* sub = app.add_subcommand("prune", "greedy deletion check for the upper-tail bound");
    auto o = std::make_shared<FamilyOptions>();
    auto q = std::make_shared<double>(0);
    auto i = std::make_shared<unsigned>(1);
    auto eta = std::make_shared<double>(0.1);
    auto k_const = std::make_shared<double>(0);
    auto runs = std::make_shared<std::size_t>(1);
    auto seed = std::make_shared<std::uint64_t>(kDefaultSeed);
    auto out = std::make_shared<std::string>();
    add_family_options(sub, *o, true);
    sub->add_option("--q", *q, "sampling probability")->required();
    sub->add_option("--i", *i, "i in [1, k-1]")->capture_default_str();
    sub->add_option("--eta", *eta, "deletion budget factor")->capture_default_str();
    sub->add_option("--K", *k_const, "boundedness constant (default: K_min of the family at n)");
    sub->add_option("--runs", *runs, "independent samples")->capture_default_str();
    sub->add_option("--seed", *seed, "master seed; run r uses derive_seed(seed, 0, r)")->capture_default_str();
    sub->add_option("-o,--output", *out, "output file (default stdout)");
    return {sub, [=] {
        const auto h = load_hypergraph(*o);
        double k_used = *k_const;
        if (k_used <= 0) {
            if (!has_family(*o)) throw InputError("--K is required with --hypergraph");
            const auto spec = build_config(*o);
            k_used = certify_boundedness(spec, {spec.n}, {*i}, QGridSpec{}).overall_k_min;
        }
        json runs_json = json::array();
        std::size_t ok = 0;
        for (std::size_t r = 0; r < *runs; ++r) {
            const auto res = prune_check(h, *q, *i, *eta, k_used, derive_seed(*seed, 0, r));
            ok += res.ok ? 1 : 0;
            runs_json.push_back({{"ok", res.ok},
                                 {"sample_size", res.sample.size()},
                                 {"deleted", vertices_json(res.deleted.indices())},
                                 {"initial_sum", res.initial_sum},
                                 {"achieved_sum", res.achieved_sum}});
        }
        const double e = static_cast<double>(h.edge_count());
        json j = {{"provenance", provenance_json(sub)},
                  {"K", k_used},
                  {"bound", std::pow(4.0, h.uniformity()) * h.uniformity() * h.uniformity() * k_used *
                                std::pow(*q, 2.0 * *i) * e * e / static_cast<double>(h.vertex_count())},
                  {"budget", static_cast<std::size_t>(std::floor(*eta * *q * static_cast<double>(h.vertex_count())))},
                  {"certified_runs", ok},
                  {"runs", runs_json}};
        emit_json(*out, j);
        return 0;
    }};
}

Context make_alpha(CLI::App& app) {
    auto* sub = app.add_subcommand("alpha", "largest edge-free vertex subset");
    auto o = std::make_shared<FamilyOptions>();
    auto subset = std::make_shared<std::string>();
    auto budget = std::make_shared<std::uint64_t>(kDefaultNodeBudget);
    auto out = std::make_shared<std::string>();
    add_family_options(sub, *o, true);
    sub->add_option("--subset", *subset, "restrict to the vertices listed in this file");
    sub->add_option("--budget", *budget, "search node budget")->capture_default_str();
    sub->add_option("-o,--output", *out, "output file (default stdout)");
    return {sub, [=] {
        const auto h = load_hypergraph(*o);
        const auto x = load_subset(*subset, h.vertex_count());
        SolveOptions opts;
        opts.node_budget = *budget;
        const auto r = alpha_on_subset(h, x, opts);
        json j = solve_json(r, h);
        j["provenance"] = provenance_json(sub);
        j["subset_size"] = x.size();
        emit_json(*out, j);
        return r.exact ? 0 : kExitUnreliable;
    }};
}

Context make_turan(CLI::App& app) {
    auto* sub = app.add_subcommand("turan", "ex(G, F) for a host graph G inside K_n^(l)");
    auto n = std::make_shared<std::size_t>(0);
    auto pattern = std::make_shared<std::string>();
    auto host = std::make_shared<std::string>();
    auto budget = std::make_shared<std::uint64_t>(kDefaultNodeBudget);
    auto out = std::make_shared<std::string>();
    sub->add_option("--n", *n, "number of vertices of K_n^(l)")->required();
    sub->add_option("--F", *pattern, "pattern hypergraph file")->required();
    sub->add_option("--host", *host, "colex ranks of the host's edges (default: all of K_n^(l))");
    sub->add_option("--budget", *budget, "search node budget")->capture_default_str();
    sub->add_option("-o,--output", *out, "output file (default stdout)");
    return {sub, [=] {
        const auto f = read_hypergraph_file(*pattern);
        const unsigned l = f.uniformity();
        const auto universe = static_cast<std::size_t>(binomial(*n, l));
        const auto g = load_subset(*host, universe);
        SolveOptions opts;
        opts.node_budget = *budget;
        const auto r = turan_ex(*n, l, f, g, opts);
        const auto copies = gen_fcopies(*n, l, f);
        json j = solve_json(r, copies);
        j["provenance"] = provenance_json(sub);
        j["ex"] = r.alpha;
        j["host_edges"] = g.size();
        j["pi"] = turan_reference_json(turan_density_reference(f));
        emit_json(*out, j);
        return r.exact ? 0 : kExitUnreliable;
    }};
}

Context make_arrow(CLI::App& app) {
    auto* sub = app.add_subcommand("arrow", "decide X ->_eps H");
    auto o = std::make_shared<FamilyOptions>();
    auto subset = std::make_shared<std::string>();
    auto eps = std::make_shared<std::string>("1/2");
    auto budget = std::make_shared<std::uint64_t>(kDefaultNodeBudget);
    auto out = std::make_shared<std::string>();
    add_family_options(sub, *o, true);
    sub->add_option("--subset", *subset, "the set X (default: all vertices)");
    sub->add_option("--eps", *eps, "exact rational fraction, e.g. 1/2")->capture_default_str();
    sub->add_option("--budget", *budget, "search node budget")->capture_default_str();
    sub->add_option("-o,--output", *out, "output file (default stdout)");
    return {sub, [=] {
        const auto h = load_hypergraph(*o);
        const auto x = load_subset(*subset, h.vertex_count());
        SolveOptions opts;
        opts.node_budget = *budget;
        const auto r = arrow_decide(h, x, parse_rational(*eps), opts);
        json j = {{"provenance", provenance_json(sub)},
                  {"decision", to_string(r.decision)},
                  {"subset_size", x.size()},
                  {"threshold", r.threshold},
                  {"alpha_lower", r.solve.lower_bound},
                  {"alpha_upper", r.solve.upper_bound},
                  {"node_count", r.solve.node_count}};
        if (r.decision == Decision::False) j["witness"] = vertices_json(r.solve.witness.indices());
        emit_json(*out, j);
        return r.decision == Decision::Undecided ? kExitUnreliable : 0;
    }};
}

Context make_sweep(CLI::App& app) {
    auto* sub = app.add_subcommand("sweep", "Monte-Carlo success curve over a q schedule");
    auto o = std::make_shared<FamilyOptions>();
    auto manifest_file = std::make_shared<std::string>();
    auto eps = std::make_shared<std::string>("1/2");
    auto cs = std::make_shared<std::vector<double>>();
    auto qs = std::make_shared<std::vector<double>>();
    auto trials = std::make_shared<std::size_t>(100);
    auto seed = std::make_shared<std::uint64_t>(kDefaultSeed);
    auto budget = std::make_shared<std::uint64_t>(kDefaultNodeBudget);
    auto turan_alpha = std::make_shared<std::string>();
    auto jobs = std::make_shared<unsigned>(1);
    auto out = std::make_shared<std::string>();
    auto json_out = std::make_shared<std::string>();
    add_family_options(sub, *o, false);
    sub->add_option("--manifest", *manifest_file, "experiment manifest JSON (replaces the flags below)");
    sub->add_option("--eps", *eps, "exact rational epsilon")->capture_default_str();
    sub->add_option("--c-grid", *cs, "q = c * n^-theta for each c")->delimiter(',');
    sub->add_option("--q", *qs, "explicit q values")->delimiter(',');
    sub->add_option("--trials", *trials, "trials per q")->capture_default_str();
    sub->add_option("--seed", *seed, "master seed")->capture_default_str();
    sub->add_option("--budget", *budget, "solver node budget per trial")->capture_default_str();
    sub->add_option("--turan-alpha", *turan_alpha, "pi(F) when it is not known (fcopies)");
    sub->add_option("--jobs", *jobs, "worker threads (results do not depend on it)")->capture_default_str();
    sub->add_option("-o,--output", *out, "curve CSV (default: manifest output or stdout)");
    sub->add_option("--json-output", *json_out, "write the manifest and crossing estimate as JSON");
    return {sub, [=] {
        ExperimentManifest m;
        if (!manifest_file->empty()) {
            m = read_manifest_file(*manifest_file);
        } else {
            m.config = build_config(*o);
            m.epsilon = parse_rational(*eps);
            m.c_grid = *cs;
            m.q_values = *qs;
            m.trials = *trials;
            m.seed = *seed;
            m.budget = *budget;
            if (!turan_alpha->empty()) m.turan_alpha = parse_rational(*turan_alpha);
            validate(m);
        }
        const std::string path = !out->empty() ? *out : m.curve_output;
        Sink sink(path);
        auto& os = sink.stream();
        write_curve_header(os, m);
        os.flush();
        const auto curve = sweep(m, *jobs, [&](const CurveRow& row) {
            write_curve_row(os, row);
            os.flush();
        });
        write_curve_footer(os, curve);
        if (!json_out->empty()) {
            json rows = json::array();
            for (const auto& r : curve.rows)
                rows.push_back({{"q", r.q},
                                {"trials", r.trials},
                                {"successes", r.successes},
                                {"failures", r.failures},
                                {"undecided", r.undecided},
                                {"vacuous", r.vacuous},
                                {"unreliable", r.unreliable}});
            emit_json(*json_out, {{"manifest", manifest_to_json(m)}, {"rows", rows}, {"crossing", to_json(curve.crossing)}});
        }
        const bool unreliable = std::any_of(curve.rows.begin(), curve.rows.end(), [](const CurveRow& r) { return r.unreliable; });
        return unreliable ? kExitUnreliable : 0;
    }};
}

Context make_crossing(CLI::App& app) {
    auto* sub = app.add_subcommand("crossing", "fitted midpoint of a curve CSV");
    auto curve = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--curve", *curve, "curve CSV written by sweep")->required();
    sub->add_option("-o,--output", *out, "output file (default stdout)");
    return {sub, [=] {
        std::ifstream in(*curve);
        if (!in) throw InputError("cannot open '" + *curve + "'");
        const auto rows = read_curve_csv(in);
        json j = to_json(estimate_crossing(rows));
        j["provenance"] = provenance_json(sub);
        j["rows"] = rows.size();
        emit_json(*out, j);
        return 0;
    }};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extremal properties of random discrete structures: generators, exponents, solver, threshold sweeps",
                 kToolName};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::vector<Context> commands = {make_gen(app),   make_mparam(app), make_dense_probe(app), make_mu(app),
                                     make_bounded(app), make_prune(app), make_alpha(app),     make_turan(app),
                                     make_arrow(app), make_sweep(app), make_crossing(app)};
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App* usage = &app;
        for (const auto& c : commands)
            if (c.sub->parsed()) usage = c.sub;
        std::cerr << usage->help();
        return kExitInput;
    }

    for (const auto& c : commands) {
        if (!c.sub->parsed()) continue;
        try {
            return c.run();
        } catch (const InputError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitInput;
        } catch (const ContractViolation& e) {
            std::cerr << "error: input outside the supported class: " << e.what() << '\n';
            return kExitInput;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitInput;
        }
    }
    return kExitInput;
}
