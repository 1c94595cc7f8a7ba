#include <tlab/generators.hpp>

#include <boost/integer/common_factor.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace tlab {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

std::uint64_t colex_rank(std::span<const std::uint32_t> sorted_set) {
    std::uint64_t rank = 0;
    for (std::size_t j = 0; j < sorted_set.size(); ++j) rank += binomial(sorted_set[j], j + 1);
    return rank;
}

namespace {

std::vector<Label> integer_labels(std::size_t n) {
    std::vector<Label> labels;
    labels.reserve(n);
    for (std::size_t x = 1; x <= n; ++x) labels.push_back(Label::integer(static_cast<std::int64_t>(x)));
    return labels;
}

// Calls visit(combo) for every l-subset of {0..n-1} in lexicographic order.
void for_each_combination(std::size_t n, unsigned l, const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
    if (l > n) return;
    std::vector<std::uint32_t> combo(l);
    for (unsigned j = 0; j < l; ++j) combo[j] = j;
    while (true) {
        visit(combo);
        int j = static_cast<int>(l) - 1;
        while (j >= 0 && combo[static_cast<std::size_t>(j)] == n - l + static_cast<std::size_t>(j)) --j;
        if (j < 0) return;
        ++combo[static_cast<std::size_t>(j)];
        for (auto t = static_cast<std::size_t>(j) + 1; t < l; ++t) combo[t] = combo[t - 1] + 1;
    }
}

}  // namespace

UniformHypergraph gen_ap(std::size_t n, unsigned k) {
    if (k < 3) throw InputError("AP family needs k >= 3");
    if (n < 1) throw InputError("AP family needs n >= 1");
    std::vector<Vertex> flat;
    for (std::size_t d = 1; (k - 1) * d <= n - 1; ++d)
        for (std::size_t a = 0; a + (k - 1) * d < n; ++a)
            for (unsigned j = 0; j < k; ++j) flat.push_back(static_cast<Vertex>(a + j * d));
    return UniformHypergraph(k, n, std::move(flat), integer_labels(n));
}

UniformHypergraph gen_homothetic(std::size_t n, unsigned dim, const std::vector<Point>& f) {
    if (dim < 1) throw InputError("homothetic family needs dimension >= 1");
    if (f.size() < 3) throw InputError("homothetic family needs |F| >= 3");
    for (const auto& p : f) {
        if (p.size() != dim) throw InputError("point of F has wrong dimension");
        if (std::any_of(p.begin(), p.end(), [](std::int64_t c) { return c < 0; }))
            throw InputError("points of F must have non-negative coordinates");
    }
    if (std::set<Point>(f.begin(), f.end()).size() != f.size()) throw InputError("points of F must be distinct");

    long double cells = 1;
    for (unsigned c = 0; c < dim; ++c) cells *= static_cast<long double>(n);
    if (cells > static_cast<long double>(std::numeric_limits<Vertex>::max()))
        throw InputError("grid [n]^dim too large");
    const auto vertex_count = static_cast<std::size_t>(cells);

    std::vector<std::int64_t> lo(dim), hi(dim);
    std::int64_t span = 0;
    for (unsigned c = 0; c < dim; ++c) {
        lo[c] = hi[c] = f.front()[c];
        for (const auto& p : f) {
            lo[c] = std::min(lo[c], p[c]);
            hi[c] = std::max(hi[c], p[c]);
        }
        span = std::max(span, hi[c] - lo[c]);
    }
    const auto sn = static_cast<std::int64_t>(n);
    const unsigned k = static_cast<unsigned>(f.size());
    std::vector<Vertex> flat;
    for (std::int64_t lambda = 1; lambda * span <= sn - 1; ++lambda) {
        std::vector<std::int64_t> y_lo(dim), y_hi(dim);
        bool feasible = true;
        for (unsigned c = 0; c < dim; ++c) {
            y_lo[c] = 1 - lambda * lo[c];
            y_hi[c] = sn - lambda * hi[c];
            if (y_lo[c] > y_hi[c]) feasible = false;
        }
        if (!feasible) continue;
        std::vector<std::int64_t> y = y_lo;
        while (true) {
            for (const auto& p : f) {
                std::int64_t index = 0;
                for (unsigned c = 0; c < dim; ++c) index = index * sn + (y[c] + lambda * p[c] - 1);
                flat.push_back(static_cast<Vertex>(index));
            }
            unsigned c = dim;
            while (c > 0 && y[c - 1] == y_hi[c - 1]) {
                y[c - 1] = y_lo[c - 1];
                --c;
            }
            if (c == 0) break;
            ++y[c - 1];
        }
    }

    std::vector<Label> labels;
    labels.reserve(vertex_count);
    for (std::size_t idx = 0; idx < vertex_count; ++idx) {
        if (dim == 1) {
            labels.push_back(Label::integer(static_cast<std::int64_t>(idx) + 1));
            continue;
        }
        Point coords(dim);
        std::size_t rest = idx;
        for (unsigned c = dim; c > 0; --c) {
            coords[c - 1] = static_cast<std::int64_t>(rest % n) + 1;
            rest /= n;
        }
        labels.push_back(Label::point(std::move(coords)));
    }
    return UniformHypergraph(k, vertex_count, std::move(flat), std::move(labels));
}

UniformHypergraph gen_linear(const IntegerMatrix& a, std::size_t n) {
    if (a.rank() < a.rows())
        throw InputError("matrix is rank-deficient (rank " + std::to_string(a.rank()) + " < " +
                         std::to_string(a.rows()) + " rows)");
    if (auto pair = irredundancy_failure(a))
        throw InputError("matrix is not irredundant: every solution has x" + std::to_string(pair->first + 1) +
                         " = x" + std::to_string(pair->second + 1));
    const auto k = static_cast<unsigned>(a.cols());
    if (k < 2) throw InputError("linear family needs at least two columns");

    // x_pivot(r) = -(sum_f numer(r, f) x_f) / denom(r), from the reduced echelon form.
    const RationalEchelon echelon(a.entries());
    const auto& rref = echelon.matrix();
    const auto& pivots = echelon.pivots();
    const auto free = echelon.free_columns();
    const std::size_t rows = pivots.size();
    std::vector<std::int64_t> denom(rows);
    std::vector<std::vector<std::int64_t>> numer(rows, std::vector<std::int64_t>(free.size()));
    for (std::size_t r = 0; r < rows; ++r) {
        const auto ri = static_cast<Eigen::Index>(r);
        BigInt l = 1;
        for (auto f : free) l = boost::integer::lcm(l, BigInt(boost::multiprecision::denominator(rref(ri, f))));
        denom[r] = l.convert_to<std::int64_t>();
        for (std::size_t j = 0; j < free.size(); ++j)
            numer[r][j] = BigInt(boost::multiprecision::numerator(rref(ri, free[j]) * BigRational(l))).convert_to<std::int64_t>();
    }

    std::vector<Vertex> flat;
    if (!free.empty() && n >= 1) {
        const auto sn = static_cast<std::int64_t>(n);
        std::vector<std::int64_t> x(k, 0);
        std::vector<std::int64_t> free_vals(free.size(), 1);
        std::vector<std::int64_t> values(k);
        while (true) {
            for (std::size_t j = 0; j < free.size(); ++j) x[static_cast<std::size_t>(free[j])] = free_vals[j];
            bool ok = true;
            for (std::size_t r = 0; r < rows && ok; ++r) {
                std::int64_t s = 0;
                for (std::size_t j = 0; j < free.size(); ++j) s += numer[r][j] * free_vals[j];
                if (s % denom[r] != 0) {
                    ok = false;
                    break;
                }
                const std::int64_t v = -s / denom[r];
                if (v < 1 || v > sn) ok = false;
                x[static_cast<std::size_t>(pivots[r])] = v;
            }
            if (ok) {
                values = x;
                std::sort(values.begin(), values.end());
                if (std::adjacent_find(values.begin(), values.end()) == values.end())
                    for (auto v : values) flat.push_back(static_cast<Vertex>(v - 1));
            }
            std::size_t j = free.size();
            while (j > 0 && free_vals[j - 1] == sn) {
                free_vals[j - 1] = 1;
                --j;
            }
            if (j == 0) break;
            ++free_vals[j - 1];
        }
    }
    return UniformHypergraph(k, n, std::move(flat), integer_labels(n));
}

UniformHypergraph gen_schur(std::size_t n) { return gen_linear(schur_matrix(), n); }

UniformHypergraph gen_fcopies(std::size_t n, unsigned l, const UniformHypergraph& f) {
    if (f.uniformity() != l)
        throw InputError("pattern is " + std::to_string(f.uniformity()) + "-uniform, expected " + std::to_string(l));
    if (f.edge_count() < 2) throw InputError("pattern needs at least two edges");
    for (Vertex v = 0; v < f.vertex_count(); ++v)
        if (f.degree(v) == 0) throw InputError("pattern has isolated vertex " + std::to_string(v));
    if (n < f.vertex_count()) throw InputError("n is smaller than v(F)");

    const std::uint64_t vertex_count = binomial(n, l);
    if (vertex_count > std::numeric_limits<Vertex>::max()) throw InputError("K_n^(l) too large");
    const std::size_t fv = f.vertex_count();
    const auto k = static_cast<unsigned>(f.edge_count());

    std::vector<std::uint32_t> image(fv);
    std::vector<bool> used(n, false);
    std::vector<Vertex> flat;
    std::vector<Vertex> copy(k);
    std::vector<std::uint32_t> mapped(l);
    std::function<void(std::size_t)> extend = [&](std::size_t v) {
        if (v == fv) {
            for (std::size_t e = 0; e < k; ++e) {
                const auto edge = f.edge(e);
                for (unsigned j = 0; j < l; ++j) mapped[j] = image[edge[j]];
                std::sort(mapped.begin(), mapped.end());
                copy[e] = static_cast<Vertex>(colex_rank(mapped));
            }
            std::sort(copy.begin(), copy.end());
            flat.insert(flat.end(), copy.begin(), copy.end());
            return;
        }
        for (std::uint32_t x = 0; x < n; ++x) {
            if (used[x]) continue;
            used[x] = true;
            image[v] = x;
            extend(v + 1);
            used[x] = false;
        }
    };
    extend(0);

    std::vector<Label> labels(vertex_count);
    for_each_combination(n, l, [&](const std::vector<std::uint32_t>& combo) {
        std::vector<std::int64_t> members(combo.begin(), combo.end());
        for (auto& m : members) ++m;
        labels[colex_rank(combo)] = Label::set(std::move(members));
    });
    return UniformHypergraph(k, vertex_count, std::move(flat), std::move(labels));
}

UniformHypergraph complete_hypergraph(std::size_t v, unsigned l) {
    std::vector<Vertex> flat;
    for_each_combination(v, l, [&](const std::vector<std::uint32_t>& combo) {
        flat.insert(flat.end(), combo.begin(), combo.end());
    });
    return UniformHypergraph(l, v, std::move(flat));
}

// ------------------------------------------------------------------ ConfigSpec

std::string ConfigSpec::family_name() const {
    static constexpr const char* names[] = {"ap", "homothetic", "linear", "schur", "fcopies"};
    return names[family.index()];
}

unsigned ConfigSpec::uniformity() const {
    return std::visit(
        [](const auto& fam) -> unsigned {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, ApFamily>) return fam.k;
            else if constexpr (std::is_same_v<T, HomotheticFamily>) return static_cast<unsigned>(fam.points.size());
            else if constexpr (std::is_same_v<T, LinearFamily>) return static_cast<unsigned>(fam.matrix.cols());
            else if constexpr (std::is_same_v<T, SchurFamily>) return 3U;
            else return static_cast<unsigned>(fam.pattern.edge_count());
        },
        family);
}

void validate(const ConfigSpec& spec) {
    std::visit(
        [](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, ApFamily>) {
                if (fam.k < 3) throw InputError("AP family needs k >= 3");
            } else if constexpr (std::is_same_v<T, HomotheticFamily>) {
                if (fam.points.size() < 3) throw InputError("homothetic family needs |F| >= 3");
            } else if constexpr (std::is_same_v<T, LinearFamily>) {
                if (auto pair = irredundancy_failure(fam.matrix))
                    throw InputError("matrix is not irredundant (x" + std::to_string(pair->first + 1) + " = x" +
                                     std::to_string(pair->second + 1) + " on the kernel)");
                if (fam.matrix.rank() < fam.matrix.rows()) throw InputError("matrix is rank-deficient");
            } else if constexpr (std::is_same_v<T, FCopiesFamily>) {
                const auto& f = fam.pattern;
                if (f.uniformity() != fam.l) throw InputError("pattern uniformity does not match l");
                bool shared = false;
                for (Vertex v = 0; v < f.vertex_count(); ++v) {
                    if (f.degree(v) == 0) throw InputError("pattern has isolated vertex " + std::to_string(v));
                    shared = shared || f.degree(v) >= 2;
                }
                if (!shared) throw InputError("pattern needs a vertex contained in at least two edges");
            }
        },
        spec.family);
}

nlohmann::json config_to_json(const ConfigSpec& spec) {
    nlohmann::json j;
    j["family"] = spec.family_name();
    j["n"] = spec.n;
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, ApFamily>) {
                j["k"] = fam.k;
            } else if constexpr (std::is_same_v<T, HomotheticFamily>) {
                j["dim"] = fam.dim;
                j["points"] = fam.points;
            } else if constexpr (std::is_same_v<T, LinearFamily>) {
                j["matrix"] = fam.matrix.to_rows();
            } else if constexpr (std::is_same_v<T, FCopiesFamily>) {
                j["l"] = fam.l;
                nlohmann::json edges = nlohmann::json::array();
                for (std::size_t e = 0; e < fam.pattern.edge_count(); ++e) {
                    const auto edge = fam.pattern.edge(e);
                    edges.push_back(std::vector<Vertex>(edge.begin(), edge.end()));
                }
                j["pattern"] = {{"vertices", fam.pattern.vertex_count()}, {"edges", edges}};
            }
        },
        spec.family);
    return j;
}

ConfigSpec config_from_json(const nlohmann::json& j) {
    try {
        ConfigSpec spec;
        spec.n = j.at("n").get<std::size_t>();
        const auto name = j.at("family").get<std::string>();
        if (name == "ap") {
            spec.family = ApFamily{j.at("k").get<unsigned>()};
        } else if (name == "homothetic") {
            spec.family = HomotheticFamily{j.at("dim").get<unsigned>(), j.at("points").get<std::vector<Point>>()};
        } else if (name == "linear") {
            spec.family = LinearFamily{IntegerMatrix::from_rows(j.at("matrix").get<std::vector<std::vector<std::int64_t>>>())};
        } else if (name == "schur") {
            spec.family = SchurFamily{};
        } else if (name == "fcopies") {
            const auto l = j.at("l").get<unsigned>();
            const auto& pat = j.at("pattern");
            spec.family = FCopiesFamily{
                l, UniformHypergraph(l, pat.at("vertices").get<std::size_t>(),
                                     pat.at("edges").get<std::vector<std::vector<Vertex>>>())};
        } else {
            throw InputError("unknown family '" + name + "'");
        }
        validate(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad configuration JSON: ") + e.what());
    }
}

UniformHypergraph generate(const ConfigSpec& spec) {
    validate(spec);
    return std::visit(
        [&](const auto& fam) -> UniformHypergraph {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, ApFamily>) return gen_ap(spec.n, fam.k);
            else if constexpr (std::is_same_v<T, HomotheticFamily>) return gen_homothetic(spec.n, fam.dim, fam.points);
            else if constexpr (std::is_same_v<T, LinearFamily>) return gen_linear(fam.matrix, spec.n);
            else if constexpr (std::is_same_v<T, SchurFamily>) return gen_schur(spec.n);
            else return gen_fcopies(spec.n, fam.l, fam.pattern);
        },
        spec.family);
}

}  // namespace tlab
