#ifndef TLAB_GENERATORS_HPP
#define TLAB_GENERATORS_HPP

#include <tlab/hypergraph.hpp>
#include <tlab/matrix_lab.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace tlab {

using Point = std::vector<std::int64_t>;

struct ApFamily {
    unsigned k = 3;
};
struct HomotheticFamily {
    unsigned dim = 1;
    std::vector<Point> points;
};
struct LinearFamily {
    IntegerMatrix matrix;
};
struct SchurFamily {};
struct FCopiesFamily {
    unsigned l = 2;
    UniformHypergraph pattern;
};

using Family = std::variant<ApFamily, HomotheticFamily, LinearFamily, SchurFamily, FCopiesFamily>;

/// A configuration family at ambient size n.
struct ConfigSpec {
    Family family;
    std::size_t n = 0;

    /// "ap", "homothetic", "linear", "schur" or "fcopies".
    std::string family_name() const;
    /// Uniformity of the generated configuration hypergraph.
    unsigned uniformity() const;
    bool is_turan() const { return std::holds_alternative<FCopiesFamily>(family); }
};

/// Throws InputError when a family hypothesis fails (AP needs k >= 3, homothetic
/// needs |F| >= 3, linear needs A irredundant of full row rank, F-copies needs an
/// l-uniform F without isolated vertices and a vertex in two edges).
void validate(const ConfigSpec& spec);

nlohmann::json config_to_json(const ConfigSpec& spec);
ConfigSpec config_from_json(const nlohmann::json& j);

/// Every k-term arithmetic progression in [n]; vertex i is the integer i+1.
UniformHypergraph gen_ap(std::size_t n, unsigned k);

/// Homothetic copies y0 + lambda*F inside [n]^dim, y0 integral, lambda >= 1 integral.
UniformHypergraph gen_homothetic(std::size_t n, unsigned dim, const std::vector<Point>& f);

/// k-sets of distinct-valued solutions of Ax = 0 in [n]^k.
UniformHypergraph gen_linear(const IntegerMatrix& a, std::size_t n);

/// Schur triples {x, y, x + y} in [n].
UniformHypergraph gen_schur(std::size_t n);

/// Vertices are the l-subsets of [n] in colex order; each edge is the edge set
/// of one copy of F in K_n^(l).
UniformHypergraph gen_fcopies(std::size_t n, unsigned l, const UniformHypergraph& f);

UniformHypergraph generate(const ConfigSpec& spec);

/// Colex rank of a sorted set of 0-based elements.
std::uint64_t colex_rank(std::span<const std::uint32_t> sorted_set);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Complete l-uniform hypergraph K_v^(l), handy as a pattern F.
UniformHypergraph complete_hypergraph(std::size_t v, unsigned l);

}  // namespace tlab

#endif  // TLAB_GENERATORS_HPP
