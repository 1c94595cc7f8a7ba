#include <tlab/matrix_lab.hpp>

#include <tlab/density.hpp>
#include <tlab/generators.hpp>

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace tlab {

IntegerMatrix::IntegerMatrix(IntMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.cols() < 1)
        throw InputError("integer matrix needs at least one row and one column");
    rank_ = bareiss_rank(entries_);
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw InputError("integer matrix needs at least one row and one column");
    IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) throw InputError("ragged matrix rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return IntegerMatrix(std::move(m));
}

std::vector<std::vector<std::int64_t>> IntegerMatrix::to_rows() const {
    std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(rows()));
    for (Eigen::Index r = 0; r < rows(); ++r)
        for (Eigen::Index c = 0; c < cols(); ++c) out[static_cast<std::size_t>(r)].push_back(entries_(r, c));
    return out;
}

IntegerMatrix ap_matrix(unsigned k) {
    if (k < 3) throw InputError("AP matrix needs k >= 3");
    IntMatrix m = IntMatrix::Zero(k - 2, k);
    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(k) - 2; ++r) {
        m(r, r) = 1;
        m(r, r + 1) = -2;
        m(r, r + 2) = 1;
    }
    return IntegerMatrix(std::move(m));
}

IntegerMatrix schur_matrix() { return IntegerMatrix::from_rows({{1, 1, -1}}); }

Eigen::Index rank_restricted(const IntegerMatrix& a, const ColumnSet& wbar) {
    for (std::size_t j = 0; j < wbar.size(); ++j) {
        if (wbar[j] < 0 || wbar[j] >= a.cols())
            throw InputError("column index " + std::to_string(wbar[j]) + " out of range");
        if (j > 0 && wbar[j] <= wbar[j - 1]) throw InputError("column set must be strictly increasing");
    }
    if (wbar.empty()) return 0;
    return bareiss_rank(select_columns(a.entries(), wbar));
}

namespace {

ColumnSet columns_of(std::uint64_t mask, Eigen::Index k) {
    ColumnSet out;
    for (Eigen::Index c = 0; c < k; ++c)
        if ((mask >> c) & 1U) out.push_back(c);
    return out;
}

std::string describe(const ColumnSet& w, const ColumnSet& wbar) {
    auto fmt = [](const ColumnSet& s) {
        std::string out = "{";
        for (std::size_t j = 0; j < s.size(); ++j) out += (j ? "," : "") + std::to_string(s[j] + 1);
        return out + "}";
    };
    return "W=" + fmt(w) + " Wbar=" + fmt(wbar);
}

}  // namespace

MatrixDensity maximize_density_ratio(const IntegerMatrix& a) {
    const Eigen::Index k = a.cols();
    if (k < 2) throw InputError("m(A) needs at least two columns");
    if (k > 30) throw InputError("m(A) enumeration limited to 30 columns");
    const std::uint64_t all = (std::uint64_t{1} << k) - 1;
    MatrixDensity best;
    bool have = false;
    for (std::uint64_t mask = 1; mask <= all; ++mask) {
        const auto w_size = std::popcount(mask);
        if (w_size < 2) continue;
        ColumnSet w = columns_of(mask, k);
        ColumnSet wbar = columns_of(all & ~mask, k);
        const std::int64_t numer = w_size - 1;
        const std::int64_t denom = numer + rank_restricted(a, wbar) - a.rank();
        if (denom <= 0)
            throw ContractViolation("non-positive denominator " + std::to_string(denom) + " at " +
                                    describe(w, wbar) + "; matrix outside the irredundant partition-regular class");
        const Rational value(numer, denom);
        if (!have || value > best.m || (value == best.m && w < best.w)) {
            best.m = value;
            best.w = std::move(w);
            best.wbar = std::move(wbar);
            have = true;
        }
    }
    if (a.rank() < a.rows())
        best.warnings.push_back("rank " + std::to_string(a.rank()) + " is less than the row count " +
                                std::to_string(a.rows()));
    return best;
}

MatrixDensity m_of_matrix(const IntegerMatrix& a) {
    if (auto pair = irredundancy_failure(a))
        throw InputError("matrix is not irredundant: kernel lies in x" + std::to_string(pair->first + 1) +
                         " = x" + std::to_string(pair->second + 1));
    if (!columns_condition(a)) throw InputError("matrix is not partition regular (columns condition fails)");
    return maximize_density_ratio(a);
}

std::optional<std::pair<Eigen::Index, Eigen::Index>> irredundancy_failure(const IntegerMatrix& a) {
    const Eigen::Index k = a.cols();
    const DenseMatrix<BigInt> kernel = RationalEchelon(a.entries()).kernel_basis();
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j)
            if (kernel.row(i) == kernel.row(j)) return std::make_pair(i, j);
    return std::nullopt;
}

std::optional<std::vector<ColumnSet>> columns_condition(const IntegerMatrix& a) {
    const Eigen::Index l = a.rows();
    const Eigen::Index k = a.cols();
    if (k > 24) throw InputError("columns condition search limited to 24 columns");
    std::vector<ColumnSet> blocks;
    ColumnSet used;
    ColumnSet remaining;
    for (Eigen::Index c = 0; c < k; ++c) remaining.push_back(c);

    // A block B is admissible after `used` iff its column sum lies in span(used),
    // i.e. iff Y * sum(B) = 0 for a basis Y of the annihilator of span(used).
    // Any admissible block can be taken greedily: if some valid ordered
    // partition exists, the part of its first block not yet used stays admissible.
    while (!remaining.empty()) {
        DenseMatrix<BigInt> annihilator;
        if (used.empty()) {
            annihilator = DenseMatrix<BigInt>::Identity(l, l);
        } else {
            const IntMatrix used_t = select_columns(a.entries(), used).transpose();
            annihilator = RationalEchelon(used_t).kernel_basis().transpose();
        }
        const Eigen::Index d = annihilator.rows();
        const std::size_t r = remaining.size();
        std::vector<std::vector<std::int64_t>> projected(r, std::vector<std::int64_t>(static_cast<std::size_t>(d)));
        const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 64);
        for (std::size_t j = 0; j < r; ++j) {
            const DenseVector<BigInt> col = a.entries().col(remaining[j]).cast<BigInt>();
            const DenseVector<BigInt> p = annihilator * col;
            for (Eigen::Index t = 0; t < d; ++t) {
                if (boost::multiprecision::abs(p(t)) > limit) throw InputError("matrix entries too large");
                projected[j][static_cast<std::size_t>(t)] = p(t).convert_to<std::int64_t>();
            }
        }
        std::uint64_t found = 0;
        std::vector<std::int64_t> sum(static_cast<std::size_t>(d));
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
            std::fill(sum.begin(), sum.end(), 0);
            for (std::size_t j = 0; j < r; ++j)
                if ((mask >> j) & 1U)
                    for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += projected[j][t];
            if (std::all_of(sum.begin(), sum.end(), [](std::int64_t x) { return x == 0; })) {
                found = mask;
                break;
            }
        }
        if (found == 0) return std::nullopt;
        ColumnSet block;
        ColumnSet rest;
        for (std::size_t j = 0; j < r; ++j) ((found >> j) & 1U ? block : rest).push_back(remaining[j]);
        used.insert(used.end(), block.begin(), block.end());
        std::sort(used.begin(), used.end());
        blocks.push_back(std::move(block));
        remaining = std::move(rest);
    }
    return blocks;
}

MatrixClassification classify_matrix(const IntegerMatrix& a) {
    MatrixClassification out;
    out.failing_pair = irredundancy_failure(a);
    out.irredundant = !out.failing_pair.has_value();
    if (auto blocks = columns_condition(a)) {
        out.partition_regular = true;
        out.column_blocks = std::move(*blocks);
    }
    const bool ones_in_kernel = (a.entries().rowwise().sum().array() == 0).all();
    out.density_regular = out.irredundant && out.partition_regular && ones_in_kernel;
    return out;
}

Rational threshold_exponent(const ConfigSpec& spec) {
    validate(spec);
    return std::visit(
        [](const auto& fam) -> Rational {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, ApFamily>) {
                return Rational(1, fam.k - 1);
            } else if constexpr (std::is_same_v<T, HomotheticFamily>) {
                return Rational(1, static_cast<std::int64_t>(fam.points.size()) - 1);
            } else if constexpr (std::is_same_v<T, LinearFamily>) {
                return Rational(1) / m_of_matrix(fam.matrix).m;
            } else if constexpr (std::is_same_v<T, SchurFamily>) {
                return Rational(1) / m_of_matrix(schur_matrix()).m;
            } else {
                return Rational(1) / m_of_hypergraph(fam.pattern).m;
            }
        },
        spec.family);
}

IntegerMatrix read_matrix(std::istream& in) {
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line))
            if (!line.empty() && line.front() != '#') return true;
        return false;
    };
    if (!next_line()) throw InputError("matrix file is empty");
    std::istringstream header(line);
    std::string tr, tc;
    long long rows = 0, cols = 0;
    if (!(header >> tr >> rows >> tc >> cols) || tr != "rows" || tc != "cols" || rows < 1 || cols < 1)
        throw InputError("bad matrix header: '" + line + "'");
    std::vector<std::vector<std::int64_t>> data;
    while (static_cast<long long>(data.size()) < rows) {
        if (!next_line()) throw InputError("matrix file ends early");
        std::istringstream rs(line);
        std::vector<std::int64_t> row;
        long long x = 0;
        while (rs >> x) row.push_back(x);
        if (!rs.eof() || static_cast<long long>(row.size()) != cols)
            throw InputError("bad matrix row: '" + line + "'");
        data.push_back(std::move(row));
    }
    if (next_line()) throw InputError("trailing data after matrix rows");
    return IntegerMatrix::from_rows(data);
}

IntegerMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const IntegerMatrix& a) {
    out << "rows " << a.rows() << " cols " << a.cols() << '\n';
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) out << (c == 0 ? "" : " ") << a(r, c);
        out << '\n';
    }
}

}  // namespace tlab
