#ifndef TLAB_MATRIX_LAB_HPP
#define TLAB_MATRIX_LAB_HPP

#include <tlab/exact_linalg.hpp>
#include <tlab/types.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tlab {

/// Column indices, 0-based and increasing.
using ColumnSet = std::vector<Eigen::Index>;

/// Exact l x k integer matrix with its rank over Q.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    explicit IntegerMatrix(IntMatrix entries);

    static IntegerMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    Eigen::Index rows() const { return entries_.rows(); }
    Eigen::Index cols() const { return entries_.cols(); }
    const IntMatrix& entries() const { return entries_; }
    std::int64_t operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }
    Eigen::Index rank() const { return rank_; }

    std::vector<std::vector<std::int64_t>> to_rows() const;

    bool operator==(const IntegerMatrix& other) const { return entries_ == other.entries_; }

private:
    IntMatrix entries_;
    Eigen::Index rank_ = 0;
};

/// The (k-2) x k second-difference matrix whose distinct-valued solutions are k-term APs.
IntegerMatrix ap_matrix(unsigned k);

/// The 1 x 3 matrix (1 1 -1) of the equation x + y = z.
IntegerMatrix schur_matrix();

/// Rank of the column restriction A_Wbar; 0 for the empty set.
Eigen::Index rank_restricted(const IntegerMatrix& a, const ColumnSet& wbar);

struct MatrixDensity {
    Rational m;
    ColumnSet w;     ///< arg-max W (|W| >= 2)
    ColumnSet wbar;  ///< complement of W
    std::vector<std::string> warnings;
};

/// max over column partitions W | Wbar with |W| >= 2 of
///   (|W| - 1) / (|W| - 1 + rank(A_Wbar) - rank(A)).
/// Requires A irredundant and partition regular.
MatrixDensity m_of_matrix(const IntegerMatrix& a);

/// The same maximization without the class check. Throws ContractViolation
/// naming the first partition whose denominator is not positive.
MatrixDensity maximize_density_ratio(const IntegerMatrix& a);

struct MatrixClassification {
    bool irredundant = false;
    bool partition_regular = false;
    bool density_regular = false;
    /// Pair (i, j) with ker(A) inside {x_i = x_j}, when not irredundant.
    std::optional<std::pair<Eigen::Index, Eigen::Index>> failing_pair;
    /// Ordered column blocks satisfying the columns condition, when partition regular.
    std::vector<ColumnSet> column_blocks;
};

MatrixClassification classify_matrix(const IntegerMatrix& a);

/// Decides irredundancy over Q; returns the first failing pair if any.
std::optional<std::pair<Eigen::Index, Eigen::Index>> irredundancy_failure(const IntegerMatrix& a);

/// Rado's columns condition. Returns the block sequence, or nullopt.
std::optional<std::vector<ColumnSet>> columns_condition(const IntegerMatrix& a);

struct ConfigSpec;

/// theta with p_n = n^(-theta) for the configuration family.
Rational threshold_exponent(const ConfigSpec& spec);

// Text format: "rows <l> cols <k>" then l rows of k integers.
IntegerMatrix read_matrix(std::istream& in);
IntegerMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const IntegerMatrix& a);

}  // namespace tlab

#endif  // TLAB_MATRIX_LAB_HPP
