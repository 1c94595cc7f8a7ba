#ifndef TLAB_EXACT_LINALG_HPP
#define TLAB_EXACT_LINALG_HPP

// Exact (integer / rational) dense linear algebra on top of Eigen containers.
//
// Two independent rank routes are provided:
//   - bareiss_rank: fraction-free elimination over BigInt; every intermediate
//     entry is an exact minor, divisions are exact.
//   - RationalEchelon: reduced row echelon form over BigRational, which also
//     yields pivot columns and a kernel basis.

#include <tlab/types.hpp>

#include <Eigen/Core>
#include <boost/multiprecision/traits/is_byte_container.hpp>

#include <type_traits>

#include <utility>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<tlab::BigInt> : GenericNumTraits<tlab::BigInt> {
    using Real = tlab::BigInt;
    using NonInteger = tlab::BigRational;
    using Literal = tlab::BigInt;
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 12,
        MulCost = 24
    };
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<tlab::BigRational> : GenericNumTraits<tlab::BigRational> {
    using Real = tlab::BigRational;
    using NonInteger = tlab::BigRational;
    using Literal = tlab::BigRational;
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 24,
        MulCost = 48
    };
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

// Eigen 3.4 dense types expose a `const_iterator` typedef that is void for
// matrices; keep Boost's byte-container probe away from them.
namespace boost::multiprecision::detail {
template <class C>
    requires std::is_base_of_v<Eigen::EigenBase<C>, C>
struct is_byte_container<C> : boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace tlab {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<std::int64_t>;
using IntVector = DenseVector<std::int64_t>;

/// Rank over Q by Bareiss fraction-free elimination. Accepts any integral
/// scalar convertible to BigInt.
template <typename Derived>
Eigen::Index bareiss_rank(const Eigen::MatrixBase<Derived>& a) {
    DenseMatrix<BigInt> m = a.template cast<BigInt>();
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    BigInt prev_pivot = 1;
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
        Eigen::Index pivot_row = -1;
        for (Eigen::Index r = rank; r < rows; ++r) {
            if (m(r, col) != 0) {
                pivot_row = r;
                break;
            }
        }
        if (pivot_row < 0) continue;
        if (pivot_row != rank) m.row(pivot_row).swap(m.row(rank));
        const BigInt pivot = m(rank, col);
        for (Eigen::Index r = rank + 1; r < rows; ++r) {
            for (Eigen::Index c = col + 1; c < cols; ++c)
                m(r, c) = (pivot * m(r, c) - m(r, col) * m(rank, c)) / prev_pivot;
            m(r, col) = 0;
        }
        prev_pivot = pivot;
        ++rank;
    }
    return rank;
}

/// Reduced row echelon form over Q.
class RationalEchelon {
public:
    template <typename Derived>
    explicit RationalEchelon(const Eigen::MatrixBase<Derived>& a)
        : rref_(a.template cast<BigRational>()) {
        reduce();
    }

    const DenseMatrix<BigRational>& matrix() const { return rref_; }
    const std::vector<Eigen::Index>& pivots() const { return pivots_; }
    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots_.size()); }

    /// Columns without a pivot, increasing.
    std::vector<Eigen::Index> free_columns() const;

    /// Kernel basis as columns (cols x nullity), one column per free variable,
    /// scaled to primitive integer vectors.
    DenseMatrix<BigInt> kernel_basis() const;

private:
    void reduce();

    DenseMatrix<BigRational> rref_;
    std::vector<Eigen::Index> pivots_;
};

/// Columns of a selected by index, in the given order.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> select_columns(const Eigen::MatrixBase<Derived>& a,
                                                     const std::vector<Eigen::Index>& cols) {
    DenseMatrix<typename Derived::Scalar> out(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = a.col(cols[j]);
    return out;
}

/// Primitive integer multiple of a rational vector (gcd 1, first nonzero positive).
DenseVector<BigInt> primitive_integer_vector(const DenseVector<BigRational>& v);

}  // namespace tlab

#endif  // TLAB_EXACT_LINALG_HPP
