#include <tlab/exact_linalg.hpp>

#include <boost/integer/common_factor.hpp>

namespace tlab {

void RationalEchelon::reduce() {
    const Eigen::Index rows = rref_.rows();
    const Eigen::Index cols = rref_.cols();
    Eigen::Index lead = 0;
    for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
        Eigen::Index pivot_row = -1;
        for (Eigen::Index r = lead; r < rows; ++r) {
            if (rref_(r, col) != 0) {
                pivot_row = r;
                break;
            }
        }
        if (pivot_row < 0) continue;
        if (pivot_row != lead) rref_.row(pivot_row).swap(rref_.row(lead));
        const BigRational inv = BigRational(1) / rref_(lead, col);
        for (Eigen::Index c = col; c < cols; ++c) rref_(lead, c) *= inv;
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == lead || rref_(r, col) == 0) continue;
            const BigRational factor = rref_(r, col);
            for (Eigen::Index c = col; c < cols; ++c) rref_(r, c) -= factor * rref_(lead, c);
        }
        pivots_.push_back(col);
        ++lead;
    }
}

std::vector<Eigen::Index> RationalEchelon::free_columns() const {
    std::vector<Eigen::Index> out;
    std::size_t p = 0;
    for (Eigen::Index c = 0; c < rref_.cols(); ++c) {
        if (p < pivots_.size() && pivots_[p] == c)
            ++p;
        else
            out.push_back(c);
    }
    return out;
}

DenseMatrix<BigInt> RationalEchelon::kernel_basis() const {
    const auto free = free_columns();
    const Eigen::Index cols = rref_.cols();
    DenseMatrix<BigInt> basis(cols, static_cast<Eigen::Index>(free.size()));
    for (std::size_t j = 0; j < free.size(); ++j) {
        DenseVector<BigRational> v = DenseVector<BigRational>::Zero(cols);
        v(free[j]) = 1;
        for (std::size_t r = 0; r < pivots_.size(); ++r)
            v(pivots_[r]) = -rref_(static_cast<Eigen::Index>(r), free[j]);
        basis.col(static_cast<Eigen::Index>(j)) = primitive_integer_vector(v);
    }
    return basis;
}

DenseVector<BigInt> primitive_integer_vector(const DenseVector<BigRational>& v) {
    BigInt lcm_den = 1;
    for (Eigen::Index j = 0; j < v.size(); ++j)
        lcm_den = boost::integer::lcm(lcm_den, BigInt(boost::multiprecision::denominator(v(j))));
    DenseVector<BigInt> out(v.size());
    BigInt g = 0;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const BigRational scaled = v(j) * BigRational(lcm_den);
        out(j) = BigInt(boost::multiprecision::numerator(scaled));
        g = boost::integer::gcd(g, out(j));
    }
    if (g == 0) return out;
    if (g < 0) g = -g;
    for (Eigen::Index j = 0; j < out.size(); ++j) out(j) /= g;
    for (Eigen::Index j = 0; j < out.size(); ++j) {
        if (out(j) == 0) continue;
        if (out(j) < 0) out = -out;
        break;
    }
    return out;
}

}  // namespace tlab
