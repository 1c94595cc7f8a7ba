#ifndef TLAB_TYPES_HPP
#define TLAB_TYPES_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tlab {

/// Small exact rationals: exponents, densities, epsilon thresholds.
using Rational = boost::rational<std::int64_t>;

// Expression templates disabled so these play nicely with Eigen.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                                  boost::multiprecision::et_off>;

/// Raised for malformed or out-of-contract caller input.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal mathematical guarantee does not hold for the input.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// "p/q" or "p" (integers only).
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Shortest text that reads back to the same double.
std::string format_real(double x);

inline constexpr const char* kToolName = "transference-lab";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace tlab

#endif  // TLAB_TYPES_HPP
