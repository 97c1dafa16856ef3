#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace boxlab {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXq = MatrixX<Rational>;
using VectorXq = VectorX<Rational>;

// Accepts "p/q", integers and decimals ("0.125", "-1.5e-3"); exact.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Exact value of a binary double.
Rational exact_rational(double x);

// Closest rational with denominator at most max_den (continued fractions).
Rational limit_denominator(const Rational& q, const Integer& max_den);

// Snap rule: nearest rational with denominator <= max_den if within tol,
// otherwise the decimal rationalization of x written to 17 digits.
Rational snap_rational(double x, long max_den = 1000000, double tol = 1e-9);

// Exact square root when q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& root);

inline Rational sq(const Rational& q) { return q * q; }

template <class Scalar>
inline Scalar scalar_cast(const Rational& q);
template <>
inline Rational scalar_cast<Rational>(const Rational& q) { return q; }
template <>
inline double scalar_cast<double>(const Rational& q) { return to_double(q); }


}  // namespace boxlab
