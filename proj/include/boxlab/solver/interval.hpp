#pragma once

#include "boxlab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace boxlab {

template <class Scalar>
struct Rounding;

// Outward rounding by one ulp after every operation.
template <>
struct Rounding<double> {
  static double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
  static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
  static double from(const Rational& q) { return to_double(q); }
};

template <>
struct Rounding<Rational> {
  static const Rational& down(const Rational& v) { return v; }
  static const Rational& up(const Rational& v) { return v; }
  static Rational from(const Rational& q) { return q; }
};

template <class Scalar>
struct Interval {
  using R = Rounding<Scalar>;
  Scalar lo{}, hi{};

  Interval() = default;
  Interval(Scalar l, Scalar h) : lo(std::move(l)), hi(std::move(h)) {}

  // Enclosure of an exact rational.
  static Interval enclose(const Rational& q) {
    Scalar v = R::from(q);
    return {R::down(v), R::up(v)};
  }
  static Interval enclose(const Rational& l, const Rational& h) {
    return {R::down(R::from(l)), R::up(R::from(h))};
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {R::down(a.lo + b.lo), R::up(a.hi + b.hi)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {R::down(a.lo - b.hi), R::up(a.hi - b.lo)};
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Scalar p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {R::down(*std::min_element(p, p + 4)), R::up(*std::max_element(p, p + 4))};
  }

  bool contains_zero() const { return lo <= Scalar(0) && hi >= Scalar(0); }

  // Smallest absolute value over the interval (exact, no rounding needed).
  Scalar mig() const {
    if (contains_zero()) return Scalar(0);
    return lo > Scalar(0) ? lo : Scalar(-hi);
  }
  Scalar mag() const { return std::max(lo < Scalar(0) ? Scalar(-lo) : lo, hi < Scalar(0) ? Scalar(-hi) : hi); }

  // Lower bound of v^2 for v in the interval; upper bound of v^2.
  Scalar sq_lower() const {
    Scalar m = mig();
    return m == Scalar(0) ? m : R::down(m * m);
  }
  Scalar sq_upper() const { Scalar m = mag(); return R::up(m * m); }
};

}  // namespace boxlab
