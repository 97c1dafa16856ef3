#include "boxlab/rational.hpp"
#include "boxlab/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace boxlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal digits only; the string constructor would read a leading 0 as octal.
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer{std::string(digits)};
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not a rational: '" + std::string(whole) + "'");
  Integer v = decimal_integer(s);
  return neg ? Integer(-v) : v;
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    Integer ev = parse_integer(es, text);
    if (abs(ev) > 4096) throw ParseError("exponent out of range in '" + std::string(text) + "'");
    exponent = ev.convert_to<long>();
    s = s.substr(0, e);
  }
  std::string digits;
  long frac = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      throw ParseError("not a rational: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac = static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ParseError("not a rational: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational v{decimal_integer(digits)};
  long shift = exponent - frac;
  if (shift >= 0)
    v *= Rational(pow10(shift));
  else
    v /= Rational(pow10(-shift));
  return neg ? Rational(-v) : v;
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value");
  return Rational(x);
}

Rational limit_denominator(const Rational& q, const Integer& max_den) {
  if (max_den < 1) throw DomainError("max_den must be positive");
  if (denominator(q) <= max_den) return q;
  const bool neg = q < 0;
  const Rational a = neg ? Rational(-q) : q;

  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = numerator(a), d = denominator(a);
  while (true) {
    Integer t = n / d;
    Integer q2 = q0 + t * q1;
    if (q2 > max_den) break;
    Integer np1 = p0 + t * p1;
    p0 = p1;
    q0 = q1;
    p1 = np1;
    q1 = q2;
    Integer r = n - t * d;
    n = d;
    d = r;
  }
  Integer k = (max_den - q0) / q1;
  Rational b1(p0 + k * p1, q0 + k * q1);
  Rational b2(p1, q1);
  Rational best = abs(b2 - a) <= abs(b1 - a) ? b2 : b1;
  return neg ? Rational(-best) : best;
}

Rational snap_rational(double x, long max_den, double tol) {
  Rational exact = exact_rational(x);
  Rational r = limit_denominator(exact, Integer(max_den));
  if (abs(r - exact) <= exact_rational(tol)) return r;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return parse_rational(buf);
}

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  Integer n = numerator(q), d = denominator(q);
  Integer sn = sqrt(n), sd = sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  root = Rational(sn, sd);
  return true;
}

}  // namespace boxlab
