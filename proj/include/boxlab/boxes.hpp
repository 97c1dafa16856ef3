#pragma once

#include "boxlab/errors.hpp"
#include "boxlab/rational.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace boxlab {

// One party's conditional table t(s, o) = p(o|s), stored at index 2s + o.
template <class Scalar>
class BasicTable {
public:
  BasicTable() { t_.fill(Scalar(0)); }
  explicit BasicTable(const std::array<Scalar, 4>& t) : t_(t) {}

  // Table from the probabilities of outcome 0 in settings 0 and 1.
  static BasicTable from_zero(const Scalar& t00, const Scalar& t10) {
    return BasicTable({t00, Scalar(1) - t00, t10, Scalar(1) - t10});
  }

  const Scalar& operator()(int s, int o) const { return t_[2 * s + o]; }
  Scalar& operator()(int s, int o) { return t_[2 * s + o]; }
  const std::array<Scalar, 4>& data() const { return t_; }

  // Expectation of the +/-1 observable (outcome 0 -> +1) for setting s.
  Scalar expectation(int s) const { return (*this)(s, 0) - (*this)(s, 1); }

  friend bool operator==(const BasicTable& a, const BasicTable& b) { return a.t_ == b.t_; }

private:
  std::array<Scalar, 4> t_;
};

// p(ab|xy) stored at index 8x + 4y + 2a + b: rows (x,y), columns (a,b).
template <class Scalar>
class BasicBox {
public:
  BasicBox() { p_.fill(Scalar(0)); }
  explicit BasicBox(const std::array<Scalar, 16>& p) : p_(p) {}

  static constexpr int index(int x, int y, int a, int b) { return 8 * x + 4 * y + 2 * a + b; }

  const Scalar& operator()(int x, int y, int a, int b) const { return p_[index(x, y, a, b)]; }
  Scalar& operator()(int x, int y, int a, int b) { return p_[index(x, y, a, b)]; }
  const std::array<Scalar, 16>& data() const { return p_; }

  friend bool operator==(const BasicBox& l, const BasicBox& r) { return l.p_ == r.p_; }

private:
  std::array<Scalar, 16> p_;
};

using SingleTable = BasicTable<Rational>;
using Box222 = BasicBox<Rational>;
using TableD = BasicTable<double>;
using BoxD = BasicBox<double>;

// Response o = alpha * s XOR beta.
struct DetStrategy {
  int alpha = 0;
  int beta = 0;

  int response(int s) const { return (alpha * s) ^ beta; }
  int index() const { return 2 * alpha + beta; }
  static DetStrategy from_index(int i) { return {(i >> 1) & 1, i & 1}; }
  friend bool operator==(const DetStrategy&, const DetStrategy&) = default;
  friend auto operator<=>(const DetStrategy& a, const DetStrategy& b) { return a.index() <=> b.index(); }
};

// x -> x ^ flip_x and a -> a ^ a_alpha x ^ a_beta (Bob likewise).
struct LroRelabeling {
  int flip_x = 0, flip_y = 0;
  int a_alpha = 0, a_beta = 0;
  int b_gamma = 0, b_epsilon = 0;
};

// Marginal expectations and correlators; outcome 0 counts as +1.
template <class Scalar>
struct NsCoords {
  std::array<Scalar, 2> ma{};
  std::array<Scalar, 2> mb{};
  std::array<std::array<Scalar, 2>, 2> corr{};
};

Box222 make_box(const std::array<Rational, 16>& entries);
// Validates exact normalization and range.
void validate_box(const Box222& box);
void validate_table(const SingleTable& t);

template <class Scalar>
Scalar correlator(const BasicBox<Scalar>& box, int x, int y) {
  return box(x, y, 0, 0) - box(x, y, 0, 1) - box(x, y, 1, 0) + box(x, y, 1, 1);
}

// Marginals taken at a fixed remote setting; no no-signalling check.
template <class Scalar>
BasicTable<Scalar> alice_marginal_at(const BasicBox<Scalar>& box, int y) {
  BasicTable<Scalar> t;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) t(x, a) = box(x, y, a, 0) + box(x, y, a, 1);
  return t;
}

template <class Scalar>
BasicTable<Scalar> bob_marginal_at(const BasicBox<Scalar>& box, int x) {
  BasicTable<Scalar> t;
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) t(y, b) = box(x, y, 0, b) + box(x, y, 1, b);
  return t;
}

SingleTable marginal_alice(const Box222& box);
SingleTable marginal_bob(const Box222& box);
bool is_no_signalling(const Box222& box);

// NS coordinates; Alice uses y = 0 and Bob uses x = 0 for the marginals.
template <class Scalar>
NsCoords<Scalar> ns_coords(const BasicBox<Scalar>& box) {
  NsCoords<Scalar> c;
  auto ta = alice_marginal_at(box, 0);
  auto tb = bob_marginal_at(box, 0);
  for (int s = 0; s < 2; ++s) {
    c.ma[s] = ta.expectation(s);
    c.mb[s] = tb.expectation(s);
  }
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) c.corr[x][y] = correlator(box, x, y);
  return c;
}

template <class Scalar>
BasicBox<Scalar> box_from_ns(const NsCoords<Scalar>& c) {
  BasicBox<Scalar> box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Scalar sa = a ? Scalar(-1) : Scalar(1), sb = b ? Scalar(-1) : Scalar(1);
          box(x, y, a, b) = (Scalar(1) + sa * c.ma[x] + sb * c.mb[y] + sa * sb * c.corr[x][y]) / Scalar(4);
        }
  return box;
}

template <class Scalar>
BasicBox<Scalar> product_box(const BasicTable<Scalar>& alice, const BasicTable<Scalar>& bob) {
  BasicBox<Scalar> box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) box(x, y, a, b) = alice(x, a) * bob(y, b);
  return box;
}

template <class Scalar>
Scalar max_abs_difference(const BasicBox<Scalar>& l, const BasicBox<Scalar>& r) {
  Scalar m(0);
  for (int i = 0; i < 16; ++i) {
    Scalar d = l.data()[i] - r.data()[i];
    if (d < Scalar(0)) d = -d;
    if (d > m) m = d;
  }
  return m;
}

SingleTable deterministic_table(DetStrategy s);
std::array<DetStrategy, 4> all_strategies();

Box222 deterministic_box(int alpha, int beta, int gamma, int epsilon);
Box222 pr_box(int alpha, int beta, int gamma);
Box222 maximally_mixed_box();
Box222 bb84_box(const Rational& V);
Box222 example2_box();

Box222 lro_apply(const Box222& box, const LroRelabeling& r);
LroRelabeling inverse(const LroRelabeling& r);

Box222 mix(const std::vector<Box222>& boxes, const std::vector<Rational>& weights);

BoxD to_double(const Box222& box);

}  // namespace boxlab
