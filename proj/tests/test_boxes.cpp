#include "boxlab/boxes.hpp"
#include "boxlab/inequalities.hpp"

#include <doctest.h>

using namespace boxlab;

namespace {

const Rational q(int n, int d = 1) { return Rational(n, d); }

// Independent evaluation of the BB84 family: (1 + (-1)^(a^b^xy) [x == y] V) / 4.
Rational bb84_entry(const Rational& V, int x, int y, int a, int b) {
  if (x != y) return q(1, 4);
  const int sign = ((a ^ b ^ (x & y)) & 1) ? -1 : 1;
  return (1 + sign * V) / 4;
}

Box222 uniform() {
  std::array<Rational, 16> e;
  e.fill(q(1, 4));
  return make_box(e);
}

}  // namespace

TEST_CASE("make_box validates normalization and range") {
  CHECK(uniform() == maximally_mixed_box());
  std::array<Rational, 16> e;
  e.fill(q(1, 4));
  e[0] = q(3, 8);  // block (0,0) sums to 9/8
  CHECK_THROWS_AS(make_box(e), NormalizationError);
  e.fill(q(1, 4));
  e[0] = q(-1, 4);
  e[1] = q(3, 4);
  CHECK_THROWS_AS(make_box(e), RangeError);
}

TEST_CASE("bb84_box matches the closed form") {
  for (const Rational V : {q(1, 4), q(1, 2), q(7, 10), q(1)}) {
    const Box222 b = bb84_box(V);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int c = 0; c < 2; ++c) CHECK(b(x, y, a, c) == bb84_entry(V, x, y, a, c));
  }
  const Box222 h = bb84_box(q(1, 2));
  CHECK(h(0, 0, 0, 0) == q(3, 8));
  CHECK(h(0, 0, 0, 1) == q(1, 8));
  CHECK(h(0, 0, 1, 0) == q(1, 8));
  CHECK(h(0, 0, 1, 1) == q(3, 8));
  CHECK(bb84_box(q(1))(0, 0, 0, 0) == q(1, 2));
  CHECK(bb84_box(q(1))(0, 0, 0, 1) == 0);
  CHECK_THROWS_AS(bb84_box(q(0)), DomainError);
  CHECK_THROWS_AS(bb84_box(q(11, 10)), DomainError);
}

TEST_CASE("example2_box is the fixed table") {
  const Box222 b = example2_box();
  const std::array<Rational, 16> want{q(5, 8), q(1, 8), q(1, 8), q(1, 8), q(1, 2), q(1, 4), q(1, 4), q(0),
                                      q(1, 2), q(1, 4), q(1, 4), q(0),    q(5, 8), q(1, 8), q(1, 8), q(1, 8)};
  CHECK(b.data() == want);
  CHECK(b(0, 1, 1, 1) == 0);
  CHECK(is_no_signalling(b));
  // Row sums of the table: p(0|x) = 5/8 + 1/8 = 3/4 on both sides.
  CHECK(marginal_alice(b) == SingleTable::from_zero(q(3, 4), q(3, 4)));
  CHECK(marginal_bob(b) == SingleTable::from_zero(q(3, 4), q(3, 4)));
}

TEST_CASE("marginals") {
  const SingleTable half = SingleTable::from_zero(q(1, 2), q(1, 2));
  CHECK(marginal_alice(bb84_box(q(1, 2))) == half);
  CHECK(marginal_bob(bb84_box(q(7, 10))) == half);
  CHECK(marginal_bob(pr_box(0, 0, 0)) == half);
  CHECK(marginal_alice(deterministic_box(0, 0, 0, 0)) == SingleTable::from_zero(q(1), q(1)));

  std::array<Rational, 16> e;
  e.fill(q(1, 4));
  // Block (0,1): Alice's p(0|0) becomes 1/2 + 1/4 = 3/4, unlike 1/2 in block (0,0).
  e[4] = q(1, 2);
  e[6] = q(0);
  const Box222 sig = make_box(e);
  CHECK_FALSE(is_no_signalling(sig));
  CHECK_THROWS_AS(marginal_alice(sig), SignallingError);
}

TEST_CASE("deterministic boxes factorize") {
  for (int i = 0; i < 16; ++i) {
    const int al = i >> 3 & 1, be = i >> 2 & 1, ga = i >> 1 & 1, ep = i & 1;
    const Box222 d = deterministic_box(al, be, ga, ep);
    CHECK(is_no_signalling(d));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const bool hit = a == ((al * x) ^ be) && b == ((ga * y) ^ ep);
            CHECK(d(x, y, a, b) == (hit ? 1 : 0));
          }
  }
  const Box222 d = deterministic_box(1, 0, 1, 0);
  CHECK(d(1, 0, 1, 0) == 1);
  CHECK(d(1, 1, 1, 1) == 1);
  CHECK(d(0, 1, 0, 1) == 1);
}

TEST_CASE("uniform mixture of the 16 deterministic boxes is maximally mixed") {
  std::vector<Box222> all;
  for (int i = 0; i < 16; ++i) all.push_back(deterministic_box(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1));
  CHECK(mix(all, std::vector<Rational>(16, q(1, 16))) == maximally_mixed_box());
}

TEST_CASE("PR boxes") {
  for (int i = 0; i < 8; ++i) {
    const int al = i >> 2 & 1, be = i >> 1 & 1, ga = i & 1;
    const Box222 p = pr_box(al, be, ga);
    CHECK(is_no_signalling(p));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const bool on = (a ^ b) == ((x & y) ^ (al & x) ^ (be & y) ^ ga);
            CHECK(p(x, y, a, b) == (on ? q(1, 2) : q(0)));
          }
    CHECK(chsh_max(p) == 4);
  }
  CHECK(pr_box(0, 0, 0)(0, 0, 0, 0) == q(1, 2));
  CHECK(pr_box(0, 0, 0)(0, 0, 0, 1) == 0);
}

TEST_CASE("BB84 is a PR mixture plus white noise") {
  const Box222 pr_half = mix({pr_box(0, 0, 0), pr_box(1, 1, 0)}, {q(1, 2), q(1, 2)});
  for (const Rational V : {q(1, 4), q(1, 2), q(9, 10)})
    CHECK(mix({pr_half, maximally_mixed_box()}, {V, 1 - V}) == bb84_box(V));
}

TEST_CASE("eight deterministic boxes average to a half PR plus half noise") {
  // P_D^{alpha beta gamma (not-alpha not-gamma xor beta)} over alpha, beta, gamma.
  std::vector<Box222> dets;
  for (int i = 0; i < 8; ++i) {
    const int al = i >> 2 & 1, be = i >> 1 & 1, ga = i & 1;
    dets.push_back(deterministic_box(al, be, ga, ((1 - al) & (1 - ga)) ^ be));
  }
  CHECK(mix(dets, std::vector<Rational>(8, q(1, 8))) ==
        mix({pr_box(1, 1, 0), maximally_mixed_box()}, {q(1, 2), q(1, 2)}));
}

TEST_CASE("half PR plus half noise") {
  const Box222 m = mix({pr_box(0, 0, 0), maximally_mixed_box()}, {q(1, 2), q(1, 2)});
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          CHECK(m(x, y, a, b) == (((a ^ b) == (x & y)) ? q(3, 8) : q(1, 8)));
  CHECK(mix({example2_box()}, {q(1)}) == example2_box());
  CHECK_THROWS_AS(mix({example2_box(), pr_box(0, 0, 0)}, {q(1, 2), q(1, 3)}), WeightError);
  CHECK_THROWS_AS(mix({example2_box(), pr_box(0, 0, 0)}, {q(3, 2), q(-1, 2)}), WeightError);
  CHECK_THROWS_AS(mix({example2_box()}, {q(1, 2), q(1, 2)}), WeightError);
}

TEST_CASE("correlators") {
  for (const Rational V : {q(1, 3), q(1, 2)}) {
    const Box222 b = bb84_box(V);
    CHECK(correlator(b, 0, 0) == V);
    CHECK(correlator(b, 1, 1) == -V);
    CHECK(correlator(b, 0, 1) == 0);
    CHECK(correlator(b, 1, 0) == 0);
  }
  const Box222 e = example2_box();
  CHECK(correlator(e, 0, 0) == q(1, 2));
  CHECK(correlator(e, 0, 1) == 0);
  CHECK(correlator(e, 1, 1) == q(1, 2));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(correlator(maximally_mixed_box(), x, y) == 0);
  // Linearity under mix.
  const Box222 m = mix({e, pr_box(1, 0, 1)}, {q(1, 3), q(2, 3)});
  CHECK(correlator(m, 1, 0) == q(1, 3) * correlator(e, 1, 0) + q(2, 3) * correlator(pr_box(1, 0, 1), 1, 0));
}

TEST_CASE("NS coordinates round trip") {
  for (const Box222& b : {example2_box(), bb84_box(q(3, 7)), pr_box(1, 1, 1), deterministic_box(1, 1, 0, 1)})
    CHECK(box_from_ns(ns_coords(b)) == b);
}

TEST_CASE("local relabelings") {
  const Box222 e = example2_box();
  CHECK(lro_apply(e, LroRelabeling{}) == e);
  LroRelabeling flip_a;
  flip_a.a_beta = 1;
  CHECK(lro_apply(pr_box(0, 0, 0), flip_a) == pr_box(0, 0, 1));
  for (int i = 0; i < 64; ++i) {
    LroRelabeling r{i & 1, i >> 1 & 1, i >> 2 & 1, i >> 3 & 1, i >> 4 & 1, i >> 5 & 1};
    CHECK(lro_apply(lro_apply(e, r), inverse(r)) == e);
    CHECK(lro_apply(lro_apply(e, inverse(r)), r) == e);
    CHECK(is_no_signalling(lro_apply(e, r)));
    CHECK(chsh_max(lro_apply(e, r)) == chsh_max(e));
    // Vertices stay vertices of the same class.
    const Box222 d = lro_apply(deterministic_box(1, 0, 0, 1), r);
    bool is_det = false;
    for (int k = 0; k < 16; ++k) is_det = is_det || d == deterministic_box(k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1);
    CHECK(is_det);
    const Box222 p = lro_apply(pr_box(0, 1, 0), r);
    bool is_pr = false;
    for (int k = 0; k < 8; ++k) is_pr = is_pr || p == pr_box(k >> 2 & 1, k >> 1 & 1, k & 1);
    CHECK(is_pr);
  }
}

TEST_CASE("strategies") {
  CHECK(deterministic_table(DetStrategy{1, 0}) == SingleTable::from_zero(q(1), q(0)));
  CHECK(deterministic_table(DetStrategy{0, 1}) == SingleTable::from_zero(q(0), q(0)));
  for (int i = 0; i < 4; ++i) CHECK(DetStrategy::from_index(i).index() == i);
  CHECK(all_strategies().size() == 4);
}
