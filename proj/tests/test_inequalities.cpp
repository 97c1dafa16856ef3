#include "boxlab/inequalities.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace boxlab;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

Box222 det(int k) { return deterministic_box(k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1); }

// Direct sum over the sixteen entries, independent of the correlator helper.
Rational chsh_by_entries(const Box222& b, const ChshId& id) {
  Rational total = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int sign_bit = (id.alpha & x) ^ (id.beta & y) ^ id.gamma ^ (x & y);
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) {
          const int bit = sign_bit ^ a ^ c;
          total += (bit ? -1 : 1) * b(x, y, a, c);
        }
    }
  return total;
}

}  // namespace

TEST_CASE("CHSH values") {
  for (const Rational V : {q(1, 4), q(1, 2), q(1)}) CHECK(chsh_value(bb84_box(V), ChshId{}) == 2 * V);
  CHECK(chsh_value(pr_box(0, 0, 0), ChshId{}) == 4);
  for (const auto& id : all_chsh_ids()) CHECK(chsh_value(maximally_mixed_box(), id) == 0);
  CHECK(chsh_max(bb84_box(q(1, 2))) == 1);
  CHECK(chsh_max(example2_box()) == 1);
  for (int k = 0; k < 16; ++k) CHECK(chsh_max(det(k)) == 2);
  CHECK(all_chsh_ids().size() == 8);
}

TEST_CASE("CHSH family matches the entrywise definition") {
  for (const Box222& b : {example2_box(), bb84_box(q(3, 7)), pr_box(1, 0, 1), det(9)})
    for (const auto& id : all_chsh_ids()) CHECK(chsh_value(b, id) == chsh_by_entries(b, id));
  // Each PR box saturates exactly one member at 4.
  for (int i = 0; i < 8; ++i) {
    int hits = 0;
    for (const auto& id : all_chsh_ids()) hits += chsh_value(pr_box(i >> 2 & 1, i >> 1 & 1, i & 1), id) == 4;
    CHECK(hits == 1);
  }
}

TEST_CASE("Bell locality by exact LP") {
  for (const Rational V : {q(1, 4), q(1, 2), q(7, 10), q(9, 10), q(1)}) {
    const auto r = is_bell_local_lp(bb84_box(V));
    REQUIRE(r.local);
    std::vector<Box222> vs;
    std::vector<Rational> ws;
    for (int k = 0; k < 16; ++k) {
      CHECK(r.weights[k] >= 0);
      vs.push_back(det(k));
      ws.push_back(r.weights[k]);
    }
    CHECK(mix(vs, ws) == bb84_box(V));
  }
  const auto pr = is_bell_local_lp(pr_box(0, 0, 0));
  CHECK_FALSE(pr.local);
  REQUIRE(pr.farkas);
  CHECK(verify_farkas(pr.lp, *pr.farkas));

  const Box222 known = mix({det(0), det(5), det(14)}, {q(1, 2), q(1, 3), q(1, 6)});
  const auto r = is_bell_local_lp(known);
  REQUIRE(r.local);
  std::vector<Box222> vs;
  std::vector<Rational> ws;
  for (int k = 0; k < 16; ++k) {
    vs.push_back(det(k));
    ws.push_back(r.weights[k]);
  }
  CHECK(mix(vs, ws) == known);
  CHECK(is_bell_local_lp(example2_box()).local);
}

TEST_CASE("CHSH above 2 excludes a local model") {
  // Mixtures of PR and noise: nonlocal iff 4t + 0 (1 - t) > 2.
  for (const Rational t : {q(1, 4), q(1, 2), q(9, 16), q(3, 4)}) {
    const Box222 b = mix({pr_box(0, 0, 0), maximally_mixed_box()}, {t, 1 - t});
    const auto r = is_bell_local_lp(b);
    CHECK(r.local == (chsh_max(b) <= 2));
    if (!r.local) CHECK(verify_farkas(r.lp, *r.farkas));
  }
}

TEST_CASE("steering functional") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> den(1, 1000);
  for (int k = 0; k < 100; ++k) {
    const long d = den(rng);
    const long n = std::uniform_int_distribution<long>(1, d)(rng);
    const Rational V(n, d);
    CHECK(std::abs(steering_functional(bb84_box(V)) - 2 * std::sqrt(2.0) * to_double(V)) < 1e-12);
  }
  CHECK(steering_functional(example2_box()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(steering_functional(maximally_mixed_box()) == 0.0);
  CHECK(steering_functional(to_double(example2_box())) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("exact unsteerability threshold") {
  CHECK(is_unsteerable_mub(bb84_box(q(7, 10))));
  CHECK_FALSE(is_unsteerable_mub(bb84_box(q(3, 4))));
  CHECK(is_unsteerable_mub(example2_box()));
  CHECK(is_unsteerable_mub(maximally_mixed_box()));
  CHECK_FALSE(is_unsteerable_mub(pr_box(0, 0, 0)));
  // Best rational approximations of 1/sqrt2 from both sides: 8 V^2 vs 4.
  for (const Rational V : {q(70710678, 100000000), q(7071067811, 10000000000), q(41, 58), q(239, 338)}) {
    CHECK(8 * V * V < 4);
    CHECK(is_unsteerable_mub(bb84_box(V)));
  }
  for (const Rational V : {q(70710679, 100000000), q(7071067812, 10000000000), q(99, 140), q(577, 816)}) {
    CHECK(8 * V * V > 4);
    CHECK_FALSE(is_unsteerable_mub(bb84_box(V)));
  }
  // A boundary case with rational square roots: radicands 1 and 1 give exactly 2.
  const Box222 edge = mix({pr_box(0, 0, 0), maximally_mixed_box()}, {q(1, 2), q(1, 2)});
  CHECK(steering_functional(edge) == doctest::Approx(2.0));
  CHECK(is_unsteerable_mub(edge));
}

TEST_CASE("LRO invariance of chsh_max") {
  for (int i = 0; i < 64; ++i) {
    LroRelabeling r{i & 1, i >> 1 & 1, i >> 2 & 1, i >> 3 & 1, i >> 4 & 1, i >> 5 & 1};
    CHECK(chsh_max(lro_apply(example2_box(), r)) == chsh_max(example2_box()));
    CHECK(chsh_max(lro_apply(bb84_box(q(2, 3)), r)) == chsh_max(bb84_box(q(2, 3))));
  }
}
