#include "boxlab/realizability.hpp"

#include <doctest.h>

#include <cmath>

using namespace boxlab;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
SingleTable tz(const Rational& t00, const Rational& t10) { return SingleTable::from_zero(t00, t10); }

double table_gap(const TableD& a, const SingleTable& b) {
  double g = 0;
  for (int s = 0; s < 2; ++s)
    for (int o = 0; o < 2; ++o) g = std::max(g, std::abs(a(s, o) - to_double(b(s, o))));
  return g;
}

}  // namespace

TEST_CASE("disc values") {
  for (const Rational V : {q(1, 4), q(1, 2), q(7, 10), q(9, 10)}) {
    const SingleTable t = tz((1 + V) / 2, (1 - V) / 2);
    CHECK(mub_disc(t) == 2 * V * V - 1);
    CHECK(is_mub_realizable(t) == (2 * V * V <= 1));
  }
  CHECK(mub_disc(tz(q(3, 4), q(3, 4))) == q(-1, 2));
  CHECK(mub_disc(tz(q(1), q(1))) == 1);
  CHECK_FALSE(is_mub_realizable(tz(q(1), q(1))));
  CHECK(mub_disc(tz(q(1), q(1, 2))) == 0);
  CHECK(is_mub_realizable(tz(q(1), q(1, 2))));
  CHECK(is_mub_realizable(tz(q(1, 2), q(1))));
  CHECK_FALSE(is_mub_realizable(tz(q(1), q(0))));
  CHECK(mub_disc(tz(q(1, 2), q(1, 2))) == -1);
}

TEST_CASE("disc is unchanged by outcome flips") {
  for (const auto& t : {tz(q(3, 4), q(1, 3)), tz(q(1, 5), q(9, 10)), tz(q(1), q(1, 2))}) {
    const SingleTable flip0 = tz(t(0, 1), t(1, 0));
    const SingleTable flip1 = tz(t(0, 0), t(1, 1));
    CHECK(mub_disc(flip0) == mub_disc(t));
    CHECK(mub_disc(flip1) == mub_disc(t));
  }
}

TEST_CASE("pure state reconstruction") {
  // BB84 pattern at V = 1/2: cos phi = -V / sqrt(1 - V^2) = -1/sqrt3.
  const Rational V = q(1, 2);
  const ReconstructedState s = reconstruct_pure_state(tz((1 + V) / 2, (1 - V) / 2));
  CHECK(s.phase_cos == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(s.phase_cos_sq == q(1, 3));
  CHECK(s.cos_sign == -1);
  CHECK(s.amp0 == doctest::Approx(std::sqrt(0.75)));
  CHECK(s.amp1 == doctest::Approx(0.5));

  const ReconstructedState p0 = reconstruct_pure_state(tz(q(3, 4), q(3, 4)));
  CHECK(p0.phase_cos == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(p0.phase_cos_sq == q(1, 3));

  const ReconstructedState p2 = reconstruct_pure_state(tz(q(1, 2), q(1)));
  CHECK(p2.amp0 == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(p2.amp1 == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(p2.phase_cos == doctest::Approx(1.0));

  const ReconstructedState up = reconstruct_pure_state(tz(q(1), q(1, 2)));
  CHECK(up.degenerate);
  CHECK(up.amp0 == 1.0);
  CHECK(up.phase_cos == 0.0);
  const ReconstructedState down = reconstruct_pure_state(tz(q(0), q(1, 2)));
  CHECK(down.amp1 == 1.0);

  for (const auto& t : {tz((1 + V) / 2, (1 - V) / 2), tz(q(3, 4), q(3, 4)), tz(q(1, 2), q(1)), tz(q(1), q(1, 2)),
                        tz(q(1, 2), q(1, 2)), tz(q(2, 7), q(1, 9))}) {
    const ReconstructedState r = reconstruct_pure_state(t);
    CHECK(std::abs(r.amp0 * r.amp0 + r.amp1 * r.amp1 - 1) < 1e-12);
    CHECK(std::abs(r.phase_cos) <= 1.0);
    CHECK(table_gap(mub_table(r.ket()), t) < 1e-12);
    ReconstructedState other = r;
    other.phase_sign = -1;
    CHECK(table_gap(mub_table(other.ket()), t) < 1e-12);
  }
}

TEST_CASE("reconstruction errors") {
  CHECK_THROWS_AS(reconstruct_pure_state(tz(q(3, 4), q(1, 20))), NotRealizable);
  CHECK_THROWS_AS(reconstruct_pure_state(tz(q(1), q(1))), DegeneracyError);
  CHECK_THROWS_AS(reconstruct_pure_state(tz(q(0), q(1, 3))), DegeneracyError);
}

TEST_CASE("Bloch helper and Born tables") {
  CHECK(table_from_bloch(q(1, 2), q(-1, 2)) == tz(q(3, 4), q(1, 4)));
  const TableD z = mub_table(Eigen::Vector2cd(1, 0));
  CHECK(z(0, 0) == doctest::Approx(1.0));
  CHECK(z(1, 0) == doctest::Approx(0.5));
  const TableD plus = mub_table(Eigen::Vector2cd(1, 1) / std::sqrt(2.0));
  CHECK(plus(0, 0) == doctest::Approx(0.5));
  CHECK(plus(1, 0) == doctest::Approx(1.0));
  const TableD iy = mub_table(Eigen::Vector2cd(std::complex<double>(1, 0), std::complex<double>(0, 1)) / std::sqrt(2.0));
  CHECK(iy(1, 0) == doctest::Approx(0.5));
}
