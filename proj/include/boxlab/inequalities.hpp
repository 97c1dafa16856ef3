#pragma once

#include "boxlab/boxes.hpp"
#include "boxlab/solver/lp.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace boxlab {

struct ChshId {
  int alpha = 0, beta = 0, gamma = 0;
};

std::array<ChshId, 8> all_chsh_ids();

// B = (-1)^g E00 + (-1)^(b^g) E01 + (-1)^(a^g) E10 + (-1)^(a^b^g^1) E11
template <class Scalar>
Scalar chsh_value(const BasicBox<Scalar>& box, const ChshId& id) {
  auto sgn = [](int bit) { return bit ? Scalar(-1) : Scalar(1); };
  return sgn(id.gamma) * correlator(box, 0, 0) + sgn(id.beta ^ id.gamma) * correlator(box, 0, 1) +
         sgn(id.alpha ^ id.gamma) * correlator(box, 1, 0) +
         sgn(id.alpha ^ id.beta ^ id.gamma ^ 1) * correlator(box, 1, 1);
}

template <class Scalar>
Scalar chsh_max(const BasicBox<Scalar>& box) {
  Scalar best = chsh_value(box, ChshId{});
  for (const auto& id : all_chsh_ids()) {
    Scalar v = chsh_value(box, id);
    if (v > best) best = v;
  }
  return best;
}

struct BellLocalResult {
  bool local = false;
  std::array<Rational, 16> weights{};  // over deterministic_box(alpha,beta,gamma,epsilon), index 8a+4b+2g+e
  std::optional<FarkasCertificate> farkas;
  LinearProgram lp;

  explicit operator bool() const { return local; }
};

BellLocalResult is_bell_local_lp(const Box222& box);

// The two radicands of the steering functional.
template <class Scalar>
std::array<Scalar, 2> steering_radicands(const BasicBox<Scalar>& box) {
  Scalar e00 = correlator(box, 0, 0), e01 = correlator(box, 0, 1);
  Scalar e10 = correlator(box, 1, 0), e11 = correlator(box, 1, 1);
  Scalar s0 = e00 + e10, s1 = e01 + e11, d0 = e00 - e10, d1 = e01 - e11;
  return {s0 * s0 + s1 * s1, d0 * d0 + d1 * d1};
}

double steering_functional(const Box222& box);
double steering_functional(const BoxD& box);

// Exact decision of steering_functional(box) <= 2: with radicands R1, R2,
// sqrt(R1) + sqrt(R2) <= 2 iff 4 - R1 - R2 >= 0 and 4 R1 R2 <= (4 - R1 - R2)^2.
bool is_unsteerable_mub(const Box222& box);

}  // namespace boxlab
