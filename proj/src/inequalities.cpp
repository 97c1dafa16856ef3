#include "boxlab/inequalities.hpp"

namespace boxlab {

std::array<ChshId, 8> all_chsh_ids() {
  std::array<ChshId, 8> ids;
  for (int i = 0; i < 8; ++i) ids[i] = {(i >> 2) & 1, (i >> 1) & 1, i & 1};
  return ids;
}

BellLocalResult is_bell_local_lp(const Box222& box) {
  BellLocalResult res;
  res.lp = LinearProgram(16, true);
  std::array<Box222, 16> vertices;
  for (int k = 0; k < 16; ++k) vertices[k] = deterministic_box((k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1);
  for (int i = 0; i < 16; ++i) {
    VectorXq row(16);
    for (int k = 0; k < 16; ++k) row(k) = vertices[k].data()[i];
    res.lp.add_row(row, Sense::Eq, box.data()[i]);
  }
  res.lp.add_row(VectorXq::Ones(16), Sense::Eq, 1);
  LpResult r = lp_feasible_exact(res.lp);
  if (r.status == LpStatus::Infeasible) {
    res.farkas = r.farkas;
    return res;
  }
  res.local = true;
  for (int k = 0; k < 16; ++k) res.weights[k] = r.x(k);
  return res;
}

double steering_functional(const BoxD& box) {
  auto r = steering_radicands(box);
  return std::sqrt(r[0]) + std::sqrt(r[1]);
}

double steering_functional(const Box222& box) {
  auto r = steering_radicands(box);
  return std::sqrt(to_double(r[0])) + std::sqrt(to_double(r[1]));
}

bool is_unsteerable_mub(const Box222& box) {
  auto r = steering_radicands(box);
  Rational rest = 4 - r[0] - r[1];
  return rest >= 0 && 4 * r[0] * r[1] <= rest * rest;
}

}  // namespace boxlab
