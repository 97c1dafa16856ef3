#pragma once

#include "boxlab/boxes.hpp"

#include <Eigen/Dense>

namespace boxlab {

// D = r_z^2 + r_x^2 - 1 with r_z = 2t(0,0) - 1 (setting 0 is sigma_z) and
// r_x = 2t(1,0) - 1 (setting 1 is sigma_x). Realizable by a qubit iff D <= 0;
// the free r_y component means pure and mixed states give the same region.
template <class Scalar>
Scalar mub_disc(const BasicTable<Scalar>& t) {
  Scalar rz = Scalar(2) * t(0, 0) - Scalar(1);
  Scalar rx = Scalar(2) * t(1, 0) - Scalar(1);
  return rz * rz + rx * rx - Scalar(1);
}

bool is_mub_realizable(const SingleTable& t);

// amp0 |0> + e^{i phi} amp1 |1>, in the eigenbasis of the setting-0 observable.
struct ReconstructedState {
  double amp0 = 1.0;
  double amp1 = 0.0;
  double phase_cos = 0.0;
  Rational phase_cos_sq = 0;  // exact cos^2(phi)
  int cos_sign = 0;           // sign of cos(phi): -1, 0, +1
  int phase_sign = 1;         // +phi or -phi; both reproduce the table
  bool degenerate = false;    // t(0,0) in {0,1}: a basis state

  Eigen::Vector2cd ket() const;
};

ReconstructedState reconstruct_pure_state(const SingleTable& t);

// Born statistics of a qubit ket under (sigma_z, sigma_x).
TableD mub_table(const Eigen::Vector2cd& psi);

// Table with Bloch components r_z (setting 0) and r_x (setting 1).
SingleTable table_from_bloch(const Rational& rz, const Rational& rx);

}  // namespace boxlab
