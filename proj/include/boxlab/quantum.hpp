#pragma once

#include "boxlab/boxes.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace boxlab {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kSnapTol = 1e-9;
inline constexpr long kSnapDenominator = 1000000;

// Density matrix on C^dimA (x) C^dimB, Alice first.
struct QState {
  ComplexMatrix rho;
  int dimA = 2;
  int dimB = 2;
};

struct Povm {
  std::vector<ComplexMatrix> effects;
  int dim() const { return effects.empty() ? 0 : static_cast<int>(effects[0].rows()); }
};

struct MeasurementPair {
  Povm m0, m1;
  const Povm& operator[](int s) const { return s ? m1 : m0; }
};

// sigma[x][a] = Tr_A((M_{a|x} (x) I) rho)
struct Assemblage {
  std::array<std::array<ComplexMatrix, 2>, 2> sigma;
};

double hermitian_defect(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);
void validate_state(const QState& s);
void validate_povm(const Povm& p);
QState make_state(ComplexMatrix rho, int dimA, int dimB);

QState werner_state(double V);
QState example2_state();
QState erasure_state(double V);

// Effects (I +/- n.sigma)/2; outcome 0 is the +1 eigenvalue.
Povm projective_qubit(const Eigen::Vector3d& axis);
MeasurementPair qubit_pair(const Eigen::Vector3d& axis0, const Eigen::Vector3d& axis1);
MeasurementPair erasure_povms();

ComplexMatrix partial_trace_a(const ComplexMatrix& x, int dimA, int dimB);
// Same map through explicit Kronecker sandwiches (<i| (x) I) X (|i> (x) I).
ComplexMatrix partial_trace_a_kron(const ComplexMatrix& x, int dimA, int dimB);
ComplexMatrix partial_transpose_b(const ComplexMatrix& x, int dimA, int dimB);

// Unsnapped Born probabilities Tr((M_{a|x} (x) P_{b|y}) rho).
BoxD born_box_raw(const QState& s, const MeasurementPair& alice, const MeasurementPair& bob);
// Born probabilities snapped to exact rationals (see snap_box).
Box222 born_box(const QState& s, const MeasurementPair& alice, const MeasurementPair& bob);
// Per-entry snapping; falls back to snapping the no-signalling coordinates
// when the per-entry result does not validate exactly.
Box222 snap_box(const BoxD& raw);

Assemblage assemblage(const QState& s, const MeasurementPair& alice);

}  // namespace boxlab
