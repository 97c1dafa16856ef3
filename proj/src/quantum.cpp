#include "boxlab/quantum.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace boxlab {

namespace {

using cd = std::complex<double>;

ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  switch (k) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, cd(0, -1), cd(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Eigen::VectorXcd singlet(int dimA) {
  // (|01> - |10>)/sqrt(2) embedded in C^dimA (x) C^2
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * dimA);
  v(0 * 2 + 1) = 1.0 / std::sqrt(2.0);
  v(1 * 2 + 0) = -1.0 / std::sqrt(2.0);
  return v;
}

void check_visibility(double V) {
  if (!(V > 0.0 && V <= 1.0)) throw DomainError("V = " + std::to_string(V) + " outside (0,1]");
}

}  // namespace

double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void validate_state(const QState& s) {
  const int d = s.dimA * s.dimB;
  if (s.dimA < 1 || s.dimB < 1 || s.rho.rows() != d || s.rho.cols() != d)
    throw DimensionError("rho must be " + std::to_string(d) + "x" + std::to_string(d));
  if (!s.rho.allFinite()) throw DomainError("rho has non-finite entries");
  if (hermitian_defect(s.rho) > kHermitianTol) throw DomainError("rho is not Hermitian");
  if (std::abs(s.rho.trace() - cd(1.0)) > kTraceTol) throw NormalizationError("trace(rho) != 1");
  if (min_eigenvalue(s.rho) < -kPsdTol) throw DomainError("rho has a negative eigenvalue");
}

void validate_povm(const Povm& p) {
  if (p.effects.empty()) throw DimensionError("POVM without effects");
  const int d = p.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : p.effects) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("POVM effects differ in size");
    if (hermitian_defect(e) > kHermitianTol) throw DomainError("POVM effect is not Hermitian");
    if (min_eigenvalue(e) < -kPsdTol) throw DomainError("POVM effect is not positive");
    sum += e;
  }
  if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kTraceTol)
    throw NormalizationError("POVM effects do not sum to the identity");
}

QState make_state(ComplexMatrix rho, int dimA, int dimB) {
  QState s{std::move(rho), dimA, dimB};
  validate_state(s);
  return s;
}

QState werner_state(double V) {
  check_visibility(V);
  Eigen::VectorXcd psi = singlet(2);
  ComplexMatrix rho = V * psi * psi.adjoint() + (1.0 - V) / 4.0 * ComplexMatrix::Identity(4, 4);
  return make_state(rho, 2, 2);
}

QState example2_state() {
  Eigen::VectorXcd zz = Eigen::VectorXcd::Zero(4), pp = Eigen::VectorXcd::Constant(4, 0.5);
  zz(0) = 1.0;
  ComplexMatrix rho = 0.5 * (zz * zz.adjoint() + pp * pp.adjoint());
  return make_state(rho, 2, 2);
}

QState erasure_state(double V) {
  check_visibility(V);
  Eigen::VectorXcd psi = singlet(3);
  ComplexMatrix flag = ComplexMatrix::Zero(3, 3);
  flag(2, 2) = 1.0;
  ComplexMatrix rho = V * psi * psi.adjoint() +
                      (1.0 - V) / 2.0 * ComplexMatrix(Eigen::kroneckerProduct(flag, ComplexMatrix::Identity(2, 2)));
  return make_state(rho, 3, 2);
}

Povm projective_qubit(const Eigen::Vector3d& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-10) throw AxisError("axis must be a unit vector");
  ComplexMatrix n = axis(0) * pauli(0) + axis(1) * pauli(1) + axis(2) * pauli(2);
  ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return Povm{{0.5 * (id + n), 0.5 * (id - n)}};
}

MeasurementPair qubit_pair(const Eigen::Vector3d& axis0, const Eigen::Vector3d& axis1) {
  return {projective_qubit(axis0), projective_qubit(axis1)};
}

MeasurementPair erasure_povms() {
  ComplexMatrix e10 = ComplexMatrix::Zero(3, 3), e11 = ComplexMatrix::Zero(3, 3);
  e10.diagonal() << 0.0, 1.0, 0.5;
  e11.diagonal() << 1.0, 0.0, 0.5;
  ComplexMatrix e20(3, 3), e21(3, 3);
  e20 << 0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.5;
  e21 << 0.5, -0.5, 0.0, -0.5, 0.5, 0.0, 0.0, 0.0, 0.5;
  MeasurementPair m{Povm{{e10, e11}}, Povm{{e20, e21}}};
  validate_povm(m.m0);
  validate_povm(m.m1);
  return m;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& x, int dimA, int dimB) {
  ComplexMatrix out = ComplexMatrix::Zero(dimB, dimB);
  for (int a = 0; a < dimA; ++a) out += x.block(a * dimB, a * dimB, dimB, dimB);
  return out;
}

ComplexMatrix partial_trace_a_kron(const ComplexMatrix& x, int dimA, int dimB) {
  ComplexMatrix out = ComplexMatrix::Zero(dimB, dimB);
  const ComplexMatrix id = ComplexMatrix::Identity(dimB, dimB);
  for (int a = 0; a < dimA; ++a) {
    ComplexMatrix ket = ComplexMatrix::Zero(dimA, 1);
    ket(a, 0) = 1.0;
    ComplexMatrix k = Eigen::kroneckerProduct(ket, id);
    out += k.adjoint() * x * k;
  }
  return out;
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& x, int dimA, int dimB) {
  ComplexMatrix out(x.rows(), x.cols());
  for (int a = 0; a < dimA; ++a)
    for (int a2 = 0; a2 < dimA; ++a2) out.block(a * dimB, a2 * dimB, dimB, dimB) = x.block(a * dimB, a2 * dimB, dimB, dimB).transpose();
  return out;
}

BoxD born_box_raw(const QState& s, const MeasurementPair& alice, const MeasurementPair& bob) {
  for (int k = 0; k < 2; ++k) {
    if (alice[k].dim() != s.dimA || bob[k].dim() != s.dimB)
      throw DimensionError("measurement dimensions do not match the state");
    if (alice[k].effects.size() != 2 || bob[k].effects.size() != 2)
      throw DimensionError("two-outcome measurements required");
  }
  BoxD box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          ComplexMatrix op = Eigen::kroneckerProduct(alice[x].effects[a], bob[y].effects[b]);
          box(x, y, a, b) = (op * s.rho).trace().real();
        }
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double sum = box(x, y, 0, 0) + box(x, y, 0, 1) + box(x, y, 1, 0) + box(x, y, 1, 1);
      if (std::abs(sum - 1.0) > kSnapTol) throw NormalizationError("Born block sums to " + std::to_string(sum));
    }
  return box;
}

Box222 snap_box(const BoxD& raw) {
  Box222 box;
  for (int i = 0; i < 16; ++i)
    box(i >> 3, (i >> 2) & 1, (i >> 1) & 1, i & 1) = snap_rational(raw.data()[i], kSnapDenominator, kSnapTol);
  try {
    validate_box(box);
    if (is_no_signalling(box)) return box;
  } catch (const Error&) {
  }
  // Fall back to the eight no-signalling coordinates, averaged over the
  // remote setting before snapping.
  auto ta0 = alice_marginal_at(raw, 0), ta1 = alice_marginal_at(raw, 1);
  auto tb0 = bob_marginal_at(raw, 0), tb1 = bob_marginal_at(raw, 1);
  for (int s = 0; s < 2; ++s) {
    if (std::abs(ta0.expectation(s) - ta1.expectation(s)) > kSnapTol ||
        std::abs(tb0.expectation(s) - tb1.expectation(s)) > kSnapTol)
      throw NormalizationError("raw Born box signals beyond tolerance");
  }
  NsCoords<Rational> c;
  for (int s = 0; s < 2; ++s) {
    c.ma[s] = snap_rational(0.5 * (ta0.expectation(s) + ta1.expectation(s)), kSnapDenominator, kSnapTol);
    c.mb[s] = snap_rational(0.5 * (tb0.expectation(s) + tb1.expectation(s)), kSnapDenominator, kSnapTol);
  }
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) c.corr[x][y] = snap_rational(correlator(raw, x, y), kSnapDenominator, kSnapTol);
  Box222 rebuilt = box_from_ns(c);
  validate_box(rebuilt);
  return rebuilt;
}

Box222 born_box(const QState& s, const MeasurementPair& alice, const MeasurementPair& bob) {
  return snap_box(born_box_raw(s, alice, bob));
}

Assemblage assemblage(const QState& s, const MeasurementPair& alice) {
  Assemblage out;
  const ComplexMatrix id = ComplexMatrix::Identity(s.dimB, s.dimB);
  for (int x = 0; x < 2; ++x) {
    if (alice[x].dim() != s.dimA) throw DimensionError("Alice measurement does not match dimA");
    if (alice[x].effects.size() != 2) throw DimensionError("two-outcome measurements required");
    for (int a = 0; a < 2; ++a) {
      ComplexMatrix op = Eigen::kroneckerProduct(alice[x].effects[a], id);
      out.sigma[x][a] = partial_trace_a(op * s.rho, s.dimA, s.dimB);
    }
  }
  return out;
}

}  // namespace boxlab
