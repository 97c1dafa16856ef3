#include "boxlab/realizability.hpp"

#include <cmath>
#include <complex>

namespace boxlab {

bool is_mub_realizable(const SingleTable& t) { return mub_disc(t) <= 0; }

Eigen::Vector2cd ReconstructedState::ket() const {
  const double s = std::sqrt(std::max(0.0, 1.0 - phase_cos * phase_cos));
  const std::complex<double> phase(phase_cos, phase_sign * s);
  return Eigen::Vector2cd(amp0, phase * amp1);
}

ReconstructedState reconstruct_pure_state(const SingleTable& t) {
  validate_table(t);
  const Rational& t00 = t(0, 0);
  const Rational& t10 = t(1, 0);
  ReconstructedState r;
  if (t00 == 0 || t00 == 1) {
    if (t10 != Rational(1, 2))
      throw DegeneracyError("t(0,0) = " + to_string(t00) + " requires t(1,0) = 1/2, got " +
                            to_string(t10));
    r.degenerate = true;
    r.amp0 = t00 == 1 ? 1.0 : 0.0;
    r.amp1 = 1.0 - r.amp0;
    return r;
  }
  if (mub_disc(t) > 0) throw NotRealizable("disc value " + to_string(mub_disc(t)) + " > 0");

  const Rational c = 2 * t10 - 1;
  r.amp0 = std::sqrt(to_double(t00));
  r.amp1 = std::sqrt(to_double(1 - t00));
  r.phase_cos_sq = c * c / (4 * t00 * (1 - t00));
  r.cos_sign = c > 0 ? 1 : (c < 0 ? -1 : 0);
  r.phase_cos = r.cos_sign * std::sqrt(to_double(r.phase_cos_sq));
  return r;
}

TableD mub_table(const Eigen::Vector2cd& psi) {
  const double pz = std::norm(psi(0));
  const double px = 0.5 * std::norm(psi(0) + psi(1));
  const double n = psi.squaredNorm();
  return TableD::from_zero(pz / n, px / n);
}

SingleTable table_from_bloch(const Rational& rz, const Rational& rx) {
  return SingleTable::from_zero((1 + rz) / 2, (1 + rx) / 2);
}

}  // namespace boxlab
