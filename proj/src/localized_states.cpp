#include "photonlab/localized_states.hpp"

#include "photonlab/random.hpp"

#include <cmath>

namespace photonlab {

namespace {

void require_kappa(int kappa) {
  if (kappa < -1 || kappa > 1) throw Error(ErrorKind::ConfigError, "kappa must be -1, 0 or 1");
}

}  // namespace

CVec3 LocalizedState::operator()(const MomentumPoint& p) const {
  const Real weight = normalization * std::pow(p.magnitude(), alpha);
  return (weight * std::exp(-kI * r_prime.dot(p.cartesian()))) *
         gauge_helicity_vector(gauge, p, kappa);
}

WaveFunction localized_state(const Vec3& r_prime, int kappa, const GaugeChoice& gauge,
                             Real alpha) {
  return localized_state(LocalizedState{r_prime, kappa, gauge, alpha, 1});
}

WaveFunction localized_state(const LocalizedState& state) {
  require_kappa(state.kappa);
  return [state](const MomentumPoint& p) { return state(p); };
}

std::vector<MomentumPoint> off_string_grid(const GaugeChoice& gauge, int count,
                                           unsigned long long seed, Real clearance) {
  Rng rng(seed);
  std::vector<MomentumPoint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * (count + 1)) {
      throw Error(ErrorKind::SingularRegion, "cannot place grid points off the strings");
    }
    const Real p = rng.uniform(0.5L, 2);
    const Real c = rng.uniform(-1, 1);
    const auto at = MomentumPoint::from_spherical(p, std::acos(c), rng.uniform(0, kTwoPi));
    if (string_distance(gauge, at) > clearance * p) out.push_back(at);
  }
  return out;
}

Real check_eigen(const LocalizedState& state, const std::vector<MomentumPoint>& grid,
                 Real h_rel) {
  require_kappa(state.kappa);
  const WaveFunction psi = localized_state(state);
  Real worst = 0;
  for (const MomentumPoint& at : grid) {
    const Real h = h_rel * at.magnitude();
    if (string_distance(state.gauge, at) <= 2 * h) {
      throw Error(ErrorKind::PoleProximity, "eigen check stencil reaches a string");
    }
    const CVec3 value = psi(at);
    const VectorResult r = apply_position_new(psi, at, state.gauge, state.alpha, h);
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, Real((r[j] - state.r_prime(j) * value).norm() / value.norm()));
    }
  }
  return worst;
}

BasisRotation rotate_basis_vector(const EulerAngles& angles, const Vec3& dxi, int kappa,
                                  const GaugeChoice& gauge) {
  require_kappa(kappa);
  if (dxi.norm() > 1e-4L) throw Error(ErrorKind::ConfigError, "rotation must satisfy |dxi| <= 1e-4");
  const auto at = MomentumPoint::from_spherical(1, angles.theta, angles.phi);
  if (at.sin_theta() < kEpsPole) {
    throw Error(ErrorKind::PoleProximity, "basis rotation needs an off-axis momentum");
  }
  // (U e)(p) = exp(-i S.dxi) e(R^-1 p).
  const Vec3 source = rotation_about(-dxi) * at.cartesian();
  const auto from = MomentumPoint::from_cartesian(source, at.phi());
  const CVec3 rotated = rotation_about(dxi).cast<Complex>() * gauge_helicity_vector(gauge, from, kappa);
  const Complex ratio = gauge_helicity_vector(gauge, at, kappa).dot(rotated);

  BasisRotation out;
  out.phase = std::arg(ratio);
  const Vec3 g = gauge_potential(gauge, at).cross(at.cartesian()) + at.unit();
  out.expected = -kappa * g.dot(dxi);
  out.residual = std::abs(out.phase - out.expected);
  out.modulus_defect = std::abs(std::abs(ratio) - 1);
  return out;
}

}  // namespace photonlab
