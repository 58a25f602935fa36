#pragma once

#include "photonlab/operators.hpp"

#include <vector>

namespace photonlab {

struct LocalizedState {
  Vec3 r_prime = Vec3::Zero();
  int kappa = 1;  // -1, 0 (longitudinal p-hat) or +1
  GaugeChoice gauge = GaugeChoice::zero();
  Real alpha = 0;
  Real normalization = 1;

  /// N p^alpha e^{-i r'.p} e_{p kappa}.
  CVec3 operator()(const MomentumPoint& p) const;
};

WaveFunction localized_state(const Vec3& r_prime, int kappa, const GaugeChoice& gauge,
                             Real alpha);
WaveFunction localized_state(const LocalizedState& state);

/// Random points with |p| in [0.5, 2] whose distance to the gauge's strings
/// exceeds `clearance` times |p|.
std::vector<MomentumPoint> off_string_grid(const GaugeChoice& gauge, int count,
                                           unsigned long long seed, Real clearance = 0.05L);

/// max over the grid and j of |r_j psi - r'_j psi| / |psi|, differences with
/// step h_rel |p|. Throws PoleProximity if a stencil reaches a string.
Real check_eigen(const LocalizedState& state, const std::vector<MomentumPoint>& grid,
                 Real h_rel = 1e-5L);

struct BasisRotation {
  Real phase = 0;          // arg of e_pk^dagger (U e)(p)
  Real expected = 0;       // -kappa (a x p + p-hat) . dxi
  Real residual = 0;       // |phase - expected|
  Real modulus_defect = 0; // | |ratio| - 1 |
};

/// Applies exp(-i J.dxi) to the field e_pk: the argument is rotated exactly
/// (p -> p - dxi x p to first order) and the spin part is exp(-i S.dxi).
/// Only phi and theta of `angles` are used; chi is fixed by the gauge.
/// Throws ConfigError if |dxi| > 1e-4 and PoleProximity near the axis.
BasisRotation rotate_basis_vector(const EulerAngles& angles, const Vec3& dxi, int kappa,
                                  const GaugeChoice& gauge);

}  // namespace photonlab
