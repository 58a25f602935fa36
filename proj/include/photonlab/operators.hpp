#pragma once

#include "photonlab/gauge.hpp"

#include <array>
#include <functional>

namespace photonlab {

/// Momentum-space photon amplitude in Cartesian components.
using WaveFunction = std::function<CVec3(const MomentumPoint&)>;
using ScalarField = std::function<Complex(const MomentumPoint&)>;

enum class OperatorFamily {
  WeightedGradient,   // i p^a grad p^-a
  PositionNew,        // r = i p^a grad p^-a - A
  PositionPryce,      // r_P = i p^a grad p^-a + p x S / p^2
  J_Foldy,
  K_Foldy,
  J_LM,
  K_LM,
  J_Shirokov,
  K_Shirokov,
  J_GeneralHelicity,
  K_GeneralHelicity,
  L_r,                // r x p
  S_r,                // (a x p + p-hat) p-hat.S
  K_r,                // (p r + r p) / 2
  Helicity,           // p-hat.S (component ignored)
  Momentum,           // p_j
  Energy,             // H = c p (component ignored)
  Spin,               // constant S_j
  SpinFrame,          // S_pj = D S_j D^-1 at the gauge's chi_p
};

const char* to_string(OperatorFamily family);

/// Whether applying the family needs finite differences.
bool is_differential(OperatorFamily family);

struct OperatorSpec {
  OperatorFamily family = OperatorFamily::PositionNew;
  int component = 0;  // 0, 1, 2 for x, y, z
  Real alpha = 0;
  GaugeChoice gauge = GaugeChoice::zero();
  Real c = 1;
};

struct OperatorApplication {
  CVec3 value;
  Real fd_step = 0;
  Real error_estimate = 0;  // Richardson estimate from steps h and h/2
};

using VectorResult = std::array<CVec3, 3>;

/// Weights other than 0 and +-1/2 are accepted; this reports whether the
/// weight is one of the standard three.
bool is_standard_weight(Real alpha);

/// Single component of the operator applied to psi at the point, with
/// central differences of step h on each Cartesian axis.
/// Throws StepTooLarge if h > p/100 for differential families.
CVec3 apply_component(const OperatorSpec& op, const WaveFunction& psi, const MomentumPoint& at,
                      Real h);

/// apply_component plus a Richardson error estimate.
OperatorApplication apply(const OperatorSpec& op, const WaveFunction& psi, const MomentumPoint& at,
                          Real h);

/// The wavefunction p -> (op psi)(p) with step h.
WaveFunction bind_operator(const OperatorSpec& op, WaveFunction psi, Real h);

VectorResult apply_all(OperatorSpec op, const WaveFunction& psi, const MomentumPoint& at, Real h);

VectorResult apply_weighted_gradient(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                     Real h);
VectorResult apply_position_new(const WaveFunction& psi, const MomentumPoint& at,
                                const GaugeChoice& gauge, Real alpha, Real h);
VectorResult apply_position_pryce(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                  Real h);
VectorResult apply_generator(OperatorFamily family, const WaveFunction& psi,
                             const MomentumPoint& at, Real alpha, const GaugeChoice& gauge, Real h);

enum class ConjugationRule {
  ChakrabartiUh,  // D(phi, theta, -phi)
  PolarD0,        // D(phi, theta, 0)
  GaugeFrame,     // D(phi, theta, chi_p) of the supplied gauge
};

/// D O D^-1 psi for a helicity-representation family O.
VectorResult conjugate_representation(OperatorFamily family, ConjugationRule rule,
                                      const WaveFunction& psi, const MomentumPoint& at, Real h,
                                      Real alpha = 0,
                                      const GaugeChoice& gauge = GaugeChoice::zero());

/// exp(-i theta phi-hat . S), the Chakrabarti spin rotation.
CMat3 chakrabarti_rotation(Real theta, Real phi);

struct Partition {
  VectorResult orbital;
  VectorResult spin;
  VectorResult total;
};

/// J = L^(r) + S^(r).
Partition orbital_spin_partition(const WaveFunction& psi, const MomentumPoint& at,
                                 const GaugeChoice& gauge, Real alpha, Real h);
/// K = (p r + r p)/2 + a p (p-hat.S).
Partition boost_partition(const WaveFunction& psi, const MomentumPoint& at,
                          const GaugeChoice& gauge, Real alpha, Real h);
/// J = -p x r_P + p-hat (p-hat.S), orbital part first.
Partition pryce_angular_partition(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                  Real h);
/// K = (r_P p + p r_P)/2; the spin slot is zero.
Partition pryce_boost_partition(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                Real h);

/// i[H, r] psi with H = c p applied by multiplication.
VectorResult velocity_check(const WaveFunction& psi, const MomentumPoint& at,
                            const GaugeChoice& gauge, Real alpha, Real h, Real c = 1);

/// (P psi)(p) = psi(-p).
WaveFunction parity(WaveFunction psi);

/// The gauge with a(-p) equal to the given gauge's a(p), used for the
/// parity rule r(P psi) = -P(r' psi).
GaugeChoice parity_partner(const GaugeChoice& gauge);

/// <phi| r_j psi> - <r_j phi| psi> under the p^(-2 alpha) measure, by a
/// midpoint rule on an n^3 cube grid with the difference step equal to the
/// grid spacing.
Complex hermiticity_defect(const WaveFunction& phi, const WaveFunction& psi,
                           const GaugeChoice& gauge, Real alpha, int component,
                           const Vec3& center, Real half_width, int n);

// Test-wavefunction library.

/// exp(-|p - c|^2 / 2 w^2) (1 + slope.(p - c)) e^{-i r'.p}.
ScalarField gaussian_scalar(const Vec3& center, Real width, const Vec3& slope = Vec3::Zero(),
                            const Vec3& r_prime = Vec3::Zero());
/// Spherically symmetric exp(-(|p| - p_mean)^2 / 2 w^2).
ScalarField radial_scalar(Real p_mean, Real width);

/// f(p) v for a constant complex vector v.
WaveFunction polarized(ScalarField f, const CVec3& v);
/// f(p) e_{p kappa} with the gauge's axial angle.
WaveFunction helicity_packet(ScalarField f, const GaugeChoice& gauge, int kappa);
/// Linear combination a psi1 + b psi2.
WaveFunction combine(WaveFunction psi1, Complex a, WaveFunction psi2, Complex b);

/// A deterministic generic test function: a sum of two polarized
/// Gaussian-polynomial packets with a plane-wave factor, drawn from `seed`.
WaveFunction generic_test_function(unsigned long long seed, const Vec3& around);

}  // namespace photonlab
