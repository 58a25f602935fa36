#pragma once

#include "photonlab/operators.hpp"

#include <string>
#include <vector>

namespace photonlab {

/// Outer-to-inner step ratio used for nested differentiation.
inline constexpr Real kOuterStepRatio = 10;

/// [A, B] psi at the point: A applied with step 10 h to (B psi) computed with
/// step h, minus the same with A and B exchanged. Swapping A and B negates
/// the result exactly. Throws StepTooLarge if h > p/1000.
CVec3 commutator(const OperatorSpec& a, const OperatorSpec& b, const WaveFunction& psi,
                 const MomentumPoint& at, Real h);

/// Local amplitude scale: max |psi| over the point and its outer stencil.
Real psi_scale(const WaveFunction& psi, const MomentumPoint& at, Real h);

struct CommutatorReport {
  std::string identity;   // e.g. "[J_j,J_k] = i eps_jkl J_l"
  std::string anchor;     // where the identity comes from
  OperatorSpec first;     // representative pair (component 0)
  OperatorSpec second;
  Real max_residual = 0;       // at fd_step, relative to the psi scale
  Real max_residual_half = 0;  // same with fd_step / 2
  Real tolerance = 0;
  int samples = 0;
  Real fd_step = 0;  // relative to |p|
  bool pass = false;
};

enum class Representation {
  Foldy,
  LomontMoses,
  Shirokov,
  GeneralHelicity,  // uses the supplied gauge
  Substitution,     // L^(r) for J and (p r + r p)/2 for K
};

const char* to_string(Representation rep);

struct TableConfig {
  Representation representation = Representation::Foldy;
  GaugeChoice gauge = GaugeChoice::zero();
  int samples = 20;
  unsigned long long seed = 42;
  Real alpha = 0;
  Real fd_step_rel = 1e-5L;
  Real nested_tolerance = 1e-4L;
  Real helicity_tolerance = 1e-6L;
  bool with_refinement = true;  // also run at fd_step / 2
};

/// Sample points used by the tables: |p| in [0.5, 2], polar angle in
/// [0.3, pi - 0.3], drawn from the seed.
std::vector<MomentumPoint> sample_points(unsigned long long seed, int count);

/// Poincare table, position-operator rows and helicity invariance.
std::vector<CommutatorReport> verify_table(const TableConfig& config);

struct JrCommutator {
  CVec3 lhs;         // [J_j, r_k] psi
  CVec3 canonical;   // i eps_jkl r_l psi
  CVec3 correction;  // -i d/dp_k ((a x p + p-hat) . e_j) (p-hat.S) psi
};

/// The modified angular-momentum commutator on a helicity state f(p) e_pk.
JrCommutator j_r_commutator(int j, int k, const WaveFunction& psi, const MomentumPoint& at,
                            const GaugeChoice& gauge, Real alpha, Real h);

/// -i d/dp_k (n(p) . (a x p + p-hat)) (p-hat.S) psi for a rotation axis field
/// n(p); with n = e_j this is the correction of j_r_commutator.
CVec3 rotation_correction(const std::function<Vec3(const MomentumPoint&)>& axis, int k,
                          const WaveFunction& psi, const MomentumPoint& at,
                          const GaugeChoice& gauge, Real h);

/// Pryce monopole commutator [r_Pj, r_Pk] psi + i eps_jkl (p_l / p^3)(p-hat.S) psi.
CVec3 pryce_commutator_residual(int j, int k, const WaveFunction& psi, const MomentumPoint& at,
                                Real alpha, Real h);

}  // namespace photonlab
