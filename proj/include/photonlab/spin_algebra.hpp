#pragma once

#include "photonlab/types.hpp"

#include <array>

namespace photonlab {

/// Body-rotation angles. phi and chi are carried unwound so that winding
/// survives; reduce mod 2*pi only for display.
struct EulerAngles {
  Real phi = 0;
  Real theta = 0;
  Real chi = 0;
};

enum class SpinBasis { Cartesian, AngularMomentum };

using SpinMatrices = std::array<CMat3, 3>;

/// Spin-1 matrices (S_1, S_2, S_3).
///
/// Cartesian: (S_j)_kl = -i eps_jkl. AngularMomentum: the same operators
/// expressed in the helicity basis whose vectors are the columns of
/// basis_change_T(), ordered kappa = +1, 0, -1, so S_3 = diag(1, 0, -1).
SpinMatrices spin_matrices(SpinBasis basis);

/// Unitary change of basis from angular-momentum to Cartesian components.
/// Column k is the helicity unit vector e_kappa with kappa = 2 - k (1-based).
CMat3 basis_change_T();

/// exp(-i angle n.S) for a unit axis n, using (n.S)^3 = n.S.
CMat3 spin_exponential(const CMat3& axis_spin, Real angle);

/// exp(-i xi.S) in the Cartesian basis (real rotation by |xi| about xi).
Mat3 rotation_about(const Vec3& xi);

/// D(phi, theta, chi) = exp(-i S_3 phi) exp(-i S_2 theta) exp(-i S_3 chi),
/// evaluated in closed form.
CMat3 rotation_matrix(const EulerAngles& angles, SpinBasis basis);

/// Real Cartesian form of rotation_matrix().
Mat3 rotation_matrix_real(const EulerAngles& angles);

/// Reduced rotation matrix d^(1)(theta), rows/columns ordered kappa = +1, 0, -1.
Mat3 wigner_d1(Real theta);

struct FrameVectors {
  Vec3 e1;  // columns of the Cartesian D
  Vec3 e2;
  Vec3 e3;  // momentum direction, independent of chi
  CVec3 e_plus;
  CVec3 e_minus;
};

FrameVectors frame_vectors(const EulerAngles& angles);

/// e_{p kappa} for kappa in {-1, 0, +1}; kappa = 0 gives the longitudinal p-hat.
CVec3 helicity_vector(const EulerAngles& angles, int kappa);

/// S_pj = D S_j D^-1 (Cartesian basis), j in {0, 1, 2}.
CMat3 rotate_spin(const EulerAngles& angles, int j);

enum class RotationSide { Lab, PFrame };

struct EulerIncrement {
  Real dphi = 0;
  Real dtheta = 0;
  Real dchi = 0;
};

/// First-order Euler-angle increments for an infinitesimal rotation dxi
/// applied from the left (Lab, space-fixed axes) or from the right (PFrame,
/// p-frame axes). Throws PoleProximity when sin(theta) < kEpsPole.
EulerIncrement euler_increment(const EulerAngles& angles, const Vec3& dxi, RotationSide side);

/// Unit quaternion for the SU(2) element exp(-i xi/2): scalar cos(xi/2),
/// bivector part xi-hat sin(xi/2). Vectors transform as v -> R v R^dagger.
class Rotor {
 public:
  Rotor() = default;
  Rotor(Real scalar, const Vec3& bivector) : scalar_(scalar), bivector_(bivector) {}

  static Rotor from_axis_angle(const Vec3& xi);
  static Rotor from_euler(const EulerAngles& angles);

  Real scalar() const { return scalar_; }
  const Vec3& bivector() const { return bivector_; }
  Real norm() const;

  Rotor operator*(const Rotor& rhs) const;
  Rotor reverse() const { return {scalar_, -bivector_}; }
  Rotor normalized() const;

  Vec3 rotate(const Vec3& v) const;
  Mat3 to_matrix() const;

  /// Distance to another rotor as elements of SU(2) (sign-sensitive).
  Real distance(const Rotor& other) const;

 private:
  Real scalar_ = 1;
  Vec3 bivector_ = Vec3::Zero();
};

/// Factor an SO(3) matrix into Euler angles, choosing the 2*pi branches of
/// phi and chi nearest to `reference`. At theta -> 0 (or pi) only phi + chi
/// (or phi - chi) is determined; chi is then held at reference.chi.
EulerAngles euler_from_matrix(const Mat3& rotation, const EulerAngles& reference);

/// Nearest representative of `angle` + 2*pi*k to `reference`.
Real unwind_near(Real angle, Real reference);

}  // namespace photonlab
