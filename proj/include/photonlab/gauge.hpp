#pragma once

#include "photonlab/spin_algebra.hpp"
#include "photonlab/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>

namespace photonlab {

/// A point in momentum space with a continuous (unwound) azimuth.
class MomentumPoint {
 public:
  /// The azimuth is taken on the 2*pi branch nearest `reference_phi`.
  static MomentumPoint from_cartesian(const Vec3& p, Real reference_phi = 0);
  static MomentumPoint from_spherical(Real magnitude, Real theta, Real phi);

  /// The displaced point, with its azimuth unwound relative to this one.
  MomentumPoint shifted(const Vec3& dp) const;

  const Vec3& cartesian() const { return cartesian_; }
  Real magnitude() const { return magnitude_; }
  Real theta() const { return theta_; }
  Real phi() const { return phi_; }
  Real sin_theta() const { return std::sin(theta_); }
  Real cos_theta() const { return std::cos(theta_); }
  /// Distance from the e_3 axis.
  Real perpendicular() const { return std::hypot(cartesian_.x(), cartesian_.y()); }

  Vec3 unit() const { return cartesian_ / magnitude_; }
  Vec3 theta_hat() const;
  Vec3 phi_hat() const;

 private:
  Vec3 cartesian_ = Vec3::UnitZ();
  Real magnitude_ = 1;
  Real theta_ = 0;
  Real phi_ = 0;
};

enum class GaugeKind { Zero, MinusPhi, MinusPhiCosTheta, Custom };

/// Partial derivatives of chi_p with respect to (theta, phi).
struct AngularGradient {
  Real d_theta = 0;
  Real d_phi = 0;
};

/// Where the gauge puts its Dirac strings. Strengths are in units of 2*pi of
/// outward flux carried along the +e_3 (north) and -e_3 (south) half-axes.
struct StringFlags {
  Real north_strength = 0;
  Real south_strength = 0;
  std::optional<Real> branch_cut;  // azimuth of a cut half-plane, if any
  bool path_dependent = false;     // chi_p depends on the winding of phi

  bool north() const { return north_strength != 0; }
  bool south() const { return south_strength != 0; }
};

/// The axial gauge function chi_p(theta, phi) that slaves the axial Euler
/// angle to the momentum direction.
class GaugeChoice {
 public:
  using ChiFunction = std::function<Real(Real theta, Real phi)>;
  using GradientFunction = std::function<AngularGradient(Real theta, Real phi)>;

  static GaugeChoice zero();
  static GaugeChoice minus_phi();
  /// chi_p = -phi cos(theta). Without a branch cut phi is the unwound azimuth
  /// and the gauge is nonintegrable; with a cut at phi0 in (0, 2*pi), phi is
  /// reduced into [phi0 - 2*pi, phi0).
  static GaugeChoice minus_phi_cos_theta(std::optional<Real> branch_cut = std::nullopt);
  /// Arbitrary differentiable chi_p. Without `gradient`, derivatives fall back
  /// to central differences with step kAngularStep (about 1e-10 accurate).
  static GaugeChoice custom(std::string name, ChiFunction chi, GradientFunction gradient = {});

  GaugeKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::optional<Real> branch_cut() const { return branch_cut_; }
  bool has_analytic_gradient() const { return kind_ != GaugeKind::Custom || bool(gradient_); }

  Real chi(Real theta, Real phi) const;
  AngularGradient gradient(Real theta, Real phi) const;
  StringFlags strings() const;

  /// The gauge obtained by chi_p -> -chi_p.
  GaugeChoice negated() const;

  static constexpr Real kAngularStep = 1e-5L;

 private:
  Real effective_phi(Real phi) const;

  GaugeKind kind_ = GaugeKind::Zero;
  std::string name_ = "zero";
  std::optional<Real> branch_cut_;
  ChiFunction chi_;
  GradientFunction gradient_;
};

Real chi_p(const GaugeChoice& gauge, Real theta, Real phi_unwound);

/// (phi, theta, chi_p(theta, phi)) at the point.
EulerAngles frame_angles(const GaugeChoice& gauge, const MomentumPoint& at);

/// D(phi, theta, chi_p) in the Cartesian basis.
CMat3 gauge_rotation(const GaugeChoice& gauge, const MomentumPoint& at);

/// e_{p kappa} with the axial angle fixed by the gauge.
CVec3 gauge_helicity_vector(const GaugeChoice& gauge, const MomentumPoint& at, int kappa);

/// Gradient of chi_p on the sphere of radius |p|.
Vec3 chi_gradient(const GaugeChoice& gauge, const MomentumPoint& at);

/// a^(0) = phi-hat cot(theta) / p.
Vec3 monopole_potential(const MomentumPoint& at);
/// a^(0) written as e_3 x p (p-hat . e_3) / |e_3 x p|^2.
Vec3 monopole_potential_cartesian(const Vec3& p);

/// a = a^(0) + grad chi_p. Throws PoleProximity on a string.
Vec3 gauge_potential(const GaugeChoice& gauge, const MomentumPoint& at);

/// Curl of a from central differences at h and h/2, Richardson-combined.
/// Throws StepTooLarge if h > p/100 and
/// PoleProximity if the point is within 10 h of a string or branch cut.
Vec3 curl_a(const GaugeChoice& gauge, const MomentumPoint& at, Real h);

struct GaugeField {
  Vec3 a;
  Vec3 curl;
  StringFlags string_flags;
};

GaugeField gauge_field(const GaugeChoice& gauge, const MomentumPoint& at, Real h);

/// Distance in momentum space from the point to the nearest string or cut of
/// the gauge (infinity when the gauge has none).
Real string_distance(const GaugeChoice& gauge, const MomentumPoint& at);

struct RegularizedStringField {
  Vec3 a;            // phi-hat p_perp cos(theta) / (p_perp^2 + p0^2)
  Vec3 curl;         // monopole part + string part
  Vec3 curl_string;  // e_3 2 p0^2 cos(theta) / (p_perp^2 + p0^2)^2
};

/// a^(0) smeared over a solenoid of width p0 about the e_3 axis.
RegularizedStringField regularized_string_field(const MomentumPoint& at, Real p0);

/// Flux of the regularized string term through a disk of the given radius
/// centred on the e_3 axis at height p3, by 2-D quadrature.
Real string_flux_through_disk(Real p3, Real p0, Real radius, int radial_nodes = 4000,
                              int angular_nodes = 64);

/// A_j = (S x p-hat)_j / p + a_j (p-hat . S), so that grad D = -i A D.
std::array<CMat3, 3> connection_matrix(const GaugeChoice& gauge, const MomentumPoint& at);

/// p-hat . S in the Cartesian basis.
CMat3 helicity_operator(const Vec3& p);

struct DchiDeviation {
  Real trig_form = 0;        // explicit trigonometric expression
  Real connection_form = 0;  // (a x p + p-hat) . dxi
};

/// d chi - d chi_p for a lab-frame rotation dxi at the given angles.
DchiDeviation dchi_deviation(const EulerAngles& angles, const Vec3& dxi, const GaugeChoice& gauge,
                             Real p);

}  // namespace photonlab
