#include "photonlab/gauge.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace photonlab {

MomentumPoint MomentumPoint::from_cartesian(const Vec3& p, Real reference_phi) {
  MomentumPoint out;
  out.cartesian_ = p;
  out.magnitude_ = p.norm();
  if (!(out.magnitude_ > 0)) throw Error(ErrorKind::SingularRegion, "momentum must be nonzero");
  out.theta_ = std::atan2(std::hypot(p.x(), p.y()), p.z());
  out.phi_ = unwind_near(std::atan2(p.y(), p.x()), reference_phi);
  return out;
}

MomentumPoint MomentumPoint::from_spherical(Real magnitude, Real theta, Real phi) {
  if (!(magnitude > 0)) throw Error(ErrorKind::SingularRegion, "momentum must be nonzero");
  MomentumPoint out;
  out.magnitude_ = magnitude;
  out.theta_ = theta;
  out.phi_ = phi;
  const Real st = std::sin(theta);
  out.cartesian_ = magnitude * Vec3(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
  return out;
}

MomentumPoint MomentumPoint::shifted(const Vec3& dp) const {
  return from_cartesian(cartesian_ + dp, phi_);
}

Vec3 MomentumPoint::theta_hat() const {
  const Real ct = std::cos(theta_);
  return {ct * std::cos(phi_), ct * std::sin(phi_), -std::sin(theta_)};
}

Vec3 MomentumPoint::phi_hat() const { return {-std::sin(phi_), std::cos(phi_), 0}; }

GaugeChoice GaugeChoice::zero() { return {}; }

GaugeChoice GaugeChoice::minus_phi() {
  GaugeChoice g;
  g.kind_ = GaugeKind::MinusPhi;
  g.name_ = "minus-phi";
  return g;
}

GaugeChoice GaugeChoice::minus_phi_cos_theta(std::optional<Real> branch_cut) {
  if (branch_cut && !(*branch_cut > 0 && *branch_cut < kTwoPi)) {
    throw Error(ErrorKind::ConfigError, "branch cut azimuth must lie in (0, 2pi)");
  }
  GaugeChoice g;
  g.kind_ = GaugeKind::MinusPhiCosTheta;
  g.name_ = "minus-phi-cos-theta";
  g.branch_cut_ = branch_cut;
  return g;
}

GaugeChoice GaugeChoice::custom(std::string name, ChiFunction chi, GradientFunction gradient) {
  if (!chi) throw Error(ErrorKind::ConfigError, "custom gauge needs a chi function");
  GaugeChoice g;
  g.kind_ = GaugeKind::Custom;
  g.name_ = std::move(name);
  g.chi_ = std::move(chi);
  g.gradient_ = std::move(gradient);
  return g;
}

Real GaugeChoice::effective_phi(Real phi) const {
  if (!branch_cut_) return phi;
  const Real lower = *branch_cut_ - kTwoPi;
  return phi - kTwoPi * std::floor((phi - lower) / kTwoPi);
}

Real GaugeChoice::chi(Real theta, Real phi) const {
  switch (kind_) {
    case GaugeKind::Zero: return 0;
    case GaugeKind::MinusPhi: return -phi;
    case GaugeKind::MinusPhiCosTheta: return -effective_phi(phi) * std::cos(theta);
    case GaugeKind::Custom: return chi_(theta, phi);
  }
  return 0;
}

AngularGradient GaugeChoice::gradient(Real theta, Real phi) const {
  switch (kind_) {
    case GaugeKind::Zero: return {};
    case GaugeKind::MinusPhi: return {0, -1};
    case GaugeKind::MinusPhiCosTheta:
      return {effective_phi(phi) * std::sin(theta), -std::cos(theta)};
    case GaugeKind::Custom:
      break;
  }
  if (gradient_) return gradient_(theta, phi);
  const Real h = kAngularStep;
  return {(chi_(theta + h, phi) - chi_(theta - h, phi)) / (2 * h),
          (chi_(theta, phi + h) - chi_(theta, phi - h)) / (2 * h)};
}

StringFlags GaugeChoice::strings() const {
  StringFlags s;
  switch (kind_) {
    case GaugeKind::Zero:
      s.north_strength = 1;
      s.south_strength = 1;
      return s;
    case GaugeKind::MinusPhi:
      s.south_strength = 2;
      return s;
    case GaugeKind::MinusPhiCosTheta:
      s.branch_cut = branch_cut_;
      s.path_dependent = !branch_cut_;
      return s;
    case GaugeKind::Custom:
      break;
  }
  // Circulation of grad chi around a small loop about each pole; a
  // single-valued or winding-number gauge gives the same jump at every theta.
  auto jump = [&](Real theta) { return chi(theta, 0.3L + kTwoPi) - chi(theta, 0.3L); };
  constexpr Real kNearPole = 1e-4L;
  const Real north = jump(kNearPole), south = jump(kPi - kNearPole);
  for (Real theta : {Real{0.3}, kPi / 2, Real{2.2}}) {
    const Real j = jump(theta);
    if (std::abs(j - north) > 1e-8L || std::abs(j - south) > 1e-8L) s.path_dependent = true;
  }
  s.north_strength = 1 + north / kTwoPi;
  s.south_strength = 1 - south / kTwoPi;
  s.branch_cut = branch_cut_;
  return s;
}

GaugeChoice GaugeChoice::negated() const {
  if (kind_ == GaugeKind::Zero) return *this;
  GaugeChoice base = *this;
  GaugeChoice g = custom(
      "negated-" + name_, [base](Real t, Real f) { return -base.chi(t, f); },
      [base](Real t, Real f) {
        const AngularGradient d = base.gradient(t, f);
        return AngularGradient{-d.d_theta, -d.d_phi};
      });
  g.branch_cut_ = branch_cut_;
  return g;
}

Real chi_p(const GaugeChoice& gauge, Real theta, Real phi_unwound) {
  return gauge.chi(theta, phi_unwound);
}

EulerAngles frame_angles(const GaugeChoice& gauge, const MomentumPoint& at) {
  return {at.phi(), at.theta(), gauge.chi(at.theta(), at.phi())};
}

CMat3 gauge_rotation(const GaugeChoice& gauge, const MomentumPoint& at) {
  return rotation_matrix(frame_angles(gauge, at), SpinBasis::Cartesian);
}

CVec3 gauge_helicity_vector(const GaugeChoice& gauge, const MomentumPoint& at, int kappa) {
  return helicity_vector(frame_angles(gauge, at), kappa);
}

namespace {

void require_off_pole(const MomentumPoint& at, const char* what) {
  if (at.sin_theta() < kEpsPole) {
    throw Error(ErrorKind::PoleProximity,
                std::string(what) + " is singular at theta = " +
                    std::to_string(static_cast<double>(at.theta())));
  }
}

}  // namespace

Vec3 chi_gradient(const GaugeChoice& gauge, const MomentumPoint& at) {
  if (gauge.kind() == GaugeKind::Zero) return Vec3::Zero();
  require_off_pole(at, "grad chi_p");
  const AngularGradient d = gauge.gradient(at.theta(), at.phi());
  return (at.theta_hat() * d.d_theta + at.phi_hat() * (d.d_phi / at.sin_theta())) /
         at.magnitude();
}

Vec3 monopole_potential(const MomentumPoint& at) {
  require_off_pole(at, "a^(0)");
  return at.phi_hat() * (at.cos_theta() / (at.sin_theta() * at.magnitude()));
}

Vec3 monopole_potential_cartesian(const Vec3& p) {
  const Vec3 e3 = Vec3::UnitZ();
  const Vec3 c = e3.cross(p);
  return c * (p.normalized().dot(e3) / c.squaredNorm());
}

Vec3 gauge_potential(const GaugeChoice& gauge, const MomentumPoint& at) {
  const Real p = at.magnitude();
  switch (gauge.kind()) {
    case GaugeKind::Zero:
      return monopole_potential(at);
    case GaugeKind::MinusPhi:
      if (at.cos_theta() < 0) require_off_pole(at, "a^(1)");
      return at.unit().cross(Vec3::UnitZ()) / (p + at.cartesian().z());
    case GaugeKind::MinusPhiCosTheta:
      return at.theta_hat() *
             (gauge.gradient(at.theta(), at.phi()).d_theta / p);
    case GaugeKind::Custom:
      break;
  }
  return monopole_potential(at) + chi_gradient(gauge, at);
}

Real string_distance(const GaugeChoice& gauge, const MomentumPoint& at) {
  Real d = std::numeric_limits<Real>::infinity();
  const Vec3& p = at.cartesian();
  const StringFlags s = gauge.strings();
  const Real perp = at.perpendicular();
  // Custom potentials are evaluated as a^(0) + grad chi, singular on the whole axis.
  const bool custom = gauge.kind() == GaugeKind::Custom;
  if (s.north() || custom) d = std::min(d, p.z() > 0 ? perp : at.magnitude());
  if (s.south() || custom) d = std::min(d, p.z() < 0 ? perp : at.magnitude());
  if (s.branch_cut) {
    const Real c = std::cos(*s.branch_cut), sn = std::sin(*s.branch_cut);
    const Real along = p.x() * c + p.y() * sn;
    const Real across = -p.x() * sn + p.y() * c;
    d = std::min(d, along >= 0 ? std::abs(across) : perp);
  }
  return d;
}

Vec3 curl_a(const GaugeChoice& gauge, const MomentumPoint& at, Real h) {
  if (h > at.magnitude() / 100) {
    throw Error(ErrorKind::StepTooLarge, "curl step exceeds p/100");
  }
  if (string_distance(gauge, at) <= 10 * h) {
    throw Error(ErrorKind::PoleProximity, "curl stencil touches a string or branch cut");
  }
  auto central = [&](Real step) {
    Mat3 jac;  // jac(k, j) = d a_k / d p_j
    for (int j = 0; j < 3; ++j) {
      const Vec3 d = Vec3::Unit(j) * step;
      jac.col(j) = (gauge_potential(gauge, at.shifted(d)) - gauge_potential(gauge, at.shifted(-d))) /
                   (2 * step);
    }
    return Vec3(jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0), jac(1, 0) - jac(0, 1));
  };
  // Richardson: the h^2 term grows like 1/d^4 at distance d from a string.
  return (4 * central(h / 2) - central(h)) / 3;
}

GaugeField gauge_field(const GaugeChoice& gauge, const MomentumPoint& at, Real h) {
  return {gauge_potential(gauge, at), curl_a(gauge, at, h), gauge.strings()};
}

RegularizedStringField regularized_string_field(const MomentumPoint& at, Real p0) {
  if (!(p0 > 0)) throw Error(ErrorKind::ConfigError, "solenoid width must be positive");
  const Real perp = at.perpendicular();
  const Real ct = at.cos_theta();
  const Real st = at.sin_theta();
  const Real denom = perp * perp + p0 * p0;
  RegularizedStringField f;
  f.a = perp > 0 ? Vec3(at.phi_hat() * (perp * ct / denom)) : Vec3(Vec3::Zero());
  f.curl_string = Vec3::UnitZ() * (2 * p0 * p0 * ct / (denom * denom));
  f.curl = -at.unit() * (st * st / denom) + f.curl_string;
  return f;
}

Real string_flux_through_disk(Real p3, Real p0, Real radius, int radial_nodes,
                              int angular_nodes) {
  if (radial_nodes < 2 || angular_nodes < 1 || !(radius > 0) || p3 == 0) {
    throw Error(ErrorKind::ConfigError, "bad disk quadrature parameters");
  }
  if (radial_nodes % 2) ++radial_nodes;
  // rho = p0 (e^u - 1) resolves the core of width p0 and the tail alike.
  const Real umax = std::log1p(radius / p0);
  const Real du = umax / radial_nodes;
  const Real dphi = kTwoPi / angular_nodes;
  Real total = 0;
  for (int i = 0; i <= radial_nodes; ++i) {
    const Real u = i * du;
    const Real rho = p0 * std::expm1(u);
    const Real jac = rho * p0 * std::exp(u);
    const Real w = (i == 0 || i == radial_nodes) ? 1 : (i % 2 ? 4 : 2);
    Real ring = 0;
    for (int k = 0; k < angular_nodes; ++k) {
      const Real phi = (k + Real{0.5}) * dphi;
      const auto at = MomentumPoint::from_cartesian(
          Vec3(rho * std::cos(phi), rho * std::sin(phi), p3), phi);
      ring += regularized_string_field(at, p0).curl_string.z() * dphi;
    }
    total += w * jac * ring;
  }
  return total * du / 3;
}

CMat3 helicity_operator(const Vec3& p) {
  const SpinMatrices s = spin_matrices(SpinBasis::Cartesian);
  const Vec3 n = p.normalized();
  return s[0] * n.x() + s[1] * n.y() + s[2] * n.z();
}

std::array<CMat3, 3> connection_matrix(const GaugeChoice& gauge, const MomentumPoint& at) {
  const Vec3 a = gauge_potential(gauge, at);
  const SpinMatrices s = spin_matrices(SpinBasis::Cartesian);
  const Vec3 n = at.unit();
  const CMat3 hel = helicity_operator(n);
  std::array<CMat3, 3> out;
  for (int j = 0; j < 3; ++j) {
    CMat3 cross = CMat3::Zero();
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        const Real e = levi_civita(j, k, l);
        if (e != 0) cross += s[k] * (e * n(l));
      }
    }
    out[j] = cross / at.magnitude() + hel * a(j);
  }
  return out;
}

DchiDeviation dchi_deviation(const EulerAngles& angles, const Vec3& dxi, const GaugeChoice& gauge,
                             Real p) {
  const EulerIncrement inc = euler_increment(angles, dxi, RotationSide::Lab);
  const AngularGradient d = gauge.gradient(angles.theta, angles.phi);
  DchiDeviation out;
  out.trig_form = inc.dchi - (d.d_theta * inc.dtheta + d.d_phi * inc.dphi);
  const auto at = MomentumPoint::from_spherical(p, angles.theta, angles.phi);
  const Vec3 a = gauge_potential(gauge, at);
  out.connection_form = (a.cross(at.cartesian()) + at.unit()).dot(dxi);
  return out;
}

}  // namespace photonlab
