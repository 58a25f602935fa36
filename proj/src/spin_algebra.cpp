#include "photonlab/spin_algebra.hpp"

#include <cmath>

namespace photonlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::StringProximity: return "StringProximity";
    case ErrorKind::AmbiguousCap: return "AmbiguousCap";
    case ErrorKind::DegenerateLoop: return "DegenerateLoop";
    case ErrorKind::NonintegrableGauge: return "NonintegrableGauge";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::SingularRegion: return "SingularRegion";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

SpinMatrices spin_matrices(SpinBasis basis) {
  SpinMatrices s;
  if (basis == SpinBasis::Cartesian) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) s[j](k, l) = -kI * levi_civita(j, k, l);
      }
    }
    return s;
  }
  // Ladder operator in the T-basis: S+ e_0 = -sqrt2 e_+, S+ e_- = sqrt2 e_0.
  const Real r2 = std::sqrt(Real{2});
  CMat3 raise = CMat3::Zero();
  raise(0, 1) = -r2;
  raise(1, 2) = r2;
  const CMat3 lower = raise.adjoint();
  s[0] = (raise + lower) / Real{2};
  s[1] = (raise - lower) / (Real{2} * kI);
  s[2] = CMat3::Zero();
  s[2](0, 0) = 1;
  s[2](2, 2) = -1;
  return s;
}

CMat3 basis_change_T() {
  const Real r = 1 / std::sqrt(Real{2});
  CMat3 t = CMat3::Zero();
  t(0, 0) = r;
  t(1, 0) = kI * r;
  t(2, 1) = 1;
  t(0, 2) = r;
  t(1, 2) = -kI * r;
  return t;
}

CMat3 spin_exponential(const CMat3& axis_spin, Real angle) {
  return CMat3::Identity() - kI * std::sin(angle) * axis_spin +
         (std::cos(angle) - 1) * (axis_spin * axis_spin);
}

Mat3 rotation_about(const Vec3& xi) {
  const Real angle = xi.norm();
  if (angle == 0) return Mat3::Identity();
  const Vec3 n = xi / angle;
  Mat3 k;
  k << 0, -n.z(), n.y(), n.z(), 0, -n.x(), -n.y(), n.x(), 0;
  return Mat3::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * (k * k);
}

Mat3 rotation_matrix_real(const EulerAngles& a) {
  const Real cf = std::cos(a.phi), sf = std::sin(a.phi);
  const Real ct = std::cos(a.theta), st = std::sin(a.theta);
  const Real cc = std::cos(a.chi), sc = std::sin(a.chi);
  Mat3 d;
  d << ct * cf * cc - sf * sc, -(sf * cc + ct * cf * sc), st * cf,
       ct * sf * cc + cf * sc, cf * cc - ct * sf * sc, st * sf,
       -st * cc, st * sc, ct;
  return d;
}

Mat3 wigner_d1(Real theta) {
  const Real c = std::cos(theta), s = std::sin(theta);
  const Real r2 = std::sqrt(Real{2});
  Mat3 d;
  d << c + 1, r2 * s, c - 1,
       -r2 * s, 2 * c, -r2 * s,
       c - 1, r2 * s, c + 1;
  return d / 2;
}

CMat3 rotation_matrix(const EulerAngles& angles, SpinBasis basis) {
  if (basis == SpinBasis::Cartesian) return rotation_matrix_real(angles).cast<Complex>();
  const Mat3 d = wigner_d1(angles.theta);
  CMat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      const Real kappa = 1 - i, kappa_p = 1 - k;
      out(i, k) = std::exp(-kI * (kappa * angles.phi + kappa_p * angles.chi)) * d(i, k);
    }
  }
  return out;
}

FrameVectors frame_vectors(const EulerAngles& angles) {
  const Mat3 d = rotation_matrix_real(angles);
  FrameVectors f;
  f.e1 = d.col(0);
  f.e2 = d.col(1);
  f.e3 = d.col(2);
  const Real r = 1 / std::sqrt(Real{2});
  f.e_plus = (f.e1.cast<Complex>() + kI * f.e2.cast<Complex>()) * r;
  f.e_minus = (f.e1.cast<Complex>() - kI * f.e2.cast<Complex>()) * r;
  return f;
}

CVec3 helicity_vector(const EulerAngles& angles, int kappa) {
  const FrameVectors f = frame_vectors(angles);
  if (kappa > 0) return f.e_plus;
  if (kappa < 0) return f.e_minus;
  return f.e3.cast<Complex>();
}

CMat3 rotate_spin(const EulerAngles& angles, int j) {
  const CMat3 d = rotation_matrix(angles, SpinBasis::Cartesian);
  return d * spin_matrices(SpinBasis::Cartesian)[j] * d.adjoint();
}

EulerIncrement euler_increment(const EulerAngles& a, const Vec3& dxi, RotationSide side) {
  const Real st = std::sin(a.theta);
  if (std::abs(st) < kEpsPole) {
    throw Error(ErrorKind::PoleProximity, "Euler increments are singular at sin(theta) = " +
                                              std::to_string(static_cast<double>(st)));
  }
  const Real ct = std::cos(a.theta);
  EulerIncrement inc;
  if (side == RotationSide::Lab) {
    const Real cf = std::cos(a.phi), sf = std::sin(a.phi);
    const Real radial = dxi.x() * cf + dxi.y() * sf;
    inc.dphi = dxi.z() - ct / st * radial;
    inc.dtheta = dxi.y() * cf - dxi.x() * sf;
    inc.dchi = radial / st;
  } else {
    const Real cc = std::cos(a.chi), sc = std::sin(a.chi);
    inc.dphi = (-dxi.x() * cc + dxi.y() * sc) / st;
    inc.dtheta = dxi.x() * sc + dxi.y() * cc;
    inc.dchi = dxi.z() - inc.dphi * ct;
  }
  return inc;
}

Rotor Rotor::from_axis_angle(const Vec3& xi) {
  const Real angle = xi.norm();
  if (angle == 0) return {};
  return {std::cos(angle / 2), xi / angle * std::sin(angle / 2)};
}

Rotor Rotor::from_euler(const EulerAngles& a) {
  return from_axis_angle(Vec3::UnitZ() * a.phi) * from_axis_angle(Vec3::UnitY() * a.theta) *
         from_axis_angle(Vec3::UnitZ() * a.chi);
}

Real Rotor::norm() const {
  return std::sqrt(scalar_ * scalar_ + bivector_.squaredNorm());
}

Rotor Rotor::operator*(const Rotor& rhs) const {
  return {scalar_ * rhs.scalar_ - bivector_.dot(rhs.bivector_),
          scalar_ * rhs.bivector_ + rhs.scalar_ * bivector_ + bivector_.cross(rhs.bivector_)};
}

Rotor Rotor::normalized() const {
  const Real n = norm();
  return {scalar_ / n, bivector_ / n};
}

Vec3 Rotor::rotate(const Vec3& v) const {
  const Vec3 t = 2 * bivector_.cross(v);
  return v + scalar_ * t + bivector_.cross(t);
}

Mat3 Rotor::to_matrix() const {
  Mat3 m;
  m.col(0) = rotate(Vec3::UnitX());
  m.col(1) = rotate(Vec3::UnitY());
  m.col(2) = rotate(Vec3::UnitZ());
  return m;
}

Real Rotor::distance(const Rotor& other) const {
  return std::sqrt((scalar_ - other.scalar_) * (scalar_ - other.scalar_) +
                   (bivector_ - other.bivector_).squaredNorm());
}

Real unwind_near(Real angle, Real reference) {
  return angle + kTwoPi * std::round((reference - angle) / kTwoPi);
}

EulerAngles euler_from_matrix(const Mat3& m, const EulerAngles& reference) {
  constexpr Real kDegenerate = 1e-13L;
  EulerAngles out;
  const Real transverse = std::hypot(m(0, 2), m(1, 2));
  out.theta = std::atan2(transverse, m(2, 2));
  if (transverse > kDegenerate) {
    out.phi = unwind_near(std::atan2(m(1, 2), m(0, 2)), reference.phi);
    out.chi = unwind_near(std::atan2(m(2, 1), -m(2, 0)), reference.chi);
    return out;
  }
  out.chi = reference.chi;
  if (m(2, 2) > 0) {
    const Real sum = std::atan2(m(1, 0), m(0, 0));
    out.phi = unwind_near(sum - out.chi, reference.phi);
  } else {
    const Real diff = std::atan2(-m(1, 0), -m(0, 0));
    out.phi = unwind_near(diff + out.chi, reference.phi);
  }
  return out;
}

}  // namespace photonlab
