#include "photonlab/operators.hpp"

#include "photonlab/random.hpp"

#include <cmath>
#include <utility>

namespace photonlab {

const char* to_string(OperatorFamily family) {
  switch (family) {
    case OperatorFamily::WeightedGradient: return "G";
    case OperatorFamily::PositionNew: return "r";
    case OperatorFamily::PositionPryce: return "r_P";
    case OperatorFamily::J_Foldy: return "J_F";
    case OperatorFamily::K_Foldy: return "K_F";
    case OperatorFamily::J_LM: return "J_LM";
    case OperatorFamily::K_LM: return "K_LM";
    case OperatorFamily::J_Shirokov: return "J_Sh";
    case OperatorFamily::K_Shirokov: return "K_Sh";
    case OperatorFamily::J_GeneralHelicity: return "J_h";
    case OperatorFamily::K_GeneralHelicity: return "K_h";
    case OperatorFamily::L_r: return "L_r";
    case OperatorFamily::S_r: return "S_r";
    case OperatorFamily::K_r: return "K_r";
    case OperatorFamily::Helicity: return "p.S";
    case OperatorFamily::Momentum: return "p";
    case OperatorFamily::Energy: return "H";
    case OperatorFamily::Spin: return "S";
    case OperatorFamily::SpinFrame: return "S_p";
  }
  return "?";
}

bool is_differential(OperatorFamily family) {
  switch (family) {
    case OperatorFamily::S_r:
    case OperatorFamily::Helicity:
    case OperatorFamily::Momentum:
    case OperatorFamily::Energy:
    case OperatorFamily::Spin:
    case OperatorFamily::SpinFrame:
      return false;
    default:
      return true;
  }
}

bool is_standard_weight(Real alpha) { return alpha == 0 || alpha == 0.5L || alpha == -0.5L; }

namespace {

struct Stencil {
  CVec3 center;
  std::array<CVec3, 3> d;   // central-difference partial derivatives
  std::array<CVec3, 3> dw;  // p^alpha d (p^-alpha psi) from the same samples
};

Stencil sample(const WaveFunction& psi, const MomentumPoint& at, Real h, bool derivatives,
               Real alpha) {
  Stencil s;
  s.center = psi(at);
  if (!derivatives) return s;
  const Real p = at.magnitude();
  for (int j = 0; j < 3; ++j) {
    const Vec3 step = Vec3::Unit(j) * h;
    const MomentumPoint up = at.shifted(step), down = at.shifted(-step);
    const CVec3 fu = psi(up), fd = psi(down);
    s.d[j] = (fu - fd) / (2 * h);
    s.dw[j] = (std::pow(up.magnitude() / p, -alpha) * fu -
               std::pow(down.magnitude() / p, -alpha) * fd) /
              (2 * h);
  }
  return s;
}

const SpinMatrices& cartesian_spin() {
  static const SpinMatrices s = spin_matrices(SpinBasis::Cartesian);
  return s;
}

// Sum_k,l eps_jkl u_k M_l.
CMat3 cross_with_spin(int j, const Vec3& u) {
  const SpinMatrices& s = cartesian_spin();
  CMat3 out = CMat3::Zero();
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const Real e = levi_civita(j, k, l);
      if (e != 0) out += s[l] * (e * u(k));
    }
  }
  return out;
}

CVec3 weighted_gradient(const Stencil& s, int j) { return kI * s.dw[j]; }

CVec3 orbital_rotation(const Stencil& s, const MomentumPoint& at, int j) {
  CVec3 out = CVec3::Zero();
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const Real e = levi_civita(j, k, l);
      if (e != 0) out += -kI * e * at.cartesian()(k) * s.d[l];
    }
  }
  return out;
}

// i p^(alpha+1) d p^-alpha + (i/2) p-hat.
CVec3 kinetic_boost(const Stencil& s, const MomentumPoint& at, int j) {
  return kI * at.magnitude() * s.dw[j] + kI * (Real{0.5} * at.unit()(j)) * s.center;
}

CVec3 position_new(const Stencil& s, const MomentumPoint& at, const GaugeChoice& gauge, int j) {
  return weighted_gradient(s, j) - connection_matrix(gauge, at)[j] * s.center;
}

void require_off_pole(const MomentumPoint& at, bool south_only, const char* what) {
  if (at.sin_theta() < kEpsPole && (!south_only || at.cos_theta() < 0)) {
    throw Error(ErrorKind::PoleProximity, std::string(what) + " is singular on the polar axis");
  }
}

CVec3 evaluate(const OperatorSpec& op, const Stencil& s, const MomentumPoint& at) {
  const int j = op.component;
  const Vec3& p = at.cartesian();
  const Real pm = at.magnitude();
  const Vec3 n = at.unit();
  const SpinMatrices& spin = cartesian_spin();
  switch (op.family) {
    case OperatorFamily::WeightedGradient:
      return weighted_gradient(s, j);
    case OperatorFamily::PositionNew:
      return position_new(s, at, op.gauge, j);
    case OperatorFamily::PositionPryce:
      return weighted_gradient(s, j) + cross_with_spin(j, p) * s.center / (pm * pm);
    case OperatorFamily::J_Foldy:
      return orbital_rotation(s, at, j) + spin[j] * s.center;
    case OperatorFamily::K_Foldy:
      return kinetic_boost(s, at, j) + cross_with_spin(j, n) * s.center;
    case OperatorFamily::J_LM: {
      require_off_pole(at, true, "J_LM");
      const Vec3 g = (n + Vec3::UnitZ()) / (1 + at.cos_theta());
      return orbital_rotation(s, at, j) + g(j) * (spin[2] * s.center);
    }
    case OperatorFamily::K_LM: {
      require_off_pole(at, true, "K_LM");
      const Vec3 g = n.cross(Vec3::UnitZ()) / (1 + at.cos_theta());
      return kinetic_boost(s, at, j) + g(j) * (spin[2] * s.center);
    }
    case OperatorFamily::J_Shirokov: {
      require_off_pole(at, false, "J_Sh");
      const Vec3 g = at.theta_hat() * (at.cos_theta() / at.sin_theta()) + n;
      return orbital_rotation(s, at, j) + g(j) * (spin[2] * s.center);
    }
    case OperatorFamily::K_Shirokov: {
      require_off_pole(at, false, "K_Sh");
      const Vec3 g = at.phi_hat() * (at.cos_theta() / at.sin_theta());
      return kinetic_boost(s, at, j) + g(j) * (spin[2] * s.center);
    }
    case OperatorFamily::J_GeneralHelicity: {
      const Vec3 g = gauge_potential(op.gauge, at).cross(p) + n;
      return orbital_rotation(s, at, j) + g(j) * (spin[2] * s.center);
    }
    case OperatorFamily::K_GeneralHelicity: {
      const Vec3 a = gauge_potential(op.gauge, at);
      return kinetic_boost(s, at, j) + (a(j) * pm) * (spin[2] * s.center);
    }
    case OperatorFamily::L_r: {
      CVec3 out = CVec3::Zero();
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const Real e = levi_civita(j, k, l);
          if (e != 0) out += (e * p(l)) * position_new(s, at, op.gauge, k);
        }
      }
      return out;
    }
    case OperatorFamily::S_r: {
      const Vec3 g = gauge_potential(op.gauge, at).cross(p) + n;
      return g(j) * (helicity_operator(p) * s.center);
    }
    case OperatorFamily::K_r:
      return pm * position_new(s, at, op.gauge, j) +
             (kI * Real{0.5} * n(j)) * s.center;
    case OperatorFamily::Helicity:
      return helicity_operator(p) * s.center;
    case OperatorFamily::Momentum:
      return p(j) * s.center;
    case OperatorFamily::Energy:
      return (op.c * pm) * s.center;
    case OperatorFamily::Spin:
      return spin[j] * s.center;
    case OperatorFamily::SpinFrame:
      return rotate_spin(frame_angles(op.gauge, at), j) * s.center;
  }
  return CVec3::Zero();
}

CVec3 apply_unchecked(const OperatorSpec& op, const WaveFunction& psi, const MomentumPoint& at,
                      Real h) {
  if (op.component < 0 || op.component > 2) {
    throw Error(ErrorKind::ConfigError, "operator component must be 0, 1 or 2");
  }
  const Stencil s = sample(psi, at, h, is_differential(op.family), op.alpha);
  return evaluate(op, s, at);
}

}  // namespace

CVec3 apply_component(const OperatorSpec& op, const WaveFunction& psi, const MomentumPoint& at,
                      Real h) {
  if (is_differential(op.family) && !(h > 0 && h <= at.magnitude() / 100)) {
    throw Error(ErrorKind::StepTooLarge, "difference step must lie in (0, p/100]");
  }
  return apply_unchecked(op, psi, at, h);
}

OperatorApplication apply(const OperatorSpec& op, const WaveFunction& psi, const MomentumPoint& at,
                          Real h) {
  OperatorApplication out;
  out.fd_step = h;
  out.value = apply_component(op, psi, at, h);
  if (is_differential(op.family)) {
    const CVec3 half = apply_component(op, psi, at, h / 2);
    out.error_estimate = (out.value - half).norm() * 4 / 3;
  }
  return out;
}

WaveFunction bind_operator(const OperatorSpec& op, WaveFunction psi, Real h) {
  return [op, psi = std::move(psi), h](const MomentumPoint& q) {
    return apply_unchecked(op, psi, q, h);
  };
}

VectorResult apply_all(OperatorSpec op, const WaveFunction& psi, const MomentumPoint& at, Real h) {
  VectorResult out;
  for (int j = 0; j < 3; ++j) {
    op.component = j;
    out[j] = apply_component(op, psi, at, h);
  }
  return out;
}

VectorResult apply_weighted_gradient(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                     Real h) {
  return apply_all({OperatorFamily::WeightedGradient, 0, alpha}, psi, at, h);
}

VectorResult apply_position_new(const WaveFunction& psi, const MomentumPoint& at,
                                const GaugeChoice& gauge, Real alpha, Real h) {
  return apply_all({OperatorFamily::PositionNew, 0, alpha, gauge}, psi, at, h);
}

VectorResult apply_position_pryce(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                  Real h) {
  return apply_all({OperatorFamily::PositionPryce, 0, alpha}, psi, at, h);
}

VectorResult apply_generator(OperatorFamily family, const WaveFunction& psi,
                             const MomentumPoint& at, Real alpha, const GaugeChoice& gauge, Real h) {
  return apply_all({family, 0, alpha, gauge}, psi, at, h);
}

CMat3 chakrabarti_rotation(Real theta, Real phi) {
  const SpinMatrices& s = cartesian_spin();
  const CMat3 axis = s[0] * -std::sin(phi) + s[1] * std::cos(phi);
  return spin_exponential(axis, theta);
}

VectorResult conjugate_representation(OperatorFamily family, ConjugationRule rule,
                                      const WaveFunction& psi, const MomentumPoint& at, Real h,
                                      Real alpha, const GaugeChoice& gauge) {
  require_off_pole(at, false, "representation change");
  auto frame = [rule, gauge](const MomentumPoint& q) -> Mat3 {
    switch (rule) {
      case ConjugationRule::ChakrabartiUh:
        return rotation_matrix_real({q.phi(), q.theta(), -q.phi()});
      case ConjugationRule::PolarD0:
        return rotation_matrix_real({q.phi(), q.theta(), 0});
      case ConjugationRule::GaugeFrame:
        break;
    }
    return rotation_matrix_real(frame_angles(gauge, q));
  };
  const WaveFunction helicity_psi = [psi, frame](const MomentumPoint& q) -> CVec3 {
    return frame(q).transpose().cast<Complex>() * psi(q);
  };
  const CMat3 d = frame(at).cast<Complex>();
  VectorResult out = apply_generator(family, helicity_psi, at, alpha, gauge, h);
  for (auto& v : out) v = d * v;
  return out;
}

namespace {

Partition assemble(VectorResult orbital, VectorResult spin) {
  Partition out{orbital, spin, {}};
  for (int j = 0; j < 3; ++j) out.total[j] = orbital[j] + spin[j];
  return out;
}

}  // namespace

Partition orbital_spin_partition(const WaveFunction& psi, const MomentumPoint& at,
                                 const GaugeChoice& gauge, Real alpha, Real h) {
  return assemble(apply_all({OperatorFamily::L_r, 0, alpha, gauge}, psi, at, h),
                  apply_all({OperatorFamily::S_r, 0, alpha, gauge}, psi, at, h));
}

Partition boost_partition(const WaveFunction& psi, const MomentumPoint& at,
                          const GaugeChoice& gauge, Real alpha, Real h) {
  VectorResult spin;
  const Vec3 a = gauge_potential(gauge, at);
  const CVec3 hel = helicity_operator(at.cartesian()) * psi(at);
  for (int j = 0; j < 3; ++j) spin[j] = (a(j) * at.magnitude()) * hel;
  return assemble(apply_all({OperatorFamily::K_r, 0, alpha, gauge}, psi, at, h), spin);
}

Partition pryce_angular_partition(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                  Real h) {
  const VectorResult rp = apply_position_pryce(psi, at, alpha, h);
  const Vec3& p = at.cartesian();
  const CVec3 hel = helicity_operator(p) * psi(at);
  VectorResult orbital, spin;
  for (int j = 0; j < 3; ++j) {
    orbital[j] = CVec3::Zero();
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        const Real e = levi_civita(j, k, l);
        if (e != 0) orbital[j] -= (e * p(k)) * rp[l];
      }
    }
    spin[j] = at.unit()(j) * hel;
  }
  return assemble(orbital, spin);
}

Partition pryce_boost_partition(const WaveFunction& psi, const MomentumPoint& at, Real alpha,
                                Real h) {
  // r_P p psi = p r_P psi + i p-hat psi.
  const VectorResult rp = apply_position_pryce(psi, at, alpha, h);
  const CVec3 center = psi(at);
  VectorResult orbital, spin;
  for (int j = 0; j < 3; ++j) {
    orbital[j] = at.magnitude() * rp[j] + (kI * Real{0.5} * at.unit()(j)) * center;
    spin[j] = CVec3::Zero();
  }
  return assemble(orbital, spin);
}

VectorResult velocity_check(const WaveFunction& psi, const MomentumPoint& at,
                            const GaugeChoice& gauge, Real alpha, Real h, Real c) {
  OperatorSpec energy{OperatorFamily::Energy, 0, alpha, gauge, c};
  const WaveFunction h_psi = bind_operator(energy, psi, h);
  const VectorResult r_psi = apply_position_new(psi, at, gauge, alpha, h);
  const VectorResult r_h_psi = apply_position_new(h_psi, at, gauge, alpha, h);
  VectorResult out;
  for (int j = 0; j < 3; ++j) out[j] = kI * (c * at.magnitude() * r_psi[j] - r_h_psi[j]);
  return out;
}

WaveFunction parity(WaveFunction psi) {
  return [psi = std::move(psi)](const MomentumPoint& q) {
    return psi(MomentumPoint::from_cartesian(-q.cartesian(), q.phi() + kPi));
  };
}

GaugeChoice parity_partner(const GaugeChoice& gauge) {
  if (gauge.kind() == GaugeKind::Zero) return gauge;
  // chi'(theta, phi) = -chi(pi - theta, phi - pi) gives grad chi'(-p) = grad chi(p).
  return GaugeChoice::custom(
      "parity-" + gauge.name(),
      [gauge](Real t, Real f) { return -gauge.chi(kPi - t, f - kPi); },
      [gauge](Real t, Real f) {
        const AngularGradient d = gauge.gradient(kPi - t, f - kPi);
        return AngularGradient{d.d_theta, -d.d_phi};
      });
}

Complex hermiticity_defect(const WaveFunction& phi, const WaveFunction& psi,
                           const GaugeChoice& gauge, Real alpha, int component,
                           const Vec3& center, Real half_width, int n) {
  if (n < 4) throw Error(ErrorKind::ConfigError, "grid too coarse");
  const Real step = 2 * half_width / n;
  const OperatorSpec r{OperatorFamily::PositionNew, component, alpha, gauge};
  Complex sum = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec3 offset = Vec3(i + Real{0.5}, j + Real{0.5}, k + Real{0.5}) * step;
        const auto at = MomentumPoint::from_cartesian(center - Vec3::Constant(half_width) + offset);
        const Real weight = std::pow(at.magnitude(), -2 * alpha);
        const Complex lhs = phi(at).dot(apply_unchecked(r, psi, at, step));
        const Complex rhs = apply_unchecked(r, phi, at, step).dot(psi(at));
        sum += weight * (lhs - rhs);
      }
    }
  }
  return sum * step * step * step;
}

ScalarField gaussian_scalar(const Vec3& center, Real width, const Vec3& slope,
                            const Vec3& r_prime) {
  return [=](const MomentumPoint& q) {
    const Vec3 d = q.cartesian() - center;
    const Real envelope = std::exp(-d.squaredNorm() / (2 * width * width)) * (1 + slope.dot(d));
    return envelope * std::exp(-kI * r_prime.dot(q.cartesian()));
  };
}

ScalarField radial_scalar(Real p_mean, Real width) {
  return [=](const MomentumPoint& q) {
    const Real d = q.magnitude() - p_mean;
    return Complex(std::exp(-d * d / (2 * width * width)), 0);
  };
}

WaveFunction polarized(ScalarField f, const CVec3& v) {
  return [f = std::move(f), v](const MomentumPoint& q) -> CVec3 { return f(q) * v; };
}

WaveFunction helicity_packet(ScalarField f, const GaugeChoice& gauge, int kappa) {
  return [f = std::move(f), gauge, kappa](const MomentumPoint& q) -> CVec3 {
    return f(q) * gauge_helicity_vector(gauge, q, kappa);
  };
}

WaveFunction combine(WaveFunction psi1, Complex a, WaveFunction psi2, Complex b) {
  return [psi1 = std::move(psi1), psi2 = std::move(psi2), a, b](const MomentumPoint& q) -> CVec3 {
    return a * psi1(q) + b * psi2(q);
  };
}

WaveFunction generic_test_function(unsigned long long seed, const Vec3& around) {
  Rng rng(seed);
  auto packet = [&]() {
    const Vec3 center = around + rng.cube(0.3L);
    const Real width = rng.uniform(0.5L, 0.8L);
    const Vec3 slope = rng.cube(0.5L);
    const Vec3 r_prime = rng.cube(1);
    CVec3 v;
    for (int k = 0; k < 3; ++k) v(k) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return polarized(gaussian_scalar(center, width, slope, r_prime), v.normalized());
  };
  WaveFunction first = packet();
  WaveFunction second = packet();
  const Complex b(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return combine(std::move(first), 1, std::move(second), b);
}

}  // namespace photonlab
