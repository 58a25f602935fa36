#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "photonlab/operators.hpp"

using namespace photonlab;

namespace {

Real worst(const VectorResult& a, const VectorResult& b) {
  Real w = 0;
  for (int j = 0; j < 3; ++j) w = std::max(w, (a[j] - b[j]).norm());
  return w;
}

std::vector<GaugeChoice> named_gauges() {
  return {GaugeChoice::zero(), GaugeChoice::minus_phi(), GaugeChoice::minus_phi_cos_theta()};
}

CVec3 random_polarization(oracle::Sampler& rng) {
  CVec3 v;
  for (int k = 0; k < 3; ++k) v(k) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return v.normalized();
}

}  // namespace

TEST_CASE("weighted gradient") {
  oracle::Sampler rng(101);
  for (int n = 0; n < 20; ++n) {
    const Vec3 rp = rng.vector(2);
    const CVec3 v = random_polarization(rng);
    const WaveFunction plane = polarized(gaussian_scalar(Vec3::Zero(), 1e6L, Vec3::Zero(), rp), v);
    const Real mag = rng.uniform(0.5L, 2);
    const auto at = MomentumPoint::from_cartesian(rng.momentum(mag));
    const Real h = 1e-5L * mag;
    const CVec3 psi0 = plane(at);

    const VectorResult g0 = apply_weighted_gradient(plane, at, 0, h);
    for (int j = 0; j < 3; ++j) CHECK((g0[j] - rp(j) * psi0).norm() <= 1e-8L);

    // alpha = 1/2: differentiate p^-1/2 psi directly and multiply back.
    const VectorResult g = apply_weighted_gradient(plane, at, 0.5L, h);
    for (int j = 0; j < 3; ++j) {
      auto weighted = [&](const Vec3& q) { return plane(MomentumPoint::from_cartesian(q)) / std::sqrt(q.norm()); };
      const Vec3 s = Vec3::Unit(j) * h;
      const CVec3 direct = kI * std::sqrt(mag) * (weighted(at.cartesian() + s) - weighted(at.cartesian() - s)) / (2 * h);
      const CVec3 identity = rp(j) * psi0 - kI * (0.5L * at.cartesian()(j) / (mag * mag)) * psi0;
      CHECK((g[j] - direct).norm() <= 1e-7L);
      CHECK((g[j] - identity).norm() <= 1e-7L);
    }
  }

  const auto at = MomentumPoint::from_cartesian(Vec3(0.3L, -0.5L, 0.9L));
  const WaveFunction a = generic_test_function(1, at.cartesian());
  const WaveFunction b = generic_test_function(2, at.cartesian());
  const VectorResult lin = apply_weighted_gradient(combine(a, 1, b, 2), at, 0.5L, 1e-5L);
  const VectorResult ga = apply_weighted_gradient(a, at, 0.5L, 1e-5L);
  const VectorResult gb = apply_weighted_gradient(b, at, 0.5L, 1e-5L);
  for (int j = 0; j < 3; ++j) CHECK((lin[j] - ga[j] - Real{2} * gb[j]).norm() <= 1e-10L);

  CHECK_THROWS_AS(apply_weighted_gradient(a, at, 0, 0.1L), Error);
}

TEST_CASE("Richardson estimate tracks the step") {
  const auto at = MomentumPoint::from_cartesian(Vec3(0.4L, 0.2L, 1.1L));
  const WaveFunction psi = generic_test_function(5, at.cartesian());
  const OperatorSpec op{OperatorFamily::PositionNew, 1, 0.5L, GaugeChoice::minus_phi()};
  const OperatorApplication coarse = apply(op, psi, at, 1e-2L);
  const OperatorApplication fine = apply(op, psi, at, 5e-3L);
  CHECK(coarse.fd_step == 1e-2L);
  CHECK(coarse.error_estimate / fine.error_estimate == doctest::Approx(4).epsilon(0.05));
  const CVec3 truth = apply_component(op, psi, at, 1e-5L);
  CHECK((coarse.value - truth).norm() == doctest::Approx(coarse.error_estimate).epsilon(0.05));
}

TEST_CASE("new position operator") {
  oracle::Sampler rng(103);
  for (const auto& g : named_gauges()) {
    for (Real alpha : {-0.5L, 0.0L, 0.5L}) {
      for (int kappa : {-1, 0, 1}) {
        const Real mag = rng.uniform(0.5L, 2);
        const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
        const Vec3 rp = rng.vector(1.5L);
        const ScalarField weight = [alpha, rp](const MomentumPoint& q) {
          return std::pow(q.magnitude(), alpha) * std::exp(-kI * rp.dot(q.cartesian()));
        };
        const WaveFunction psi = helicity_packet(weight, g, kappa);
        const VectorResult r = apply_position_new(psi, at, g, alpha, 1e-5L * mag);
        const Real scale = psi(at).norm();
        for (int j = 0; j < 3; ++j) CHECK((r[j] - rp(j) * psi(at)).norm() <= 1e-6L * scale);
      }
    }
  }

  // Gauge shift on an arbitrary amplitude: r' - r = -grad chi (p-hat.S).
  for (int n = 0; n < 20; ++n) {
    const Real mag = rng.uniform(0.5L, 2);
    const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
    const WaveFunction psi = generic_test_function(200 + n, at.cartesian());
    const Real h = 1e-5L * mag;
    const VectorResult r1 = apply_position_new(psi, at, GaugeChoice::minus_phi(), 0, h);
    const VectorResult r0 = apply_position_new(psi, at, GaugeChoice::zero(), 0, h);
    // grad chi for chi = -phi on the sphere, from Cartesian differences of atan2.
    Vec3 grad;
    for (int j = 0; j < 3; ++j) {
      const Vec3 s = Vec3::Unit(j) * h;
      const Vec3 a = at.cartesian() + s, b = at.cartesian() - s;
      grad(j) = -(std::atan2(a.y(), a.x()) - std::atan2(b.y(), b.x())) / (2 * h);
    }
    const CVec3 hel = helicity_operator(at.cartesian()) * psi(at);
    for (int j = 0; j < 3; ++j) CHECK((r1[j] - r0[j] + grad(j) * hel).norm() <= 1e-6L);
  }
}

TEST_CASE("Pryce operator") {
  oracle::Sampler rng(107);
  const SpinMatrices s = spin_matrices(SpinBasis::Cartesian);
  for (const auto& g : named_gauges()) {
    for (int kappa : {-1, 1}) {
      const Real mag = rng.uniform(0.5L, 2);
      const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
      const WaveFunction psi =
          helicity_packet(gaussian_scalar(at.cartesian(), 0.6L, rng.vector(0.5L), rng.vector(1)), g, kappa);
      const Real h = 1e-5L * mag;
      const VectorResult rp = apply_position_pryce(psi, at, 0.5L, h);
      const VectorResult r = apply_position_new(psi, at, g, 0.5L, h);
      const Vec3 a = gauge_potential(g, at);
      for (int j = 0; j < 3; ++j) CHECK((rp[j] - r[j] - Real(kappa) * a(j) * psi(at)).norm() <= 1e-7L);
    }
  }
  // The spin term alone, against an explicit matrix built from components.
  const auto at = MomentumPoint::from_cartesian(Vec3(0.7L, -0.4L, 0.5L));
  const Vec3 p = at.cartesian();
  for (int kappa : {-1, 0, 1}) {
    const WaveFunction e = helicity_packet([](const MomentumPoint&) { return Complex(1); },
                                           GaugeChoice::zero(), kappa);
    const VectorResult with = apply_position_pryce(e, at, 0, 1e-5L);
    const VectorResult without = apply_weighted_gradient(e, at, 0, 1e-5L);
    const CMat3 pxs[3] = {p.y() * s[2] - p.z() * s[1], p.z() * s[0] - p.x() * s[2], p.x() * s[1] - p.y() * s[0]};
    for (int j = 0; j < 3; ++j) {
      CHECK((with[j] - without[j] - pxs[j] * e(at) / p.squaredNorm()).norm() <= 1e-10L);
    }
  }
  // Changing alpha changes only the gradient part.
  const WaveFunction psi = generic_test_function(9, p);
  const VectorResult d1 = apply_position_pryce(psi, at, 0.5L, 1e-5L);
  const VectorResult d0 = apply_position_pryce(psi, at, 0, 1e-5L);
  const VectorResult g1 = apply_weighted_gradient(psi, at, 0.5L, 1e-5L);
  const VectorResult g0 = apply_weighted_gradient(psi, at, 0, 1e-5L);
  for (int j = 0; j < 3; ++j) CHECK((d1[j] - d0[j] - (g1[j] - g0[j])).norm() <= 1e-15L);
}

TEST_CASE("generators and their special cases") {
  oracle::Sampler rng(109);
  // Orbital part kills spherically symmetric functions.
  const CVec3 v = random_polarization(rng);
  const WaveFunction radial = polarized(radial_scalar(1.2L, 0.4L), v);
  const auto at0 = MomentumPoint::from_cartesian(Vec3(0.5L, 0.6L, 0.8L));
  const VectorResult jf = apply_generator(OperatorFamily::J_Foldy, radial, at0, 0, GaugeChoice::zero(), 1e-5L);
  const SpinMatrices s = spin_matrices(SpinBasis::Cartesian);
  for (int j = 0; j < 3; ++j) CHECK((jf[j] - s[j] * radial(at0)).norm() <= 1e-10L);

  for (int n = 0; n < 20; ++n) {
    const Real mag = rng.uniform(0.5L, 2);
    const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
    const WaveFunction psi = generic_test_function(300 + n, at.cartesian());
    const Real h = 1e-5L * mag, alpha = (n % 3 - 1) * 0.5L;
    auto gen = [&](OperatorFamily f, const GaugeChoice& g) { return apply_generator(f, psi, at, alpha, g, h); };
    CHECK(worst(gen(OperatorFamily::J_GeneralHelicity, GaugeChoice::zero()), gen(OperatorFamily::J_Shirokov, GaugeChoice::zero())) <= 1e-6L);
    CHECK(worst(gen(OperatorFamily::K_GeneralHelicity, GaugeChoice::zero()), gen(OperatorFamily::K_Shirokov, GaugeChoice::zero())) <= 1e-6L);
    CHECK(worst(gen(OperatorFamily::J_GeneralHelicity, GaugeChoice::minus_phi()), gen(OperatorFamily::J_LM, GaugeChoice::zero())) <= 1e-6L);
    CHECK(worst(gen(OperatorFamily::K_GeneralHelicity, GaugeChoice::minus_phi()), gen(OperatorFamily::K_LM, GaugeChoice::zero())) <= 1e-6L);
  }
  const auto pole = MomentumPoint::from_spherical(1, 1e-8L, 0);
  CHECK_THROWS_AS(apply_generator(OperatorFamily::J_Shirokov, radial, pole, 0, GaugeChoice::zero(), 1e-5L), Error);
}

TEST_CASE("representation equivalences") {
  oracle::Sampler rng(113);
  for (int n = 0; n < 20; ++n) {
    const Real th = rng.uniform(0.2L, kPi - 0.2L), ph = rng.uniform(-3, 3);
    CHECK(oracle::max_abs(chakrabarti_rotation(th, ph) - rotation_matrix({ph, th, -ph}, SpinBasis::Cartesian)) <= 1e-10L);

    const Real mag = rng.uniform(0.5L, 2);
    const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
    const WaveFunction psi = generic_test_function(400 + n, at.cartesian());
    const Real h = 1e-5L * mag, alpha = (n % 3 - 1) * 0.5L;
    const auto z = GaugeChoice::zero();
    const VectorResult jf = apply_generator(OperatorFamily::J_Foldy, psi, at, alpha, z, h);
    const VectorResult kf = apply_generator(OperatorFamily::K_Foldy, psi, at, alpha, z, h);
    CHECK(worst(conjugate_representation(OperatorFamily::J_LM, ConjugationRule::ChakrabartiUh, psi, at, h, alpha), jf) <= 1e-5L);
    CHECK(worst(conjugate_representation(OperatorFamily::K_LM, ConjugationRule::ChakrabartiUh, psi, at, h, alpha), kf) <= 1e-5L);
    CHECK(worst(conjugate_representation(OperatorFamily::J_Shirokov, ConjugationRule::PolarD0, psi, at, h, alpha), jf) <= 1e-5L);
    CHECK(worst(conjugate_representation(OperatorFamily::K_Shirokov, ConjugationRule::PolarD0, psi, at, h, alpha), kf) <= 1e-5L);
    const auto g2 = GaugeChoice::minus_phi_cos_theta();
    CHECK(worst(conjugate_representation(OperatorFamily::J_GeneralHelicity, ConjugationRule::GaugeFrame, psi, at, h, alpha, g2), jf) <= 1e-5L);
    CHECK(worst(conjugate_representation(OperatorFamily::K_GeneralHelicity, ConjugationRule::GaugeFrame, psi, at, h, alpha, g2), kf) <= 1e-5L);
  }
}

TEST_CASE("orbital and spin partitions") {
  oracle::Sampler rng(127);
  for (const auto& g : named_gauges()) {
    for (int kappa : {-1, 0, 1}) {
      const Real mag = rng.uniform(0.5L, 2);
      const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
      const WaveFunction e = helicity_packet([](const MomentumPoint&) { return Complex(1); }, g, kappa);
      const Partition part = orbital_spin_partition(e, at, g, 0, 1e-5L * mag);
      const Vec3 gv = gauge_potential(g, at).cross(at.cartesian()) + at.unit();
      for (int j = 0; j < 3; ++j) {
        CHECK(part.orbital[j].norm() <= 1e-6L);
        CHECK((part.spin[j] - Real(kappa) * gv(j) * e(at)).norm() <= 1e-12L);
      }
    }
  }
  for (int n = 0; n < 50; ++n) {
    const GaugeChoice g = named_gauges()[n % 3];
    const Real mag = rng.uniform(0.5L, 2);
    const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
    const WaveFunction psi = generic_test_function(500 + n, at.cartesian());
    const Real h = 1e-5L * mag, alpha = (n % 3 - 1) * 0.5L;
    const VectorResult jf = apply_generator(OperatorFamily::J_Foldy, psi, at, alpha, g, h);
    const VectorResult kf = apply_generator(OperatorFamily::K_Foldy, psi, at, alpha, g, h);
    CHECK(worst(orbital_spin_partition(psi, at, g, alpha, h).total, jf) <= 1e-5L);
    CHECK(worst(boost_partition(psi, at, g, alpha, h).total, kf) <= 1e-5L);
    // The Pryce forms hold on a definite-helicity subspace.
    const WaveFunction hp = helicity_packet(gaussian_scalar(at.cartesian(), 0.7L, rng.vector(0.5L), rng.vector(1)), g, n % 2 ? 1 : -1);
    const VectorResult jh = apply_generator(OperatorFamily::J_Foldy, hp, at, alpha, g, h);
    const VectorResult kh = apply_generator(OperatorFamily::K_Foldy, hp, at, alpha, g, h);
    CHECK(worst(pryce_angular_partition(hp, at, alpha, h).total, jh) <= 1e-5L);
    CHECK(worst(pryce_boost_partition(hp, at, alpha, h).total, kh) <= 1e-5L);
  }
}

TEST_CASE("velocity") {
  oracle::Sampler rng(131);
  for (int n = 0; n < 20; ++n) {
    const Real mag = rng.uniform(0.5L, 2);
    const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
    const WaveFunction psi = generic_test_function(600 + n, at.cartesian());
    const Real h = 1e-5L * mag;
    const VectorResult v0 = velocity_check(psi, at, GaugeChoice::zero(), 0.5L, h, 1);
    const VectorResult v1 = velocity_check(psi, at, GaugeChoice::minus_phi(), 0.5L, h, 1);
    const VectorResult v2 = velocity_check(psi, at, GaugeChoice::zero(), 0.5L, h, 2);
    for (int j = 0; j < 3; ++j) {
      CHECK((v0[j] - at.unit()(j) * psi(at)).norm() <= 1e-5L);
      CHECK((v1[j] - v0[j]).norm() <= 1e-6L);
      CHECK((v2[j] - Real{2} * v0[j]).norm() <= 1e-9L);
    }
  }
}

TEST_CASE("parity") {
  oracle::Sampler rng(137);
  for (const auto& g : {GaugeChoice::zero(), GaugeChoice::minus_phi(), GaugeChoice::minus_phi_cos_theta(kPi)}) {
    for (int n = 0; n < 10; ++n) {
      const Real mag = rng.uniform(0.5L, 2);
      const auto at = MomentumPoint::from_cartesian(rng.momentum(mag), rng.uniform(-7, 7));
      if (g.branch_cut() && string_distance(g, at) < 0.05L) continue;
      const auto mirror = MomentumPoint::from_cartesian(-at.cartesian(), at.phi() + kPi);
      const WaveFunction psi = generic_test_function(700 + n, mirror.cartesian());
      const Real h = 1e-5L * mag;
      const VectorResult lhs = apply_position_new(parity(psi), at, g, 0.5L, h);
      const VectorResult rhs = apply_position_new(psi, mirror, parity_partner(g), 0.5L, h);
      for (int j = 0; j < 3; ++j) CHECK((lhs[j] + rhs[j]).norm() <= 1e-6L);
    }
  }
  CHECK(parity_partner(GaugeChoice::zero()).kind() == GaugeKind::Zero);
}

TEST_CASE("weak Hermiticity") {
  const Vec3 center(0.4L, 0.3L, 2.0L);
  const WaveFunction phi = polarized(gaussian_scalar(center, 0.25L, Vec3(0.5L, 0, 0), Vec3(1, 0, 0)), CVec3(1, kI, 0.5L));
  const WaveFunction psi = polarized(gaussian_scalar(center + Vec3(0.1L, 0, 0), 0.3L, Vec3(0, 0.3L, 0)), CVec3(0.2L, 1, -kI));
  for (Real alpha : {Real{0.5}, Real{0}, Real{-0.5}}) {
    for (int j = 0; j < 3; ++j) {
      // Size of <phi| r_j psi> from an independent midpoint sum with analytic r_j.
      const int n = 24;
      const Real step = 3.0L / n;
      Complex element = 0;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          for (int c = 0; c < n; ++c) {
            const Vec3 q = center - Vec3::Constant(1.5L) + Vec3(a + 0.5L, b + 0.5L, c + 0.5L) * step;
            const auto at = MomentumPoint::from_cartesian(q);
            const VectorResult r = apply_position_new(psi, at, GaugeChoice::minus_phi(), alpha, 1e-5L);
            element += std::pow(at.magnitude(), -2 * alpha) * phi(at).dot(r[j]) * step * step * step;
          }
        }
      }
      const Complex coarse = hermiticity_defect(phi, psi, GaugeChoice::minus_phi(), alpha, j, center, 1.5L, 24);
      const Complex fine = hermiticity_defect(phi, psi, GaugeChoice::minus_phi(), alpha, j, center, 1.5L, 48);
      MESSAGE("alpha " << double(alpha) << " component " << j << ": |<phi|r psi>| " << std::abs(element)
                       << ", defect " << std::abs(coarse) << " -> " << std::abs(fine));
      // Central differences of p^-alpha psi under the p^-2alpha measure sum by parts exactly,
      // leaving only boundary terms of the localized packets and rounding.
      CHECK(std::abs(element) > 1e-3);
      CHECK(std::abs(coarse) < 1e-10 * std::abs(element));
      CHECK(std::abs(fine) < 1e-10 * std::abs(element));
    }
  }
}
