#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "photonlab/localized_states.hpp"

#include <cmath>

using namespace photonlab;

namespace {

std::vector<GaugeChoice> all_gauges() {
  return {GaugeChoice::zero(), GaugeChoice::minus_phi(), GaugeChoice::minus_phi_cos_theta(),
          GaugeChoice::custom("wobbly", [](Real t, Real f) {
            return Real{0.4} * std::sin(t) * std::cos(f) - f;
          })};
}

}  // namespace

TEST_CASE("evaluator") {
  oracle::Sampler rng(1);
  for (int n = 0; n < 20; ++n) {
    const auto at = MomentumPoint::from_cartesian(rng.momentum(rng.uniform(0.5L, 2)));
    for (const GaugeChoice& g : all_gauges()) {
      CHECK(localized_state(Vec3::Zero(), 1, g, 0)(at) == gauge_helicity_vector(g, at, 1));
      const CVec3 longitudinal = localized_state(Vec3::Zero(), 0, g, 0)(at);
      CHECK((longitudinal - at.unit().cast<Complex>()).norm() < 1e-18);
      const Vec3& p = at.cartesian();
      const CVec3 want = std::exp(-kI * (p(0) + 2 * p(1) + 3 * p(2))) *
                         std::pow(at.magnitude(), Real{0.5}) * gauge_helicity_vector(g, at, -1);
      CHECK((localized_state(Vec3(1, 2, 3), -1, g, 0.5L)(at) - want).norm() < 1e-17);
      // Orthonormal triad at every point.
      for (int k1 = -1; k1 <= 1; ++k1) {
        for (int k2 = -1; k2 <= 1; ++k2) {
          const Complex ip = gauge_helicity_vector(g, at, k1).dot(gauge_helicity_vector(g, at, k2));
          CHECK(std::abs(ip - Complex(k1 == k2 ? 1 : 0, 0)) < kTauAlg);
        }
      }
    }
  }
  CHECK_THROWS_AS(localized_state(Vec3::Zero(), 2, GaugeChoice::zero(), 0), Error);
}

TEST_CASE("position eigenstates") {
  const auto minus_phi_grid = off_string_grid(GaugeChoice::minus_phi(), 50, 5);
  const Real base = check_eigen({Vec3::Zero(), 1, GaugeChoice::minus_phi(), 0}, minus_phi_grid);
  MESSAGE("r' = 0 residual " << double(base));
  CHECK(base <= 1e-6);

  for (const GaugeChoice& g : all_gauges()) {
    const auto grid = off_string_grid(g, 50, 6);
    for (const Vec3& rp : {Vec3(Vec3::Zero()), Vec3(0.5L, -0.2L, 1.0L)}) {
      for (int kappa : {-1, 0, 1}) {
        Real lo = 1, hi = 0;
        for (Real alpha : {Real{-0.5}, Real{0}, Real{0.5}}) {
          const Real res = check_eigen({rp, kappa, g, alpha}, grid);
          INFO(g.name() << " kappa " << kappa << " alpha " << double(alpha));
          CHECK(res <= 1e-6);
          lo = std::min(lo, res);
          hi = std::max(hi, res);
        }
        // The weight cancels; only truncation noise differs.
        CHECK(hi <= 2 * lo + 1e-12);
      }
    }
  }
}

TEST_CASE("eigenvalue shifts by r'") {
  oracle::Sampler rng(2);
  const GaugeChoice g = GaugeChoice::minus_phi();
  for (const MomentumPoint& at : off_string_grid(g, 20, 8)) {
    const Vec3 rp = rng.vector(1);
    const WaveFunction base = localized_state(Vec3::Zero(), 1, g, 0);
    const WaveFunction moved = localized_state(rp, 1, g, 0);
    const Real h = 1e-5L * at.magnitude();
    const VectorResult r0 = apply_position_new(base, at, g, 0, h);
    const VectorResult r1 = apply_position_new(moved, at, g, 0, h);
    const Complex phase = std::exp(-kI * rp.dot(at.cartesian()));
    for (int j = 0; j < 3; ++j) {
      CHECK((r1[j] - phase * r0[j] - rp(j) * moved(at)).norm() < 1e-8);
    }
    // The Zero-gauge state is not an eigenvector of the MinusPhi operator.
    const WaveFunction other = localized_state(Vec3::Zero(), 1, GaugeChoice::zero(), 0);
    const VectorResult wrong = apply_position_new(other, at, g, 0, h);
    Real off = 0;
    for (int j = 0; j < 3; ++j) off = std::max(off, Real(wrong[j].norm()));
    CHECK(off > 1e-3);
  }
}

TEST_CASE("rotations of the helicity basis") {
  oracle::Sampler rng(3);
  for (int n = 0; n < 30; ++n) {
    const Vec3 p = rng.momentum(1);
    const auto at = MomentumPoint::from_cartesian(p);
    const EulerAngles angles{at.phi(), at.theta(), 0};
    const Real delta = 1e-5L;

    for (int kappa : {-1, 1}) {
      const BasisRotation z = rotate_basis_vector(angles, Vec3::UnitZ() * delta, kappa, GaugeChoice::zero());
      CHECK(std::abs(z.phase) < 1e-13);
      CHECK(std::abs(z.expected) < 1e-20);
    }
    for (const GaugeChoice& g : all_gauges()) {
      const Vec3 dxi = rng.vector(1).normalized() * 0.99e-4L;
      const BasisRotation l = rotate_basis_vector(angles, dxi, 0, g);
      CHECK(std::abs(l.phase) < 1e-15);
      for (int kappa : {-1, 1}) {
        const BasisRotation b = rotate_basis_vector(angles, dxi, kappa, g);
        CHECK(b.modulus_defect < 1e-8);
        CHECK(b.residual < 10 * dxi.squaredNorm());

        // Exact phase from refactoring the finitely rotated frame.
        const Vec3 source = rotation_about(-dxi) * at.cartesian();
        const auto from = MomentumPoint::from_cartesian(source, at.phi());
        const Mat3 frame = rotation_about(dxi) * rotation_matrix_real(frame_angles(g, from));
        Real phi, theta, chi;
        oracle::zyz_angles(frame, at.phi(), frame_angles(g, at).chi, phi, theta, chi);
        const Real exact = -kappa * (chi - chi_p(g, at.theta(), at.phi()));
        CHECK(std::abs(b.phase - exact) < 1e-12);

        // Second-order convergence of the closed form.
        const BasisRotation half = rotate_basis_vector(angles, dxi / 2, kappa, g);
        if (b.residual > 1e-14) {
          const Real ratio = b.residual / half.residual;
          CHECK(ratio > 3.5);
          CHECK(ratio < 4.5);
        }
      }
    }
  }
  CHECK_THROWS_AS(rotate_basis_vector({0, 1, 0}, Vec3(1e-3L, 0, 0), 1, GaugeChoice::zero()), Error);
  CHECK_THROWS_AS(rotate_basis_vector({0, 0, 0}, Vec3(1e-5L, 0, 0), 1, GaugeChoice::zero()), Error);
}
