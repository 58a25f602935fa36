#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "photonlab/commutator_lab.hpp"

#include <cmath>

using namespace photonlab;

namespace {

GaugeChoice wobbly_gauge() {
  return GaugeChoice::custom("wobbly", [](Real t, Real f) {
    return Real{0.4} * std::sin(t) * std::cos(f) + Real{0.2} * std::cos(2 * t) - f;
  });
}

std::vector<GaugeChoice> gauges_with_custom() {
  return {GaugeChoice::zero(), GaugeChoice::minus_phi(), GaugeChoice::minus_phi_cos_theta(),
          wobbly_gauge()};
}

OperatorSpec op(OperatorFamily f, int c, const GaugeChoice& g = GaugeChoice::zero(),
                Real alpha = 0) {
  return {f, c, alpha, g, 1};
}

}  // namespace

TEST_CASE("antisymmetry is exact") {
  const auto at = MomentumPoint::from_spherical(1.2L, 1.0L, 0.7L);
  const WaveFunction psi = generic_test_function(5, at.cartesian());
  const Real h = 1e-5L * at.magnitude();
  const GaugeChoice g = GaugeChoice::minus_phi();
  const std::vector<std::pair<OperatorSpec, OperatorSpec>> pairs = {
      {op(OperatorFamily::PositionNew, 0, g), op(OperatorFamily::PositionNew, 2, g)},
      {op(OperatorFamily::J_Foldy, 1), op(OperatorFamily::K_Foldy, 2)},
      {op(OperatorFamily::K_LM, 0), op(OperatorFamily::Energy, 0)},
      {op(OperatorFamily::L_r, 2, g), op(OperatorFamily::SpinFrame, 1, g)},
  };
  for (const auto& [a, b] : pairs) {
    const CVec3 ab = commutator(a, b, psi, at, h);
    const CVec3 ba = commutator(b, a, psi, at, h);
    CHECK((ab + ba).norm() == 0);
  }
}

TEST_CASE("preconditions") {
  const auto at = MomentumPoint::from_spherical(1, 1, 0.3L);
  const WaveFunction psi = generic_test_function(1, at.cartesian());
  const auto r0 = op(OperatorFamily::PositionNew, 0, GaugeChoice::minus_phi());
  const auto r1 = op(OperatorFamily::PositionNew, 1, GaugeChoice::minus_phi());
  try {
    commutator(r0, r1, psi, at, 2e-3L);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooLarge);
  }
  const auto south = MomentumPoint::from_spherical(1, kPi - 1e-5L, 0.3L);
  try {
    commutator(r0, r1, psi, south, 1e-6L);
    FAIL("expected PoleProximity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleProximity);
  }
  // The north axis carries no string in this gauge.
  const auto north = MomentumPoint::from_spherical(1, 1e-2L, 0.3L);
  CHECK_NOTHROW(commutator(r0, r1, psi, north, 1e-6L));
}

TEST_CASE("canonical pairs against closed forms") {
  oracle::Sampler rng(77);
  for (int n = 0; n < 10; ++n) {
    const auto at = MomentumPoint::from_cartesian(rng.momentum(rng.uniform(0.5L, 2)));
    const Real h = 1e-5L * at.magnitude();
    // Gaussian scalar with a known gradient.
    const Vec3 c = at.cartesian() + rng.vector(0.3L);
    const Real w = 0.6L;
    const CVec3 v(Complex(1, 0.5L), Complex(-0.3L, 0), Complex(0.2L, -1));
    const WaveFunction psi = [=](const MomentumPoint& q) -> CVec3 {
      return std::exp(-(q.cartesian() - c).squaredNorm() / (2 * w * w)) * v;
    };
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const GaugeChoice g = GaugeChoice::minus_phi_cos_theta();
        const CVec3 rp = commutator(op(OperatorFamily::PositionNew, j, g, 0.5L),
                                    op(OperatorFamily::Momentum, k), psi, at, h);
        const CVec3 want = j == k ? CVec3(kI * psi(at)) : CVec3(CVec3::Zero());
        CHECK((rp - want).norm() < 1e-8);
      }
      // [i d_j, c p] = i c p_j / p with a multiplication partner.
      const CVec3 gh = commutator(op(OperatorFamily::WeightedGradient, j, GaugeChoice::zero(), 0.3L),
                                  op(OperatorFamily::Energy, 0), psi, at, h);
      const CVec3 want = kI * (at.cartesian()(j) / at.magnitude()) * psi(at);
      CHECK((gh - want).norm() < 1e-8);
      // Nested gradients of the Gaussian: i^2 (d_j d_k - d_k d_j) = 0.
      const CVec3 gg = commutator(op(OperatorFamily::WeightedGradient, j),
                                  op(OperatorFamily::WeightedGradient, (j + 1) % 3), psi, at, h);
      CHECK(gg.norm() < 1e-6);
    }
  }
}

TEST_CASE("position components commute in every gauge with second-order refinement") {
  const auto points = sample_points(2024, 20);
  Real worst = 0, worst_half = 0;
  for (const GaugeChoice& g : gauges_with_custom()) {
    for (const MomentumPoint& at : points) {
      if (string_distance(g, at) < 0.05L) continue;
      for (unsigned long long seed : {11ULL, 12ULL}) {
        const WaveFunction psi = generic_test_function(seed, at.cartesian());
        for (Real rel : {Real{1e-5L}, Real{5e-6L}}) {
          const Real h = rel * at.magnitude();
          const Real scale = psi_scale(psi, at, h);
          Real& slot = rel == Real{1e-5L} ? worst : worst_half;
          for (int j = 0; j < 3; ++j) {
            const int k = (j + 1) % 3;
            const CVec3 c = commutator(op(OperatorFamily::PositionNew, j, g, 0.5L),
                                       op(OperatorFamily::PositionNew, k, g, 0.5L), psi, at, h);
            slot = std::max(slot, Real(c.norm() / scale));
          }
        }
      }
    }
  }
  MESSAGE("[r_j,r_k] residual " << double(worst) << " -> " << double(worst_half));
  CHECK(worst <= 1e-4);
  const Real ratio = worst / worst_half;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("Pryce components reproduce the monopole field") {
  const auto points = sample_points(31, 20);
  Real worst = 0, field = 0;
  for (const MomentumPoint& at : points) {
    const WaveFunction psi = generic_test_function(3, at.cartesian());
    const Real h = 1e-5L * at.magnitude();
    const Real scale = psi_scale(psi, at, h);
    for (int j = 0; j < 3; ++j) {
      const int k = (j + 1) % 3;
      worst = std::max(worst, Real(pryce_commutator_residual(j, k, psi, at, 0, h).norm() / scale));
      const CVec3 raw = commutator(op(OperatorFamily::PositionPryce, j),
                                   op(OperatorFamily::PositionPryce, k), psi, at, h);
      field = std::max(field, Real(raw.norm() / scale));
    }
  }
  CHECK(worst <= 1e-4);
  CHECK(field > 1e-2);  // the commutator itself is far from zero
}

TEST_CASE("commutator tables") {
  struct Case {
    Representation rep;
    GaugeChoice gauge;
    int samples;
  };
  const std::vector<Case> cases = {
      {Representation::Foldy, GaugeChoice::zero(), 20},
      {Representation::LomontMoses, GaugeChoice::minus_phi(), 6},
      {Representation::Shirokov, GaugeChoice::zero(), 6},
      {Representation::GeneralHelicity, GaugeChoice::minus_phi_cos_theta(Real{kPi}), 6},
      {Representation::GeneralHelicity, wobbly_gauge(), 4},
      {Representation::Substitution, GaugeChoice::minus_phi(), 6},
  };
  for (const Case& c : cases) {
    TableConfig cfg;
    cfg.representation = c.rep;
    cfg.gauge = c.gauge;
    cfg.samples = c.samples;
    cfg.alpha = c.rep == Representation::Shirokov ? Real{0.5} : Real{0};
    const auto reports = verify_table(cfg);
    CHECK(reports.size() == 18);
    for (const CommutatorReport& r : reports) {
      INFO(to_string(c.rep) << " / " << c.gauge.name() << " : " << r.identity << " residual "
                            << double(r.max_residual));
      CHECK(r.pass);
      CHECK(r.max_residual <= r.tolerance);
    }
  }
}

TEST_CASE("table rows fail when the representation is wrong") {
  // Foldy J paired with a helicity-frame spin: helicity row must not pass.
  const auto at = MomentumPoint::from_spherical(1.1L, 1.2L, 0.4L);
  const WaveFunction psi = generic_test_function(8, at.cartesian());
  const Real h = 1e-5L;
  const CVec3 c = commutator(op(OperatorFamily::J_Foldy, 0), op(OperatorFamily::Spin, 2), psi, at, h);
  CHECK(c.norm() / psi_scale(psi, at, h) > 1e-2);
}

TEST_CASE("modified angular-momentum commutator") {
  const auto points = sample_points(55, 12);
  Real worst = 0, largest_correction = 0;
  for (const GaugeChoice& g : {GaugeChoice::minus_phi(), GaugeChoice::zero(), wobbly_gauge()}) {
    for (const MomentumPoint& at : points) {
      if (string_distance(g, at) < 0.05L) continue;
      for (int kappa : {-1, 1}) {
        const WaveFunction psi =
            helicity_packet(gaussian_scalar(at.cartesian() + Vec3(0.1L, -0.2L, 0.1L), 0.6L,
                                            Vec3(0.2L, 0.1L, -0.3L), Vec3(0.5L, 0.3L, -0.4L)),
                            g, kappa);
        const Real h = 1e-5L * at.magnitude();
        const Real scale = psi_scale(psi, at, h);
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) {
            const JrCommutator r = j_r_commutator(j, k, psi, at, g, 0, h);
            worst = std::max(worst, Real((r.lhs - r.canonical - r.correction).norm() / scale));
            largest_correction = std::max(largest_correction, Real(r.correction.norm() / scale));
          }
        }
      }
    }
  }
  CHECK(worst <= 1e-4);
  CHECK(largest_correction > 1e-2);

  // Rotation about the local p-hat: n . g = 1, so the correction vanishes.
  for (const MomentumPoint& at : points) {
    const GaugeChoice g = GaugeChoice::minus_phi();
    const WaveFunction psi = helicity_packet(radial_scalar(1, 0.5L), g, 1);
    const Real h = 1e-5L * at.magnitude();
    for (int k = 0; k < 3; ++k) {
      const CVec3 c = rotation_correction([](const MomentumPoint& q) { return q.unit(); }, k, psi,
                                          at, g, h);
      CHECK(c.norm() <= 1e-6);
    }
    // Rotation about e_3 with chi_p independent of phi.
    const GaugeChoice z = GaugeChoice::zero();
    const WaveFunction pz = helicity_packet(radial_scalar(1, 0.5L), z, -1);
    for (int k = 0; k < 3; ++k) {
      const JrCommutator r = j_r_commutator(2, k, pz, at, z, 0, h);
      CHECK(r.correction.norm() <= 1e-6);
    }
  }
}
