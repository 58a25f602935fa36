#include "photonlab/commutator_lab.hpp"

#include "photonlab/random.hpp"

#include <cmath>
#include <limits>

namespace photonlab {

namespace {

bool uses_gauge(OperatorFamily f) {
  switch (f) {
    case OperatorFamily::PositionNew:
    case OperatorFamily::J_GeneralHelicity:
    case OperatorFamily::K_GeneralHelicity:
    case OperatorFamily::L_r:
    case OperatorFamily::S_r:
    case OperatorFamily::K_r:
    case OperatorFamily::SpinFrame:
      return true;
    default:
      return false;
  }
}

Real outer_step(const OperatorSpec& a, const OperatorSpec& b, Real h) {
  // Multiplication operators need no widened stencil.
  return is_differential(a.family) && is_differential(b.family) ? kOuterStepRatio * h : h;
}

void require_off_string(const OperatorSpec& op, const MomentumPoint& at, Real reach) {
  if (!uses_gauge(op.family)) return;
  if (string_distance(op.gauge, at) <= reach) {
    throw Error(ErrorKind::PoleProximity,
                std::string(to_string(op.family)) + ": stencil reaches a string of gauge " +
                    op.gauge.name());
  }
}

Real levi(int j, int k, int l) { return levi_civita(j, k, l); }

}  // namespace

CVec3 commutator(const OperatorSpec& a, const OperatorSpec& b, const WaveFunction& psi,
                 const MomentumPoint& at, Real h) {
  if (!(h > 0 && h <= at.magnitude() / 1000)) {
    throw Error(ErrorKind::StepTooLarge, "nested difference step must lie in (0, p/1000]");
  }
  const Real outer = outer_step(a, b, h);
  const Real reach = 2 * (outer + h);
  require_off_string(a, at, reach);
  require_off_string(b, at, reach);
  const CVec3 ab = apply_component(a, bind_operator(b, psi, h), at, outer);
  const CVec3 ba = apply_component(b, bind_operator(a, psi, h), at, outer);
  return ab - ba;
}

Real psi_scale(const WaveFunction& psi, const MomentumPoint& at, Real h) {
  Real scale = psi(at).norm();
  const Real outer = kOuterStepRatio * h;
  for (int j = 0; j < 3; ++j) {
    for (Real sign : {Real{-1}, Real{1}}) {
      scale = std::max(scale, psi(at.shifted(Vec3::Unit(j) * (sign * outer))).norm());
    }
  }
  return scale;
}

const char* to_string(Representation rep) {
  switch (rep) {
    case Representation::Foldy: return "foldy";
    case Representation::LomontMoses: return "lomont-moses";
    case Representation::Shirokov: return "shirokov";
    case Representation::GeneralHelicity: return "general-helicity";
    case Representation::Substitution: return "substitution";
  }
  return "?";
}

std::vector<MomentumPoint> sample_points(unsigned long long seed, int count) {
  Rng rng(seed);
  std::vector<MomentumPoint> out;
  out.reserve(count);
  const Real c_max = std::cos(Real{0.3});
  for (int i = 0; i < count; ++i) {
    const Real p = rng.uniform(0.5L, 2);
    const Real c = rng.uniform(-c_max, c_max);
    const Real phi = rng.uniform(0, kTwoPi);
    out.push_back(MomentumPoint::from_spherical(p, std::acos(c), phi));
  }
  return out;
}

namespace {

struct Families {
  OperatorFamily j;
  OperatorFamily k;
  OperatorFamily helicity;
};

Families families_for(Representation rep) {
  switch (rep) {
    case Representation::Foldy:
      return {OperatorFamily::J_Foldy, OperatorFamily::K_Foldy, OperatorFamily::Helicity};
    case Representation::LomontMoses:
      return {OperatorFamily::J_LM, OperatorFamily::K_LM, OperatorFamily::Spin};
    case Representation::Shirokov:
      return {OperatorFamily::J_Shirokov, OperatorFamily::K_Shirokov, OperatorFamily::Spin};
    case Representation::GeneralHelicity:
      return {OperatorFamily::J_GeneralHelicity, OperatorFamily::K_GeneralHelicity,
              OperatorFamily::Spin};
    case Representation::Substitution:
      return {OperatorFamily::L_r, OperatorFamily::K_r, OperatorFamily::Helicity};
  }
  return {};
}

// Expected (A_j B_k - B_k A_j) psi.
using Expected = std::function<CVec3(int j, int k, const WaveFunction& psi,
                                     const MomentumPoint& at, Real h)>;

struct Row {
  std::string identity;
  std::string anchor;
  OperatorFamily a;
  OperatorFamily b;
  bool b_indexed = true;
  Real tolerance = 0;
  Expected expected;
  int helicity_component = -1;  // Spin row: the helicity is S_3
};

struct Context {
  Real alpha;
  GaugeChoice gauge;
  OperatorSpec spec(OperatorFamily f, int component) const {
    return {f, component, alpha, gauge, 1};
  }
  CVec3 single(OperatorFamily f, int component, const WaveFunction& psi, const MomentumPoint& at,
               Real h) const {
    return apply_component(spec(f, component), psi, at, h);
  }
  // i s eps_jkl X_l psi
  Expected epsilon(OperatorFamily x, Real s) const {
    return [this, x, s](int j, int k, const WaveFunction& psi, const MomentumPoint& at, Real h) {
      CVec3 out = CVec3::Zero();
      for (int l = 0; l < 3; ++l) {
        if (levi(j, k, l) != 0) out += (kI * (s * levi(j, k, l))) * single(x, l, psi, at, h);
      }
      return out;
    };
  }
};

CVec3 zero_vector(int, int, const WaveFunction&, const MomentumPoint&, Real) {
  return CVec3::Zero();
}

std::vector<Row> table_rows(const TableConfig& cfg, const Context& ctx) {
  const Families f = families_for(cfg.representation);
  const Real tol = cfg.nested_tolerance;
  using F = OperatorFamily;
  std::vector<Row> rows;
  auto delta_energy = [](int j, int k, const WaveFunction& psi, const MomentumPoint& at, Real) {
    return j == k ? CVec3(kI * at.magnitude() * psi(at)) : CVec3(CVec3::Zero());
  };
  auto boost_energy = [](int j, int, const WaveFunction& psi, const MomentumPoint& at, Real) {
    return CVec3(kI * at.cartesian()(j) * psi(at));
  };
  auto position_energy = [](int j, int, const WaveFunction& psi, const MomentumPoint& at, Real) {
    return CVec3(kI * (at.cartesian()(j) / at.magnitude()) * psi(at));
  };
  auto canonical = [](int j, int k, const WaveFunction& psi, const MomentumPoint& at, Real) {
    return j == k ? CVec3(kI * psi(at)) : CVec3(CVec3::Zero());
  };

  const char* poincare = "Poincare algebra";
  rows.push_back({"[J_j,J_k] = i eps_jkl J_l", poincare, f.j, f.j, true, tol, ctx.epsilon(f.j, 1)});
  rows.push_back({"[J_j,K_k] = i eps_jkl K_l", poincare, f.j, f.k, true, tol, ctx.epsilon(f.k, 1)});
  rows.push_back({"[K_j,K_k] = -i eps_jkl J_l", poincare, f.k, f.k, true, tol,
                  ctx.epsilon(f.j, -1)});
  rows.push_back({"[J_j,p_k] = i eps_jkl p_l", poincare, f.j, F::Momentum, true, tol,
                  ctx.epsilon(F::Momentum, 1)});
  rows.push_back({"[K_j,p_k] = i delta_jk H/c", poincare, f.k, F::Momentum, true, tol,
                  delta_energy});
  rows.push_back({"[K_j,H] = i c p_j", poincare, f.k, F::Energy, false, tol, boost_energy});
  rows.push_back({"[J_j,H] = 0", poincare, f.j, F::Energy, false, tol, zero_vector});
  rows.push_back({"[p_j,H] = 0", poincare, F::Momentum, F::Energy, false, tol, zero_vector});

  const char* position = "new position operator";
  rows.push_back({"[r_j,r_k] = 0", position, F::PositionNew, F::PositionNew, true, tol,
                  zero_vector});
  rows.push_back({"[r_j,p_k] = i delta_jk", position, F::PositionNew, F::Momentum, true, tol,
                  canonical});
  rows.push_back({"[r_j,H] = i H p_j / p^2", position, F::PositionNew, F::Energy, false, tol,
                  position_energy});
  rows.push_back({"[L_j,r_k] = i eps_jkl r_l", position, F::L_r, F::PositionNew, true, tol,
                  ctx.epsilon(F::PositionNew, 1)});
  rows.push_back({"[r_j,S_pk] = 0", position, F::PositionNew, F::SpinFrame, true, tol,
                  zero_vector});
  rows.push_back({"[L_j,S_pk] = 0", position, F::L_r, F::SpinFrame, true, tol, zero_vector});

  const char* helicity = "helicity invariance";
  const Real htol = cfg.helicity_tolerance;
  const int hc = f.helicity == F::Spin ? 2 : 0;
  rows.push_back({"[J_j,helicity] = 0", helicity, f.j, f.helicity, false, htol, zero_vector, hc});
  rows.push_back({"[K_j,helicity] = 0", helicity, f.k, f.helicity, false, htol, zero_vector, hc});
  rows.push_back({"[p_j,helicity] = 0", helicity, F::Momentum, f.helicity, false, htol,
                  zero_vector, hc});
  return rows;
}

Real run_row(const Row& row, const Context& ctx, const std::vector<MomentumPoint>& points,
             const std::vector<WaveFunction>& psis, Real step_rel) {
  Real worst = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const MomentumPoint& at = points[i];
    const WaveFunction& psi = psis[i];
    const Real h = step_rel * at.magnitude();
    const Real scale = psi_scale(psi, at, h);
    for (int j = 0; j < 3; ++j) {
      const int k_count = row.b_indexed ? 3 : 1;
      for (int kk = 0; kk < k_count; ++kk) {
        const int k = row.b_indexed ? kk : std::max(row.helicity_component, 0);
        const CVec3 lhs = commutator(ctx.spec(row.a, j), ctx.spec(row.b, k), psi, at, h);
        const CVec3 rhs = row.expected(j, k, psi, at, h);
        worst = std::max(worst, Real((lhs - rhs).norm() / scale));
      }
    }
  }
  return worst;
}

}  // namespace

std::vector<CommutatorReport> verify_table(const TableConfig& config) {
  if (config.samples < 1) throw Error(ErrorKind::ConfigError, "need at least one sample");
  const Context ctx{config.alpha, config.gauge};

  // Points whose widest stencil stays clear of the gauge's strings.
  std::vector<MomentumPoint> points;
  unsigned long long draw = 0;
  while (static_cast<int>(points.size()) < config.samples) {
    const MomentumPoint candidate = sample_points(config.seed + 7919 * draw++, 1).front();
    if (string_distance(config.gauge, candidate) < 0.05L * candidate.magnitude()) continue;
    points.push_back(candidate);
    if (draw > 100000ULL) throw Error(ErrorKind::SingularRegion, "no sample clears the strings");
  }
  std::vector<WaveFunction> psis;
  for (std::size_t i = 0; i < points.size(); ++i) {
    psis.push_back(generic_test_function(config.seed * 1000003ULL + i, points[i].cartesian()));
  }

  std::vector<CommutatorReport> out;
  for (const Row& row : table_rows(config, ctx)) {
    CommutatorReport report;
    report.identity = row.identity;
    report.anchor = row.anchor;
    report.first = ctx.spec(row.a, 0);
    report.second = ctx.spec(row.b, row.b_indexed ? 1 : std::max(row.helicity_component, 0));
    report.tolerance = row.tolerance;
    report.samples = config.samples;
    report.fd_step = config.fd_step_rel;
    report.max_residual = run_row(row, ctx, points, psis, config.fd_step_rel);
    report.max_residual_half =
        config.with_refinement ? run_row(row, ctx, points, psis, config.fd_step_rel / 2) : 0;
    report.pass = report.max_residual <= row.tolerance &&
                  report.max_residual_half <= row.tolerance;
    out.push_back(std::move(report));
  }

  CommutatorReport pryce;
  pryce.identity = "[r_Pj,r_Pk] = -i eps_jkl (p_l/p^3) p-hat.S";
  pryce.anchor = "Pryce monopole commutator";
  pryce.first = ctx.spec(OperatorFamily::PositionPryce, 0);
  pryce.second = ctx.spec(OperatorFamily::PositionPryce, 1);
  pryce.tolerance = config.nested_tolerance;
  pryce.samples = config.samples;
  pryce.fd_step = config.fd_step_rel;
  auto pryce_run = [&](Real rel) {
    Real worst = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Real h = rel * points[i].magnitude();
      const Real scale = psi_scale(psis[i], points[i], h);
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const CVec3 r = pryce_commutator_residual(j, k, psis[i], points[i], config.alpha, h);
          worst = std::max(worst, Real(r.norm() / scale));
        }
      }
    }
    return worst;
  };
  pryce.max_residual = pryce_run(config.fd_step_rel);
  pryce.max_residual_half = config.with_refinement ? pryce_run(config.fd_step_rel / 2) : 0;
  pryce.pass = pryce.max_residual <= pryce.tolerance && pryce.max_residual_half <= pryce.tolerance;
  out.push_back(std::move(pryce));
  return out;
}

CVec3 rotation_correction(const std::function<Vec3(const MomentumPoint&)>& axis, int k,
                          const WaveFunction& psi, const MomentumPoint& at,
                          const GaugeChoice& gauge, Real h) {
  if (string_distance(gauge, at) <= 2 * h) {
    throw Error(ErrorKind::PoleProximity, "correction stencil reaches a string");
  }
  auto projected = [&](const MomentumPoint& q) {
    const Vec3 g = gauge_potential(gauge, q).cross(q.cartesian()) + q.unit();
    return axis(q).dot(g);
  };
  const Vec3 step = Vec3::Unit(k) * h;
  const Real derivative = (projected(at.shifted(step)) - projected(at.shifted(-step))) / (2 * h);
  return -kI * derivative * (helicity_operator(at.cartesian()) * psi(at));
}

JrCommutator j_r_commutator(int j, int k, const WaveFunction& psi, const MomentumPoint& at,
                            const GaugeChoice& gauge, Real alpha, Real h) {
  const OperatorSpec jop{OperatorFamily::J_Foldy, j, alpha, gauge, 1};
  const OperatorSpec rop{OperatorFamily::PositionNew, k, alpha, gauge, 1};
  JrCommutator out;
  out.lhs = commutator(jop, rop, psi, at, h);
  out.canonical = CVec3::Zero();
  for (int l = 0; l < 3; ++l) {
    if (levi(j, k, l) == 0) continue;
    const OperatorSpec rl{OperatorFamily::PositionNew, l, alpha, gauge, 1};
    out.canonical += (kI * levi(j, k, l)) * apply_component(rl, psi, at, h);
  }
  const Vec3 e_j = Vec3::Unit(j);
  out.correction =
      rotation_correction([e_j](const MomentumPoint&) { return e_j; }, k, psi, at, gauge, h);
  return out;
}

CVec3 pryce_commutator_residual(int j, int k, const WaveFunction& psi, const MomentumPoint& at,
                                Real alpha, Real h) {
  const OperatorSpec a{OperatorFamily::PositionPryce, j, alpha, GaugeChoice::zero(), 1};
  const OperatorSpec b{OperatorFamily::PositionPryce, k, alpha, GaugeChoice::zero(), 1};
  CVec3 out = commutator(a, b, psi, at, h);
  const Vec3& p = at.cartesian();
  const Real p3 = std::pow(at.magnitude(), 3);
  const CVec3 helical = helicity_operator(p) * psi(at);
  for (int l = 0; l < 3; ++l) {
    if (levi(j, k, l) != 0) out += (kI * (levi(j, k, l) * p(l) / p3)) * helical;
  }
  return out;
}

}  // namespace photonlab
