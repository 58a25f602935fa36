#include "suites.hpp"

#include "photonlab/commutator_lab.hpp"
#include "photonlab/localized_states.hpp"
#include "photonlab/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace photonlab::cli {

const std::vector<std::string> kBerryColumns = {
    "loop_kind", "theta",         "windings", "kappa",       "gauge",
    "gamma_line", "gamma_surface", "eta",     "solid_angle", "residual"};

const std::vector<std::string> kGaugeFieldColumns = {
    "gauge",  "theta",  "phi",           "a_x",          "a_y",
    "a_z",    "curl_x", "curl_y",        "curl_z",       "curl_residual",
    "north_string", "south_string", "branch_cut", "string_distance"};

namespace {

constexpr const char* kAnchorBerry = "Berry phase of a closed momentum loop";
constexpr const char* kAnchorStokes = "Stokes theorem with Dirac-string flux";
constexpr const char* kAnchorGaugeShift = "gauge change shifts the phase by 2 pi kappa per winding";
constexpr const char* kAnchorTransport = "total rotation under parallel transport";
constexpr const char* kAnchorCommuting = "components of the new position operator commute";
constexpr const char* kAnchorJr = "modified angular-momentum commutator";
constexpr const char* kAnchorEquivalence = "unitary equivalence of the representations";
constexpr const char* kAnchorReduction = "general-helicity generators reduce to Shirokov and Lomont-Moses";
constexpr const char* kAnchorVelocity = "equation of motion: velocity c p-hat";
constexpr const char* kAnchorLocalized = "localized eigenstates of the position operator";
constexpr const char* kAnchorBasisRotation = "rotation of the helicity basis vectors";
constexpr const char* kAnchorCurl = "monopole curl of the gauge potential";
constexpr const char* kAnchorFlux = "regularized string adds 2 pi of flux";
constexpr const char* kAnchorDmatrix = "closed form of the spin-1 rotation matrix";
constexpr const char* kAnchorTConj = "helicity-basis form of spin and rotation matrices";
constexpr const char* kAnchorIncrement = "Euler-angle increments under small rotations";

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string gauge_label(const GaugeChoice& g) {
  if (!g.branch_cut()) return g.name();
  return g.name() + "@" + short_number(double(*g.branch_cut()));
}

CheckRow row(std::string identity, std::string anchor, Real residual, double tolerance,
             double fd_step, std::int64_t samples) {
  CheckRow r;
  r.identity = std::move(identity);
  r.anchor = anchor;
  r.residual = double(residual);
  r.tolerance = tolerance;
  r.fd_step = fd_step;
  r.samples = samples;
  return r;
}

std::string tag(const std::string& identity, const std::vector<std::string>& context) {
  std::string out = identity + " {";
  for (std::size_t i = 0; i < context.size(); ++i) out += (i ? ", " : "") + context[i];
  return out + "}";
}

std::string alpha_tag(Real alpha) { return "alpha=" + short_number(double(alpha)); }

Vec3 parse_vec3(const std::string& text) {
  std::stringstream in(text);
  Vec3 v;
  char sep = ',';
  for (int k = 0; k < 3; ++k) {
    double x;
    if ((k && !(in >> sep)) || sep != ',' || !(in >> x)) {
      throw Error(ErrorKind::ConfigError, "expected x,y,z but got '" + text + "'");
    }
    v(k) = x;
  }
  std::string rest;
  if (in >> rest) throw Error(ErrorKind::ConfigError, "expected x,y,z but got '" + text + "'");
  return v;
}

std::vector<Vec3> parse_vertices(const std::string& text) {
  std::vector<Vec3> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_vec3(item));
  }
  return out;
}

std::vector<double> default_thetas() {
  return {double(kPi / 6), double(kPi / 3), double(kPi / 2), double(2 * kPi / 3)};
}

bool wants_cap(const RunConfig& c, Cap cap) {
  if (c.cap == "both") return true;
  return c.cap == (cap == Cap::North ? "north" : "south");
}

/// Points from the commutator sampler, redrawn away from the gauge's strings.
std::vector<MomentumPoint> clear_points(const GaugeChoice& g, unsigned long long seed, int count) {
  std::vector<MomentumPoint> out;
  for (int draw = 0; static_cast<int>(out.size()) < count; ++draw) {
    if (draw > 100) throw Error(ErrorKind::SingularRegion, "cannot draw points off the strings");
    for (const MomentumPoint& at : sample_points(seed + 7919ULL * draw, count)) {
      if (static_cast<int>(out.size()) < count && string_distance(g, at) >= 0.05L * at.magnitude()) {
        out.push_back(at);
      }
    }
  }
  return out;
}

Real worst_of(const VectorResult& a, const VectorResult& b) {
  Real w = 0;
  for (int j = 0; j < 3; ++j) w = std::max(w, Real((a[j] - b[j]).norm()));
  return w;
}

OperatorSpec position(int j, const GaugeChoice& g, Real alpha) {
  OperatorSpec s;
  s.family = OperatorFamily::PositionNew;
  s.component = j;
  s.gauge = g;
  s.alpha = alpha;
  return s;
}

}  // namespace

void Tolerances::set(const std::string& name, double value) {
  const std::map<std::string, double*> slots = {
      {"nested", &nested},       {"helicity", &helicity}, {"representation", &representation},
      {"reduction", &reduction}, {"velocity", &velocity}, {"phase", &phase},
      {"eigen", &eigen},         {"curl", &curl},         {"flux", &flux},
      {"algebraic", &algebraic}, {"transport", &transport}};
  const auto it = slots.find(name);
  if (it == slots.end()) throw Error(ErrorKind::ConfigError, "unknown tolerance '" + name + "'");
  if (!(value > 0)) throw Error(ErrorKind::ConfigError, "tolerance must be positive");
  *it->second = value;
}

std::vector<std::string> Tolerances::names() {
  return {"nested", "helicity", "representation", "reduction", "velocity", "phase",
          "eigen",  "curl",     "flux",           "algebraic", "transport"};
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("command", command);
  out.emplace_back("gauge", gauge.value_or("all"));
  if (branch_cut) out.emplace_back("branch_cut", format_number(*branch_cut));
  out.emplace_back("alpha", alpha ? format_number(*alpha) : "sweep");
  out.emplace_back("seed", std::to_string(seed));
  out.emplace_back("samples", std::to_string(samples));
  out.emplace_back("resolution", std::to_string(resolution));
  out.emplace_back("fd_step_rel", format_number(fd_step_rel));
  return out;
}

GaugeChoice parse_gauge(const std::string& tag, std::optional<double> branch_cut) {
  if (branch_cut && tag != "minus-phi-cos-theta") {
    throw Error(ErrorKind::ConfigError, "a branch cut applies only to minus-phi-cos-theta");
  }
  if (tag == "zero") return GaugeChoice::zero();
  if (tag == "minus-phi") return GaugeChoice::minus_phi();
  if (tag == "minus-phi-cos-theta") {
    if (branch_cut && !(*branch_cut > 0 && *branch_cut < double(kTwoPi))) {
      throw Error(ErrorKind::ConfigError, "branch cut must lie in (0, 2 pi)");
    }
    return GaugeChoice::minus_phi_cos_theta(branch_cut ? std::optional<Real>(*branch_cut)
                                                       : std::nullopt);
  }
  throw Error(ErrorKind::ConfigError, "unknown gauge '" + tag + "'");
}

std::vector<GaugeChoice> selected_gauges(const RunConfig& config) {
  if (config.gauge) return {parse_gauge(*config.gauge, config.branch_cut)};
  if (config.branch_cut) {
    throw Error(ErrorKind::ConfigError, "--branch-cut needs --gauge minus-phi-cos-theta");
  }
  return {GaugeChoice::zero(), GaugeChoice::minus_phi(), GaugeChoice::minus_phi_cos_theta()};
}

std::vector<double> selected_alphas(const RunConfig& config) {
  if (config.alpha) return {*config.alpha};
  return {-0.5, 0, 0.5};
}

namespace {

void check_common(const RunConfig& c) {
  if (c.samples < 1) throw Error(ErrorKind::ConfigError, "samples must be positive");
  if (!(c.fd_step_rel > 0 && c.fd_step_rel <= 1e-3)) {
    throw Error(ErrorKind::ConfigError, "fd_step_rel must lie in (0, 1e-3]");
  }
}

}  // namespace

SuiteReport run_berry(const RunConfig& config) {
  SuiteReport report;
  report.suite = "berry";
  report.config = config.echo();
  if (config.cap != "north" && config.cap != "south" && config.cap != "both") {
    throw Error(ErrorKind::ConfigError, "cap must be north, south or both");
  }
  for (int kappa : config.kappas) {
    if (kappa < -1 || kappa > 1) throw Error(ErrorKind::ConfigError, "kappa must be -1, 0 or 1");
  }
  const std::vector<GaugeChoice> gauges = selected_gauges(config);
  const double tol = config.tolerances.phase;

  std::vector<LoopSpec> specs;
  if (config.vertices) {
    specs.push_back(LoopSpec::polygon(parse_vertices(*config.vertices)));
  } else {
    for (double t : config.thetas.empty() ? default_thetas() : config.thetas) {
      specs.push_back(LoopSpec::circle(t, config.windings));
    }
  }

  DataTable table;
  table.name = "berry";
  table.columns = kBerryColumns;
  const GaugeChoice reference = GaugeChoice::minus_phi();

  for (const LoopSpec& spec : specs) {
    const LoopPath loop = make_loop(spec, config.resolution);
    const int w = loop.windings();
    const Real omega = loop.solid_angle();
    const TransportResult transport = parallel_transport(loop);
    const bool circle = spec.kind == LoopKind::FixedThetaCircle;
    const std::string loop_tag =
        circle ? "circle theta=" + short_number(double(spec.theta)) + " w=" + std::to_string(w)
               : "polygon n=" + std::to_string(spec.points.size());
    const auto samples = static_cast<std::int64_t>(loop.samples.size());

    report.add(row(tag("eta = loop integral of (1 - cos theta) d phi", {loop_tag}), kAnchorTransport,
                   std::abs(transport.eta - omega), tol, 0, samples));
    report.add(row(tag("net rotor = exp(-i eta p-hat / 2)", {loop_tag}), kAnchorTransport,
                   transport.axial_defect, config.tolerances.transport, 0, samples));

    for (int kappa : config.kappas) {
      Real reference_line = std::numeric_limits<Real>::quiet_NaN();
      try {
        reference_line = line_integral_phase(loop, reference, kappa);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::StringProximity) throw;
      }
      for (const GaugeChoice& g : gauges) {
        const std::vector<std::string> ctx = {loop_tag, "kappa=" + std::to_string(kappa),
                                              gauge_label(g)};
        Real line = std::numeric_limits<Real>::quiet_NaN();
        try {
          line = line_integral_phase(loop, g, kappa);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::StringProximity) throw;
        }
        // On a string the line integral is undefined; its checks are skipped
        // and the table shows nan.
        const bool defined = !std::isnan(line);
        Real worst = defined ? 0 : std::numeric_limits<Real>::quiet_NaN();
        auto record = [&](CheckRow r) {
          if (!defined || std::isnan(r.residual)) return;
          worst = std::max(worst, Real(r.residual));
          report.add(std::move(r));
        };

        Real surface = std::numeric_limits<Real>::quiet_NaN();
        for (Cap cap : {Cap::North, Cap::South}) {
          if (!wants_cap(config, cap)) continue;
          try {
            const PhaseReport s = surface_integral_phase(loop, g, kappa, cap);
            if (std::isnan(surface)) surface = s.gamma_surface;
            record(row(tag(std::string("line integral = surface integral, ") + to_string(cap) +
                               " cap",
                           ctx),
                       kAnchorStokes, std::abs(line - s.gamma_surface), tol, 0, samples));
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::AmbiguousCap) throw;
          }
        }
        if (g.kind() == GaugeKind::MinusPhi) {
          const Real closed = circle ? kTwoPi * kappa * w * (std::cos(spec.theta) - 1) : -kappa * omega;
          record(row(tag("line integral = -kappa Omega", ctx), kAnchorBerry,
                     std::abs(line - closed), tol, 0, samples));
          record(row(tag("-kappa eta = line integral", ctx), kAnchorTransport,
                     std::abs(-kappa * transport.eta - line), tol, 0, samples));
        }
        if (g.kind() == GaugeKind::Zero) {
          record(row(tag("zero-gauge phase - minus-phi phase = 2 pi kappa w", ctx), kAnchorGaugeShift,
                     std::abs(line - reference_line - kTwoPi * kappa * w), tol, 0, samples));
        }

        table.rows.push_back({std::string(to_string(spec.kind)),
                              circle ? double(spec.theta) : std::numeric_limits<double>::quiet_NaN(),
                              std::int64_t{w}, std::int64_t{kappa}, gauge_label(g), double(line),
                              double(surface), double(transport.eta), double(omega), double(worst)});
      }
    }
  }
  report.tables.push_back(std::move(table));
  return report;
}

SuiteReport run_commutators(const RunConfig& config) {
  check_common(config);
  SuiteReport report;
  report.suite = "commutators";
  report.config = config.echo();
  const Tolerances& tol = config.tolerances;
  const std::vector<GaugeChoice> gauges = selected_gauges(config);
  const std::vector<double> alphas = selected_alphas(config);
  const double fd = config.fd_step_rel;

  for (const GaugeChoice& g : gauges) {
    for (double alpha : alphas) {
      for (Representation rep : {Representation::Foldy, Representation::LomontMoses,
                                 Representation::Shirokov, Representation::GeneralHelicity,
                                 Representation::Substitution}) {
        TableConfig tc;
        tc.representation = rep;
        tc.gauge = g;
        tc.samples = config.samples;
        tc.seed = config.seed;
        tc.alpha = alpha;
        tc.fd_step_rel = fd;
        tc.nested_tolerance = tol.nested;
        tc.helicity_tolerance = tol.helicity;
        for (const CommutatorReport& r : verify_table(tc)) {
          report.add(row(tag(r.identity, {to_string(rep), gauge_label(g), alpha_tag(alpha)}), r.anchor,
                         std::max(r.max_residual, r.max_residual_half), double(r.tolerance),
                         double(r.fd_step), r.samples));
        }
      }
    }
  }

  // Position components with two test functions and a halved step.
  for (const GaugeChoice& g : gauges) {
    const std::vector<MomentumPoint> points = clear_points(g, config.seed, config.samples);
    for (double alpha : alphas) {
      Real worst = 0, worst_half = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const MomentumPoint& at = points[i];
        for (unsigned long long s : {0ULL, 1ULL}) {
          const WaveFunction psi = generic_test_function(config.seed * 1000003ULL + 2 * i + s, at.cartesian());
          for (int half = 0; half < 2; ++half) {
            const Real h = (half ? fd / 2 : fd) * at.magnitude();
            const Real scale = psi_scale(psi, at, h);
            Real& slot = half ? worst_half : worst;
            for (int j = 0; j < 3; ++j) {
              const CVec3 c = commutator(position(j, g, alpha), position((j + 1) % 3, g, alpha), psi, at, h);
              slot = std::max(slot, Real(c.norm() / scale));
            }
          }
        }
      }
      const std::vector<std::string> ctx = {gauge_label(g), alpha_tag(alpha)};
      const auto n = static_cast<std::int64_t>(2 * points.size());
      report.add(row(tag("[r_j,r_k] psi = 0, two test functions", ctx), kAnchorCommuting,
                     std::max(worst, worst_half), tol.nested, fd, n));
      report.add(row(tag("[r_j,r_k] residual ratio on halving h = 4", ctx), kAnchorCommuting,
                     std::abs(worst / worst_half - 4), 0.5, fd, n));
    }
  }

  // Modified angular-momentum commutator on helicity states.
  for (const GaugeChoice& g : gauges) {
    const std::vector<MomentumPoint> points = clear_points(g, config.seed + 1, config.samples);
    Real identity = 0, about_p = 0, about_e3 = 0;
    for (const MomentumPoint& at : points) {
      const Real h = fd * at.magnitude();
      for (int kappa : {-1, 1}) {
        const WaveFunction psi = helicity_packet(
            gaussian_scalar(at.cartesian() + Vec3(0.1L, -0.2L, 0.1L), 0.6L, Vec3(0.2L, 0.1L, -0.3L),
                            Vec3(0.5L, 0.3L, -0.4L)),
            g, kappa);
        const Real scale = psi_scale(psi, at, h);
        for (int k = 0; k < 3; ++k) {
          for (int j = 0; j < 3; ++j) {
            const JrCommutator r = j_r_commutator(j, k, psi, at, g, 0, h);
            identity = std::max(identity, Real((r.lhs - r.canonical - r.correction).norm() / scale));
          }
          const CVec3 c = rotation_correction([](const MomentumPoint& q) { return q.unit(); }, k, psi,
                                              at, g, h);
          about_p = std::max(about_p, Real(c.norm() / scale));
          if (g.kind() == GaugeKind::Zero) {
            about_e3 = std::max(about_e3,
                                Real(j_r_commutator(2, k, psi, at, g, 0, h).correction.norm() / scale));
          }
        }
      }
    }
    const auto n = static_cast<std::int64_t>(points.size());
    report.add(row(tag("[J_j,r_k] = i eps_jkl r_l + correction", {gauge_label(g)}), kAnchorJr,
                   identity, tol.nested, fd, n));
    report.add(row(tag("correction vanishes for rotation about p-hat", {gauge_label(g)}), kAnchorJr,
                   about_p, tol.helicity, fd, n));
    if (g.kind() == GaugeKind::Zero) {
      report.add(row(tag("correction vanishes for rotation about e_3, phi-independent chi_p",
                         {gauge_label(g)}),
                     kAnchorJr, about_e3, tol.helicity, fd, n));
    }
  }

  // Representation equivalences, reductions and the velocity.
  const std::vector<MomentumPoint> points = sample_points(config.seed + 2, config.samples);
  for (double alpha : alphas) {
    Real lm = 0, sh = 0, red_sh = 0, red_lm = 0;
    std::vector<Real> gh(gauges.size(), 0), vel(gauges.size(), 0), vel_shift(gauges.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const MomentumPoint& at = points[i];
      const WaveFunction psi = generic_test_function(config.seed * 7919ULL + i, at.cartesian());
      const Real h = fd * at.magnitude();
      const auto z = GaugeChoice::zero();
      const auto mp = GaugeChoice::minus_phi();
      const VectorResult jf = apply_generator(OperatorFamily::J_Foldy, psi, at, alpha, z, h);
      const VectorResult kf = apply_generator(OperatorFamily::K_Foldy, psi, at, alpha, z, h);
      lm = std::max({lm,
                     worst_of(conjugate_representation(OperatorFamily::J_LM, ConjugationRule::ChakrabartiUh, psi, at, h, alpha), jf),
                     worst_of(conjugate_representation(OperatorFamily::K_LM, ConjugationRule::ChakrabartiUh, psi, at, h, alpha), kf)});
      sh = std::max({sh,
                     worst_of(conjugate_representation(OperatorFamily::J_Shirokov, ConjugationRule::PolarD0, psi, at, h, alpha), jf),
                     worst_of(conjugate_representation(OperatorFamily::K_Shirokov, ConjugationRule::PolarD0, psi, at, h, alpha), kf)});
      auto gen = [&](OperatorFamily f, const GaugeChoice& g) { return apply_generator(f, psi, at, alpha, g, h); };
      red_sh = std::max({red_sh,
                         worst_of(gen(OperatorFamily::J_GeneralHelicity, z), gen(OperatorFamily::J_Shirokov, z)),
                         worst_of(gen(OperatorFamily::K_GeneralHelicity, z), gen(OperatorFamily::K_Shirokov, z))});
      red_lm = std::max({red_lm,
                         worst_of(gen(OperatorFamily::J_GeneralHelicity, mp), gen(OperatorFamily::J_LM, z)),
                         worst_of(gen(OperatorFamily::K_GeneralHelicity, mp), gen(OperatorFamily::K_LM, z))});
      const Real scale = psi_scale(psi, at, h);
      std::optional<VectorResult> first;
      for (std::size_t gi = 0; gi < gauges.size(); ++gi) {
        const GaugeChoice& g = gauges[gi];
        if (string_distance(g, at) < 0.05L * at.magnitude()) continue;
        gh[gi] = std::max({gh[gi],
                           worst_of(conjugate_representation(OperatorFamily::J_GeneralHelicity, ConjugationRule::GaugeFrame, psi, at, h, alpha, g), jf),
                           worst_of(conjugate_representation(OperatorFamily::K_GeneralHelicity, ConjugationRule::GaugeFrame, psi, at, h, alpha, g), kf)});
        const VectorResult v = velocity_check(psi, at, g, alpha, h);
        VectorResult want;
        for (int j = 0; j < 3; ++j) want[j] = at.unit()(j) * psi(at);
        vel[gi] = std::max(vel[gi], worst_of(v, want) / scale);
        if (!first) first = v;
        vel_shift[gi] = std::max(vel_shift[gi], worst_of(v, *first) / scale);
      }
    }
    const auto n = static_cast<std::int64_t>(points.size());
    const std::string a = alpha_tag(alpha);
    report.add(row(tag("Foldy = D(phi,theta,-phi) Lomont-Moses D^-1", {a}), kAnchorEquivalence, lm,
                   tol.representation, fd, n));
    report.add(row(tag("Foldy = D(phi,theta,0) Shirokov D^-1", {a}), kAnchorEquivalence, sh,
                   tol.representation, fd, n));
    report.add(row(tag("general helicity at zero gauge = Shirokov", {a}), kAnchorReduction, red_sh,
                   tol.reduction, fd, n));
    report.add(row(tag("general helicity at minus-phi gauge = Lomont-Moses", {a}), kAnchorReduction,
                   red_lm, tol.reduction, fd, n));
    for (std::size_t gi = 0; gi < gauges.size(); ++gi) {
      const std::vector<std::string> ctx = {gauge_label(gauges[gi]), a};
      report.add(row(tag("Foldy = D(phi,theta,chi_p) general helicity D^-1", ctx), kAnchorEquivalence,
                     gh[gi], tol.representation, fd, n));
      report.add(row(tag("i[H,r] psi = c p-hat psi", ctx), kAnchorVelocity, vel[gi], tol.velocity, fd, n));
      if (gi > 0) {
        report.add(row(tag("i[H,r] psi independent of the gauge", ctx), kAnchorVelocity, vel_shift[gi],
                       tol.velocity, fd, n));
      }
    }
  }
  return report;
}

SuiteReport run_localize(const RunConfig& config) {
  check_common(config);
  SuiteReport report;
  report.suite = "localize";
  report.config = config.echo();
  std::vector<Vec3> r_primes;
  for (const std::string& text : config.r_primes) r_primes.push_back(parse_vec3(text));
  if (r_primes.empty()) r_primes = {Vec3::Zero(), Vec3(0.5L, -0.2L, 1.0L)};

  for (const GaugeChoice& g : selected_gauges(config)) {
    const std::vector<MomentumPoint> grid = off_string_grid(g, config.samples, config.seed);
    const auto n = static_cast<std::int64_t>(grid.size());
    for (const Vec3& rp : r_primes) {
      std::ostringstream where;
      where << "r'=(" << short_number(double(rp(0))) << "," << short_number(double(rp(1))) << ","
            << short_number(double(rp(2))) << ")";
      for (int kappa : {-1, 0, 1}) {
        for (double alpha : selected_alphas(config)) {
          const Real res = check_eigen({rp, kappa, g, alpha}, grid, config.fd_step_rel);
          report.add(row(tag("r psi = r' psi", {gauge_label(g), "kappa=" + std::to_string(kappa),
                                                where.str(), alpha_tag(alpha)}),
                         kAnchorLocalized, res, config.tolerances.eigen, config.fd_step_rel, n));
        }
      }
    }

    const Real size = 0.99e-4L;
    Rng rng(config.seed + 3);
    for (int kappa : {-1, 1}) {
      Real worst = 0, modulus = 0;
      for (const MomentumPoint& at : grid) {
        Vec3 dxi = rng.cube(1);
        while (dxi.norm() < 1e-3L) dxi = rng.cube(1);
        const BasisRotation b = rotate_basis_vector({at.phi(), at.theta(), 0}, dxi.normalized() * size, kappa, g);
        worst = std::max(worst, b.residual);
        modulus = std::max(modulus, b.modulus_defect);
      }
      const std::vector<std::string> ctx = {gauge_label(g), "kappa=" + std::to_string(kappa),
                                            "|dxi|=" + short_number(double(size))};
      // The closed form is first order; the residual is second order in |dxi|.
      report.add(row(tag("phase of U e_pk = -kappa (a x p + p-hat).dxi", ctx), kAnchorBasisRotation,
                     worst, double(10 * size * size), 0, n));
      report.add(row(tag("|e_pk^dagger U e_pk| = 1", ctx), kAnchorBasisRotation, modulus,
                     double(size * size), 0, n));
    }
  }
  return report;
}

SuiteReport run_gauge_field(const RunConfig& config) {
  check_common(config);
  if (config.n_theta < 1 || config.n_phi < 1) throw Error(ErrorKind::ConfigError, "grid must be non-empty");
  if (!(config.magnitude > 0)) throw Error(ErrorKind::ConfigError, "magnitude must be positive");
  if (!(config.theta_min >= 0 && config.theta_max <= double(kPi) && config.theta_min <= config.theta_max)) {
    throw Error(ErrorKind::ConfigError, "need 0 <= theta_min <= theta_max <= pi");
  }
  SuiteReport report;
  report.suite = "gauge-field";
  report.config = config.echo();
  DataTable table;
  table.name = "gauge-field";
  table.columns = kGaugeFieldColumns;

  const Real p = config.magnitude;
  const Real h = config.fd_step_rel * p;
  std::vector<std::string> offending;
  for (const GaugeChoice& g : selected_gauges(config)) {
    const StringFlags flags = g.strings();
    Real worst = 0;
    for (int i = 0; i < config.n_theta; ++i) {
      const Real theta = config.n_theta == 1 ? Real(config.theta_min)
                                             : config.theta_min + (config.theta_max - config.theta_min) *
                                                                      Real(i) / (config.n_theta - 1);
      for (int k = 0; k < config.n_phi; ++k) {
        const Real phi = kTwoPi * k / config.n_phi;
        const auto at = MomentumPoint::from_spherical(p, theta, phi);
        GaugeField f;
        try {
          f = gauge_field(g, at, h);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::PoleProximity) throw;
          offending.push_back(gauge_label(g) + " (theta=" + short_number(double(theta)) +
                              ", phi=" + short_number(double(phi)) + ")");
          continue;
        }
        const Real residual = (f.curl + at.unit() / (p * p)).norm();
        worst = std::max(worst, residual);
        table.rows.push_back({gauge_label(g), double(theta), double(phi), double(f.a(0)), double(f.a(1)),
                              double(f.a(2)), double(f.curl(0)), double(f.curl(1)), double(f.curl(2)),
                              double(residual), double(flags.north_strength),
                              double(flags.south_strength),
                              flags.branch_cut ? double(*flags.branch_cut)
                                               : std::numeric_limits<double>::quiet_NaN(),
                              double(string_distance(g, at))});
      }
    }
    report.add(row(tag("curl a = -p-hat / p^2", {gauge_label(g), "|p|=" + short_number(config.magnitude)}),
                   kAnchorCurl, worst, config.tolerances.curl, config.fd_step_rel,
                   std::int64_t{config.n_theta} * config.n_phi));
  }
  if (!offending.empty()) {
    std::string list;
    for (std::size_t i = 0; i < offending.size(); ++i) list += (i ? "; " : "") + offending[i];
    throw Error(ErrorKind::SingularRegion, "grid intersects a string at " + list);
  }

  for (double p3 : {1.0, -1.0}) {
    const Real flux = string_flux_through_disk(p3, 1e-5L, 1e-3L);
    const Real want = kTwoPi * (p3 > 0 ? 1 : -1);
    report.add(row(tag("regularized string flux = 2 pi cos theta", {"p3=" + short_number(p3), "p0=1e-05"}),
                   kAnchorFlux, std::abs(flux - want) / std::abs(want), config.tolerances.flux, 0, 1));
  }
  report.tables.push_back(std::move(table));
  return report;
}

SuiteReport run_euler(const RunConfig& config) {
  check_common(config);
  SuiteReport report;
  report.suite = "euler";
  report.config = config.echo();
  const Tolerances& tol = config.tolerances;
  const auto n = static_cast<std::int64_t>(config.samples);
  Rng rng(config.seed);
  auto angles = [&] {
    return EulerAngles{rng.uniform(-kPi, kPi), rng.uniform(0.3L, kPi - 0.3L), rng.uniform(-kPi, kPi)};
  };

  const SpinMatrices s = spin_matrices(SpinBasis::Cartesian);
  Real d_err = 0, t_spin = 0, t_rot = 0;
  const CMat3 t = basis_change_T();
  const SpinMatrices sa = spin_matrices(SpinBasis::AngularMomentum);
  for (int j = 0; j < 3; ++j) t_spin = std::max(t_spin, (t.adjoint() * s[j] * t - sa[j]).cwiseAbs().maxCoeff());
  for (int i = 0; i < config.samples; ++i) {
    const EulerAngles a = angles();
    const CMat3 m1 = CMat3(-kI * a.phi * s[2]).exp();
    const CMat3 m2 = CMat3(-kI * a.theta * s[1]).exp();
    const CMat3 m3 = CMat3(-kI * a.chi * s[2]).exp();
    const CMat3 product = m1 * m2 * m3;
    d_err = std::max(d_err, (rotation_matrix(a, SpinBasis::Cartesian) - product).cwiseAbs().maxCoeff());
    const CMat3 conj = t.adjoint() * product * t;
    const Mat3 d = wigner_d1(a.theta);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const Complex want = std::exp(-kI * (Real(1 - r) * a.phi + Real(1 - c) * a.chi)) * d(r, c);
        t_rot = std::max(t_rot, std::abs(conj(r, c) - want));
      }
    }
  }
  report.add(row("D(phi,theta,chi) closed form = exp(-i S_3 phi) exp(-i S_2 theta) exp(-i S_3 chi)",
                 kAnchorDmatrix, d_err, tol.algebraic, 0, n));
  report.add(row("T^dagger S_j T = angular-momentum spin matrices", kAnchorTConj, t_spin, tol.algebraic, 0, 3));
  report.add(row("T^dagger D T = exp(-i kappa phi) d^(1)(theta) exp(-i kappa' chi)", kAnchorTConj, t_rot,
                 tol.algebraic, 0, n));

  for (RotationSide side : {RotationSide::Lab, RotationSide::PFrame}) {
    Real scaled = 0, ratio_dev = 0;
    const Real h = 1e-4L;
    for (int i = 0; i < config.samples; ++i) {
      const EulerAngles a = angles();
      Vec3 dir = rng.cube(1);
      while (dir.norm() < 1e-3L) dir = rng.cube(1);
      dir.normalize();
      auto residual = [&](Real step) {
        const Vec3 dxi = dir * step;
        const Rotor rot = Rotor::from_axis_angle(dxi);
        const Rotor base = Rotor::from_euler(a);
        const EulerAngles b = euler_from_matrix((side == RotationSide::Lab ? rot * base : base * rot).to_matrix(), a);
        const EulerIncrement inc = euler_increment(a, dxi, side);
        return std::max({std::abs(b.phi - a.phi - inc.dphi), std::abs(b.theta - a.theta - inc.dtheta),
                         std::abs(b.chi - a.chi - inc.dchi)});
      };
      const Real r1 = residual(h), r2 = residual(h / 2);
      const Real st = std::sin(a.theta);
      scaled = std::max(scaled, r1 * st * st / (h * h));
      ratio_dev = std::max(ratio_dev, std::abs(r1 / r2 - 4));
    }
    const std::string where = side == RotationSide::Lab ? "lab axes" : "p-frame axes";
    report.add(row(tag("increment error sin^2(theta) / |dxi|^2 bounded", {where, "|dxi|=1e-4"}),
                   kAnchorIncrement, scaled, 10, 0, n));
    report.add(row(tag("increment error ratio on halving |dxi| = 4", {where}), kAnchorIncrement, ratio_dev,
                   0.2, 0, n));
  }

  for (double theta : config.thetas.empty() ? default_thetas() : config.thetas) {
    const LoopPath loop = make_loop(LoopSpec::circle(theta, config.windings), config.resolution);
    const TransportResult tr = parallel_transport(loop);
    const TransportResult e3 = parallel_transport(loop, TransportMode::AboutE3);
    const std::string where = "theta=" + short_number(theta);
    const auto m = static_cast<std::int64_t>(loop.samples.size());
    const Real closed = kTwoPi * config.windings * (1 - std::cos(Real(theta)));
    report.add(row(tag("eta = 2 pi w (1 - cos theta)", {where}), kAnchorTransport, std::abs(tr.eta - closed),
                   tol.phase, 0, m));
    report.add(row(tag("net rotor = exp(-i eta p-hat / 2)", {where}), kAnchorTransport, tr.axial_defect,
                   tol.transport, 0, m));
    report.add(row(tag("rotation about e_3 leaves chi unchanged", {where}), kAnchorTransport,
                   std::abs(e3.delta_chi), tol.transport, 0, m));
  }
  return report;
}

SuiteReport run_report_all(const RunConfig& config) {
  SuiteReport all;
  all.suite = "report-all";
  all.config = config.echo();
  for (auto runner : {run_euler, run_gauge_field, run_berry, run_commutators, run_localize}) {
    SuiteReport part = runner(config);
    for (CheckRow& r : part.checks) all.checks.push_back(std::move(r));
    for (DataTable& t : part.tables) all.tables.push_back(std::move(t));
  }
  return all;
}

SuiteReport run(const RunConfig& config) {
  if (config.command == "berry") return run_berry(config);
  if (config.command == "commutators") return run_commutators(config);
  if (config.command == "localize") return run_localize(config);
  if (config.command == "gauge-field") return run_gauge_field(config);
  if (config.command == "euler") return run_euler(config);
  if (config.command == "report-all") return run_report_all(config);
  throw Error(ErrorKind::ConfigError, "unknown command '" + config.command + "'");
}

}  // namespace photonlab::cli
