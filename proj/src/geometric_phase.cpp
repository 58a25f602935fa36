#include "photonlab/geometric_phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace photonlab {

const char* to_string(LoopKind kind) {
  switch (kind) {
    case LoopKind::FixedThetaCircle: return "circle";
    case LoopKind::GreatCirclePolygon: return "polygon";
    case LoopKind::Custom: return "custom";
  }
  return "?";
}

const char* to_string(Cap cap) { return cap == Cap::North ? "north" : "south"; }

LoopSpec LoopSpec::circle(Real theta, int windings, Real radius) {
  LoopSpec s;
  s.kind = LoopKind::FixedThetaCircle;
  s.theta = theta;
  s.windings = windings;
  s.radius = radius;
  return s;
}

LoopSpec LoopSpec::polygon(std::vector<Vec3> vertices, Real radius) {
  LoopSpec s;
  s.kind = LoopKind::GreatCirclePolygon;
  s.points = std::move(vertices);
  s.radius = radius;
  return s;
}

LoopSpec LoopSpec::custom(std::vector<Vec3> points) {
  LoopSpec s;
  s.kind = LoopKind::Custom;
  s.points = std::move(points);
  return s;
}

namespace {

Real angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

bool at_pole(const Vec3& u) { return u.x() == 0 && u.y() == 0; }

[[noreturn]] void degenerate(const std::string& why) {
  throw Error(ErrorKind::DegenerateLoop, why);
}

struct Node {
  Vec3 p;  // momentum, exact (0, 0, +-r) at a pole
};

// Great-arc interpolation of direction, linear in magnitude.
Vec3 arc_point(const Vec3& a, const Vec3& b, Real t) {
  const Real ra = a.norm(), rb = b.norm();
  const Vec3 ua = a / ra, ub = b / rb;
  const Real omega = angle_between(ua, ub);
  const Real r = ra + t * (rb - ra);
  if (omega < 1e-15L) return ua * r;
  const Vec3 u = (std::sin((1 - t) * omega) * ua + std::sin(t * omega) * ub) / std::sin(omega);
  return u.normalized() * r;
}

// Split an edge at a pole it runs through, so poles become exact nodes.
std::vector<Vec3> split_at_poles(const Vec3& a, const Vec3& b) {
  const Vec3 ua = a.normalized(), ub = b.normalized();
  const Real total = angle_between(ua, ub);
  for (Real sign : {Real{1}, Real{-1}}) {
    const Vec3 pole = Vec3::UnitZ() * sign;
    if (at_pole(a) || at_pole(b)) continue;
    const Real via = angle_between(ua, pole) + angle_between(pole, ub);
    if (std::abs(via - total) < 1e-13L) {
      const Real t = angle_between(ua, pole) / total;
      const Real r = a.norm() + t * (b.norm() - a.norm());
      return {a, pole * r};
    }
  }
  return {a};
}

LoopPath trace(const LoopSpec& spec, std::vector<Vec3> corners, int resolution, Real max_step) {
  if (corners.size() < 3) degenerate("a loop needs at least three distinct points");
  for (const Vec3& c : corners) {
    if (!(c.norm() > 0)) degenerate("loop point at the origin");
  }
  // Start away from the poles so the azimuth is defined.
  const auto first = std::find_if(corners.begin(), corners.end(),
                                  [](const Vec3& c) { return !at_pole(c); });
  if (first == corners.end()) degenerate("loop lies on the polar axis");
  std::rotate(corners.begin(), first, corners.end());

  std::vector<Vec3> nodes;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Vec3& a = corners[i];
    const Vec3& b = corners[(i + 1) % corners.size()];
    const Real omega = angle_between(a.normalized(), b.normalized());
    if (omega < 1e-12L && std::abs(a.norm() - b.norm()) < 1e-12L) {
      degenerate("consecutive loop points coincide");
    }
    if (omega > kPi - 1e-9L) degenerate("consecutive loop points are antipodal");
    for (const Vec3& n : split_at_poles(a, b)) nodes.push_back(n);
  }
  nodes.push_back(nodes.front());

  Real length = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    length += angle_between(nodes[i].normalized(), nodes[i + 1].normalized());
  }
  if (!(length > 0)) degenerate("loop has zero length");

  std::vector<Vec3> dense;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Real omega = angle_between(nodes[i].normalized(), nodes[i + 1].normalized());
    const int n = std::max({1, static_cast<int>(std::ceil(resolution * omega / length)),
                            static_cast<int>(std::ceil(omega / max_step))});
    dense.push_back(nodes[i]);
    for (int k = 1; k < n; ++k) dense.push_back(arc_point(nodes[i], nodes[i + 1], Real(k) / n));
  }
  dense.push_back(nodes.back());

  LoopPath loop;
  loop.spec = spec;
  Real phi = std::atan2(dense.front().y(), dense.front().x());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const Vec3& q = dense[i];
    if (!at_pole(q)) {
      const auto pt = MomentumPoint::from_cartesian(q, phi);
      phi = pt.phi();
      loop.samples.push_back(pt);
      continue;
    }
    // One sample per meridian at the pole.
    const Real theta = q.z() > 0 ? 0 : kPi;
    loop.samples.push_back(MomentumPoint::from_spherical(q.norm(), theta, phi));
    const Vec3& next = dense[std::min(i + 1, dense.size() - 1)];
    phi = unwind_near(std::atan2(next.y(), next.x()), phi);
    loop.samples.push_back(MomentumPoint::from_spherical(q.norm(), theta, phi));
  }
  loop.closed =
      (loop.samples.front().cartesian() - loop.samples.back().cartesian()).norm() <= kLoopClosure;
  return loop;
}

}  // namespace

LoopPath make_loop(const LoopSpec& spec, int resolution, Real max_step) {
  if (resolution < 16) throw Error(ErrorKind::ConfigError, "loop resolution must be at least 16");
  if (!(max_step > 0)) throw Error(ErrorKind::ConfigError, "loop step must be positive");
  switch (spec.kind) {
    case LoopKind::FixedThetaCircle: {
      if (spec.windings == 0) degenerate("circle with zero windings");
      if (!(spec.radius > 0)) degenerate("circle of zero radius");
      if (!(spec.theta > 0 && spec.theta < kPi)) degenerate("circle shrinks to a pole");
      const int per_turn = std::max(
          resolution, static_cast<int>(std::ceil(kTwoPi * std::sin(spec.theta) / max_step)));
      const int total = per_turn * std::abs(spec.windings);
      const Real dir = spec.windings > 0 ? 1 : -1;
      LoopPath loop;
      loop.spec = spec;
      loop.samples.reserve(total + 1);
      for (int k = 0; k <= total; ++k) {
        const Real phi = spec.phi_start + dir * kTwoPi * (Real(k) / per_turn);
        loop.samples.push_back(MomentumPoint::from_spherical(spec.radius, spec.theta, phi));
      }
      loop.closed = (loop.samples.front().cartesian() - loop.samples.back().cartesian()).norm() <=
                    kLoopClosure;
      return loop;
    }
    case LoopKind::GreatCirclePolygon: {
      if (!(spec.radius > 0)) degenerate("polygon of zero radius");
      std::vector<Vec3> corners;
      for (const Vec3& v : spec.points) {
        if (!(v.norm() > 0)) degenerate("polygon vertex at the origin");
        corners.push_back(v.normalized() * spec.radius);
      }
      return trace(spec, std::move(corners), resolution, max_step);
    }
    case LoopKind::Custom: {
      std::vector<Vec3> corners = spec.points;
      if (corners.size() > 1 && (corners.front() - corners.back()).norm() <= kLoopClosure) {
        corners.pop_back();
      }
      return trace(spec, std::move(corners), resolution, max_step);
    }
  }
  degenerate("unknown loop kind");
}

int LoopPath::windings() const {
  if (samples.size() < 2) return 0;
  return static_cast<int>(std::lround((samples.back().phi() - samples.front().phi()) / kTwoPi));
}

Real LoopPath::max_step() const {
  Real worst = 0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    worst = std::max(worst, angle_between(samples[i].unit(), samples[i + 1].unit()));
  }
  return worst;
}

Real LoopPath::solid_angle() const {
  Real sum = 0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const Real w = (2 - samples[i].cos_theta() - samples[i + 1].cos_theta()) / 2;
    sum += w * (samples[i + 1].phi() - samples[i].phi());
  }
  return sum;
}

LoopPath LoopPath::reversed() const {
  LoopPath out = *this;
  std::reverse(out.samples.begin(), out.samples.end());
  if (out.spec.kind == LoopKind::FixedThetaCircle) out.spec.windings = -spec.windings;
  std::reverse(out.spec.points.begin(), out.spec.points.end());
  return out;
}

namespace {

void require_closed(const LoopPath& loop) {
  if (loop.samples.size() < 3) degenerate("loop has too few samples");
  if (!loop.closed) degenerate("loop is not closed");
}

// Components of a along p-hat, theta-hat (times p) and phi-hat (times p sin theta).
Vec3 parameter_integrand(const GaugeChoice& gauge, const MomentumPoint& q) {
  const Vec3 a = gauge_potential(gauge, q);
  const Real p = q.magnitude();
  return {a.dot(q.unit()), a.dot(q.theta_hat()) * p, a.dot(q.phi_hat()) * p * q.sin_theta()};
}

Vec3 increments(const MomentumPoint& a, const MomentumPoint& b) {
  return {b.magnitude() - a.magnitude(), b.theta() - a.theta(), b.phi() - a.phi()};
}

struct CutCrossing {
  std::size_t segment;
  Real t;      // fraction along the segment
  Real phi;    // unwound azimuth of the crossing
  int sign;    // +1 when the azimuth increases through the cut
};

std::vector<CutCrossing> cut_crossings(const LoopPath& loop, Real cut) {
  std::vector<CutCrossing> out;
  // Points exactly on the cut belong to the side just above it.
  auto turn = [&](Real phi) { return std::floor((phi - cut) / kTwoPi); };
  for (std::size_t i = 0; i + 1 < loop.samples.size(); ++i) {
    const Real f0 = loop.samples[i].phi(), f1 = loop.samples[i + 1].phi();
    const Real n0 = turn(f0), n1 = turn(f1);
    if (n0 == n1) continue;
    const int sign = n1 > n0 ? 1 : -1;
    for (Real n = std::min(n0, n1) + 1; n <= std::max(n0, n1); n += 1) {
      const Real phi = cut + n * kTwoPi;
      out.push_back({i, (phi - f0) / (f1 - f0), phi, sign});
    }
  }
  return out;
}

void require_string_clearance(const LoopPath& loop, const GaugeChoice& gauge) {
  const StringFlags s = gauge.strings();
  const bool custom = gauge.kind() == GaugeKind::Custom;
  for (const MomentumPoint& q : loop.samples) {
    const bool north = (s.north() || custom) && q.theta() < kStringClearance;
    const bool south = (s.south() || custom) && kPi - q.theta() < kStringClearance;
    if (north || south) {
      throw Error(ErrorKind::StringProximity,
                  "loop passes within 1e-3 rad of a string of gauge " + gauge.name());
    }
  }
}

MomentumPoint interpolate(const MomentumPoint& a, const MomentumPoint& b, Real t, Real phi) {
  return MomentumPoint::from_spherical(a.magnitude() + t * (b.magnitude() - a.magnitude()),
                                       a.theta() + t * (b.theta() - a.theta()), phi);
}

// chi jump for a crossing of the cut in the increasing-azimuth direction.
Real cut_jump(const GaugeChoice& gauge, Real theta, Real cut) {
  constexpr Real d = 1e-6L;
  const Real above = gauge.chi(theta, cut + d) - d * gauge.gradient(theta, cut + d).d_phi;
  const Real below = gauge.chi(theta, cut - d) + d * gauge.gradient(theta, cut - d).d_phi;
  return above - below;
}

}  // namespace

Real line_integral_phase(const LoopPath& loop, const GaugeChoice& gauge, int kappa) {
  require_closed(loop);
  if (kappa == 0) return 0;
  require_string_clearance(loop, gauge);
  const auto& s = loop.samples;
  std::vector<CutCrossing> crossings;
  if (gauge.branch_cut()) crossings = cut_crossings(loop, *gauge.branch_cut());
  std::size_t next_crossing = 0;

  Real sum = 0;
  Vec3 f0 = parameter_integrand(gauge, s.front());
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const Vec3 f1 = parameter_integrand(gauge, s[i + 1]);
    MomentumPoint from = s[i];
    Vec3 f_from = f0;
    while (next_crossing < crossings.size() && crossings[next_crossing].segment == i) {
      const CutCrossing& c = crossings[next_crossing++];
      const Real eps = 1e-15L * std::max(Real{1}, std::abs(c.phi));
      // The crossing point seen from each side of the cut.
      const Real before = c.sign > 0 ? c.phi - eps : c.phi;
      const Real after = c.sign > 0 ? c.phi : c.phi - eps;
      const MomentumPoint cb = interpolate(s[i], s[i + 1], c.t, before);
      const MomentumPoint ca = interpolate(s[i], s[i + 1], c.t, after);
      const MomentumPoint cm = interpolate(s[i], s[i + 1], c.t, c.phi);
      sum += (f_from + parameter_integrand(gauge, cb)).dot(increments(from, cm)) / 2;
      from = cm;
      f_from = parameter_integrand(gauge, ca);
    }
    sum += (f_from + f1).dot(increments(from, s[i + 1])) / 2;
    f0 = f1;
  }
  return kappa * sum;
}

PhaseReport surface_integral_phase(const LoopPath& loop, const GaugeChoice& gauge, int kappa,
                                   Cap cap) {
  require_closed(loop);
  auto near_pole = [&](Cap c) {
    return std::any_of(loop.samples.begin(), loop.samples.end(), [&](const MomentumPoint& q) {
      return c == Cap::North ? q.theta() < kStringClearance : kPi - q.theta() < kStringClearance;
    });
  };
  if (near_pole(cap)) {
    throw Error(ErrorKind::AmbiguousCap,
                std::string("loop passes within 1e-3 rad of the ") + to_string(cap) + " pole");
  }

  PhaseReport r;
  r.kappa = kappa;
  r.cap = cap;
  r.windings = loop.windings();
  r.solid_angle = loop.solid_angle();
  const MomentumPoint& start = loop.samples.front();
  const MomentumPoint& end = loop.samples.back();
  r.delta_chi_p = gauge.chi(end.theta(), end.phi()) - gauge.chi(start.theta(), start.phi());
  try {
    r.gamma_line = line_integral_phase(loop, gauge, kappa);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::StringProximity) throw;
    r.gamma_line = std::numeric_limits<Real>::quiet_NaN();
  }

  const StringFlags flags = gauge.strings();
  const Real w = r.windings;
  std::vector<CutCrossing> crossings;
  if (flags.branch_cut) crossings = cut_crossings(loop, *flags.branch_cut);

  // Cut or closure contribution for a cap whose pole sits at theta_cap.
  auto cut_term = [&](Real theta_cap) {
    if (flags.branch_cut) {
      Real sum = 0;
      for (const CutCrossing& c : crossings) {
        const MomentumPoint& a = loop.samples[c.segment];
        const MomentumPoint& b = loop.samples[c.segment + 1];
        const Real theta_c = a.theta() + c.t * (b.theta() - a.theta());
        sum += c.sign * (cut_jump(gauge, theta_cap, *flags.branch_cut) -
                         cut_jump(gauge, theta_c, *flags.branch_cut));
      }
      return sum;
    }
    // chi_p not periodic in phi: the loop closes across the jump at its start.
    auto closure = [&](Real theta) {
      return gauge.chi(theta, start.phi()) - gauge.chi(theta, start.phi() + kTwoPi * w);
    };
    return closure(theta_cap) - closure(start.theta());
  };

  auto evaluate = [&](Cap c) {
    const bool north = c == Cap::North;
    const Real omega = north ? r.solid_angle : r.solid_angle - 2 * kTwoPi * w;
    const Real strings = north ? w * flags.north_strength : -w * flags.south_strength;
    const Real cut = cut_term(north ? 0 : kPi);
    return std::array<Real, 3>{kappa * (-omega + kTwoPi * strings + cut), strings, cut};
  };

  for (Cap c : {Cap::North, Cap::South}) {
    if (near_pole(c)) continue;
    const auto v = evaluate(c);
    (c == Cap::North ? r.gamma_surface_north : r.gamma_surface_south) = v[0];
    if (c == cap) {
      r.gamma_surface = v[0];
      r.string_crossings = v[1];
      r.cut_term = v[2];
    }
  }
  return r;
}

TransportResult parallel_transport(const LoopPath& loop, TransportMode mode) {
  require_closed(loop);
  if (mode == TransportMode::AboutE3 && loop.spec.kind != LoopKind::FixedThetaCircle) {
    throw Error(ErrorKind::ConfigError, "rotation about e_3 follows fixed-theta circles only");
  }
  const auto& s = loop.samples;
  TransportResult out;
  Rotor frame = Rotor::from_euler({s.front().phi(), s.front().theta(), 0});
  const Rotor initial = frame;
  Real chi = 0;
  out.chi.reserve(s.size());
  out.chi.push_back(0);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    Rotor step;
    if (mode == TransportMode::Parallel) {
      const Vec3 u = s[i].unit(), v = s[i + 1].unit();
      const Vec3 c = u.cross(v);
      const Real sn = c.norm();
      if (sn > 0) step = Rotor::from_axis_angle(c / sn * std::atan2(sn, u.dot(v)));
    } else {
      step = Rotor::from_axis_angle(Vec3::UnitZ() * (s[i + 1].phi() - s[i].phi()));
    }
    frame = (step * frame).normalized();
    // Axial angle relative to the sample's own (phi, theta).
    const Rotor axial =
        Rotor::from_euler({s[i + 1].phi(), s[i + 1].theta(), 0}).reverse() * frame;
    chi = unwind_near(2 * std::atan2(axial.bivector().z(), axial.scalar()), chi);
    out.chi.push_back(chi);
  }
  out.delta_chi = out.chi.back() - out.chi.front();
  out.eta = out.delta_chi + kTwoPi * loop.windings();
  out.net_rotor = frame * initial.reverse();
  out.axial_defect = out.net_rotor.distance(Rotor::from_axis_angle(s.back().unit() * out.eta));
  return out;
}

Vec3 berry_connection(const MomentumPoint& at, const GaugeChoice& gauge, int kappa) {
  if (kappa < -1 || kappa > 1) throw Error(ErrorKind::ConfigError, "kappa must be -1, 0 or 1");
  const CVec3 e = gauge_helicity_vector(gauge, at, kappa);
  const auto a = connection_matrix(gauge, at);
  Vec3 out;
  for (int j = 0; j < 3; ++j) out(j) = e.dot(a[j] * e).real();
  return out;
}

}  // namespace photonlab
