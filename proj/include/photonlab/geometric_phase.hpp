#pragma once

#include "photonlab/gauge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace photonlab {

inline constexpr Real kLoopMaxStep = 1e-3L;      // largest angle between samples
inline constexpr Real kLoopClosure = 1e-12L;     // first/last coincidence
inline constexpr Real kStringClearance = 1e-3L;  // radians

enum class LoopKind { FixedThetaCircle, GreatCirclePolygon, Custom };

const char* to_string(LoopKind kind);

struct LoopSpec {
  LoopKind kind = LoopKind::FixedThetaCircle;
  Real radius = 1;
  // FixedThetaCircle; negative windings run clockwise seen from +e_3.
  Real theta = 0;
  int windings = 1;
  Real phi_start = 0;
  // GreatCirclePolygon vertices (directions) or Custom path points.
  std::vector<Vec3> points;

  static LoopSpec circle(Real theta, int windings = 1, Real radius = 1);
  static LoopSpec polygon(std::vector<Vec3> vertices, Real radius = 1);
  static LoopSpec custom(std::vector<Vec3> points);
};

/// Closed loop with a continuous azimuth. A path through a pole carries two
/// samples there, one per meridian, so the azimuth jump is explicit.
struct LoopPath {
  LoopSpec spec;
  std::vector<MomentumPoint> samples;
  bool closed = false;

  /// Net turns of the azimuth around e_3.
  int windings() const;
  /// Largest angle subtended by consecutive samples.
  Real max_step() const;
  /// Signed solid angle of the north cap: loop integral of (1 - cos theta) d phi.
  Real solid_angle() const;
  /// The same loop run backwards.
  LoopPath reversed() const;
};

/// Throws DegenerateLoop for zero-length specs and ConfigError for
/// resolution < 16. `resolution` counts segments per winding (circles) or
/// for the whole path (polygons), before refinement to `max_step`.
LoopPath make_loop(const LoopSpec& spec, int resolution, Real max_step = kLoopMaxStep);

/// kappa times the loop integral of a . dp (composite trapezoid in the loop
/// parameters, split where the path crosses a branch cut). Throws
/// StringProximity within 1e-3 rad of a string.
Real line_integral_phase(const LoopPath& loop, const GaugeChoice& gauge, int kappa);

enum class Cap { North, South };

const char* to_string(Cap cap);

struct PhaseReport {
  Real gamma_line = 0;
  Real gamma_surface = 0;  // on the requested cap
  std::optional<Real> gamma_surface_north;
  std::optional<Real> gamma_surface_south;
  Real delta_chi_p = 0;        // chi_p(end) - chi_p(start) along the loop
  Real string_crossings = 0;   // windings times string strength, requested cap
  Real cut_term = 0;           // branch-cut contribution, requested cap, units of kappa
  Real solid_angle = 0;        // north-cap solid angle
  int windings = 0;
  int kappa = 0;
  Cap cap = Cap::North;
};

/// Stokes evaluation: -kappa Omega on the cap, plus 2 pi kappa per unit of
/// string flux through it, plus the branch-cut (or, for a nonintegrable
/// gauge, the closure) contribution. Throws AmbiguousCap when the loop comes
/// within 1e-3 rad of the requested cap's pole.
PhaseReport surface_integral_phase(const LoopPath& loop, const GaugeChoice& gauge, int kappa,
                                   Cap cap = Cap::North);

enum class TransportMode {
  Parallel,  // great-circle steps, no axial rotation
  AboutE3,   // rigid rotation of the frame about e_3 (circles only)
};

struct TransportResult {
  Real delta_chi = 0;  // change of the axial angle
  Real eta = 0;        // delta_chi + 2 pi windings
  Rotor net_rotor;     // final frame times initial frame reversed
  Real axial_defect = 0;  // SU(2) distance of net_rotor from exp(-i eta p-hat/2)
  std::vector<Real> chi;  // axial angle at each sample
};

TransportResult parallel_transport(const LoopPath& loop,
                                   TransportMode mode = TransportMode::Parallel);

/// i <e_pk | grad e_pk> as the sandwich e_pk^dagger A e_pk; equals kappa a.
Vec3 berry_connection(const MomentumPoint& at, const GaugeChoice& gauge, int kappa);

}  // namespace photonlab
