#pragma once

#include "report.hpp"

#include "photonlab/gauge.hpp"
#include "photonlab/geometric_phase.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace photonlab::cli {

enum class OutputFormat { Csv, Json };

struct Tolerances {
  double nested = 1e-4;          // nested-difference commutators, per |psi| scale
  double helicity = 1e-6;        // helicity invariance and vanishing corrections
  double representation = 1e-5;  // unitary equivalence of representations
  double reduction = 1e-6;       // general-helicity special cases
  double velocity = 1e-5;
  double phase = 1e-6;           // radians
  double eigen = 1e-6;
  double curl = 1e-6;
  double flux = 1e-2;            // relative
  double algebraic = 1e-10;
  double transport = 1e-12;      // rotor axial defect

  /// Sets one entry by name; throws ConfigError for unknown names.
  void set(const std::string& name, double value);
  static std::vector<std::string> names();
};

struct RunConfig {
  std::string command;
  std::optional<std::string> gauge;  // zero | minus-phi | minus-phi-cos-theta; unset = all three
  std::optional<double> branch_cut;  // minus-phi-cos-theta only
  std::optional<double> alpha;       // unset = sweep -1/2, 0, 1/2
  unsigned long long seed = 42;
  int samples = 20;
  int resolution = 10000;
  double fd_step_rel = 1e-5;
  Tolerances tolerances;

  // berry
  std::vector<double> thetas;  // empty = pi/6, pi/3, pi/2, 2pi/3
  int windings = 1;
  std::vector<int> kappas = {1, -1};
  std::optional<std::string> vertices;  // "x,y,z;x,y,z;..." great-circle polygon
  std::string cap = "both";             // north | south | both

  // localize
  std::vector<std::string> r_primes;  // "x,y,z"; empty = origin and (0.5,-0.2,1)

  // gauge-field
  int n_theta = 18;
  int n_phi = 36;
  double theta_min = 0.05;
  double theta_max = 3.0915926535897931;
  double magnitude = 1;

  std::optional<std::string> output;  // file path; unset = directory default or stdout
  OutputFormat format = OutputFormat::Csv;

  /// Config echo for reports: only settings that affect the values.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Gauges selected by the config, in a fixed order.
std::vector<GaugeChoice> selected_gauges(const RunConfig& config);
GaugeChoice parse_gauge(const std::string& tag, std::optional<double> branch_cut);
std::vector<double> selected_alphas(const RunConfig& config);

SuiteReport run_berry(const RunConfig& config);
SuiteReport run_commutators(const RunConfig& config);
SuiteReport run_localize(const RunConfig& config);
SuiteReport run_gauge_field(const RunConfig& config);
SuiteReport run_euler(const RunConfig& config);
SuiteReport run_report_all(const RunConfig& config);

/// Dispatch on config.command; throws ConfigError for an unknown command.
SuiteReport run(const RunConfig& config);

extern const std::vector<std::string> kBerryColumns;
extern const std::vector<std::string> kGaugeFieldColumns;

}  // namespace photonlab::cli
