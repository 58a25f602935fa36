#include "CLI11.hpp"

#include "report.hpp"
#include "suites.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace photonlab;
using namespace photonlab::cli;

constexpr const char* kOutputDirEnv = "PHOTONLAB_OUTPUT_DIR";

struct Flags {
  RunConfig config;
  std::string format = "csv";
  std::vector<std::string> tolerances;
  std::string output;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--gauge", f.config.gauge, "zero | minus-phi | minus-phi-cos-theta (default: all three)")
      ->check(CLI::IsMember({"zero", "minus-phi", "minus-phi-cos-theta"}));
  sub->add_option("--branch-cut", f.config.branch_cut, "cut azimuth in (0, 2 pi) for minus-phi-cos-theta");
  sub->add_option("--alpha", f.config.alpha, "measure weight (default: sweep -0.5, 0, 0.5)");
  sub->add_option("--seed", f.config.seed, "seed for sample points")->capture_default_str();
  sub->add_option("--samples", f.config.samples, "random sample points per check")->capture_default_str();
  sub->add_option("--resolution", f.config.resolution, "loop segments per winding")->capture_default_str();
  sub->add_option("--fd-step-rel", f.config.fd_step_rel, "difference step relative to |p|")->capture_default_str();
  sub->add_option("--tolerance", f.tolerances, "override as name=value; names: nested, helicity, "
                                               "representation, reduction, velocity, phase, eigen, "
                                               "curl, flux, algebraic, transport");
  sub->add_option("--output,-o", f.output, "output file (default: $PHOTONLAB_OUTPUT_DIR/<suite>.<ext>, "
                                           "else standard output)");
  sub->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void add_loops(CLI::App* sub, Flags& f) {
  sub->add_option("--theta", f.config.thetas, "polar angles of fixed-theta circles, radians");
  sub->add_option("--windings", f.config.windings, "turns of each circle")->capture_default_str();
}

void apply_tolerances(Flags& f) {
  for (const std::string& item : f.tolerances) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ConfigError, "tolerance must read name=value");
    double value = 0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, "bad tolerance value in '" + item + "'");
    }
    f.config.tolerances.set(item.substr(0, eq), value);
  }
}

void emit(const SuiteReport& report, const Flags& f) {
  std::filesystem::path target;
  if (!f.output.empty()) {
    target = f.output;
  } else if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    target = std::filesystem::path(dir) / (report.suite + (f.format == "json" ? ".json" : ".csv"));
  }
  auto write = [&](std::ostream& out) {
    if (f.format == "json") {
      write_json(report, out);
    } else {
      write_csv(report, out);
    }
  };
  if (target.empty()) {
    write(std::cout);
    return;
  }
  std::error_code ec;
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path(), ec);
  std::ofstream out(target, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + target.string());
  write(out);
  out.close();
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + target.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon position-operator verification suites"};
  app.set_config("--config", "", "TOML or INI file with option values; flags on the command line win");
  app.require_subcommand(1);

  Flags f;
  CLI::App* berry = app.add_subcommand("berry", "geometric phase of momentum-space loops");
  add_common(berry, f);
  add_loops(berry, f);
  berry->add_option("--kappa", f.config.kappas, "helicities")->capture_default_str();
  berry->add_option("--vertices", f.config.vertices, "great-circle polygon as x,y,z;x,y,z;...");
  berry->add_option("--cap", f.config.cap, "north | south | both")->capture_default_str();

  CLI::App* commutators = app.add_subcommand("commutators", "commutator tables and operator identities");
  add_common(commutators, f);

  CLI::App* localize = app.add_subcommand("localize", "localized eigenstates and basis rotations");
  add_common(localize, f);
  localize->add_option("--r-prime", f.config.r_primes, "eigenvalue x,y,z (repeatable)");

  CLI::App* field = app.add_subcommand("gauge-field", "gauge potential, curl and strings on a grid");
  add_common(field, f);
  field->add_option("--n-theta", f.config.n_theta, "polar grid lines, inclusive")->capture_default_str();
  field->add_option("--n-phi", f.config.n_phi, "azimuthal grid lines from 0")->capture_default_str();
  field->add_option("--theta-min", f.config.theta_min)->capture_default_str();
  field->add_option("--theta-max", f.config.theta_max)->capture_default_str();
  field->add_option("--magnitude", f.config.magnitude, "|p| of the grid sphere")->capture_default_str();

  CLI::App* euler = app.add_subcommand("euler", "rotation matrices, Euler increments and transport");
  add_common(euler, f);
  add_loops(euler, f);

  CLI::App* all = app.add_subcommand("report-all", "every suite");
  add_common(all, f);
  add_loops(all, f);

  CLI11_PARSE(app, argc, argv);

  try {
    f.config.command = app.get_subcommands().front()->get_name();
    f.config.format = f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (!f.output.empty()) f.config.output = f.output;
    apply_tolerances(f);
    const SuiteReport report = run(f.config);
    emit(report, f);
    const Summary s = report.summary();
    std::cerr << report.suite << ": " << s.passed << "/" << s.total << " checks passed\n";
    for (const CheckRow& r : report.checks) {
      if (!r.pass) std::cerr << "FAIL " << r.identity << " residual " << format_number(r.residual) << "\n";
    }
    return s.failed == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
