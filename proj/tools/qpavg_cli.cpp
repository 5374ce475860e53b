#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpavg/driver.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/io.hpp"

namespace {

struct Flags {
  qpavg::RunConfig cfg;
  std::string F, mu, H;
  std::string config_file;
};

void add_common(CLI::App* sub, Flags& f) {
  auto& c = f.cfg;
  sub->add_option("--system", c.system, "standard | torus2d | vdp | three_body");
  sub->add_option("--ic", c.ic, "initial condition, comma separated decimals (three_body: q1,p1 or q1,q2,p1,p2)")
      ->delimiter(',')
      ->allow_extra_args(false);
  sub->add_option("--n", c.n, "number of iterates, samples or section points");
  sub->add_option("--kernel", c.kernel, "equal | quad | sin2 | exp")->capture_default_str();
  sub->add_option("--precision", c.precision, "double | dd")->capture_default_str();
  sub->add_option("--burn-in", c.burn_in, "discarded iterates or periods (default 1000 for vdp, else 0)");
  sub->add_option("--kmax", c.kmax, "highest Fourier index");
  sub->add_option("--jmax", c.jmax, "highest first Fourier index (torus2d)");
  sub->add_option("--points", c.points, "conjugacy reconstruction grid size");
  sub->add_option("--n-grid", c.n_grid, "convergence grid (default 2^10..2^20)")->delimiter(',');
  sub->add_option("--step", c.step, "RK8 step for flows (default 1e-3)");
  sub->add_option("--tol", c.tol, "section residual tolerance (default 1e-13)");
  sub->add_option("--F", f.F, "van der Pol forcing amplitude (default 5)");
  sub->add_option("--mu", f.mu, "three-body mass ratio (default 0.1)");
  sub->add_option("--H", f.H, "three-body energy level (default -2.63)");
  sub->add_option("--format", c.format, "csv | json | gnuplot")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--config", f.config_file, "rerun the config embedded in an earlier output file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Birkhoff averages for quasiperiodic orbits"};
  app.set_version_flag("--version", std::string(qpavg::version()));
  app.require_subcommand(1);

  Flags flags;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> summary = {
      {"orbit", "print an orbit (map iterates, stroboscopic samples or section points)"},
      {"rotnum", "rotation number or vector with partial estimates"},
      {"fourier", "Fourier coefficients of the conjugacy to a rigid rotation"},
      {"conjugacy", "reconstructed conjugacy g(theta)"},
      {"lyapunov", "Lyapunov exponents by weighted QR log-stretches"},
      {"convergence", "error against N for all four kernels, with fitted slopes"},
      {"section", "three-body Poincare section points with residuals and energy drift"},
  };
  for (const auto& name : qpavg::command_names()) {
    auto* sub = app.add_subcommand(name, summary.at(name));
    add_common(sub, flags);
    sub->footer("Columns: " + qpavg::command_columns(name));
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run '" << app.get_name() << " --help' for usage\n";
    return 2;
  }

  try {
    qpavg::RunConfig cfg = flags.cfg;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) cfg.command = name;
    }
    if (!flags.config_file.empty()) {
      const std::string out = cfg.out;
      cfg = qpavg::read_embedded_config(flags.config_file);
      if (!out.empty()) cfg.out = out;
    }
    if (!flags.F.empty()) cfg.params["F"] = flags.F;
    if (!flags.mu.empty()) cfg.params["mu"] = flags.mu;
    if (!flags.H.empty()) cfg.params["H"] = flags.H;
    cfg = qpavg::resolve_defaults(cfg);
    qpavg::emit(cfg, qpavg::run_command(cfg));
  } catch (const qpavg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qpavg::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
