#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "css2d/runner.hpp"
#include "css2d/runtime.hpp"

using namespace css2d;

namespace {

SimConfig config_or_default(const std::string& path) { return path.empty() ? SimConfig{} : load_config(path); }

int do_run(const std::string& path) {
  const RunReport rep = run(load_config(path));
  for (const auto& m : rep.messages) std::cerr << "warning: " << m << "\n";
  std::cout << "outputs in " << rep.output_dir.string() << "\n";
  return rep.exit_code;
}

int do_check(const std::string& path) {
  bool ok = true;
  for (const auto& c : check_invariants(config_or_default(path))) {
    std::printf("%s  %-48s %.3e (tol %.1e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance);
    ok = ok && c.pass;
  }
  return ok ? kExitOk : kExitInvariant;
}

int do_convergence(const std::string& path, int levels) {
  const ConvergenceReport r = convergence(load_config(path), levels);
  for (std::size_t k = 0; k < r.dt_errors.size(); ++k)
    std::printf("dt %.4g -> %.4g  error %.3e\n", r.dts[k], r.dts[k + 1], r.dt_errors[k]);
  for (std::size_t k = 0; k < r.dt_orders.size(); ++k) std::printf("dt order %.3f\n", r.dt_orders[k]);
  for (std::size_t k = 0; k < r.ns.size(); ++k) std::printf("n %d  error vs n=128 %.3e\n", r.ns[k], r.n_errors[k]);
  std::printf("n=32 -> 64 error drop %.3e\n", r.n_drop);
  std::printf("%s dt order in [1.8, 2.2]\n%s spectral drop >= 1e3\n", r.dt_pass ? "PASS" : "FAIL",
              r.n_pass ? "PASS" : "FAIL");
  return r.dt_pass && r.n_pass ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  configure_allocator();
  CLI::App app{"Chern-Simons-Schroedinger solver on the 2-torus"};
  app.require_subcommand(1);
  std::string config;
  int levels = 3;

  auto* run_cmd = app.add_subcommand("run", "integrate the configured problem and write outputs");
  run_cmd->add_option("--config", config, "INI config file")->required();
  auto* check_cmd = app.add_subcommand("check-invariants", "run the property suite");
  check_cmd->add_option("--config", config, "INI config file");
  auto* conv_cmd = app.add_subcommand("convergence", "dt and n refinement study");
  conv_cmd->add_option("--config", config, "INI config file")->required();
  conv_cmd->add_option("--levels", levels, "dt levels")->check(CLI::Range(3, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return do_run(config);
    if (*check_cmd) return do_check(config);
    return do_convergence(config, levels);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BlowupError& e) {
    std::cerr << "blowup: " << e.what() << "\n";
    return kExitBlowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
