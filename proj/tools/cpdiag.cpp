// SPDX-License-Identifier: Apache-2.0
//
// cpdiag: concurrence-vs-purity curves for local channels on the singlet.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <cpdiag/commands.hpp>

using namespace cpdiag;
using namespace cpdiag::cli;

int main(int argc, char** argv) {
  CLI::App app{"Concurrence-vs-purity diagram for local channels acting on the singlet"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string output;
  std::optional<double> tol;
  app.add_option("--output", output, "Write to PATH instead of standard output");
  app.add_option("--tol", tol, "Numerical tolerance (state checks, CP tests, region margins)")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", cfg.workers, "Scan worker threads (0: all cores)");

  // trajectory
  auto* traj = app.add_subcommand("trajectory", "Purity and concurrence along a semigroup");
  std::string process;
  double T = 1, T1 = 1, T2 = 1, omega = 0, w = 0;
  std::string spacing = "log";
  const std::map<std::string, ProcessKind> kinds{{"decoherence", ProcessKind::Decoherence},
                                                 {"depolarization", ProcessKind::Depolarization},
                                                 {"homogenization", ProcessKind::Homogenization}};
  traj->add_option("--process", process, "decoherence | depolarization | homogenization")
      ->required()
      ->check(CLI::IsMember({"decoherence", "depolarization", "homogenization"}));
  traj->add_option("--T", T, "Time constant (decoherence, depolarization)");
  traj->add_option("--T1", T1, "Decay time (homogenization)");
  traj->add_option("--T2", T2, "Decoherence time (homogenization)");
  traj->add_option("--omega", omega, "Precession frequency");
  traj->add_option("--w", w, "Fixed-point Bloch length (homogenization)");
  traj->add_option("--t-min", cfg.t_min, "First grid time");
  traj->add_option("--t-max", cfg.t_max, "Last grid time");
  traj->add_option("--n", cfg.n_points, "Grid points")->check(CLI::Range(2, 100000000));
  traj->add_option("--spacing", spacing, "linear | log")->check(CLI::IsMember({"linear", "log"}));

  auto* bounds = app.add_subcommand("bounds", "Boundary curves over purity");
  std::size_t n_bounds = 301;
  bounds->add_option("--n", n_bounds, "Purity grid points")->check(CLI::Range(2, 100000000));

  auto* scan_u = app.add_subcommand("scan-unital", "Monte-Carlo scan over unital channels");
  auto* scan_n = app.add_subcommand("scan-nonunital", "Monte-Carlo scan over non-unital channels");
  for (auto* s : {scan_u, scan_n}) {
    s->add_option("-n", cfg.n_samples, "Number of samples")->check(CLI::PositiveNumber);
    s->add_option("--seed", cfg.seed, "RNG seed")->required();
  }

  auto* analyze = app.add_subcommand("analyze", "Report on a density matrix read from CSV");
  std::string input;
  analyze->add_option("input", input, "CSV file, '-' for standard input")->required();

  auto* state = app.add_subcommand("state", "Emit a named state as analyze input");
  std::string state_name;
  double state_param = 1.0;
  state->add_option("name", state_name, "singlet | phi-plus | mixed | werner | mems")->required();
  state->add_option("--param", state_param, "Werner q or MEMS p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  if (tol) {
    cfg.tol = *tol;
    cfg.diagram_tol = *tol;
  }

  std::ostringstream out;
  int code = kOk;
  if (*traj) {
    const ProcessKind kind = kinds.at(process);
    cfg.process = kind == ProcessKind::Decoherence      ? SemigroupProcess::decoherence(T, omega)
                  : kind == ProcessKind::Depolarization ? SemigroupProcess::depolarization(T)
                                                        : SemigroupProcess::homogenization(T1, T2, w, omega);
    cfg.spacing = spacing == "linear" ? Spacing::Linear : Spacing::Log;
    code = cmd_trajectory(cfg, out, std::cerr);
  } else if (*bounds) {
    cfg.n_points = n_bounds;
    code = cmd_bounds(cfg, out, std::cerr);
  } else if (*scan_u || *scan_n) {
    code = cmd_scan(cfg, bool(*scan_u), out, std::cerr);
  } else if (*analyze) {
    if (input == "-") {
      code = cmd_analyze(cfg, std::cin, out, std::cerr);
    } else {
      std::ifstream f(input);
      if (!f) {
        std::cerr << "analyze: cannot open " << input << '\n';
        return kUsageError;
      }
      code = cmd_analyze(cfg, f, out, std::cerr);
    }
  } else if (*state) {
    code = cmd_state(state_name, state_param, out, std::cerr);
  }

  if (code == kUsageError) return code;
  try {
    if (output.empty()) {
      std::cout << out.str() << std::flush;
    } else {
      write_atomically(output, out.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "output: " << e.what() << '\n';
    return kUsageError;
  }
  return code;
}
