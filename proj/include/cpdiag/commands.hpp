// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the cpdiag executable. Each command writes
// CSV to an output stream, diagnostics to an error stream, and returns the
// process exit code.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpdiag.hpp"

namespace cpdiag::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kVerificationFailed = 2 };

enum class Spacing { Linear, Log };

struct RunConfig {
  SemigroupProcess process;
  std::optional<double> t_min, t_max;  // default [1e-3, 10] * time scale
  std::size_t n_points = 200;
  Spacing spacing = Spacing::Log;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  double tol = kDefaultTol;
  std::optional<double> diagram_tol;  // overrides kDiagramTol for scans/classification
};

namespace detail {

/// Classic locale, 17 significant digits.
inline void configure(std::ostream& os) {
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
}

inline double region_tol(const RunConfig& cfg) { return cfg.diagram_tol.value_or(kDiagramTol); }

inline std::vector<double> time_grid(const RunConfig& cfg) {
  const double scale = cfg.process.time_scale();
  const double lo = cfg.t_min.value_or(cfg.spacing == Spacing::Log ? 1e-3 * scale : 0.0);
  const double hi = cfg.t_max.value_or(10.0 * scale);
  return cfg.spacing == Spacing::Log ? log_grid(lo, hi, cfg.n_points)
                                     : linear_grid(lo, hi, cfg.n_points);
}

template <std::size_t N>
void write_matrix(std::ostream& os, const Matrix<N>& m) {
  bool first = true;
  for (const auto& z : m.data()) {
    os << (first ? "" : ",") << z.real() << ',' << z.imag();
    first = false;
  }
}

}  // namespace detail

/// `t,purity,concurrence` along the process.
inline int cmd_trajectory(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Trajectory tr;
  try {
    cfg.process.validate();
    tr = trajectory(cfg.process, detail::time_grid(cfg), cfg.tol);
  } catch (const std::exception& e) {
    err << "trajectory: " << e.what() << '\n';
    return kUsageError;
  }
  detail::configure(out);
  out << "t,purity,concurrence\n";
  for (const auto& p : tr.points) out << p.t << ',' << p.purity << ',' << p.concurrence << '\n';
  return kOk;
}

/// Boundary curves on a uniform purity grid over [1/4, 1].
inline int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n_points < 2) {
    err << "bounds: need at least 2 points\n";
    return kUsageError;
  }
  const MemsCurve curve;
  detail::configure(out);
  out << "purity,c_mems,c_werner,c_decoherence\n";
  const auto n = static_cast<double>(cfg.n_points - 1);
  for (std::size_t k = 0; k < cfg.n_points; ++k) {
    const double P = k + 1 == cfg.n_points ? 1.0 : 0.25 + 0.75 * static_cast<double>(k) / n;
    out << P << ',' << curve.concurrence_at(P) << ',' << c_max_unital(P) << ','
        << c_min_unital(P) << '\n';
  }
  return kOk;
}

/// Per-sample rows followed by `#`-prefixed summary lines. Exit code 2 when
/// any sample violates its bounds.
inline int cmd_scan(const RunConfig& cfg, bool unital, std::ostream& out, std::ostream& err) {
  if (cfg.n_samples < 1) {
    err << "scan: need at least one sample\n";
    return kUsageError;
  }
  ScanOptions opt;
  opt.tol = detail::region_tol(cfg);
  opt.workers = cfg.workers;
  RegionReport rep;
  try {
    rep = unital ? scan_unital(cfg.n_samples, cfg.seed, opt)
                 : scan_nonunital(cfg.n_samples, cfg.seed, opt);
  } catch (const std::exception& e) {
    err << "scan: " << e.what() << '\n';
    return kUsageError;
  }
  detail::configure(out);
  out << "purity,concurrence,region\n";
  for (const auto& s : rep.samples)
    out << s.point.purity << ',' << s.point.concurrence << ',' << to_string(s.region) << '\n';
  out << "# kind=" << (unital ? "unital" : "nonunital") << '\n'
      << "# seed=" << rep.seed << '\n'
      << "# samples=" << rep.n_samples << '\n'
      << "# acceptance_rate=" << rep.acceptance_rate << '\n'
      << "# min_margin_lower=" << rep.min_margin_lower << '\n'
      << "# max_margin_upper=" << rep.max_margin_upper << '\n'
      << "# max_margin_mems=" << rep.max_margin_mems << '\n'
      << "# max_reduced_distance=" << rep.max_reduced_distance << '\n'
      << "# separable_above_half=" << rep.separable_above_half << '\n'
      << "# violations=" << rep.violations.size() << '\n';
  if (!rep.violations.empty()) {
    err << "scan: " << rep.violations.size() << " sample(s) violate the bounds\n";
    return kVerificationFailed;
  }
  return kOk;
}

/// Reads a density matrix as 32 numbers (row-major, real/imaginary
/// interleaved), in any mix of commas and newlines. A first line that does
/// not parse as numbers is taken as a header.
inline std::optional<Matrix4> read_state_csv(std::istream& in, std::string& error) {
  std::vector<double> values;
  std::string line;
  bool first_line = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    ss.imbue(std::locale::classic());
    std::string field;
    bool numeric = true;
    while (std::getline(ss, field, ',')) {
      std::istringstream fs(field);
      fs.imbue(std::locale::classic());
      double v;
      if (!(fs >> v) || !(fs >> std::ws).eof()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first_line) {
        first_line = false;
        continue;
      }
      error = "non-numeric field '" + field + "'";
      return std::nullopt;
    }
    first_line = false;
    values.insert(values.end(), row.begin(), row.end());
  }
  if (values.size() != 32) {
    error = "expected 32 numbers (16 complex entries), got " + std::to_string(values.size());
    return std::nullopt;
  }
  Matrix4 m;
  for (std::size_t k = 0; k < 16; ++k) m(k / 4, k % 4) = complex{values[2 * k], values[2 * k + 1]};
  return m;
}

/// Writes a state in the format read by cmd_analyze.
inline void write_state_csv(std::ostream& out, const TwoQubitState& s) {
  detail::configure(out);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      out << (r + c ? "," : "") << "re" << r << c << ",im" << r << c;
  out << '\n';
  detail::write_matrix(out, s.matrix());
  out << '\n';
}

/// Key/value report for one state.
inline int cmd_analyze(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string error;
  const auto m = read_state_csv(in, error);
  if (!m) {
    err << "analyze: " << error << '\n';
    return kUsageError;
  }
  const TwoQubitState s(*m);
  if (const auto defect = validate(s, cfg.tol)) {
    err << "analyze: input state " << defect->describe() << '\n';
    return kUsageError;
  }
  const auto w = concurrence_wootters(s, cfg.tol);
  const auto e = hermitian_eigen(s.matrix(), cfg.tol);
  const CPPoint pt{purity(s), w.concurrence};
  const MemsCurve curve;

  detail::configure(out);
  out << "quantity,values\n";
  out << "purity," << pt.purity << '\n';
  out << "concurrence," << pt.concurrence << '\n';
  out << "mu," << w.mu[0] << ',' << w.mu[1] << ',' << w.mu[2] << ',' << w.mu[3] << '\n';
  out << "eigenvalues," << e.values[0] << ',' << e.values[1] << ',' << e.values[2] << ','
      << e.values[3] << '\n';
  out << "reduced_a,";
  detail::write_matrix(out, partial_trace(s, Subsystem::B));
  out << "\nreduced_b,";
  detail::write_matrix(out, partial_trace(s, Subsystem::A));
  out << "\nreduced_distance_a," << reduced_distance_from_mixed(s, Subsystem::A) << '\n';
  out << "reduced_distance_b," << reduced_distance_from_mixed(s, Subsystem::B) << '\n';
  out << "region," << to_string(classify(pt, curve, detail::region_tol(cfg))) << '\n';
  return kOk;
}

/// Named states for piping into analyze.
inline int cmd_state(const std::string& name, double param, std::ostream& out, std::ostream& err) {
  try {
    if (name == "singlet") write_state_csv(out, singlet());
    else if (name == "phi-plus") write_state_csv(out, phi_plus());
    else if (name == "mixed") write_state_csv(out, maximally_mixed());
    else if (name == "werner") write_state_csv(out, werner(param));
    else if (name == "mems") write_state_csv(out, mems(param));
    else {
      err << "state: unknown state '" << name << "'\n";
      return kUsageError;
    }
  } catch (const std::exception& e) {
    err << "state: " << e.what() << '\n';
    return kUsageError;
  }
  return kOk;
}

/// Writes `content` to `path` through a temporary sibling and a rename.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cpdiag::cli
