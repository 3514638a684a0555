#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bloch/config.hpp"
#include "bloch/dissipation.hpp"
#include "bloch/drive.hpp"
#include "bloch/errors.hpp"
#include "bloch/logic.hpp"
#include "bloch/observables.hpp"
#include "bloch/propagators.hpp"
#include "bloch/weinorman.hpp"

namespace {

using bloch::Method;
using bloch::OutputFormat;
using bloch::RunConfig;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0 == 0.0 ? 0.0 : v);
  return buf;
}

// Density entries straight from the vector components. Unlike the strict
// converter this tolerates the integrator-level norm slop of trajectories.
struct RhoRow {
  double rho00, rho11, re01, im01;
};
RhoRow rho_row(const bloch::Vec3& g) {
  return {0.5 * (1.0 + g[2]), 0.5 * (1.0 - g[2]), 0.5 * g[0], -0.5 * g[1]};
}

// Stream to the configured path, or stdout when the path is empty.
struct Sink {
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw bloch::config_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file.is_open() ? file : std::cout; }
  std::ofstream file;
};

void write_state_rows(std::ostream& os, OutputFormat format,
                      const bloch::Trajectory& traj) {
  if (format == OutputFormat::csv) {
    os << "t,G1,G2,G3,rho00,rho11,re01,im01\n";
    for (const auto& p : traj) {
      const RhoRow rho = rho_row(p.g);
      os << fmt(p.t) << ',' << fmt(p.g[0]) << ',' << fmt(p.g[1]) << ','
         << fmt(p.g[2]) << ',' << fmt(rho.rho00) << ',' << fmt(rho.rho11) << ','
         << fmt(rho.re01) << ',' << fmt(rho.im01) << '\n';
    }
    return;
  }
  json rows = json::array();
  for (const auto& p : traj) {
    const RhoRow rho = rho_row(p.g);
    rows.push_back({{"t", p.t},
                    {"G1", p.g[0]},
                    {"G2", p.g[1]},
                    {"G3", p.g[2]},
                    {"rho00", rho.rho00},
                    {"rho11", rho.rho11},
                    {"re01", rho.re01},
                    {"im01", rho.im01}});
  }
  os << rows.dump(2) << '\n';
}

void require_closed(const RunConfig& rc, const char* what) {
  if (rc.has_relax && !rc.relax.zero())
    throw bloch::config_error(std::string(what) +
                              " supports closed dynamics only; remove [relax]");
}

// The truncated expansion is advertised for small detuning only; a shared
// pulse shape is exempt because the generator then commutes with itself.
void warn_large_detuning(const RunConfig& rc) {
  if (rc.drive.detuning_mode == bloch::DetuningMode::constant &&
      rc.drive.envelope.peak > 0.0 &&
      std::abs(rc.drive.detuning_peak) > 0.5 * rc.drive.envelope.peak)
    std::cerr << "warning: |Delta0/Omega0| > 0.5; truncated-order accuracy "
                 "degrades this far from resonance\n";
}

bloch::Trajectory run_method(const RunConfig& rc) {
  const bloch::Vec3 ground{0.0, 0.0, 1.0};
  switch (rc.method) {
    case Method::reference:
      if (rc.has_relax && !rc.relax.zero())
        return bloch::integrate_dissipative(rc.drive, rc.relax, ground, rc.tol, rc.grid);
      return bloch::integrate_reference(rc.drive, ground, rc.tol, rc.grid);
    case Method::magnus1:
    case Method::magnus3: {
      require_closed(rc, "magnus propagation");
      warn_large_detuning(rc);
      const int order = rc.method == Method::magnus1 ? 1 : 3;
      return bloch::magnus_trajectory(rc.drive, ground, order, rc.grid);
    }
    case Method::weinorman: {
      require_closed(rc, "factorized propagation");
      const auto wn = bloch::wn_solve(rc.drive, rc.grid, rc.tol);
      bloch::Trajectory traj(wn.samples.size());
      for (std::size_t i = 0; i < wn.samples.size(); ++i)
        traj[i] = {wn.samples[i].t, bloch::wn_propagator(wn.samples[i].y) * ground};
      return traj;
    }
    case Method::fframe:
      require_closed(rc, "aligned-frame propagation");
      return bloch::f_frame_trajectory(rc.drive, ground, rc.grid);
  }
  throw bloch::config_error("unreachable method");
}

int cmd_simulate(const std::string& cfg_path) {
  const RunConfig rc = bloch::load_run_config(cfg_path);
  const auto traj = run_method(rc);
  Sink sink(rc.output_path);
  write_state_rows(sink.out(), rc.format, traj);
  return 0;
}

int cmd_compare(const std::string& cfg_path) {
  const RunConfig rc = bloch::load_run_config(cfg_path);
  require_closed(rc, "method comparison");
  warn_large_detuning(rc);
  const bloch::Vec3 ground{0.0, 0.0, 1.0};
  const auto ref = bloch::integrate_reference(rc.drive, ground, rc.tol, rc.grid);

  struct Dev {
    const char* name;
    double max_dev = 0.0;
    double end_dev = 0.0;
  };
  std::vector<Dev> devs = {{"magnus1"}, {"magnus3"}};
  for (int oi = 0; oi < 2; ++oi) {
    const auto traj =
        bloch::magnus_trajectory(rc.drive, ground, oi == 0 ? 1 : 3, rc.grid);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double d = bloch::max_abs(traj[i].g - ref[i].g);
      devs[oi].max_dev = std::max(devs[oi].max_dev, d);
      if (i + 1 == traj.size()) devs[oi].end_dev = d;
    }
  }

  Sink sink(rc.output_path);
  if (rc.format == OutputFormat::csv) {
    sink.out() << "method,max_deviation,endpoint_deviation\n";
    for (const auto& d : devs)
      sink.out() << d.name << ',' << fmt(d.max_dev) << ',' << fmt(d.end_dev) << '\n';
  } else {
    json j;
    j["samples"] = rc.grid;
    j["window"] = {rc.drive.t0, rc.drive.tf};
    for (const auto& d : devs)
      j[d.name] = {{"max_deviation", d.max_dev}, {"endpoint_deviation", d.end_dev}};
    sink.out() << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_constants(const std::string& cfg_path) {
  const RunConfig rc = bloch::load_run_config(cfg_path);
  require_closed(rc, "conserved-length monitoring");
  const bloch::Vec3 ground{0.0, 0.0, 1.0};
  const auto traj = bloch::integrate_reference(rc.drive, ground, rc.tol, rc.grid);

  // Transform with the peak-value frame; under a shared pulse shape these are
  // the pointwise coefficients, anywhere else the monitor simply reports the
  // resulting drift.
  bloch::FrameCoefficients fc{1.0, 1.0, 0.0};
  if (rc.drive.envelope.peak != 0.0 || rc.drive.detuning_peak != 0.0)
    fc = bloch::f_frame_coeffs(rc.drive);
  bloch::Trajectory ftraj(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i)
    ftraj[i] = {traj[i].t, bloch::to_f_frame(traj[i].g, fc)};
  const auto report = bloch::conservation_monitor(ftraj);

  Sink sink(rc.output_path);
  if (rc.format == OutputFormat::csv) {
    sink.out() << "t,c1,c23,total\n";
    for (const auto& s : report.samples)
      sink.out() << fmt(s.t) << ',' << fmt(s.c1) << ',' << fmt(s.c23) << ','
                 << fmt(s.total) << '\n';
  } else {
    json j;
    json rows = json::array();
    for (const auto& s : report.samples)
      rows.push_back({{"t", s.t}, {"c1", s.c1}, {"c23", s.c23}, {"total", s.total}});
    j["samples"] = rows;
    j["drift"] = {{"c1", report.c1_drift},
                  {"c23", report.c23_drift},
                  {"total", report.total_drift}};
    sink.out() << j.dump(2) << '\n';
  }
  std::cerr << "c1_drift=" << fmt(report.c1_drift)
            << " c23_drift=" << fmt(report.c23_drift)
            << " total_drift=" << fmt(report.total_drift) << '\n';
  return 0;
}

int cmd_weinorman(const std::string& cfg_path) {
  const RunConfig rc = bloch::load_run_config(cfg_path);
  require_closed(rc, "factorized propagation");

  auto write = [&rc](const std::vector<bloch::WnSample>& samples) {
    Sink sink(rc.output_path);
    if (rc.format == OutputFormat::csv) {
      sink.out() << "t,Y1,Y2,Y3\n";
      for (const auto& s : samples)
        sink.out() << fmt(s.t) << ',' << fmt(s.y.y1) << ',' << fmt(s.y.y2) << ','
                   << fmt(s.y.y3) << '\n';
    } else {
      json rows = json::array();
      for (const auto& s : samples)
        rows.push_back({{"t", s.t}, {"Y1", s.y.y1}, {"Y2", s.y.y2}, {"Y3", s.y.y3}});
      sink.out() << rows.dump(2) << '\n';
    }
  };

  try {
    const auto wn = bloch::wn_solve(rc.drive, rc.grid, rc.tol);
    write(wn.samples);
  } catch (const bloch::singularity_error& e) {
    write(e.partial());
    std::cerr << "error: " << e.what() << " (partial trajectory written)\n";
    return 3;
  }
  return 0;
}

// Shared setup for the logic subcommands: default resonance pulse over [0, 1]
// rescaled to the gate area, overridable from a config file.
struct LogicSetup {
  bloch::LogicConfig logic;
  bloch::DriveConfig drive;
  bloch::RelaxationRates rates;
};

LogicSetup make_logic_setup(double area, const std::string& cfg_path) {
  LogicSetup s;
  s.logic.gate_pulse_area = area;
  s.logic.validate();
  if (cfg_path.empty()) {
    s.drive.envelope = bloch::PulseEnvelope::sin_squared(1.0, 0.5, 1.0);
    s.drive.t0 = 0.0;
    s.drive.tf = 1.0;
  } else {
    const RunConfig rc = bloch::load_run_config(cfg_path);
    s.drive = rc.drive;
    s.rates = rc.relax;
    if (bloch::pulse_area(s.drive, s.drive.tf) <= 0.0)
      throw bloch::config_error("logic gate needs a drive with nonzero pulse area");
  }
  s.drive = bloch::with_pulse_area(s.drive, area);
  return s;
}

int cmd_logic_cnot(double area, const std::string& cfg_path) {
  const LogicSetup s = make_logic_setup(area, cfg_path);
  std::printf("pulse initial | coherence final | rho00    rho11    C\n");
  for (int pulse = 0; pulse <= 1; ++pulse)
    for (int initial = 0; initial <= 1; ++initial) {
      const auto out =
          bloch::cnot_evaluate(pulse, initial, s.logic, s.drive, s.rates);
      std::printf("%5d %7d | %9d %5d | %.6f %.6f %.6f\n", pulse, initial,
                  out.coherence_bit, out.final_bit, out.raw.rho00, out.raw.rho11,
                  out.raw.coherence);
    }
  std::printf("all 4 rows match\n");
  return 0;
}

int cmd_logic_parity(const std::string& bits_str, double area,
                     const std::string& cfg_path) {
  if (bits_str.empty() || bits_str.size() > 64)
    throw bloch::config_error("parity takes a bit string of 1 to 64 bits");
  std::vector<int> bits;
  for (char c : bits_str) {
    if (c != '0' && c != '1')
      throw bloch::config_error("parity bit string may contain only 0 and 1");
    bits.push_back(c - '0');
  }
  const LogicSetup s = make_logic_setup(area, cfg_path);
  const auto [parity, machine] = bloch::parity_check(bits, s.logic, s.drive, s.rates);
  std::printf("PS input | NS output | rho00    rho11    C\n");
  for (const auto& row : machine.transcript)
    std::printf("%2d %5d | %2d %6d | %.6f %.6f %.6f\n", row.present_state,
                row.input, row.next_state, row.output, row.raw.rho00,
                row.raw.rho11, row.raw.coherence);
  std::printf("parity=%d\n", parity);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driven two-level dynamics in the coherence-vector picture"};
  app.require_subcommand(1);

  std::string cfg_path;
  auto* sim = app.add_subcommand("simulate", "write a state trajectory");
  sim->add_option("config", cfg_path, "run configuration file")->required();
  auto* cmp = app.add_subcommand("compare", "deviations of magnus1/magnus3 from the reference");
  cmp->add_option("config", cfg_path, "run configuration file")->required();
  auto* cst = app.add_subcommand("constants", "conserved-length drift report");
  cst->add_option("config", cfg_path, "run configuration file")->required();
  auto* wn = app.add_subcommand("weinorman", "factorization parameter trajectory");
  wn->add_option("config", cfg_path, "run configuration file")->required();

  auto* logic = app.add_subcommand("logic", "threshold logic machines");
  logic->require_subcommand(1);
  double area = 2.0;
  std::string logic_cfg;
  auto* cnot = logic->add_subcommand("cnot", "run the 4 controlled-NOT rows");
  cnot->add_option("--area", area, "gate pulse area in radians (default 2.0)");
  cnot->add_option("--config", logic_cfg, "drive/relaxation configuration file");
  std::string bits;
  auto* parity = logic->add_subcommand("parity", "run the serial parity checker");
  parity->add_option("bits", bits, "bit string, 1 to 64 characters of 0/1")->required();
  parity->add_option("--area", area, "gate pulse area in radians (default 2.0)");
  parity->add_option("--config", logic_cfg, "drive/relaxation configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cfg_path);
    if (cmp->parsed()) return cmd_compare(cfg_path);
    if (cst->parsed()) return cmd_constants(cfg_path);
    if (wn->parsed()) return cmd_weinorman(cfg_path);
    if (cnot->parsed()) return cmd_logic_cnot(area, logic_cfg);
    if (parity->parsed()) return cmd_logic_parity(bits, area, logic_cfg);
  } catch (const bloch::gate_failure& e) {
    std::cerr << "logic failure: " << e.what() << '\n';
    return 4;
  } catch (const bloch::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const bloch::mode_mismatch_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const bloch::out_of_domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const bloch::solver_error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
