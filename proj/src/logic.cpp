#include "bloch/logic.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bloch {

void LogicConfig::validate() const {
  if (!(population_threshold > 0.5) || !(population_threshold <= 1.0))
    throw std::invalid_argument("population threshold must lie in (0.5, 1]");
  if (!(coherence_threshold > 0.0) || !(coherence_threshold <= 1.0))
    throw std::invalid_argument("coherence threshold must lie in (0, 1]");
  if (!(gate_pulse_area > 0.0) || !std::isfinite(gate_pulse_area))
    throw std::invalid_argument("gate pulse area must be positive");
}

LogicResult readout(const DensityMatrix2& rho, const LogicConfig& cfg) {
  cfg.validate();
  LogicResult r;
  r.rho00 = rho.rho00;
  r.rho11 = rho.rho11;
  r.coherence = 2.0 * std::abs(rho.rho01);
  r.coherence_bit = r.coherence >= cfg.coherence_threshold ? 1 : 0;
  if (rho.rho11 >= cfg.population_threshold) {
    r.final_bit = 1;
  } else if (rho.rho00 >= cfg.population_threshold) {
    r.final_bit = 0;
  } else {
    r.indeterminate = true;
  }
  return r;
}

gate_failure::gate_failure(const std::string& what, LogicResult raw)
    : error(what), raw_(raw) {}

void cnot_expected(int pulse, int initial, int& coherence_bit, int& final_bit) {
  coherence_bit = pulse;
  final_bit = pulse ? 1 - initial : initial;
}

void parity_expected(int present_state, int input, int& next_state, int& output) {
  next_state = present_state ^ input;
  output = present_state;
}

namespace {

void require_bit(int b, const char* name) {
  if (b != 0 && b != 1)
    throw std::invalid_argument(std::string(name) + " must be 0 or 1");
}

std::string describe(const LogicResult& r) {
  std::ostringstream os;
  os << "rho00=" << r.rho00 << " rho11=" << r.rho11 << " C=" << r.coherence;
  return os.str();
}

// One gate run: prepare |initial>, apply the (possibly gated-off) drive,
// read out the final state.
LogicResult run_gate(int pulse_on, int initial_state, const LogicConfig& cfg,
                     const DriveConfig& on_drive, const RelaxationRates& rates,
                     double tol) {
  const DriveConfig drive = pulse_on ? on_drive : without_pulse(on_drive);
  const Vec3 g0 = initial_state ? Vec3{0.0, 0.0, -1.0} : Vec3{0.0, 0.0, 1.0};
  const Trajectory traj = integrate_dissipative(drive, rates, g0, tol, 2);
  return readout(bloch_to_density(traj.back().g), cfg);
}

}  // namespace

GateOutcome cnot_evaluate(int pulse_on, int initial_state, const LogicConfig& cfg,
                          const DriveConfig& on_drive, const RelaxationRates& rates,
                          double tol) {
  cfg.validate();
  require_bit(pulse_on, "pulse_on");
  require_bit(initial_state, "initial_state");
  const double area = pulse_area(on_drive, on_drive.tf);
  if (std::abs(area - cfg.gate_pulse_area) > 1e-9 * std::max(1.0, cfg.gate_pulse_area))
    throw std::invalid_argument("drive pulse area does not match the gate area");

  const LogicResult r = run_gate(pulse_on, initial_state, cfg, on_drive, rates, tol);
  int want_coh = 0, want_fin = 0;
  cnot_expected(pulse_on, initial_state, want_coh, want_fin);
  if (r.indeterminate)
    throw gate_failure("cnot readout indeterminate: " + describe(r), r);
  if (r.coherence_bit != want_coh || r.final_bit != want_fin) {
    std::ostringstream os;
    os << "cnot row (" << pulse_on << "," << initial_state << ") realized ("
       << r.coherence_bit << "," << r.final_bit << ") expected (" << want_coh
       << "," << want_fin << "); " << describe(r);
    throw gate_failure(os.str(), r);
  }
  return {r.coherence_bit, r.final_bit, r};
}

std::pair<int, ParityMachineState> parity_check(std::span<const int> bits,
                                                const LogicConfig& cfg,
                                                const DriveConfig& on_drive,
                                                const RelaxationRates& rates,
                                                double tol) {
  cfg.validate();
  if (bits.empty()) throw std::invalid_argument("parity_check needs at least one bit");
  for (int b : bits) require_bit(b, "input bit");
  const double area = pulse_area(on_drive, on_drive.tf);
  if (std::abs(area - cfg.gate_pulse_area) > 1e-9 * std::max(1.0, cfg.gate_pulse_area))
    throw std::invalid_argument("drive pulse area does not match the gate area");

  // The machine revisits at most four (pulse, input) settings; each setting
  // is one fixed dynamics run.
  std::array<LogicResult, 4> memo;
  std::array<bool, 4> have{};

  ParityMachineState machine;
  machine.state = 0;
  for (int b : bits) {
    const int key = machine.state * 2 + b;
    if (!have[key]) {
      memo[key] = run_gate(machine.state, b, cfg, on_drive, rates, tol);
      have[key] = true;
    }
    const LogicResult& r = memo[key];
    if (r.indeterminate)
      throw gate_failure("parity readout indeterminate: " + describe(r), r);
    int want_ns = 0, want_out = 0;
    parity_expected(machine.state, b, want_ns, want_out);
    if (r.final_bit != want_ns || r.coherence_bit != want_out) {
      std::ostringstream os;
      os << "parity row (" << machine.state << "," << b << ") realized ("
         << r.final_bit << "," << r.coherence_bit << ") expected (" << want_ns
         << "," << want_out << "); " << describe(r);
      throw gate_failure(os.str(), r);
    }
    machine.transcript.push_back({machine.state, b, r.final_bit, r.coherence_bit, r});
    machine.state = r.final_bit;
  }
  return {machine.state, machine};
}

}  // namespace bloch
