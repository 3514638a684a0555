#pragma once

#include <span>
#include <vector>

#include "bloch/dissipation.hpp"
#include "bloch/drive.hpp"
#include "bloch/errors.hpp"
#include "bloch/observables.hpp"

namespace bloch {

// Threshold readout of the two-level dynamics and the two classical machines
// built on it: a controlled-NOT gate and a serial parity checker.
//
// Logic assignments: a population >= population_threshold in state |m> reads
// as bit m; the transverse coherence magnitude C = sqrt(g1^2 + g2^2)
// (= 2 |rho01|) reads as 1 when >= coherence_threshold. A readout where
// neither population clears its threshold is indeterminate.

struct LogicConfig {
  double population_threshold = 0.6;  // in (0.5, 1]
  double coherence_threshold = 0.5;   // in (0, 1]
  double gate_pulse_area = 2.0;       // radians

  // Throws std::invalid_argument when a threshold leaves its range.
  void validate() const;
};

struct LogicResult {
  int final_bit = 0;  // meaningful only when !indeterminate
  int coherence_bit = 0;
  bool indeterminate = false;
  // Raw values for auditing.
  double rho00 = 0.0;
  double rho11 = 0.0;
  double coherence = 0.0;
};

LogicResult readout(const DensityMatrix2& rho, const LogicConfig& cfg);

// Raised when a gate run cannot reproduce its truth-table row: the readout
// was indeterminate or a realized bit deviates from the expected one.
class gate_failure : public error {
 public:
  gate_failure(const std::string& what, LogicResult raw);
  const LogicResult& raw() const { return raw_; }

 private:
  LogicResult raw_;
};

// Expected truth-table rows.
//   CNOT: (pulse, initial) -> (coherence, final):
//     (0,0)->(0,0)  (0,1)->(0,1)  (1,0)->(1,1)  (1,1)->(1,0)
void cnot_expected(int pulse, int initial, int& coherence_bit, int& final_bit);
//   Parity: (present_state, input) -> (next_state, output):
//     (0,0)->(0,0)  (0,1)->(1,0)  (1,0)->(1,1)  (1,1)->(0,1)
void parity_expected(int present_state, int input, int& next_state, int& output);

struct GateOutcome {
  int coherence_bit = 0;
  int final_bit = 0;
  LogicResult raw;
};

// Runs one CNOT row: the control bit gates the pulse, the target bit selects
// the prepared basis state. on_drive must carry pulse area equal to
// cfg.gate_pulse_area (checked); pulse_on = 0 runs with the envelope off.
// Throws gate_failure when the realized row deviates from the truth table.
GateOutcome cnot_evaluate(int pulse_on, int initial_state, const LogicConfig& cfg,
                          const DriveConfig& on_drive,
                          const RelaxationRates& rates = {}, double tol = 1e-10);

struct TranscriptRow {
  int present_state = 0;
  int input = 0;
  int next_state = 0;
  int output = 0;
  LogicResult raw;
};

struct ParityMachineState {
  int state = 0;  // 0 = even, 1 = odd
  std::vector<TranscriptRow> transcript;
};

// Serial parity checker: the present state gates the pulse, each input bit is
// prepared as a basis state, the next state is read from the populations and
// the output from the coherence bit. Returns the final parity (XOR of the
// inputs when the dynamics is clean) and the full transcript. Throws
// gate_failure when a transition row deviates from the transition table.
std::pair<int, ParityMachineState> parity_check(std::span<const int> bits,
                                                const LogicConfig& cfg,
                                                const DriveConfig& on_drive,
                                                const RelaxationRates& rates = {},
                                                double tol = 1e-10);

}  // namespace bloch
