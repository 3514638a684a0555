#pragma once

#include <stdexcept>
#include <string>

namespace bloch {

// Base class for all library-specific failures. Plain precondition
// violations (bad index, negative rate) use std::invalid_argument instead.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration (files, keys, drive definitions).
class config_error : public error {
 public:
  using error::error;
};

// Numerical integration could not proceed (step-size underflow, iteration cap).
class solver_error : public error {
 public:
  using error::error;
};

// Evaluation requested outside the domain of a sampled envelope.
class out_of_domain_error : public error {
 public:
  using error::error;
};

// Frame construction with zero drive and zero detuning.
class degenerate_frame_error : public error {
 public:
  using error::error;
};

// Operation requires a drive mode other than the configured one.
class mode_mismatch_error : public error {
 public:
  using error::error;
};

// Density matrix fails trace or positivity requirements.
class invalid_state_error : public error {
 public:
  using error::error;
};

// Coherence vector outside the unit ball beyond tolerance.
class unphysical_state_error : public error {
 public:
  using error::error;
};

}  // namespace bloch
