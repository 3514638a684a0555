#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "bloch/dissipation.hpp"
#include "bloch/drive.hpp"

namespace bloch {

// Flat INI-style run configuration consumed by the command-line tool.
//
// Sections and keys:
//   [envelope] shape (constant|gaussian|sin_squared), peak, center, width,
//              area (optional: rescales peak to hit this total area)
//   [detuning] mode (constant|proportional), value
//   [window]   t0, tf
//   [relax]    gamma01_pop, gamma10_pop, gamma01_shift, gamma01_deph
//   [run]      method (reference|magnus1|magnus3|weinorman|fframe),
//              output (path; empty = stdout), format (csv|json),
//              grid (sample count), tol
// Unknown sections or keys are rejected.

enum class Method { reference, magnus1, magnus3, weinorman, fframe };
enum class OutputFormat { csv, json };

struct RunConfig {
  DriveConfig drive;
  RelaxationRates relax;
  bool has_relax = false;
  Method method = Method::reference;
  std::string output_path;  // empty -> stdout
  OutputFormat format = OutputFormat::csv;
  int grid = 201;
  double tol = 1e-10;
};

// Parses "section.key" -> value pairs. Throws config_error with the line
// number on malformed input.
std::map<std::string, std::string> parse_ini(std::istream& in);

// Loads and validates a full run configuration.
RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_ini(const std::map<std::string, std::string>& kv);

const char* method_name(Method m);

}  // namespace bloch
