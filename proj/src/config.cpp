#include "bloch/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bloch/errors.hpp"

namespace bloch {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': '" + value + "' is not a number");
  }
  if (pos != value.size() || !std::isfinite(v))
    throw config_error("key '" + key + "': '" + value + "' is not a finite number");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': '" + value + "' is not an integer");
  }
  if (pos != value.size())
    throw config_error("key '" + key + "': '" + value + "' is not an integer");
  return v;
}

}  // namespace

std::map<std::string, std::string> parse_ini(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw config_error("line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw config_error("line " + std::to_string(lineno) + ": key outside any section");
    const std::string full = section + "." + key;
    if (kv.count(full))
      throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + full + "'");
    kv[full] = value;
  }
  return kv;
}

RunConfig run_config_from_ini(const std::map<std::string, std::string>& kv) {
  static const std::set<std::string> known = {
      "envelope.shape", "envelope.peak", "envelope.center", "envelope.width",
      "envelope.area",  "detuning.mode", "detuning.value",  "window.t0",
      "window.tf",      "relax.gamma01_pop", "relax.gamma10_pop",
      "relax.gamma01_shift", "relax.gamma01_deph", "run.method", "run.output",
      "run.format",     "run.grid",      "run.tol"};
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw config_error("unknown config key '" + k + "'");

  auto get = [&kv](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };

  RunConfig rc;
  if (const auto* v = get("window.t0")) rc.drive.t0 = parse_double("window.t0", *v);
  if (const auto* v = get("window.tf")) rc.drive.tf = parse_double("window.tf", *v);

  PulseEnvelope env = PulseEnvelope::constant(0.0);
  std::string shape = "constant";
  if (const auto* v = get("envelope.shape")) shape = *v;
  if (shape == "constant") {
    env.shape = PulseShape::constant;
  } else if (shape == "gaussian") {
    env.shape = PulseShape::gaussian;
  } else if (shape == "sin_squared") {
    env.shape = PulseShape::sin_squared;
  } else if (shape == "sampled") {
    throw config_error("sampled envelopes are a library-level feature; "
                       "config files support constant, gaussian, sin_squared");
  } else {
    throw config_error("unknown envelope.shape '" + shape + "'");
  }
  if (const auto* v = get("envelope.peak")) env.peak = parse_double("envelope.peak", *v);
  if (const auto* v = get("envelope.center")) env.center = parse_double("envelope.center", *v);
  if (const auto* v = get("envelope.width")) env.width = parse_double("envelope.width", *v);
  rc.drive.envelope = env;

  if (const auto* v = get("detuning.mode")) {
    if (*v == "constant")
      rc.drive.detuning_mode = DetuningMode::constant;
    else if (*v == "proportional")
      rc.drive.detuning_mode = DetuningMode::proportional;
    else
      throw config_error("unknown detuning.mode '" + *v + "'");
  }
  if (const auto* v = get("detuning.value"))
    rc.drive.detuning_peak = parse_double("detuning.value", *v);

  rc.drive.validate();
  if (const auto* v = get("envelope.area")) {
    const double area = parse_double("envelope.area", *v);
    if (!(area >= 0.0)) throw config_error("envelope.area must be >= 0");
    rc.drive = with_pulse_area(rc.drive, area);
  }

  for (const char* k : {"relax.gamma01_pop", "relax.gamma10_pop",
                        "relax.gamma01_shift", "relax.gamma01_deph"}) {
    if (const auto* v = get(k)) {
      rc.has_relax = true;
      const double rate = parse_double(k, *v);
      if (!(rate >= 0.0)) throw config_error(std::string("key '") + k + "' must be >= 0");
      if (std::string(k) == "relax.gamma01_pop") rc.relax.gamma01_pop = rate;
      if (std::string(k) == "relax.gamma10_pop") rc.relax.gamma10_pop = rate;
      if (std::string(k) == "relax.gamma01_shift") rc.relax.gamma01_shift = rate;
      if (std::string(k) == "relax.gamma01_deph") rc.relax.gamma01_deph = rate;
    }
  }

  if (const auto* v = get("run.method")) {
    if (*v == "reference") rc.method = Method::reference;
    else if (*v == "magnus1") rc.method = Method::magnus1;
    else if (*v == "magnus3") rc.method = Method::magnus3;
    else if (*v == "weinorman") rc.method = Method::weinorman;
    else if (*v == "fframe") rc.method = Method::fframe;
    else throw config_error("unknown run.method '" + *v + "'");
  }
  if (const auto* v = get("run.output")) rc.output_path = *v;
  if (const auto* v = get("run.format")) {
    if (*v == "csv") rc.format = OutputFormat::csv;
    else if (*v == "json") rc.format = OutputFormat::json;
    else throw config_error("unknown run.format '" + *v + "'");
  }
  if (const auto* v = get("run.grid")) {
    rc.grid = parse_int("run.grid", *v);
    if (rc.grid < 2) throw config_error("run.grid must be >= 2");
  }
  if (const auto* v = get("run.tol")) {
    rc.tol = parse_double("run.tol", *v);
    if (!(rc.tol > 0.0)) throw config_error("run.tol must be > 0");
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  return run_config_from_ini(parse_ini(in));
}

const char* method_name(Method m) {
  switch (m) {
    case Method::reference: return "reference";
    case Method::magnus1: return "magnus1";
    case Method::magnus3: return "magnus3";
    case Method::weinorman: return "weinorman";
    case Method::fframe: return "fframe";
  }
  return "?";
}

}  // namespace bloch
