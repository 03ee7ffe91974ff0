#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slowlight/fields.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/units.hpp"

namespace slowlight {

/// Everything one run needs, parseable from a flat key = value config with
/// mandatory unit suffixes on dimensioned keys.
struct Scenario {
  MediumParams medium;
  double target_vg = 0.0; // > 0: calibrate coupling_collective at resolve time
  FieldMap field;

  double beam_waist = 1e-3; // 2 mm beam diameter
  double beam_power = 1e-6; // W

  int grid_points = 0;    // 0 = auto
  double grid_window = 0; // 0 = auto
  int n_steps = 0;        // 0 = auto-converged

  double camera_distance = 2.0;

  double pulse_sigma = 10e-3;
  int pulse_points = 8192;

  double delta_span = 0.0; // rad/s; 0 = 5x the EIT halfwidth
  int delta_points = 161;

  std::vector<double> sweep_rabi; // rad/s; empty = built-in ladder
  int sweep_repeats = 1;
  double sweep_noise_camera = 0.0; // m

  std::uint64_t seed = 0;
  std::string out_dir = "out";

  bool operator==(const Scenario&) const = default;

  /// Medium with the coupling resolved: calibrated when target_vg is set,
  /// taken verbatim otherwise.
  MediumParams resolved_medium() const {
    if (target_vg > 0.0) return calibrate_to_vg(medium, target_vg);
    if (medium.coupling_collective <= 0.0)
      throw std::invalid_argument(
          "scenario needs coupling_collective or target_vg");
    return medium;
  }
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

} // namespace detail

inline std::string serialize_scenario(const Scenario& s) {
  using detail::format_double;
  std::ostringstream out;
  auto put = [&](const char* key, double v, units::Dimension dim) {
    out << key << " = " << format_double(v);
    const std::string unit = units::canonical_unit(dim);
    if (!unit.empty()) out << " " << unit;
    out << "\n";
  };
  using D = units::Dimension;
  put("wavelength", s.medium.lambda_s, D::length);
  put("cell_length", s.medium.cell_length, D::length);
  put("rabi_control", s.medium.rabi_control, D::frequency);
  if (s.medium.coupling_collective > 0.0)
    put("coupling_collective", s.medium.coupling_collective, D::frequency);
  if (s.target_vg > 0.0) put("target_vg", s.target_vg, D::velocity);
  put("gamma_e", s.medium.gamma_e, D::frequency);
  put("gamma_c", s.medium.gamma_c, D::frequency);
  put("delta_one_photon", s.medium.delta_one_photon, D::frequency);
  put("g_factor", s.medium.g_factor, D::bare);
  put("bias", s.field.b0, D::magnetic_field);
  put("gradient", s.field.grad_x, D::field_gradient);
  put("beam_waist", s.beam_waist, D::length);
  put("beam_power", s.beam_power, D::power);
  put("grid_points", double(s.grid_points), D::bare);
  if (s.grid_window > 0.0) put("grid_window", s.grid_window, D::length);
  put("n_steps", double(s.n_steps), D::bare);
  put("camera_distance", s.camera_distance, D::length);
  put("pulse_sigma", s.pulse_sigma, D::time);
  put("pulse_points", double(s.pulse_points), D::bare);
  if (s.delta_span > 0.0) put("delta_span", s.delta_span, D::frequency);
  put("delta_points", double(s.delta_points), D::bare);
  if (!s.sweep_rabi.empty()) {
    out << "sweep_rabi = ";
    for (std::size_t i = 0; i < s.sweep_rabi.size(); ++i) {
      if (i) out << ", ";
      out << format_double(s.sweep_rabi[i]) << " rad/s";
    }
    out << "\n";
  }
  put("sweep_repeats", double(s.sweep_repeats), D::bare);
  if (s.sweep_noise_camera > 0.0)
    put("sweep_noise_camera", s.sweep_noise_camera, D::length);
  out << "seed = " << s.seed << "\n";
  out << "out_dir = " << s.out_dir << "\n";
  return out.str();
}

inline Scenario parse_scenario(const std::string& text) {
  using D = units::Dimension;
  Scenario s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));

    auto num = [&](D dim) { return units::parse_quantity(value, dim); };
    auto integer = [&](double v) {
      if (v < 0 || v != std::floor(v))
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": '" + key + "' must be a whole number");
      return int(v);
    };

    if (key == "wavelength") s.medium.lambda_s = num(D::length);
    else if (key == "cell_length") s.medium.cell_length = num(D::length);
    else if (key == "rabi_control") s.medium.rabi_control = num(D::frequency);
    else if (key == "coupling_collective")
      s.medium.coupling_collective = num(D::frequency);
    else if (key == "target_vg") s.target_vg = num(D::velocity);
    else if (key == "gamma_e") s.medium.gamma_e = num(D::frequency);
    else if (key == "gamma_c") s.medium.gamma_c = num(D::frequency);
    else if (key == "delta_one_photon")
      s.medium.delta_one_photon = num(D::frequency);
    else if (key == "g_factor") s.medium.g_factor = num(D::bare);
    else if (key == "bias") s.field.b0 = num(D::magnetic_field);
    else if (key == "gradient") s.field.grad_x = num(D::field_gradient);
    else if (key == "beam_waist") s.beam_waist = num(D::length);
    else if (key == "beam_power") s.beam_power = num(D::power);
    else if (key == "grid_points") s.grid_points = integer(num(D::bare));
    else if (key == "grid_window") s.grid_window = num(D::length);
    else if (key == "n_steps") s.n_steps = integer(num(D::bare));
    else if (key == "camera_distance") s.camera_distance = num(D::length);
    else if (key == "pulse_sigma") s.pulse_sigma = num(D::time);
    else if (key == "pulse_points") s.pulse_points = integer(num(D::bare));
    else if (key == "delta_span") s.delta_span = num(D::frequency);
    else if (key == "delta_points") s.delta_points = integer(num(D::bare));
    else if (key == "sweep_repeats") s.sweep_repeats = integer(num(D::bare));
    else if (key == "sweep_noise_camera")
      s.sweep_noise_camera = num(D::length);
    else if (key == "sweep_rabi") {
      s.sweep_rabi.clear();
      std::size_t pos = 0;
      while (pos <= value.size()) {
        const auto comma = value.find(',', pos);
        const std::string item =
            value.substr(pos, comma == std::string::npos ? std::string::npos
                                                         : comma - pos);
        if (!detail::trim(item).empty())
          s.sweep_rabi.push_back(units::parse_quantity(item, D::frequency));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (s.sweep_rabi.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty sweep_rabi list");
    } else if (key == "seed") {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": bad seed");
      s.seed = v;
    } else if (key == "out_dir") {
      s.out_dir = value;
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

} // namespace slowlight
