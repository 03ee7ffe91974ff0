#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "slowlight/constants.hpp"

namespace slowlight::units {

enum class Dimension {
  length,
  frequency, // stored as angular frequency, rad/s
  magnetic_field,
  field_gradient,
  velocity,
  time,
  power,
  bare
};

inline const std::map<std::string, double, std::less<>>& length_factors() {
  static const std::map<std::string, double, std::less<>> f = {
      {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
  return f;
}

inline const std::map<std::string, double, std::less<>>& field_factors() {
  // gauss = 1e-4 tesla
  static const std::map<std::string, double, std::less<>> f = {
      {"T", 1.0},  {"mT", 1e-3}, {"uT", 1e-6},
      {"G", 1e-4}, {"mG", 1e-7}, {"uG", 1e-10}};
  return f;
}

inline const std::map<std::string, double, std::less<>>& frequency_factors() {
  // plain-frequency suffixes convert to angular units
  static const std::map<std::string, double, std::less<>> f = {
      {"rad/s", 1.0},
      {"Hz", constants::two_pi},
      {"kHz", constants::two_pi * 1e3},
      {"MHz", constants::two_pi * 1e6},
      {"GHz", constants::two_pi * 1e9}};
  return f;
}

inline const std::map<std::string, double, std::less<>>& time_factors() {
  static const std::map<std::string, double, std::less<>> f = {
      {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};
  return f;
}

inline const std::map<std::string, double, std::less<>>& power_factors() {
  static const std::map<std::string, double, std::less<>> f = {
      {"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}};
  return f;
}

inline double gradient_factor(std::string_view unit) {
  const auto slash = unit.find('/');
  if (slash == std::string_view::npos || slash + 1 >= unit.size())
    throw std::invalid_argument("gradient unit must look like uG/mm or T/m");
  const auto num = field_factors().find(unit.substr(0, slash));
  const auto den = length_factors().find(unit.substr(slash + 1));
  if (num == field_factors().end() || den == length_factors().end())
    throw std::invalid_argument("unknown gradient unit '" + std::string(unit) + "'");
  return num->second / den->second;
}

inline double unit_factor(Dimension dim, std::string_view unit) {
  auto lookup = [&](const auto& table) {
    auto it = table.find(unit);
    if (it == table.end())
      throw std::invalid_argument("unknown unit '" + std::string(unit) + "'");
    return it->second;
  };
  switch (dim) {
    case Dimension::length:
      return lookup(length_factors());
    case Dimension::frequency:
      return lookup(frequency_factors());
    case Dimension::magnetic_field:
      return lookup(field_factors());
    case Dimension::time:
      return lookup(time_factors());
    case Dimension::power:
      return lookup(power_factors());
    case Dimension::velocity: {
      if (unit == "m/s") return 1.0;
      if (unit == "km/s") return 1e3;
      throw std::invalid_argument("unknown velocity unit '" + std::string(unit) + "'");
    }
    case Dimension::field_gradient:
      return gradient_factor(unit);
    case Dimension::bare:
      throw std::invalid_argument("bare quantity takes no unit");
  }
  throw std::logic_error("unhandled dimension");
}

/// Canonical unit written by the serializer for each dimension.
inline std::string canonical_unit(Dimension dim) {
  switch (dim) {
    case Dimension::length: return "m";
    case Dimension::frequency: return "rad/s";
    case Dimension::magnetic_field: return "T";
    case Dimension::field_gradient: return "T/m";
    case Dimension::velocity: return "m/s";
    case Dimension::time: return "s";
    case Dimension::power: return "W";
    case Dimension::bare: return "";
  }
  return "";
}

/// Parses "value [unit]"; the unit is mandatory for dimensioned quantities.
inline double parse_quantity(std::string_view text, Dimension dim) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = text.size();
  while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
  text = text.substr(i, j - i);
  if (text.empty()) throw std::invalid_argument("empty quantity");

  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc())
    throw std::invalid_argument("bad number in '" + std::string(text) + "'");

  std::string_view rest(ptr, std::size_t(end - ptr));
  while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front())))
    rest.remove_prefix(1);

  if (dim == Dimension::bare) {
    if (!rest.empty())
      throw std::invalid_argument("unexpected unit on bare quantity '" +
                                  std::string(text) + "'");
    return value;
  }
  if (rest.empty())
    throw std::invalid_argument("unit required for '" + std::string(text) + "'");
  if (dim == Dimension::field_gradient) return value * gradient_factor(rest);
  return value * unit_factor(dim, rest);
}

} // namespace slowlight::units
