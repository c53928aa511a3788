#include "morphcomp/config_file.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "morphcomp/error.hpp"

namespace morph {
namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
  return v;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ArgumentError(std::string(key) + ": not a number: '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ArgumentError(std::string(key) + ": not a nonnegative integer: '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ArgumentError(std::string(key) + ": expected true or false");
}

Binner to_binner(std::string_view key, std::string_view v) {
  std::istringstream in{std::string(v)};
  std::string lo, hi, n;
  if (!(in >> lo >> hi >> n) || (in >> std::ws, !in.eof())) {
    throw ArgumentError(std::string(key) + ": expected 'low high bins'");
  }
  return Binner(to_double(key, lo), to_double(key, hi), to_uint(key, n));
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void apply_rotator_setting(rotator::Config& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "f_max") c.f_max = to_double(key, value);
  else if (key == "f_min") c.f_min = to_double(key, value);
  else if (key == "theta_dot_target") c.theta_dot_target = to_double(key, value);
  else if (key == "mass") c.mass = to_double(key, value);
  else if (key == "length") c.length = to_double(key, value);
  else if (key == "gravity") c.gravity = to_double(key, value);
  else if (key == "friction") c.friction = to_double(key, value);
  else if (key == "eta") c.eta = to_double(key, value);
  else if (key == "beta") c.beta = to_double(key, value);
  else if (key == "steps") c.steps = to_uint(key, value);
  else if (key == "control_dt") c.control_dt = to_double(key, value);
  else if (key == "substeps") c.substeps = to_uint(key, value);
  else if (key == "theta0") c.theta0 = to_double(key, value);
  else if (key == "theta_dot0") c.theta_dot0 = to_double(key, value);
  else if (key == "record_noisy_sensor") c.record_noisy_sensor = to_bool(key, value);
  else if (key == "sensor_bins") c.sensor_bins = to_binner(key, value);
  else if (key == "action_bins") c.action_bins = to_binner(key, value);
  else if (key == "seed") c.seed = to_uint(key, value);
  else throw ArgumentError("unknown configuration key '" + std::string(key) + "'");
}

rotator::Config read_rotator_config(std::istream& in) {
  rotator::Config c;
  std::string line;
  std::size_t lineno = 0;
  bool versioned = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = trim(line);
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = trim(v.substr(0, hash));
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected 'key = value'");
    const auto key = trim(v.substr(0, eq));
    const auto value = trim(v.substr(eq + 1));
    if (key == "format_version") {
      if (value != std::to_string(kConfigFormatVersion)) {
        throw ParseError(lineno, "unsupported format_version " + std::string(value));
      }
      versioned = true;
      continue;
    }
    if (!versioned) throw ParseError(lineno, "format_version must come first");
    try {
      apply_rotator_setting(c, key, value);
    } catch (const ArgumentError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!versioned) throw ParseError(0, "missing format_version");
  return c;
}

void write_rotator_config(std::ostream& out, const rotator::Config& c) {
  const auto binner = [](const Binner& b) {
    return num(b.low) + " " + num(b.high) + " " + std::to_string(b.bins);
  };
  out << "# morphcomp rotator configuration\n"
      << "format_version = " << kConfigFormatVersion << '\n'
      << "f_max = " << num(c.f_max) << '\n'
      << "f_min = " << num(c.f_min) << '\n'
      << "theta_dot_target = " << num(c.theta_dot_target) << '\n'
      << "mass = " << num(c.mass) << '\n'
      << "length = " << num(c.length) << '\n'
      << "gravity = " << num(c.gravity) << '\n'
      << "friction = " << num(c.friction) << '\n'
      << "eta = " << num(c.eta) << '\n'
      << "beta = " << num(c.beta) << '\n'
      << "steps = " << c.steps << '\n'
      << "control_dt = " << num(c.control_dt) << '\n'
      << "substeps = " << c.substeps << '\n'
      << "theta0 = " << num(c.theta0) << '\n'
      << "theta_dot0 = " << num(c.theta_dot0) << '\n'
      << "record_noisy_sensor = " << (c.record_noisy_sensor ? "true" : "false") << '\n'
      << "sensor_bins = " << binner(c.sensor_bins) << '\n'
      << "action_bins = " << binner(c.action_bins) << '\n'
      << "seed = " << c.seed << '\n';
}

}  // namespace morph
