#pragma once

// Versioned `key = value` text format for rotator configurations.
//
//   # comment
//   format_version = 1
//   eta = 0.25
//   sensor_bins = 0 8 30
//
// Keys not present keep their defaults. Unknown keys are rejected.

#include <iosfwd>
#include <string_view>

#include "morphcomp/rotator.hpp"

namespace morph {

inline constexpr int kConfigFormatVersion = 1;

/// Sets one field from its text form; throws ArgumentError for unknown keys
/// or unparsable values.
void apply_rotator_setting(rotator::Config& config, std::string_view key, std::string_view value);

rotator::Config read_rotator_config(std::istream& in);

/// Writes every field with round-trip precision.
void write_rotator_config(std::ostream& out, const rotator::Config& config);

}  // namespace morph
