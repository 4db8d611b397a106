#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pdc/spectral_model.hpp"

namespace pdc {

// Text matrix format: `key = value` header lines (format, then per axis unit, center,
// origin, step, n), a line `end_header`, then one comma-separated row per signal bin.
// JSA rows hold re,im pairs; JSI rows hold reals. Values are written with 17
// significant digits, so a write/read cycle is exact.

void write_jsa(std::ostream& out, const JointSpectralAmplitude& jsa);
void write_jsi(std::ostream& out, const JointSpectralIntensity& jsi);
JointSpectralAmplitude read_jsa(std::string_view text);
JointSpectralIntensity read_jsi(std::string_view text);

void save_jsa(const std::filesystem::path& path, const JointSpectralAmplitude& jsa);
void save_jsi(const std::filesystem::path& path, const JointSpectralIntensity& jsi);
JointSpectralAmplitude load_jsa(const std::filesystem::path& path);
JointSpectralIntensity load_jsi(const std::filesystem::path& path);

/// Column CSV with a header row; all columns must have equal length.
void write_columns_csv(std::ostream& out, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns);
void save_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& columns);

}  // namespace pdc
