#pragma once

#include <cstddef>
#include <string>

#include "pdc/spectral_model.hpp"

namespace pdc::fixtures {

// Pump and phasematching parameters of the two states, and the phasematching orientations
// at which their Schmidt numbers are 1.08 and 2.10. The angles were found with
// tune_orientation_for_schmidt_number on the 512-point default grid and are re-checked
// by the test suite.
inline constexpr double pump_center_nm = 772.5;

inline constexpr double decorrelated_pump_fwhm_nm = 3.09;
inline constexpr double decorrelated_pm_ratio = 1.0;
inline constexpr double decorrelated_schmidt_number = 1.08;
inline constexpr double decorrelated_orientation_rad = 1.7409412042671228;

inline constexpr double correlated_pump_fwhm_nm = 0.78;
inline constexpr double correlated_pm_ratio = 3.25;
inline constexpr double correlated_schmidt_number = 2.10;
inline constexpr double correlated_orientation_rad = 1.7909791063724858;

/// Bracket the orientation tuner searches; K is monotone on it for both states.
inline constexpr double tuning_lo_rad = 0.5 * std::numbers::pi;
inline constexpr double tuning_hi_rad = 0.75 * std::numbers::pi;

SourceSpec decorrelated_source(std::size_t n = 512);
SourceSpec correlated_source(std::size_t n = 512);

/// "decorrelated" or "correlated"; ConfigError otherwise.
SourceSpec named_source(const std::string& name, std::size_t n = 512);

/// One-line description for run summaries.
std::string provenance(const std::string& name);

}  // namespace pdc::fixtures
