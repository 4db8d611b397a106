#pragma once

#include <numbers>

// Unit conventions used across the toolkit:
//   angular frequency  rad/fs
//   time               fs for envelopes, ps for time tags
//   wavelength         nm
//   chirp              fs^2, quadratic spectral phase exp(i C nu^2)
namespace pdc::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double ln2 = std::numbers::ln2;

inline constexpr double c_m_per_s = 299792458.0;
inline constexpr double c_nm_per_fs = 299.792458;
inline constexpr double c_mm_per_ps = 0.299792458;

/// Intensity-FWHM of a transform-limited Gaussian pulse times its FWHM bandwidth (2 ln2 / pi).
inline constexpr double gaussian_tbp = 2.0 * std::numbers::ln2 / std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Carrier angular frequency (rad/fs) of a wavelength in nm.
constexpr double angular_frequency_of_wavelength(double wavelength_nm) {
    return two_pi * c_nm_per_fs / wavelength_nm;
}

}  // namespace pdc::units
