#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pdc/spectral_model.hpp"

namespace pdc {

/// Normalized Schmidt coefficients, descending, summing to one.
struct SchmidtSpectrum {
    std::vector<double> coefficients;
};

enum class Photon { signal, idler };

/// One-dimensional spectrum on explicit axis samples.
struct Spectrum1D {
    AxisUnit unit = AxisUnit::angular_frequency;
    std::vector<double> axis;
    std::vector<double> intensity;
    double center = 0.0;  // absolute carrier for detuning axes
};

/// Coefficients below this fraction of the largest are dropped as round-off.
inline constexpr double schmidt_truncation = 1e-12;

/// Singular values of the grid-weighted amplitude matrix, returned as sigma_i^2 / sum sigma^2.
/// Throws InputError on non-finite entries.
SchmidtSpectrum schmidt_decompose(const JointSpectralAmplitude& jsa);
SchmidtSpectrum schmidt_decompose(const ComplexMatrix& amplitude);

/// K = 1 / sum lambda_i^2.
double schmidt_number(const SchmidtSpectrum& s);
/// P = 1 / K.
double purity(const SchmidtSpectrum& s);

/// Purity of sqrt(jsi) with flat phase. Throws InputError on negative or non-finite
/// entries; see clamp_and_normalize for measured data.
double upper_bound_purity_from_jsi(const JointSpectralIntensity& jsi);

/// Measured-data cleanup: negatives set to zero, then renormalized to unit integral.
JointSpectralIntensity clamp_and_normalize(JointSpectralIntensity jsi);

/// Integral over the conjugate axis, normalized to integrate to one along `axis`.
Spectrum1D marginal_spectrum(const JointSpectralIntensity& jsi, Photon axis);

/// Slice along `axis` with the conjugate photon's bin fixed at `fixed_index`,
/// normalized to integrate to one. Throws DegenerateError for an all-zero slice.
Spectrum1D conditioned_cut(const JointSpectralIntensity& jsi, Photon axis, std::size_t fixed_index);

/// Complex slice of the amplitude along `axis` at conjugate bin `fixed_index` (not renormalized).
std::vector<std::complex<double>> conditioned_amplitude(const JointSpectralAmplitude& jsa,
                                                        Photon axis, std::size_t fixed_index);

/// Conjugate-axis bin of maximum marginal intensity: the default cut position.
std::size_t default_cut_index(const JointSpectralIntensity& jsi, Photon axis);

/// K = 1 / (g2 - 1) for the unheralded g2(0); domain 1 < g2 <= 2.
double schmidt_number_from_g2(double g2);

}  // namespace pdc
