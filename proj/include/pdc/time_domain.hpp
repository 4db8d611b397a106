#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pdc/decomposition.hpp"

namespace pdc {

struct TemporalEnvelope {
    std::vector<double> time_fs;    // uniform, increasing
    std::vector<double> intensity;  // >= 0
};

/// Complex temporal amplitude on a uniform grid t_k = t0 + k * dt.
struct PhotonAmplitude {
    double t0_fs = 0.0;
    double dt_fs = 1.0;
    std::vector<std::complex<double>> values;

    double time(std::size_t k) const { return t0_fs + static_cast<double>(k) * dt_fs; }
    TemporalEnvelope intensity_envelope() const;
};

struct PulseMetrics {
    double fwhm_fs = 0.0;
    double center_fs = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;
    double residual_rms = 0.0;  // fraction of fitted peak
    double direct_fwhm_fs = 0.0;
    double fwhm_sigma_fs = 0.0;  // from the fit covariance, scaled by the residual variance
    int iterations = 0;
};

struct FitOptions {
    int max_iterations = 200;
    double tolerance = 1e-10;  // relative change of the residual sum of squares
};

inline constexpr std::size_t default_padding = 8;

/// psi(t) = dw / sqrt(2 pi) * sum_k a_k exp(-i w_k t) on a zero-padded FFT grid, so that
/// sum |psi|^2 dt = sum |a|^2 dw. `axis` must be uniform (InputError otherwise).
PhotonAmplitude amplitude_from_spectrum(std::span<const double> axis,
                                        std::span<const std::complex<double>> amplitude,
                                        std::size_t padding = default_padding);

/// Transform of sqrt(cut intensity) with flat phase; the axis must be angular frequency.
TemporalEnvelope envelope_from_spectrum(const Spectrum1D& cut, std::size_t padding = default_padding);

/// Same transform keeping the spectral phase of a complex cut.
TemporalEnvelope envelope_from_amplitude(std::span<const double> axis,
                                         std::span<const std::complex<double>> amplitude,
                                         std::size_t padding = default_padding);

/// Levenberg-Marquardt fit of offset + A exp(-4 ln2 (t - t0)^2 / w^2).
/// Requires at least 8 samples at or above half maximum (InputError otherwise);
/// throws FitError carrying the direct crossing width if the fit does not converge.
PulseMetrics fit_fwhm(const TemporalEnvelope& env, const FitOptions& options = {});

/// Plain product with dtau in fs and dnu in THz.
double time_bandwidth_product(double delta_tau_fs, double delta_nu_thz);

/// Direct FWHM of a spectrum on an angular-frequency axis, in THz of ordinary frequency.
double spectral_fwhm_thz(const Spectrum1D& s);

/// Flat-phase expected TBP: Gaussian-fit duration of the conditioned cut's envelope times
/// the FWHM of the marginal along the same axis. Cut defaults to default_cut_index.
double fourier_limit_tbp(const JointSpectralIntensity& jsi, Photon axis,
                         std::optional<std::size_t> cut_index = std::nullopt);

/// sqrt(measured^2 - gate^2). DomainError when the gate is broader than the measurement.
double deconvolve_gaussian(double fwhm_measured_fs, double fwhm_gate_fs);

/// Transform-limited Gaussian of the given intensity FWHM, `n` samples centred on t = 0.
PhotonAmplitude transform_limited_gaussian(double fwhm_fs, double dt_fs, std::size_t n);

}  // namespace pdc
