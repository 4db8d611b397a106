#pragma once

#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Core>

#include "pdc/exec.hpp"

namespace pdc {

using ComplexMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class AxisUnit { angular_frequency, wavelength_nm };

/// Uniform sample axis: value(i) = origin + i * step. For angular-frequency axes the
/// values are detunings (rad/fs) from `center`, the absolute carrier.
struct Axis {
    AxisUnit unit = AxisUnit::angular_frequency;
    double origin = 0.0;
    double step = 1.0;
    std::size_t size = 0;
    double center = 0.0;

    double operator[](std::size_t i) const { return origin + static_cast<double>(i) * step; }
    double span() const { return step * static_cast<double>(size); }
};

/// Signal x idler angular-frequency grid. Points sit at detunings (i - n/2) * span/n,
/// so index n/2 is the carrier.
struct FrequencyGrid {
    double center_signal = 0.0;  // rad/fs
    double center_idler = 0.0;   // rad/fs
    double span_signal = 0.0;    // rad/fs
    double span_idler = 0.0;     // rad/fs
    std::size_t n_signal = 512;
    std::size_t n_idler = 512;

    void validate() const;
    double step_signal() const { return span_signal / static_cast<double>(n_signal); }
    double step_idler() const { return span_idler / static_cast<double>(n_idler); }
    Axis signal_axis() const;
    Axis idler_axis() const;
};

struct PumpSpec {
    double center_wavelength_nm = 772.5;
    double fwhm_nm = 3.09;
    double chirp_fs2 = 0.0;  // C in exp(i C nu^2), nu in rad/fs

    void validate() const;
    /// Intensity FWHM in angular frequency (rad/fs).
    double angular_fwhm() const;
    double center_angular_frequency() const;
};

enum class PhasematchProfile { gaussian, sinc };

/// Phasematching function of the cross-ridge coordinate
///   u = sqrt(2) * (cos(theta) dw_s + sin(theta) dw_i),
/// theta = `orientation_angle`. The sqrt(2) puts u on the same footing as the pump's
/// sum detuning dw_s + dw_i, so equal FWHMs at theta = 3pi/4 give a separable state.
struct PhasematchSpec {
    double fwhm = 0.0;  // intensity FWHM along u, rad/fs
    double orientation_angle = 0.75 * std::numbers::pi;
    PhasematchProfile profile = PhasematchProfile::gaussian;

    void validate() const;
};

struct SourceSpec {
    PumpSpec pump;
    PhasematchSpec phasematch;
    FrequencyGrid grid;

    /// Checks component invariants and that both spans cover at least 4 FWHM.
    void validate() const;
};

/// Degenerate grid centred on half the pump frequency, spanning +-4 FWHM of the broader
/// of pump and phasematching on both axes.
FrequencyGrid default_grid(const PumpSpec& pump, const PhasematchSpec& pm, std::size_t n = 512);

/// SourceSpec with pump, phasematching FWHM = ratio * pump FWHM and the default grid.
SourceSpec make_source(const PumpSpec& pump, double pm_to_pump_ratio,
                       double orientation_angle = 0.75 * std::numbers::pi,
                       PhasematchProfile profile = PhasematchProfile::gaussian,
                       std::size_t n = 512);

struct JointSpectralAmplitude {
    FrequencyGrid grid;
    ComplexMatrix values;  // rows: signal, columns: idler
};

/// Joint intensity on arbitrary uniform axes. Model JSIs integrate to one over the axis
/// measure; coincidence histograms are normalized to unit sum.
struct JointSpectralIntensity {
    Axis signal;
    Axis idler;
    RealMatrix values;
};

/// c * dlambda / lambda^2, in GHz.
double wavelength_bandwidth_to_frequency(double delta_lambda_nm, double center_lambda_nm);

/// Gaussian pump amplitude of the sum detuning with phase exp(i C nu^2).
class PumpEnvelope {
public:
    PumpEnvelope(const PumpSpec& pump, const FrequencyGrid& grid);

    /// `sum_detuning` is dw_s + dw_i relative to the grid centres.
    std::complex<double> operator()(double sum_detuning) const;
    /// Pump detuning nu corresponding to a grid sum detuning.
    double pump_detuning(double sum_detuning) const { return sum_detuning + carrier_offset_; }

private:
    double amplitude_coefficient_;  // 2 ln2 / fwhm^2
    double chirp_;
    double carrier_offset_;  // (w_s0 + w_i0) - w_p
};

PumpEnvelope build_pump_envelope(const PumpSpec& pump, const FrequencyGrid& grid);

/// Phasematching amplitude at cross-ridge coordinate u.
double phasematching_amplitude(const PhasematchSpec& pm, double u);

/// Half-maximum argument of sinc^2, sinc(x) = sin(x)/x.
inline constexpr double sinc_half_max_x = 1.3915573782515103;

ComplexMatrix build_phasematching(const PhasematchSpec& pm, const FrequencyGrid& grid,
                                  Exec exec = Exec::parallel);

/// Pump x phasematching on the grid, L2-normalized with the grid measure.
/// Throws DegenerateError when the product vanishes everywhere.
JointSpectralAmplitude build_jsa(const SourceSpec& src, Exec exec = Exec::parallel);

JointSpectralIntensity jsa_to_jsi(const JointSpectralAmplitude& jsa);

}  // namespace pdc
