#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pdc/events.hpp"
#include "pdc/exec.hpp"
#include "pdc/spectral_model.hpp"
#include "pdc/time_domain.hpp"
#include "pdc/tof.hpp"

namespace pdc {

/// Delay range the default sweep limit is solved for.
inline constexpr double nominal_delay_range_ps = 12.8;

/// Incidence angle at which the default 12 mm, n = 1.45 plate gives nominal_delay_range_ps.
double default_alpha_max_rad();

/// Rotating glass-plate delay. The sweep phase is the plate angle at the trigger.
struct PlateSpec {
    double thickness_mm = 12.0;
    double refractive_index = 1.45;
    double rotation_hz = 50.0;
    double alpha_max_rad = default_alpha_max_rad();
    double rotation_jitter_rms = 0.0;  // relative, per rotation period
    double trigger_phase_rad = 0.0;

    void validate() const;
    double rotation_period_s() const { return 1.0 / rotation_hz; }
};

/// d / cos(arcsin(sin(alpha) / n)), mm.
double optical_path_mm(double alpha_rad, const PlateSpec& plate);

/// Double-pass delay 2 (d_o(alpha) - d) / c0, ps.
double delay_of_angle(double alpha_rad, const PlateSpec& plate);

/// Closed-form inverse of delay_of_angle on [0, pi/2), returns |alpha|.
double angle_for_delay(double delay_ps, const PlateSpec& plate);

/// delay_of_angle(alpha_max).
double delay_range_ps(const PlateSpec& plate);

struct SweepPosition {
    int sweep = 0;          // quarter of the rotation, 0..3
    double alpha_rad = 0.0;  // |incidence angle|
    bool rising = true;     // |alpha| increasing through the sweep
    bool in_range = true;   // alpha_rad <= alpha_max
};

/// Plate position at time t (s) after the trigger. The rotation is uniform; the incidence
/// angle folds into four monotone sweeps per rotation: rising in quarters 0 and 2,
/// falling in quarters 1 and 3. DomainError unless 0 <= t < rotation period.
SweepPosition angle_of_time(double t_s, const PlateSpec& plate);

/// Same mapping from the rotation phase (rad, any value).
SweepPosition angle_of_phase(double phase_rad, const PlateSpec& plate);

enum class GateMode { coherent_overlap, intensity_convolution };

struct GateSpec {
    double fwhm_fs = 230.0;
    double repetition_mhz = 80.165;
    GateMode mode = GateMode::coherent_overlap;

    void validate() const;
    double pulse_period_ps() const { return 1e6 / repetition_mhz; }
};

/// Conversion probability of the sum-frequency gate against a photon amplitude as a
/// function of gate delay tau (fs), normalized to a peak of one:
///   coherent_overlap:      |integral p(t - tau) psi(t) dt|^2
///   intensity_convolution: integral |p(t - tau)|^2 |psi(t)|^2 dt
/// with p a transform-limited Gaussian of the gate FWHM. A gate narrower than the
/// photon's sample step reduces to the interpolated photon intensity.
class GateResponse {
public:
    GateResponse(PhotonAmplitude photon, const GateSpec& gate);

    double operator()(double tau_fs) const { return raw(tau_fs) / norm_; }
    double raw(double tau_fs) const;

    /// Responses at many delays; the OpenMP and serial paths agree bitwise.
    std::vector<double> sample(std::span<const double> taus_fs, Exec exec = Exec::parallel) const;

    /// Delay interval outside which the response is zero to double precision.
    double support_min_fs() const;
    double support_max_fs() const;

private:
    PhotonAmplitude photon_;
    GateSpec gate_;
    std::vector<double> intensity_;
    double kernel_coefficient_;
    double kernel_reach_fs_;
    bool delta_like_;
    double norm_ = 1.0;
};

double gate_response(const PhotonAmplitude& photon, const GateSpec& gate, double tau_fs);

/// Uniformly tabulated response with linear interpolation; zero outside the table.
struct ResponseTable {
    double tau0_fs = 0.0;
    double step_fs = 1.0;
    std::vector<double> values;

    double operator()(double tau_fs) const;
};

ResponseTable tabulate_response(const GateResponse& response, double step_fs,
                                Exec exec = Exec::parallel);

struct AcquisitionParams {
    double peak_rate_hz = 1e6;        // converted clicks/s with every pulse at the response peak
    double background_rate_hz = 0.0;  // flat accidental rate on the converted channel
    double duration_s = 1.0;
    std::optional<double> delay_offset_fs;  // delay at which the photon centre sits; default mid-range
    std::uint64_t seed = 1;
    double table_step_fs = 1.0;
    /// Optional angle-dependent transmission factor in [0, 1] (e.g. Fresnel losses).
    std::function<double(double alpha_rad)> transmission;
};

/// Timing bookkeeping with the integer arithmetic behind the sampling density.
struct TimingBudget {
    std::int64_t repetition_hz = 0;
    std::int64_t sweeps_per_second = 0;
    std::int64_t pulses_per_sweep = 0;      // floor(rep / sweeps)
    std::int64_t pulses_per_sweep_rem = 0;  // remainder of that division
    double pulses_per_bin = 0.0;            // over a uniform-in-time split of a sweep
    double bin_spacing_fs = 0.0;
};

TimingBudget timing_budget(const GateSpec& gate, const PlateSpec& plate, std::size_t n_bins);

struct AcquisitionReport {
    bool saturated = false;  // some pulse had click probability > 0.1 (dead time not modelled)
    double max_click_probability = 0.0;
    std::uint64_t rotations = 0;
    std::uint64_t converted_clicks = 0;
    double delay_offset_fs = 0.0;
    TimingBudget timing;
};

struct SimulationResult {
    EventStream stream;
    AcquisitionReport report;
};

inline constexpr double saturation_probability = 0.1;

/// Per laser pulse: p = peak_prob * response(delay - offset) * transmission + background_prob,
/// with Bernoulli clicks drawn by thinning. One trigger per rotation, rotation periods
/// jittered by plate.rotation_jitter_rms. Deterministic for a fixed seed.
SimulationResult simulate_acquisition(const PhotonAmplitude& photon, const GateSpec& gate,
                                      const PlateSpec& plate, const AcquisitionParams& params);

struct CoincidenceParams {
    double pair_probability = 0.01;         // per laser pulse
    double accidental_probability = 0.0;    // per pulse and per detector
    std::uint64_t n_pulses = 1000000;
    double repetition_mhz = 80.165;
    std::uint64_t seed = 1;
    std::uint8_t signal_channel = channel::herald;
    std::uint8_t idler_channel = channel::unconverted;
};

/// Photon pairs with wavelengths drawn from a wavelength-axis JSI (inverse CDF over bins,
/// uniform within a bin), mapped to arrival times through the two spectrometers.
/// Accidentals are uniform in wavelength over each axis. DomainError if an arrival
/// falls outside its laser period.
EventStream simulate_coincidences(const JointSpectralIntensity& jsi, const TofSpectrometerSpec& spec_signal,
                                  const TofSpectrometerSpec& spec_idler, const CoincidenceParams& params);

}  // namespace pdc
