#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pdc/events.hpp"
#include "pdc/exec.hpp"
#include "pdc/sampling_sim.hpp"
#include "pdc/spectral_model.hpp"
#include "pdc/time_domain.hpp"
#include "pdc/tof.hpp"

namespace pdc {

struct DroppedClicks {
    std::uint64_t before_first_trigger = 0;
    std::uint64_t beyond_rotation = 0;  // later than one nominal period after the last trigger
    std::uint64_t out_of_sweep = 0;     // plate angle beyond alpha_max

    std::uint64_t total() const { return before_first_trigger + beyond_rotation + out_of_sweep; }
};

/// Clicks folded onto one absolute delay axis [0, delay_range]. Counts are integral but
/// stored as doubles. The sweep is uniform in angle, not in delay, so the time a sweep
/// spends in each bin differs; rates() divides that out.
struct DelayHistogram {
    std::vector<double> delay_fs;  // bin centres
    double bin_width_fs = 0.0;
    std::vector<double> counts;
    std::array<std::vector<double>, 4> sweep_counts;  // per quarter-rotation
    std::vector<double> dwell_s;   // time one sweep spends in each bin
    std::uint64_t exposure_sweeps = 0;
    DroppedClicks dropped;

    double total_counts() const;
    /// counts / (dwell * exposure), clicks per second.
    std::vector<double> rates() const;
};

/// Uses the nominal rotation period of `plate`; trigger_phase_rad sets the sweep phase.
/// InputError when the stream has no trigger record or n_bins < 2.
DelayHistogram reconstruct_waveform(const EventStream& stream, const PlateSpec& plate, std::size_t n_bins = 1000,
                                    std::uint8_t click_channel = channel::converted, Exec exec = Exec::parallel);

struct DelayWaveform {
    std::vector<double> delay_fs;
    std::vector<double> values;
    double baseline = 0.0;

    TemporalEnvelope envelope() const { return {delay_fs, values}; }
};

DelayWaveform rate_waveform(const DelayHistogram& h);

inline constexpr double default_exclusion_halfwidth = 3.0;

/// Baseline = mean of bins farther than exclusion_halfwidth * FWHM from the peak; the
/// result is clamped at zero. BackgroundError unless max > 2 * median and some bins lie
/// outside the exclusion zone.
DelayWaveform subtract_background(const DelayWaveform& w, double exclusion_halfwidth = default_exclusion_halfwidth);
DelayWaveform subtract_background(const DelayHistogram& h, double exclusion_halfwidth = default_exclusion_halfwidth);

struct CoincidenceOptions {
    double window_ps = 1000.0;
    double repetition_mhz = 80.165;
    std::uint8_t signal_channel = channel::herald;
    std::uint8_t idler_channel = channel::unconverted;
};

struct CoincidenceJsi {
    JointSpectralIntensity jsi;  // unit sum over bins
    std::uint64_t pairs = 0;
    std::uint64_t multi_click_cycles = 0;
    std::uint64_t outside_window = 0;
    std::uint64_t outside_axes = 0;
};

/// Per laser cycle, pairs the signal and idler clicks when each channel clicked exactly
/// once and |dt| <= window; arrivals relative to the cycle start map to wavelengths.
/// The axes are wavelength bin centres. DegenerateError when no pair lands in the grid.
CoincidenceJsi build_jsi_from_coincidences(const EventStream& stream, const TofSpectrometerSpec& spec_signal,
                                           const TofSpectrometerSpec& spec_idler, const Axis& signal_bins,
                                           const Axis& idler_bins, const CoincidenceOptions& options = {});

/// (coincidences / heralds) / detector_efficiency; DomainError if the result exceeds one.
double heralding_efficiency(double coincidences, double heralds, double detector_efficiency);

}  // namespace pdc
