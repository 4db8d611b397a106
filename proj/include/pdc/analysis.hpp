#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdc/decomposition.hpp"
#include "pdc/exec.hpp"
#include "pdc/spectral_model.hpp"

namespace pdc {

inline constexpr double default_sweep_max_fs2 = 40000.0;
inline constexpr std::size_t default_sweep_points = 201;
/// Largest sweep end purity_bounds will expand to when the measured ratio is off the curve.
inline constexpr double sweep_expansion_limit_fs2 = 640000.0;

/// Fused-silica coefficient for the exp(i C nu^2) convention, fs^2 per mm.
inline constexpr double silica_fs2_per_mm = 15616.0 / 810.0;

struct ChirpSweepCurve {
    std::vector<double> chirp_fs2;  // ascending, starts at 0
    std::vector<double> purities;
    std::vector<double> tbp_ratios;  // TBP / TBP(C = 0)
    double reference_tbp = 0.0;      // flat-phase TBP of the source
};

struct PurityBounds {
    double upper = 0.0;
    double lower = 0.0;
    double inferred_chirp_fs2 = 0.0;  // magnitude; the sign is not recoverable
    double tbp_ratio = 0.0;
    double expected_tbp = 0.0;   // flat-phase TBP of the measured JSI
    double sweep_max_fs2 = 0.0;  // end of the sweep the inversion used
    ChirpSweepCurve curve;       // that sweep
};

/// `count` equally spaced chirps on [0, max].
std::vector<double> chirp_grid(double max_fs2, std::size_t count = default_sweep_points);

/// TBP of `src` with its own pump chirp: Gaussian-fit duration of the conditioned cut
/// transformed with its complex phase, times the marginal FWHM along the same axis.
double chirped_tbp(const SourceSpec& src, Photon axis = Photon::signal);

/// Ratio chirped_tbp(src with chirp C) / chirped_tbp(src with chirp 0), without decomposition.
double tbp_ratio_at(const SourceSpec& src, double chirp_fs2, Photon axis = Photon::signal);

/// DomainError if exp(i C nu^2) is undersampled by the grid over the pump's support.
void check_chirp_sampling(const SourceSpec& src, double chirp_fs2);

/// Points are independent and evaluated in parallel; results are ordered by C.
ChirpSweepCurve chirp_sweep(const SourceSpec& src, std::span<const double> chirps_fs2,
                            Exec exec = Exec::parallel);

/// |C| where the linearly interpolated curve reaches `measured_ratio`. InversionError when
/// the ratio is outside the curve's range or the curve is not monotone.
double infer_chirp(const ChirpSweepCurve& curve, double measured_ratio);

/// upper: flat-phase purity of the measured JSI. lower: purity of `src` with the pump chirp
/// inferred from measured_tbp / expected TBP of the measured JSI. The sweep starts on
/// [0, default_sweep_max_fs2] and doubles its end until it covers the ratio.
/// InconsistencyError when the measured TBP is below the expected one.
PurityBounds purity_bounds(const JointSpectralIntensity& measured_jsi, double measured_tbp, const SourceSpec& src,
                           Photon axis = Photon::signal);

/// Same, with the ratio given directly.
PurityBounds purity_bounds_from_ratio(const JointSpectralIntensity& measured_jsi, double tbp_ratio,
                                      const SourceSpec& src);

/// Length of fused silica in metres.
double chirp_to_silica_length(double chirp_fs2, double fs2_per_mm = silica_fs2_per_mm);

double schmidt_number_of(const SourceSpec& src);

/// Phasematching orientation in [lo, hi] at which the source's Schmidt number equals
/// `target`, by bisection. K must be monotone on the bracket; InversionError if the
/// target is not bracketed.
double tune_orientation_for_schmidt_number(SourceSpec src, double target, double lo, double hi,
                                           double tolerance = 1e-9);

}  // namespace pdc
