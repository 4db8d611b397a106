#include "pdc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "pdc/errors.hpp"
#include "pdc/time_domain.hpp"
#include "pdc/units.hpp"

namespace pdc {

std::vector<double> chirp_grid(double max_fs2, std::size_t count) {
    if (!(max_fs2 > 0.0) || count < 2) throw DomainError("chirp grid needs a positive end and >= 2 points");
    std::vector<double> c(count);
    for (std::size_t k = 0; k < count; ++k)
        c[k] = max_fs2 * static_cast<double>(k) / static_cast<double>(count - 1);
    return c;
}

void check_chirp_sampling(const SourceSpec& src, double chirp_fs2) {
    // Phase advance between neighbouring grid points at three pump FWHM from the carrier.
    const double step = std::max(src.grid.step_signal(), src.grid.step_idler());
    const double advance = 2.0 * std::abs(chirp_fs2) * 3.0 * src.pump.angular_fwhm() * step;
    if (advance > 0.5 * units::pi)
        throw DomainError("pump chirp " + std::to_string(chirp_fs2) +
                          " fs^2 is undersampled by the frequency grid; use more points");
}

namespace {

double tbp_of_jsa(const JointSpectralAmplitude& jsa, Photon axis) {
    const JointSpectralIntensity jsi = jsa_to_jsi(jsa);
    const std::size_t idx = default_cut_index(jsi, axis);
    const auto amp = conditioned_amplitude(jsa, axis, idx);
    const Axis a = axis == Photon::signal ? jsa.grid.signal_axis() : jsa.grid.idler_axis();
    std::vector<double> w(a.size);
    for (std::size_t k = 0; k < a.size; ++k) w[k] = a[k];
    const PulseMetrics m = fit_fwhm(envelope_from_amplitude(w, amp));
    return time_bandwidth_product(m.fwhm_fs, spectral_fwhm_thz(marginal_spectrum(jsi, axis)));
}

SourceSpec with_chirp(SourceSpec src, double chirp_fs2) {
    src.pump.chirp_fs2 = chirp_fs2;
    return src;
}

}  // namespace

double chirped_tbp(const SourceSpec& src, Photon axis) {
    check_chirp_sampling(src, src.pump.chirp_fs2);
    return tbp_of_jsa(build_jsa(src, Exec::serial), axis);
}

double tbp_ratio_at(const SourceSpec& src, double chirp_fs2, Photon axis) {
    return chirped_tbp(with_chirp(src, chirp_fs2), axis) / chirped_tbp(with_chirp(src, 0.0), axis);
}

ChirpSweepCurve chirp_sweep(const SourceSpec& src, std::span<const double> chirps_fs2, Exec exec) {
    src.validate();
    if (chirps_fs2.empty() || chirps_fs2.front() != 0.0) throw DomainError("chirp sweep must start at C = 0");
    for (std::size_t k = 1; k < chirps_fs2.size(); ++k)
        if (!(chirps_fs2[k] > chirps_fs2[k - 1])) throw DomainError("chirps must be strictly ascending");
    check_chirp_sampling(src, chirps_fs2.back());

    const auto n = static_cast<std::ptrdiff_t>(chirps_fs2.size());
    std::vector<double> purities(chirps_fs2.size()), tbps(chirps_fs2.size());
    auto point = [&](std::ptrdiff_t k) {
        const auto i = static_cast<std::size_t>(k);
        const JointSpectralAmplitude jsa = build_jsa(with_chirp(src, chirps_fs2[i]), Exec::serial);
        purities[i] = purity(schmidt_decompose(jsa));
        tbps[i] = tbp_of_jsa(jsa, Photon::signal);
    };
    if (exec == Exec::parallel) {
        // Exceptions may not cross the parallel region; rethrow the first one afterwards.
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < n; ++k) {
            try {
                point(k);
            } catch (...) {
#pragma omp critical(pdc_sweep_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k) point(k);
    }

    ChirpSweepCurve curve;
    curve.chirp_fs2.assign(chirps_fs2.begin(), chirps_fs2.end());
    curve.purities = std::move(purities);
    curve.reference_tbp = tbps.front();
    curve.tbp_ratios.resize(tbps.size());
    for (std::size_t k = 0; k < tbps.size(); ++k) curve.tbp_ratios[k] = tbps[k] / curve.reference_tbp;
    return curve;
}

double infer_chirp(const ChirpSweepCurve& curve, double measured_ratio) {
    const auto& c = curve.chirp_fs2;
    const auto& r = curve.tbp_ratios;
    if (c.size() < 2 || r.size() != c.size()) throw InputError("sweep curve needs >= 2 points of equal length");
    for (std::size_t k = 1; k < r.size(); ++k)
        if (r[k] < r[k - 1] - 1e-9 * r[k - 1]) throw InversionError("TBP ratio is not monotone over the sweep");
    if (!(measured_ratio >= r.front() - 1e-12) || measured_ratio > r.back())
        throw InversionError("ratio " + std::to_string(measured_ratio) + " outside the sweep range [" +
                             std::to_string(r.front()) + ", " + std::to_string(r.back()) + "]");
    if (measured_ratio <= r.front()) return c.front();

    const auto hi_it = std::lower_bound(r.begin(), r.end(), measured_ratio);
    const auto k = static_cast<std::size_t>(hi_it - r.begin());
    if (r[k] == measured_ratio) return c[k];
    const auto interp = [&](double x) { return r[k - 1] + (r[k] - r[k - 1]) * (x - c[k - 1]) / (c[k] - c[k - 1]); };
    double lo = c[k - 1], hi = c[k];
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (interp(mid) < measured_ratio ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PurityBounds purity_bounds_from_ratio(const JointSpectralIntensity& measured_jsi, double tbp_ratio,
                                      const SourceSpec& src) {
    src.validate();
    if (!(tbp_ratio >= 1.0))
        throw InconsistencyError("measured TBP below the Fourier limit (ratio " + std::to_string(tbp_ratio) + ")");

    double end = default_sweep_max_fs2;
    while (tbp_ratio_at(src, end) < tbp_ratio) {
        end *= 2.0;
        if (end > sweep_expansion_limit_fs2)
            throw InversionError("ratio " + std::to_string(tbp_ratio) + " not reached below " +
                                 std::to_string(sweep_expansion_limit_fs2) + " fs^2");
    }
    const auto grid = chirp_grid(end);
    const ChirpSweepCurve curve = chirp_sweep(src, grid);

    PurityBounds b;
    b.upper = upper_bound_purity_from_jsi(measured_jsi);
    b.tbp_ratio = tbp_ratio;
    b.sweep_max_fs2 = end;
    b.inferred_chirp_fs2 = infer_chirp(curve, tbp_ratio);
    b.lower = purity(schmidt_decompose(build_jsa(with_chirp(src, b.inferred_chirp_fs2))));
    b.curve = curve;
    return b;
}

PurityBounds purity_bounds(const JointSpectralIntensity& measured_jsi, double measured_tbp, const SourceSpec& src,
                           Photon axis) {
    const double expected = fourier_limit_tbp(measured_jsi, axis);
    if (measured_tbp < expected)
        throw InconsistencyError("measured TBP " + std::to_string(measured_tbp) + " below the flat-phase value " +
                                 std::to_string(expected));
    PurityBounds b = purity_bounds_from_ratio(measured_jsi, measured_tbp / expected, src);
    b.expected_tbp = expected;
    return b;
}

double chirp_to_silica_length(double chirp_fs2, double fs2_per_mm) {
    if (chirp_fs2 < 0.0) throw DomainError("chirp must be non-negative");
    if (!(fs2_per_mm > 0.0)) throw DomainError("silica coefficient must be positive");
    return chirp_fs2 / fs2_per_mm * 1e-3;
}

double schmidt_number_of(const SourceSpec& src) { return schmidt_number(schmidt_decompose(build_jsa(src))); }

double tune_orientation_for_schmidt_number(SourceSpec src, double target, double lo, double hi, double tolerance) {
    auto k_at = [&](double theta) {
        src.phasematch.orientation_angle = theta;
        return schmidt_number_of(src);
    };
    const double k_lo = k_at(lo);
    const double k_hi = k_at(hi);
    if ((target - k_lo) * (target - k_hi) > 0.0)
        throw InversionError("Schmidt number " + std::to_string(target) + " not bracketed by [" +
                             std::to_string(std::min(k_lo, k_hi)) + ", " + std::to_string(std::max(k_lo, k_hi)) +
                             "]");
    const bool increasing = k_hi > k_lo;
    for (int it = 0; it < 200 && hi - lo > tolerance; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((k_at(mid) < target) == increasing ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace pdc
