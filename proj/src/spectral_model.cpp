#include "pdc/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdc/errors.hpp"
#include "pdc/fft.hpp"
#include "pdc/units.hpp"

namespace pdc {

namespace {

Axis detuning_axis(double center, double span, std::size_t n) {
    Axis a;
    a.unit = AxisUnit::angular_frequency;
    a.step = span / static_cast<double>(n);
    a.origin = -static_cast<double>(n / 2) * a.step;
    a.size = n;
    a.center = center;
    return a;
}

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be finite and positive");
}

}  // namespace

void FrequencyGrid::validate() const {
    for (auto n : {n_signal, n_idler}) {
        if (n < 2 || !fft::is_power_of_two(n))
            throw DomainError("grid point counts must be powers of two >= 2, got " +
                              std::to_string(n));
    }
    check_positive(span_signal, "span_signal");
    check_positive(span_idler, "span_idler");
    if (!std::isfinite(center_signal) || !std::isfinite(center_idler))
        throw DomainError("grid centres must be finite");
}

Axis FrequencyGrid::signal_axis() const { return detuning_axis(center_signal, span_signal, n_signal); }
Axis FrequencyGrid::idler_axis() const { return detuning_axis(center_idler, span_idler, n_idler); }

void PumpSpec::validate() const {
    check_positive(center_wavelength_nm, "pump center wavelength");
    check_positive(fwhm_nm, "pump fwhm");
    if (!std::isfinite(chirp_fs2)) throw DomainError("pump chirp must be finite");
}

double PumpSpec::angular_fwhm() const {
    return units::two_pi * wavelength_bandwidth_to_frequency(fwhm_nm, center_wavelength_nm) * 1e-6;
}

double PumpSpec::center_angular_frequency() const {
    return units::angular_frequency_of_wavelength(center_wavelength_nm);
}

void PhasematchSpec::validate() const {
    check_positive(fwhm, "phasematching fwhm");
    if (!(orientation_angle > 0.0 && orientation_angle < units::pi))
        throw DomainError("phasematching orientation must lie in (0, pi)");
}

void SourceSpec::validate() const {
    pump.validate();
    phasematch.validate();
    grid.validate();
    const double widest = 4.0 * std::max(pump.angular_fwhm(), phasematch.fwhm);
    if (grid.span_signal < widest || grid.span_idler < widest)
        throw DomainError("grid spans must cover at least 4x the pump and phasematching FWHM");
}

FrequencyGrid default_grid(const PumpSpec& pump, const PhasematchSpec& pm, std::size_t n) {
    FrequencyGrid g;
    const double wp = pump.center_angular_frequency();
    g.center_signal = 0.5 * wp;
    g.center_idler = 0.5 * wp;
    g.span_signal = g.span_idler = 8.0 * std::max(pump.angular_fwhm(), pm.fwhm);
    g.n_signal = g.n_idler = n;
    return g;
}

SourceSpec make_source(const PumpSpec& pump, double pm_to_pump_ratio, double orientation_angle,
                       PhasematchProfile profile, std::size_t n) {
    SourceSpec src;
    src.pump = pump;
    src.phasematch.fwhm = pm_to_pump_ratio * pump.angular_fwhm();
    src.phasematch.orientation_angle = orientation_angle;
    src.phasematch.profile = profile;
    src.grid = default_grid(src.pump, src.phasematch, n);
    return src;
}

double wavelength_bandwidth_to_frequency(double delta_lambda_nm, double center_lambda_nm) {
    if (!(center_lambda_nm > 0.0)) throw DomainError("center wavelength must be positive");
    if (delta_lambda_nm < 0.0) throw DomainError("wavelength bandwidth must be non-negative");
    // c in nm/fs over nm^2 gives 1/fs; 1/fs = 1e6 GHz.
    return units::c_nm_per_fs * delta_lambda_nm / (center_lambda_nm * center_lambda_nm) * 1e6;
}

PumpEnvelope::PumpEnvelope(const PumpSpec& pump, const FrequencyGrid& grid) {
    pump.validate();
    const double fwhm = pump.angular_fwhm();
    amplitude_coefficient_ = 2.0 * units::ln2 / (fwhm * fwhm);
    chirp_ = pump.chirp_fs2;
    carrier_offset_ = grid.center_signal + grid.center_idler - pump.center_angular_frequency();
}

std::complex<double> PumpEnvelope::operator()(double sum_detuning) const {
    const double nu = pump_detuning(sum_detuning);
    const double nu2 = nu * nu;
    const double mag = std::exp(-amplitude_coefficient_ * nu2);
    if (chirp_ == 0.0) return {mag, 0.0};
    return std::polar(mag, chirp_ * nu2);
}

PumpEnvelope build_pump_envelope(const PumpSpec& pump, const FrequencyGrid& grid) {
    grid.validate();
    return PumpEnvelope(pump, grid);
}

double phasematching_amplitude(const PhasematchSpec& pm, double u) {
    switch (pm.profile) {
    case PhasematchProfile::gaussian:
        return std::exp(-2.0 * units::ln2 * u * u / (pm.fwhm * pm.fwhm));
    case PhasematchProfile::sinc: {
        const double x = 2.0 * sinc_half_max_x * u / pm.fwhm;
        return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    }
    }
    return 0.0;
}

ComplexMatrix build_phasematching(const PhasematchSpec& pm, const FrequencyGrid& grid, Exec exec) {
    pm.validate();
    grid.validate();
    const Axis s = grid.signal_axis();
    const Axis i = grid.idler_axis();
    const double cs = std::numbers::sqrt2 * std::cos(pm.orientation_angle);
    const double ci = std::numbers::sqrt2 * std::sin(pm.orientation_angle);
    const auto rows = static_cast<std::ptrdiff_t>(s.size);
    ComplexMatrix out(rows, static_cast<std::ptrdiff_t>(i.size));

    auto fill_row = [&](std::ptrdiff_t r) {
        const double ws = s[static_cast<std::size_t>(r)];
        for (std::size_t c = 0; c < i.size; ++c)
            out(r, static_cast<std::ptrdiff_t>(c)) = phasematching_amplitude(pm, cs * ws + ci * i[c]);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < rows; ++r) fill_row(r);
    } else {
        for (std::ptrdiff_t r = 0; r < rows; ++r) fill_row(r);
    }
    return out;
}

JointSpectralAmplitude build_jsa(const SourceSpec& src, Exec exec) {
    src.validate();
    const PumpEnvelope pump(src.pump, src.grid);
    const Axis s = src.grid.signal_axis();
    const Axis i = src.grid.idler_axis();
    const double cs = std::numbers::sqrt2 * std::cos(src.phasematch.orientation_angle);
    const double ci = std::numbers::sqrt2 * std::sin(src.phasematch.orientation_angle);
    const auto rows = static_cast<std::ptrdiff_t>(s.size);

    JointSpectralAmplitude jsa{src.grid, ComplexMatrix(rows, static_cast<std::ptrdiff_t>(i.size))};
    auto fill_row = [&](std::ptrdiff_t r) {
        const double ws = s[static_cast<std::size_t>(r)];
        for (std::size_t c = 0; c < i.size; ++c) {
            const double wi = i[c];
            jsa.values(r, static_cast<std::ptrdiff_t>(c)) =
                pump(ws + wi) * phasematching_amplitude(src.phasematch, cs * ws + ci * wi);
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < rows; ++r) fill_row(r);
    } else {
        for (std::ptrdiff_t r = 0; r < rows; ++r) fill_row(r);
    }

    const double measure = s.step * i.step;
    const double norm2 = jsa.values.squaredNorm() * measure;
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw DegenerateError("pump and phasematching do not overlap on the grid");
    jsa.values /= std::sqrt(norm2);
    return jsa;
}

JointSpectralIntensity jsa_to_jsi(const JointSpectralAmplitude& jsa) {
    JointSpectralIntensity jsi;
    jsi.signal = jsa.grid.signal_axis();
    jsi.idler = jsa.grid.idler_axis();
    jsi.values = jsa.values.cwiseAbs2();
    return jsi;
}

}  // namespace pdc
