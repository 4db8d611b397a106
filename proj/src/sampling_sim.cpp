#include "pdc/sampling_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pdc/errors.hpp"
#include "pdc/units.hpp"

namespace pdc {

namespace {

double incidence_limit_check(double alpha_rad) {
    const double a = std::abs(alpha_rad);
    if (!(a < 0.5 * units::pi)) throw DomainError("incidence angle must satisfy |alpha| < pi/2");
    return a;
}

double closed_form_angle(double delay_ps, double d_mm, double n) {
    const double path = d_mm + 0.5 * units::c_mm_per_ps * delay_ps;
    const double cos_r = d_mm / path;
    const double sin_alpha = n * std::sqrt(std::max(0.0, 1.0 - cos_r * cos_r));
    if (sin_alpha >= 1.0) throw DomainError("delay exceeds what the plate can produce");
    return std::asin(sin_alpha);
}

}  // namespace

double default_alpha_max_rad() { return closed_form_angle(nominal_delay_range_ps, 12.0, 1.45); }

void PlateSpec::validate() const {
    if (!(thickness_mm > 0.0)) throw DomainError("plate thickness must be positive");
    if (!(refractive_index > 1.0)) throw DomainError("plate refractive index must exceed 1");
    if (!(rotation_hz > 0.0)) throw DomainError("rotation rate must be positive");
    if (!(alpha_max_rad > 0.0 && alpha_max_rad < 0.5 * units::pi))
        throw DomainError("alpha_max must lie in (0, pi/2)");
    if (!(rotation_jitter_rms >= 0.0 && rotation_jitter_rms < 0.1))
        throw DomainError("rotation jitter must lie in [0, 0.1)");
}

double optical_path_mm(double alpha_rad, const PlateSpec& plate) {
    const double a = incidence_limit_check(alpha_rad);
    return plate.thickness_mm / std::cos(std::asin(std::sin(a) / plate.refractive_index));
}

double delay_of_angle(double alpha_rad, const PlateSpec& plate) {
    return 2.0 * (optical_path_mm(alpha_rad, plate) - plate.thickness_mm) / units::c_mm_per_ps;
}

double angle_for_delay(double delay_ps, const PlateSpec& plate) {
    if (delay_ps < 0.0) throw DomainError("delay must be non-negative");
    return closed_form_angle(delay_ps, plate.thickness_mm, plate.refractive_index);
}

double delay_range_ps(const PlateSpec& plate) { return delay_of_angle(plate.alpha_max_rad, plate); }

SweepPosition angle_of_phase(double phase_rad, const PlateSpec& plate) {
    constexpr double quarter = 0.5 * units::pi;
    double phi = std::fmod(phase_rad, units::two_pi);
    if (phi < 0.0) phi += units::two_pi;
    const int q = std::min(3, static_cast<int>(phi / quarter));
    const double within = phi - q * quarter;

    SweepPosition pos;
    pos.sweep = q;
    pos.rising = (q % 2) == 0;
    pos.alpha_rad = pos.rising ? within : quarter - within;
    pos.in_range = pos.alpha_rad <= plate.alpha_max_rad;
    return pos;
}

SweepPosition angle_of_time(double t_s, const PlateSpec& plate) {
    if (!(t_s >= 0.0 && t_s < plate.rotation_period_s()))
        throw DomainError("time must lie within one rotation period");
    return angle_of_phase(units::two_pi * plate.rotation_hz * t_s + plate.trigger_phase_rad, plate);
}

void GateSpec::validate() const {
    if (!(fwhm_fs > 0.0)) throw DomainError("gate duration must be positive");
    if (!(repetition_mhz > 0.0)) throw DomainError("repetition rate must be positive");
}

GateResponse::GateResponse(PhotonAmplitude photon, const GateSpec& gate)
    : photon_(std::move(photon)), gate_(gate) {
    gate_.validate();
    if (photon_.values.size() < 2 || !(photon_.dt_fs > 0.0))
        throw InputError("photon amplitude needs a uniform grid with >= 2 samples");
    intensity_.resize(photon_.values.size());
    for (std::size_t k = 0; k < intensity_.size(); ++k) intensity_[k] = std::norm(photon_.values[k]);

    kernel_coefficient_ = 2.0 * units::ln2 / (gate_.fwhm_fs * gate_.fwhm_fs);
    kernel_reach_fs_ = 6.0 * gate_.fwhm_fs;
    delta_like_ = gate_.fwhm_fs < photon_.dt_fs;

    norm_ = 1.0;
    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < intensity_.size(); ++k) {
        const double v = raw(photon_.time(k));
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    // Parabolic refinement between samples.
    if (!delta_like_ && best_k > 0 && best_k + 1 < intensity_.size()) {
        const double ym = raw(photon_.time(best_k - 1));
        const double yp = raw(photon_.time(best_k + 1));
        const double denom = ym - 2.0 * best + yp;
        if (denom < 0.0) {
            const double shift = 0.5 * (ym - yp) / denom;
            best = std::max(best, raw(photon_.time(best_k) + shift * photon_.dt_fs));
        }
    }
    if (!(best > 0.0)) throw DegenerateError("photon amplitude is identically zero");
    norm_ = best;
}

double GateResponse::raw(double tau_fs) const {
    const double dt = photon_.dt_fs;
    const double x = (tau_fs - photon_.t0_fs) / dt;
    const auto n = static_cast<std::ptrdiff_t>(intensity_.size());
    if (delta_like_) {
        if (x < 0.0 || x > static_cast<double>(n - 1)) return 0.0;
        const auto k = std::min(static_cast<std::ptrdiff_t>(x), n - 2);
        const double f = x - static_cast<double>(k);
        return (1.0 - f) * intensity_[static_cast<std::size_t>(k)] + f * intensity_[static_cast<std::size_t>(k + 1)];
    }
    const double reach = kernel_reach_fs_ / dt;
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil(x - reach)));
    const auto hi = std::min<std::ptrdiff_t>(n - 1, static_cast<std::ptrdiff_t>(std::floor(x + reach)));
    if (lo > hi) return 0.0;

    if (gate_.mode == GateMode::coherent_overlap) {
        std::complex<double> acc = 0.0;
        for (auto k = lo; k <= hi; ++k) {
            const double s = photon_.time(static_cast<std::size_t>(k)) - tau_fs;
            acc += std::exp(-kernel_coefficient_ * s * s) * photon_.values[static_cast<std::size_t>(k)];
        }
        return std::norm(acc * dt);
    }
    double acc = 0.0;
    for (auto k = lo; k <= hi; ++k) {
        const double s = photon_.time(static_cast<std::size_t>(k)) - tau_fs;
        acc += std::exp(-2.0 * kernel_coefficient_ * s * s) * intensity_[static_cast<std::size_t>(k)];
    }
    return acc * dt;
}

std::vector<double> GateResponse::sample(std::span<const double> taus_fs, Exec exec) const {
    std::vector<double> out(taus_fs.size());
    const auto n = static_cast<std::ptrdiff_t>(taus_fs.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < n; ++k)
            out[static_cast<std::size_t>(k)] = (*this)(taus_fs[static_cast<std::size_t>(k)]);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k)
            out[static_cast<std::size_t>(k)] = (*this)(taus_fs[static_cast<std::size_t>(k)]);
    }
    return out;
}

double GateResponse::support_min_fs() const {
    return photon_.t0_fs - (delta_like_ ? 0.0 : kernel_reach_fs_);
}

double GateResponse::support_max_fs() const {
    return photon_.time(photon_.values.size() - 1) + (delta_like_ ? 0.0 : kernel_reach_fs_);
}

double gate_response(const PhotonAmplitude& photon, const GateSpec& gate, double tau_fs) {
    return GateResponse(photon, gate)(tau_fs);
}

double ResponseTable::operator()(double tau_fs) const {
    if (values.empty()) return 0.0;
    const double x = (tau_fs - tau0_fs) / step_fs;
    const auto last = static_cast<double>(values.size() - 1);
    if (!(x >= 0.0) || x > last) return 0.0;
    const auto k = std::min(static_cast<std::size_t>(x), values.size() - 1);
    if (k + 1 >= values.size()) return values[k];
    const double f = x - static_cast<double>(k);
    return (1.0 - f) * values[k] + f * values[k + 1];
}

ResponseTable tabulate_response(const GateResponse& response, double step_fs, Exec exec) {
    if (!(step_fs > 0.0)) throw DomainError("table step must be positive");
    ResponseTable table;
    table.tau0_fs = response.support_min_fs();
    table.step_fs = step_fs;
    const auto n = static_cast<std::size_t>(
        std::ceil((response.support_max_fs() - table.tau0_fs) / step_fs)) + 1;
    std::vector<double> taus(n);
    for (std::size_t k = 0; k < n; ++k) taus[k] = table.tau0_fs + static_cast<double>(k) * step_fs;
    table.values = response.sample(taus, exec);
    for (double& v : table.values) v = std::min(v, 1.0);
    return table;
}

TimingBudget timing_budget(const GateSpec& gate, const PlateSpec& plate, std::size_t n_bins) {
    if (n_bins < 1) throw DomainError("need at least one bin");
    TimingBudget t;
    t.repetition_hz = std::llround(gate.repetition_mhz * 1e6);
    t.sweeps_per_second = std::llround(4.0 * plate.rotation_hz);
    t.pulses_per_sweep = t.repetition_hz / t.sweeps_per_second;
    t.pulses_per_sweep_rem = t.repetition_hz % t.sweeps_per_second;
    t.pulses_per_bin = static_cast<double>(t.repetition_hz) /
                       static_cast<double>(t.sweeps_per_second * static_cast<std::int64_t>(n_bins));
    t.bin_spacing_fs = delay_range_ps(plate) * 1e3 / static_cast<double>(n_bins);
    return t;
}

SimulationResult simulate_acquisition(const PhotonAmplitude& photon, const GateSpec& gate,
                                      const PlateSpec& plate, const AcquisitionParams& params) {
    gate.validate();
    plate.validate();
    if (params.peak_rate_hz < 0.0 || params.background_rate_hz < 0.0)
        throw DomainError("rates must be non-negative");
    if (!(params.duration_s > 0.0)) throw DomainError("duration must be positive");

    const double rep_hz = gate.repetition_mhz * 1e6;
    const double p_peak = params.peak_rate_hz / rep_hz;
    const double p_bg = params.background_rate_hz / rep_hz;
    const double p_max = p_peak + p_bg;
    if (p_max > 1.0) throw DomainError("click probability per pulse exceeds one");

    SimulationResult result;
    auto& report = result.report;
    report.timing = timing_budget(gate, plate, 1000);
    report.delay_offset_fs = params.delay_offset_fs.value_or(0.5 * delay_range_ps(plate) * 1e3);
    report.max_click_probability = p_max;
    report.saturated = p_max > saturation_probability;

    ResponseTable table;
    if (p_peak > 0.0) table = tabulate_response(GateResponse(photon, gate), params.table_step_fs);

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::optional<std::geometric_distribution<std::uint64_t>> gap;
    if (p_max > 0.0) gap.emplace(p_max);

    const double pulse_ps = gate.pulse_period_ps();
    const double duration_ps = params.duration_s * 1e12;
    const double nominal_rotation_ps = plate.rotation_period_s() * 1e12;

    auto& records = result.stream.records;
    std::uint64_t pulse = gap ? (*gap)(rng) : 0;
    double rotation_start = 0.0;
    while (rotation_start < duration_ps) {
        double period = nominal_rotation_ps;
        if (plate.rotation_jitter_rms > 0.0)
            period *= std::max(0.5, 1.0 + plate.rotation_jitter_rms * normal(rng));
        const double rotation_end = rotation_start + period;
        records.push_back({channel::trigger, static_cast<std::uint64_t>(std::llround(rotation_start))});
        ++report.rotations;

        while (gap) {
            const double t = static_cast<double>(pulse) * pulse_ps;
            if (t >= rotation_end || t >= duration_ps) break;
            const double phase = units::two_pi * (t - rotation_start) / period + plate.trigger_phase_rad;
            double p = p_bg;
            const SweepPosition pos = angle_of_phase(phase, plate);
            // Past alpha_max the delay runs far beyond the gate; only background remains.
            if (p_peak > 0.0 && pos.in_range) {
                const double tau_fs = delay_of_angle(pos.alpha_rad, plate) * 1e3 - report.delay_offset_fs;
                double r = table(tau_fs);
                if (params.transmission) r *= params.transmission(pos.alpha_rad);
                p += p_peak * r;
            }
            if (uniform(rng) * p_max < p) {
                records.push_back({channel::converted, static_cast<std::uint64_t>(std::llround(t))});
                ++report.converted_clicks;
            }
            pulse += 1 + (*gap)(rng);
        }
        rotation_start = rotation_end;
    }

    result.stream.metadata = StreamMetadata{plate.thickness_mm, plate.refractive_index, plate.rotation_hz,
                                            plate.alpha_max_rad,  gate.fwhm_fs,          gate.repetition_mhz,
                                            params.duration_s};
    return result;
}

EventStream simulate_coincidences(const JointSpectralIntensity& jsi, const TofSpectrometerSpec& spec_signal,
                                  const TofSpectrometerSpec& spec_idler, const CoincidenceParams& params) {
    spec_signal.validate();
    spec_idler.validate();
    if (jsi.signal.unit != AxisUnit::wavelength_nm || jsi.idler.unit != AxisUnit::wavelength_nm)
        throw InputError("coincidence simulation needs a JSI on wavelength axes");
    if ((jsi.values.array() < 0.0).any() || !jsi.values.allFinite())
        throw InputError("JSI must be finite and non-negative");
    for (double p : {params.pair_probability, params.accidental_probability})
        if (!(p >= 0.0 && p < 1.0)) throw DomainError("probabilities must lie in [0, 1)");

    const auto ns = jsi.signal.size;
    const auto ni = jsi.idler.size;
    std::vector<double> cdf(ns * ni);
    double acc = 0.0;
    for (std::size_t k = 0; k < cdf.size(); ++k) {
        acc += jsi.values(static_cast<Eigen::Index>(k / ni), static_cast<Eigen::Index>(k % ni));
        cdf[k] = acc;
    }
    if (params.pair_probability > 0.0 && !(acc > 0.0)) throw DegenerateError("JSI is zero");

    const double period = 1e6 / params.repetition_mhz;
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    EventStream stream;

    auto emit = [&](std::uint64_t pulse, double lambda, const TofSpectrometerSpec& spec, std::uint8_t ch) {
        const double arrival = tof_arrival(lambda, spec);
        if (arrival < 0.0 || arrival >= period)
            throw DomainError("time-of-flight arrival outside the laser period; adjust reference_time");
        const double t = static_cast<double>(pulse) * period + arrival;
        stream.records.push_back({ch, static_cast<std::uint64_t>(std::llround(t))});
    };
    auto within_bin = [&](const Axis& a, std::size_t k) { return a[k] + (uniform(rng) - 0.5) * a.step; };

    if (params.pair_probability > 0.0) {
        std::geometric_distribution<std::uint64_t> gap(params.pair_probability);
        for (std::uint64_t pulse = gap(rng); pulse < params.n_pulses; pulse += 1 + gap(rng)) {
            const double target = uniform(rng) * acc;
            auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), target) - cdf.begin());
            k = std::min(k, cdf.size() - 1);
            emit(pulse, within_bin(jsi.signal, k / ni), spec_signal, params.signal_channel);
            emit(pulse, within_bin(jsi.idler, k % ni), spec_idler, params.idler_channel);
        }
    }
    if (params.accidental_probability > 0.0) {
        std::geometric_distribution<std::uint64_t> gap(params.accidental_probability);
        const std::pair<const Axis*, std::pair<const TofSpectrometerSpec*, std::uint8_t>> detectors[] = {
            {&jsi.signal, {&spec_signal, params.signal_channel}},
            {&jsi.idler, {&spec_idler, params.idler_channel}}};
        for (const auto& [axis, det] : detectors) {
            for (std::uint64_t pulse = gap(rng); pulse < params.n_pulses; pulse += 1 + gap(rng)) {
                const double lo = (*axis)[0] - 0.5 * axis->step;
                emit(pulse, lo + uniform(rng) * axis->span(), *det.first, det.second);
            }
        }
    }
    std::stable_sort(stream.records.begin(), stream.records.end(), [](const EventRecord& a, const EventRecord& b) {
        return a.timestamp_ps != b.timestamp_ps ? a.timestamp_ps < b.timestamp_ps : a.channel < b.channel;
    });
    return stream;
}

}  // namespace pdc
