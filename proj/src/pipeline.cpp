#include "pdc/pipeline.hpp"

#include <fstream>

#include "pdc/acquisition.hpp"
#include "pdc/analysis.hpp"
#include "pdc/decomposition.hpp"
#include "pdc/errors.hpp"
#include "pdc/event_io.hpp"
#include "pdc/fixtures.hpp"
#include "pdc/matrix_io.hpp"
#include "pdc/sampling_sim.hpp"
#include "pdc/spectral_model.hpp"
#include "pdc/units.hpp"

namespace pdc {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names{"simulate", "schmidt",     "envelope", "sample",
                                                "reconstruct", "bounds", "sweep"};
    return names;
}

std::optional<Stage> parse_stage(std::string_view name) {
    const auto& names = stage_names();
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return static_cast<Stage>(k);
    return std::nullopt;
}

std::string stage_name(Stage stage) { return stage_names()[static_cast<std::size_t>(stage)]; }

PhotonAmplitude configured_photon(const RunConfig& config) {
    if (config.photon.gaussian_fwhm_fs)
        return transform_limited_gaussian(*config.photon.gaussian_fwhm_fs, config.photon.dt_fs, config.photon.samples);
    const JointSpectralAmplitude jsa = build_jsa(config.source);
    const JointSpectralIntensity jsi = jsa_to_jsi(jsa);
    const auto amp = conditioned_amplitude(jsa, Photon::signal, default_cut_index(jsi, Photon::signal));
    const Axis a = jsa.grid.signal_axis();
    std::vector<double> w(a.size);
    for (std::size_t k = 0; k < a.size; ++k) w[k] = a[k];
    PhotonAmplitude photon = amplitude_from_spectrum(w, amp);
    // Unit norm so that the gate response is independent of the cut's weight.
    double norm = 0.0;
    for (const auto& v : photon.values) norm += std::norm(v) * photon.dt_fs;
    for (auto& v : photon.values) v /= std::sqrt(norm);
    return photon;
}

namespace {

json source_json(const RunConfig& c) {
    const auto& s = c.source;
    json j{{"pump_center_wavelength_nm", s.pump.center_wavelength_nm},
           {"pump_fwhm_nm", s.pump.fwhm_nm},
           {"pump_chirp_fs2", s.pump.chirp_fs2},
           {"phasematch_fwhm_rad_per_fs", s.phasematch.fwhm},
           {"phasematch_orientation_rad", s.phasematch.orientation_angle},
           {"phasematch_profile", s.phasematch.profile == PhasematchProfile::sinc ? "sinc" : "gaussian"},
           {"grid_n", s.grid.n_signal},
           {"grid_span_rad_per_fs", s.grid.span_signal}};
    if (!c.fixture.empty()) {
        j["fixture"] = c.fixture;
        j["fixture_provenance"] = fixtures::provenance(c.fixture);
    }
    return j;
}

EventStream events_for(const RunConfig& config, json& summary) {
    if (config.events_path) {
        summary["events_source"] = config.events_path->string();
        return load_events(*config.events_path);
    }
    SimulationResult sim = simulate_acquisition(configured_photon(config), config.gate, config.plate, config.acquisition);
    summary["events_source"] = "simulated";
    summary["saturated"] = sim.report.saturated;
    return std::move(sim.stream);
}

json timing_json(const TimingBudget& t) {
    return {{"repetition_hz", t.repetition_hz},       {"sweeps_per_second", t.sweeps_per_second},
            {"pulses_per_sweep", t.pulses_per_sweep}, {"pulses_per_sweep_remainder", t.pulses_per_sweep_rem},
            {"pulses_per_bin", t.pulses_per_bin},     {"bin_spacing_fs", t.bin_spacing_fs}};
}

void run_stage(const RunConfig& config, Stage stage, const fs::path& out, json& summary) {
    auto& files = summary["files"];
    auto note = [&](const fs::path& p) { files.push_back(p.filename().string()); };

    switch (stage) {
    case Stage::simulate: {
        const JointSpectralAmplitude jsa = build_jsa(config.source);
        const JointSpectralIntensity jsi = jsa_to_jsi(jsa);
        save_jsa(out / "jsa.txt", jsa);
        save_jsi(out / "jsi.txt", jsi);
        note(out / "jsa.txt");
        note(out / "jsi.txt");
        summary["source"] = source_json(config);
        break;
    }
    case Stage::schmidt: {
        const SchmidtSpectrum s = schmidt_decompose(build_jsa(config.source));
        std::vector<double> idx(s.coefficients.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<double>(k);
        save_columns_csv(out / "schmidt.csv", {"index", "coefficient"}, {idx, s.coefficients});
        note(out / "schmidt.csv");
        summary["source"] = source_json(config);
        summary["schmidt_number"] = schmidt_number(s);
        summary["purity"] = purity(s);
        summary["upper_bound_purity"] = upper_bound_purity_from_jsi(jsa_to_jsi(build_jsa(config.source)));
        break;
    }
    case Stage::envelope: {
        const JointSpectralIntensity jsi = jsa_to_jsi(build_jsa(config.source));
        const Spectrum1D cut = conditioned_cut(jsi, Photon::signal, default_cut_index(jsi, Photon::signal));
        const TemporalEnvelope env = envelope_from_spectrum(cut);
        const PulseMetrics m = fit_fwhm(env);
        const Spectrum1D marginal = marginal_spectrum(jsi, Photon::signal);
        save_columns_csv(out / "envelope.csv", {"time_fs", "intensity"}, {env.time_fs, env.intensity});
        save_columns_csv(out / "marginal.csv", {"detuning_rad_per_fs", "intensity"}, {marginal.axis, marginal.intensity});
        note(out / "envelope.csv");
        note(out / "marginal.csv");
        summary["source"] = source_json(config);
        summary["envelope_fwhm_fs"] = m.fwhm_fs;
        summary["marginal_fwhm_thz"] = spectral_fwhm_thz(marginal);
        summary["expected_tbp"] = time_bandwidth_product(m.fwhm_fs, spectral_fwhm_thz(marginal));
        break;
    }
    case Stage::sample: {
        const SimulationResult sim =
            simulate_acquisition(configured_photon(config), config.gate, config.plate, config.acquisition);
        save_events(out / "events.csv", sim.stream, EventFormat::csv);
        save_events(out / "events.bin", sim.stream, EventFormat::binary);
        note(out / "events.csv");
        note(out / "events.bin");
        summary["seed"] = config.acquisition.seed;
        summary["rotations"] = sim.report.rotations;
        summary["converted_clicks"] = sim.report.converted_clicks;
        summary["max_click_probability"] = sim.report.max_click_probability;
        summary["saturated"] = sim.report.saturated;
        summary["delay_offset_fs"] = sim.report.delay_offset_fs;
        summary["delay_range_ps"] = delay_range_ps(config.plate);
        summary["timing"] = timing_json(timing_budget(config.gate, config.plate, config.analysis.n_bins));
        break;
    }
    case Stage::reconstruct: {
        const EventStream stream = events_for(config, summary);
        const DelayHistogram h = reconstruct_waveform(stream, config.plate, config.analysis.n_bins);
        const DelayWaveform raw = rate_waveform(h);
        const DelayWaveform clean = subtract_background(raw, config.analysis.exclusion_halfwidth);
        save_columns_csv(out / "waveform.csv", {"delay_fs", "counts", "dwell_s", "rate_hz", "rate_minus_background_hz"},
                         {h.delay_fs, h.counts, h.dwell_s, raw.values, clean.values});
        note(out / "waveform.csv");
        summary["seed"] = config.acquisition.seed;
        summary["total_counts"] = h.total_counts();
        summary["dropped_clicks"] = {{"before_first_trigger", h.dropped.before_first_trigger},
                                     {"beyond_rotation", h.dropped.beyond_rotation},
                                     {"out_of_sweep", h.dropped.out_of_sweep}};
        summary["exposure_sweeps"] = h.exposure_sweeps;
        summary["bin_width_fs"] = h.bin_width_fs;
        summary["background_hz"] = clean.baseline;
        try {
            const PulseMetrics m = fit_fwhm(clean.envelope());
            summary["fitted_fwhm_fs"] = m.fwhm_fs;
            summary["fitted_fwhm_sigma_fs"] = m.fwhm_sigma_fs;
            summary["gate_fwhm_fs"] = config.gate.fwhm_fs;
            summary["deconvolved_fwhm_fs"] = deconvolve_gaussian(m.fwhm_fs, config.gate.fwhm_fs);
        } catch (const FitError& e) {
            summary["fit_error"] = e.what();
            summary["direct_fwhm_fs"] = e.direct_fwhm();
        }
        break;
    }
    case Stage::bounds: {
        const JointSpectralIntensity jsi =
            config.measured_jsi_path ? load_jsi(*config.measured_jsi_path) : jsa_to_jsi(build_jsa(config.source));
        PurityBounds b;
        if (config.analysis.measured_tbp) {
            b = purity_bounds(jsi, *config.analysis.measured_tbp, config.source);
        } else if (config.analysis.measured_tbp_ratio) {
            b = purity_bounds_from_ratio(jsi, *config.analysis.measured_tbp_ratio, config.source);
        } else {
            throw ConfigError("bounds needs analysis.measured_tbp or analysis.measured_tbp_ratio");
        }
        summary["source"] = source_json(config);
        summary["measured_jsi"] = config.measured_jsi_path ? config.measured_jsi_path->string() : "model JSI of the source";
        summary["upper"] = b.upper;
        summary["lower"] = b.lower;
        summary["inferred_chirp_fs2"] = b.inferred_chirp_fs2;
        summary["chirp_sign"] = "not recoverable; +C and -C give the same TBP";
        summary["tbp_ratio"] = b.tbp_ratio;
        if (b.expected_tbp > 0.0) summary["expected_tbp"] = b.expected_tbp;
        summary["sweep_max_fs2"] = b.sweep_max_fs2;
        summary["silica_length_m"] = chirp_to_silica_length(b.inferred_chirp_fs2, config.analysis.silica_fs2_per_mm);
        break;
    }
    case Stage::sweep: {
        const auto grid = chirp_grid(config.analysis.sweep_max_fs2, config.analysis.sweep_points);
        const ChirpSweepCurve curve = chirp_sweep(config.source, grid);
        save_columns_csv(out / "sweep.csv", {"chirp_fs2", "purity", "tbp_ratio"},
                         {curve.chirp_fs2, curve.purities, curve.tbp_ratios});
        note(out / "sweep.csv");
        summary["source"] = source_json(config);
        summary["reference_tbp"] = curve.reference_tbp;
        summary["points"] = curve.chirp_fs2.size();
        summary["chirp_sign"] = "only C >= 0 swept; the curves are even in C";
        break;
    }
    }
}

}  // namespace

nlohmann::json run_pipeline(const RunConfig& config, Stage stage, const fs::path& out_dir) {
    config.validate();
    fs::create_directories(out_dir);
    json summary{{"schema_version", summary_schema_version}, {"stage", stage_name(stage)}, {"files", json::array()}};
    run_stage(config, stage, out_dir, summary);
    std::ofstream out(out_dir / "summary.json");
    if (!out) throw InputError("cannot write " + (out_dir / "summary.json").string());
    out << summary.dump(2) << '\n';
    return summary;
}

}  // namespace pdc
