#include "pdc/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pdc/errors.hpp"
#include "pdc/fixtures.hpp"
#include "pdc/units.hpp"

namespace pdc {

void RunConfig::validate() const {
    source.validate();
    plate.validate();
    gate.validate();
    signal_spectrometer.validate();
    idler_spectrometer.validate();
    if (analysis.n_bins < 2) throw ConfigError("analysis.n_bins must be >= 2");
    if (analysis.sweep_points < 2 || !(analysis.sweep_max_fs2 > 0.0))
        throw ConfigError("sweep needs >= 2 points and a positive end");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view v) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw ConfigError("expected a number, got '" + std::string(v) + "'");
    return x;
}

std::uint64_t to_uint(std::string_view v) {
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError("expected a non-negative integer, got '" + std::string(v) + "'");
    return x;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

struct Context {
    std::filesystem::path base;
    std::optional<double> pm_ratio;
    std::optional<double> pm_fwhm;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_span;
};

std::map<std::string, Setter, std::less<>> make_setters(Context& ctx) {
    std::map<std::string, Setter, std::less<>> s;
    s["pump.center_wavelength_nm"] = [](RunConfig& c, std::string_view v) { c.source.pump.center_wavelength_nm = to_double(v); };
    s["pump.fwhm_nm"] = [](RunConfig& c, std::string_view v) { c.source.pump.fwhm_nm = to_double(v); };
    s["pump.chirp_fs2"] = [](RunConfig& c, std::string_view v) { c.source.pump.chirp_fs2 = to_double(v); };
    s["phasematch.ratio_to_pump"] = [&ctx](RunConfig&, std::string_view v) { ctx.pm_ratio = to_double(v); };
    s["phasematch.fwhm_rad_per_fs"] = [&ctx](RunConfig&, std::string_view v) { ctx.pm_fwhm = to_double(v); };
    s["phasematch.orientation_rad"] = [](RunConfig& c, std::string_view v) {
        c.source.phasematch.orientation_angle = to_double(v);
    };
    s["phasematch.orientation_deg"] = [](RunConfig& c, std::string_view v) {
        c.source.phasematch.orientation_angle = units::deg_to_rad(to_double(v));
    };
    s["phasematch.profile"] = [](RunConfig& c, std::string_view v) {
        if (v == "gaussian")
            c.source.phasematch.profile = PhasematchProfile::gaussian;
        else if (v == "sinc")
            c.source.phasematch.profile = PhasematchProfile::sinc;
        else
            throw ConfigError("phasematch.profile must be gaussian or sinc");
    };
    s["grid.n"] = [&ctx](RunConfig&, std::string_view v) { ctx.grid_n = static_cast<std::size_t>(to_uint(v)); };
    s["grid.span_rad_per_fs"] = [&ctx](RunConfig&, std::string_view v) { ctx.grid_span = to_double(v); };

    s["plate.thickness_mm"] = [](RunConfig& c, std::string_view v) { c.plate.thickness_mm = to_double(v); };
    s["plate.refractive_index"] = [](RunConfig& c, std::string_view v) { c.plate.refractive_index = to_double(v); };
    s["plate.rotation_hz"] = [](RunConfig& c, std::string_view v) { c.plate.rotation_hz = to_double(v); };
    s["plate.alpha_max_deg"] = [](RunConfig& c, std::string_view v) { c.plate.alpha_max_rad = units::deg_to_rad(to_double(v)); };
    s["plate.rotation_jitter_rms"] = [](RunConfig& c, std::string_view v) { c.plate.rotation_jitter_rms = to_double(v); };
    s["plate.trigger_phase_rad"] = [](RunConfig& c, std::string_view v) { c.plate.trigger_phase_rad = to_double(v); };

    s["gate.fwhm_fs"] = [](RunConfig& c, std::string_view v) { c.gate.fwhm_fs = to_double(v); };
    s["gate.repetition_mhz"] = [](RunConfig& c, std::string_view v) { c.gate.repetition_mhz = to_double(v); };
    s["gate.mode"] = [](RunConfig& c, std::string_view v) {
        if (v == "coherent_overlap")
            c.gate.mode = GateMode::coherent_overlap;
        else if (v == "intensity_convolution")
            c.gate.mode = GateMode::intensity_convolution;
        else
            throw ConfigError("gate.mode must be coherent_overlap or intensity_convolution");
    };

    for (auto [prefix, member] : {std::pair{"spectrometer.signal.", &RunConfig::signal_spectrometer},
                                  std::pair{"spectrometer.idler.", &RunConfig::idler_spectrometer}}) {
        const std::string p = prefix;
        s[p + "dispersion_ps_per_nm"] = [member](RunConfig& c, std::string_view v) {
            (c.*member).dispersion_ps_per_nm = to_double(v);
        };
        s[p + "reference_time_ps"] = [member](RunConfig& c, std::string_view v) {
            (c.*member).reference_time_ps = to_double(v);
        };
        s[p + "reference_wavelength_nm"] = [member](RunConfig& c, std::string_view v) {
            (c.*member).reference_wavelength_nm = to_double(v);
        };
    }

    s["acquisition.peak_rate_hz"] = [](RunConfig& c, std::string_view v) { c.acquisition.peak_rate_hz = to_double(v); };
    s["acquisition.background_rate_hz"] = [](RunConfig& c, std::string_view v) {
        c.acquisition.background_rate_hz = to_double(v);
    };
    s["acquisition.duration_s"] = [](RunConfig& c, std::string_view v) { c.acquisition.duration_s = to_double(v); };
    s["acquisition.delay_offset_fs"] = [](RunConfig& c, std::string_view v) { c.acquisition.delay_offset_fs = to_double(v); };
    s["acquisition.events"] = [&ctx](RunConfig& c, std::string_view v) { c.events_path = ctx.base / std::string(v); };
    s["seed"] = [](RunConfig& c, std::string_view v) { c.acquisition.seed = to_uint(v); };

    s["photon.gaussian_fwhm_fs"] = [](RunConfig& c, std::string_view v) { c.photon.gaussian_fwhm_fs = to_double(v); };
    s["photon.dt_fs"] = [](RunConfig& c, std::string_view v) { c.photon.dt_fs = to_double(v); };
    s["photon.samples"] = [](RunConfig& c, std::string_view v) { c.photon.samples = static_cast<std::size_t>(to_uint(v)); };

    s["analysis.n_bins"] = [](RunConfig& c, std::string_view v) { c.analysis.n_bins = static_cast<std::size_t>(to_uint(v)); };
    s["analysis.exclusion_halfwidth"] = [](RunConfig& c, std::string_view v) { c.analysis.exclusion_halfwidth = to_double(v); };
    s["analysis.coincidence_window_ps"] = [](RunConfig& c, std::string_view v) {
        c.analysis.coincidence_window_ps = to_double(v);
    };
    s["analysis.sweep_max_fs2"] = [](RunConfig& c, std::string_view v) { c.analysis.sweep_max_fs2 = to_double(v); };
    s["analysis.sweep_points"] = [](RunConfig& c, std::string_view v) {
        c.analysis.sweep_points = static_cast<std::size_t>(to_uint(v));
    };
    s["analysis.measured_tbp"] = [](RunConfig& c, std::string_view v) { c.analysis.measured_tbp = to_double(v); };
    s["analysis.measured_tbp_ratio"] = [](RunConfig& c, std::string_view v) { c.analysis.measured_tbp_ratio = to_double(v); };
    s["analysis.measured_jsi"] = [&ctx](RunConfig& c, std::string_view v) { c.measured_jsi_path = ctx.base / std::string(v); };
    s["analysis.silica_fs2_per_mm"] = [](RunConfig& c, std::string_view v) { c.analysis.silica_fs2_per_mm = to_double(v); };
    return s;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        Context ctx;
        std::vector<std::string> k{"fixture"};
        for (const auto& [name, _] : make_setters(ctx)) k.push_back(name);
        return k;
    }();
    return keys;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    Context ctx;
    ctx.base = base_dir;
    const auto setters = make_setters(ctx);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected key = value" + where);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("empty value for '" + std::string(key) + "'" + where);
        try {
            if (key == "fixture") {
                cfg.fixture = std::string(value);
                cfg.source = fixtures::named_source(cfg.fixture);
                continue;
            }
            const auto it = setters.find(key);
            if (it == setters.end()) throw ConfigError("unknown key '" + std::string(key) + "'");
            it->second(cfg, value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what() + where);
        }
    }

    auto& pm = cfg.source.phasematch;
    if (ctx.pm_fwhm)
        pm.fwhm = *ctx.pm_fwhm;
    else if (ctx.pm_ratio)
        pm.fwhm = *ctx.pm_ratio * cfg.source.pump.angular_fwhm();
    else if (cfg.fixture.empty())
        pm.fwhm = cfg.source.pump.angular_fwhm();
    try {
        // The grid always follows the final pump and phasematching widths.
        cfg.source.grid = default_grid(cfg.source.pump, pm, ctx.grid_n.value_or(cfg.source.grid.n_signal));
        if (ctx.grid_span) cfg.source.grid.span_signal = cfg.source.grid.span_idler = *ctx.grid_span;
        cfg.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

}  // namespace pdc
