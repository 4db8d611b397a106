#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdc/sampling_sim.hpp"
#include "pdc/spectral_model.hpp"
#include "pdc/tof.hpp"

namespace pdc {

struct AnalysisSettings {
    std::size_t n_bins = 1000;
    double exclusion_halfwidth = 3.0;
    double coincidence_window_ps = 1000.0;
    double sweep_max_fs2 = 40000.0;
    std::size_t sweep_points = 201;
    std::optional<double> measured_tbp;
    std::optional<double> measured_tbp_ratio;
    double silica_fs2_per_mm = 15616.0 / 810.0;
};

/// Photon fed to the sampling simulation: the source's conditioned cut, or a
/// transform-limited Gaussian of the given FWHM.
struct PhotonSettings {
    std::optional<double> gaussian_fwhm_fs;
    double dt_fs = 4.0;
    std::size_t samples = 4096;
};

struct RunConfig {
    SourceSpec source;
    std::string fixture;  // empty unless the source came from a named fixture
    PlateSpec plate;
    GateSpec gate;
    TofSpectrometerSpec signal_spectrometer;
    TofSpectrometerSpec idler_spectrometer;
    AcquisitionParams acquisition;
    PhotonSettings photon;
    AnalysisSettings analysis;
    std::optional<std::filesystem::path> events_path;
    std::optional<std::filesystem::path> measured_jsi_path;

    void validate() const;
};

/// Keys accepted by parse_config, with units in the names (e.g. pump.fwhm_nm).
const std::vector<std::string>& config_keys();

/// `key = value` lines; `#` starts a comment. `fixture = decorrelated|correlated` loads a
/// preset source that later source keys refine. Unknown keys and bad values raise
/// ConfigError naming the line. Relative paths resolve against `base_dir`.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace pdc
