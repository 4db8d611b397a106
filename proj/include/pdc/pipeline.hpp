#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pdc/config.hpp"
#include "pdc/time_domain.hpp"

namespace pdc {

enum class Stage { simulate, schmidt, envelope, sample, reconstruct, bounds, sweep };

inline constexpr int summary_schema_version = 1;

const std::vector<std::string>& stage_names();
std::optional<Stage> parse_stage(std::string_view name);
std::string stage_name(Stage stage);

/// Photon amplitude the sampling stages use: the configured Gaussian, or the conditioned
/// signal cut of the source transformed with its spectral phase.
PhotonAmplitude configured_photon(const RunConfig& config);

/// Runs one stage, writes its CSV/matrix/event files into `out_dir` (created if needed)
/// and returns the summary, which is also written to `out_dir/summary.json`.
nlohmann::json run_pipeline(const RunConfig& config, Stage stage, const std::filesystem::path& out_dir);

}  // namespace pdc
