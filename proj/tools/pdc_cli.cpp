// Command-line front end: one subcommand per pipeline stage.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdc/config.hpp"
#include "pdc/errors.hpp"
#include "pdc/pipeline.hpp"

namespace {

const char* stage_help(pdc::Stage s) {
    switch (s) {
    case pdc::Stage::simulate: return "build the JSA/JSI of the configured source (jsa.txt, jsi.txt)";
    case pdc::Stage::schmidt: return "Schmidt coefficients, K and purity (schmidt.csv)";
    case pdc::Stage::envelope: return "flat-phase temporal envelope of the conditioned cut (envelope.csv, marginal.csv)";
    case pdc::Stage::sample: return "simulate the time-tag stream of the delay scan (events.csv, events.bin)";
    case pdc::Stage::reconstruct:
        return "histogram clicks against plate delay, subtract background, fit (waveform.csv); "
               "reads acquisition.events when set, otherwise simulates";
    case pdc::Stage::bounds: return "upper/lower purity bounds from a JSI and a measured TBP or TBP ratio";
    case pdc::Stage::sweep: return "purity and TBP ratio over pump chirp (sweep.csv)";
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heralded-photon spectral/temporal characterization toolkit"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";

    for (const auto& name : pdc::stage_names()) {
        auto* sub = app.add_subcommand(name, stage_help(*pdc::parse_stage(name)));
        sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const auto stage = pdc::parse_stage(app.get_subcommands().front()->get_name());
    try {
        pdc::RunConfig config = config_path.empty() ? pdc::parse_config("") : pdc::load_config(config_path);
        if (seed) config.acquisition.seed = *seed;
        const auto summary = pdc::run_pipeline(config, *stage, out_dir);
        std::cout << summary.dump(2) << '\n';
    } catch (const pdc::Error& e) {
        std::cerr << "pdc " << pdc::stage_name(*stage) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "pdc " << pdc::stage_name(*stage) << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
