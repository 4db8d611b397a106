#include "pdc/fixtures.hpp"

#include "pdc/errors.hpp"

namespace pdc::fixtures {

SourceSpec decorrelated_source(std::size_t n) {
    PumpSpec pump;
    pump.center_wavelength_nm = pump_center_nm;
    pump.fwhm_nm = decorrelated_pump_fwhm_nm;
    return make_source(pump, decorrelated_pm_ratio, decorrelated_orientation_rad, PhasematchProfile::gaussian, n);
}

SourceSpec correlated_source(std::size_t n) {
    PumpSpec pump;
    pump.center_wavelength_nm = pump_center_nm;
    pump.fwhm_nm = correlated_pump_fwhm_nm;
    return make_source(pump, correlated_pm_ratio, correlated_orientation_rad, PhasematchProfile::gaussian, n);
}

SourceSpec named_source(const std::string& name, std::size_t n) {
    if (name == "decorrelated") return decorrelated_source(n);
    if (name == "correlated") return correlated_source(n);
    throw ConfigError("unknown fixture '" + name + "' (expected decorrelated or correlated)");
}

std::string provenance(const std::string& name) {
    if (name == "decorrelated")
        return "simulated stand-in: Gaussian pump 3.09 nm at 772.5 nm, Gaussian phasematching ratio 1, "
               "orientation tuned to K = 1.08";
    if (name == "correlated")
        return "simulated stand-in: Gaussian pump 0.78 nm at 772.5 nm, Gaussian phasematching ratio 3.25, "
               "orientation tuned to K = 2.10";
    throw ConfigError("unknown fixture '" + name + "'");
}

}  // namespace pdc::fixtures
