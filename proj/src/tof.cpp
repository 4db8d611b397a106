#include "pdc/tof.hpp"

#include <cmath>

#include "pdc/errors.hpp"

namespace pdc {

void TofSpectrometerSpec::validate() const {
    if (!std::isfinite(dispersion_ps_per_nm) || dispersion_ps_per_nm == 0.0)
        throw DomainError("spectrometer dispersion must be finite and non-zero");
    if (!std::isfinite(reference_time_ps) || !(reference_wavelength_nm > 0.0))
        throw DomainError("spectrometer reference must be finite with a positive wavelength");
}

double tof_wavelength(double arrival_ps, const TofSpectrometerSpec& spec) {
    return spec.reference_wavelength_nm + (arrival_ps - spec.reference_time_ps) / spec.dispersion_ps_per_nm;
}

double tof_arrival(double wavelength_nm, const TofSpectrometerSpec& spec) {
    return spec.reference_time_ps + (wavelength_nm - spec.reference_wavelength_nm) * spec.dispersion_ps_per_nm;
}

}  // namespace pdc
