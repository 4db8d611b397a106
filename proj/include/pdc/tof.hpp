#pragma once

namespace pdc {

/// Linear dispersive-fibre time-of-flight spectrometer calibration.
struct TofSpectrometerSpec {
    double dispersion_ps_per_nm = 400.0;  // total D * L
    double reference_time_ps = 0.0;
    double reference_wavelength_nm = 1545.0;

    void validate() const;
};

/// lambda = reference + (arrival - reference_time) / dispersion.
double tof_wavelength(double arrival_ps, const TofSpectrometerSpec& spec);
/// Inverse of tof_wavelength.
double tof_arrival(double wavelength_nm, const TofSpectrometerSpec& spec);

}  // namespace pdc
