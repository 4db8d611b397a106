#include "pdc/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "pdc/errors.hpp"
#include "pdc/fft.hpp"
#include "pdc/profile.hpp"
#include "pdc/units.hpp"

namespace pdc {

TemporalEnvelope PhotonAmplitude::intensity_envelope() const {
    TemporalEnvelope env;
    env.time_fs.resize(values.size());
    env.intensity.resize(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        env.time_fs[k] = time(k);
        env.intensity[k] = std::norm(values[k]);
    }
    return env;
}

namespace {

double uniform_step(std::span<const double> axis) {
    if (axis.size() < 2) throw InputError("spectrum needs at least two samples");
    const double step = axis[1] - axis[0];
    if (!(step > 0.0)) throw InputError("spectral axis must be strictly increasing");
    const double tol = 1e-9 * std::max(std::abs(step), std::abs(axis.back() - axis.front()));
    for (std::size_t k = 1; k < axis.size(); ++k) {
        const double expected = axis[0] + static_cast<double>(k) * step;
        if (std::abs(axis[k] - expected) > tol) throw InputError("spectral axis is not uniform");
    }
    return step;
}

}  // namespace

PhotonAmplitude amplitude_from_spectrum(std::span<const double> axis,
                                        std::span<const std::complex<double>> amplitude,
                                        std::size_t padding) {
    if (axis.size() != amplitude.size()) throw InputError("axis and amplitude sizes differ");
    if (padding < 1) throw DomainError("padding factor must be >= 1");
    const double dw = uniform_step(axis);
    const std::size_t n = amplitude.size();
    const std::size_t m = fft::next_power_of_two(n * padding);

    std::vector<std::complex<double>> buf(m);
    std::copy(amplitude.begin(), amplitude.end(), buf.begin());
    fft::transform(buf, -1);

    // X_j = sum_k a_k exp(-2 pi i jk/M) equals sum_k a_k exp(-i (w_k - w_0) t_j) with
    // t_j = 2 pi j / (M dw); the factor exp(-i w_0 t_j) only changes the phase.
    const double dt = units::two_pi / (static_cast<double>(m) * dw);
    const double scale = dw / std::sqrt(units::two_pi);
    for (auto& v : buf) v *= scale;
    fft::shift(buf);

    PhotonAmplitude out;
    out.dt_fs = dt;
    out.t0_fs = -static_cast<double>(m / 2) * dt;
    out.values = std::move(buf);
    return out;
}

TemporalEnvelope envelope_from_amplitude(std::span<const double> axis,
                                         std::span<const std::complex<double>> amplitude,
                                         std::size_t padding) {
    return amplitude_from_spectrum(axis, amplitude, padding).intensity_envelope();
}

TemporalEnvelope envelope_from_spectrum(const Spectrum1D& cut, std::size_t padding) {
    if (cut.unit != AxisUnit::angular_frequency)
        throw InputError("temporal envelopes need an angular-frequency axis");
    if (cut.axis.size() != cut.intensity.size()) throw InputError("spectrum axis/intensity size mismatch");
    std::vector<std::complex<double>> amp(cut.intensity.size());
    for (std::size_t k = 0; k < amp.size(); ++k) {
        if (cut.intensity[k] < 0.0 || !std::isfinite(cut.intensity[k]))
            throw InputError("spectrum intensity must be finite and non-negative");
        amp[k] = std::sqrt(cut.intensity[k]);
    }
    return envelope_from_amplitude(cut.axis, amp, padding);
}

namespace {

// Residuals offset + A exp(-4 ln2 (t - t0)^2 / w^2) - y over parameters (A, t0, w, offset).
struct GaussianResidual : Eigen::DenseFunctor<double> {
    GaussianResidual(const std::vector<double>& t, const std::vector<double>& y)
        : Eigen::DenseFunctor<double>(4, static_cast<int>(t.size())), t_(t), y_(y) {}

    int operator()(const InputType& q, ValueType& r) const {
        for (std::size_t k = 0; k < t_.size(); ++k) {
            const double dx = t_[k] - q(1);
            r(static_cast<Eigen::Index>(k)) = q(3) + q(0) * std::exp(-k4 * dx * dx / (q(2) * q(2))) - y_[k];
        }
        return 0;
    }

    int df(const InputType& q, JacobianType& jac) const {
        for (std::size_t k = 0; k < t_.size(); ++k) {
            const auto i = static_cast<Eigen::Index>(k);
            const double dx = t_[k] - q(1);
            const double w2 = q(2) * q(2);
            const double g = std::exp(-k4 * dx * dx / w2);
            jac(i, 0) = g;
            jac(i, 1) = q(0) * g * 2.0 * k4 * dx / w2;
            jac(i, 2) = q(0) * g * 2.0 * k4 * dx * dx / (w2 * q(2));
            jac(i, 3) = 1.0;
        }
        return 0;
    }

    static constexpr double k4 = 4.0 * units::ln2;
    const std::vector<double>& t_;
    const std::vector<double>& y_;
};

}  // namespace

PulseMetrics fit_fwhm(const TemporalEnvelope& env, const FitOptions& options) {
    const auto& t = env.time_fs;
    const auto& y = env.intensity;
    if (t.size() != y.size()) throw InputError("envelope time/intensity size mismatch");
    if (t.size() < 8) throw InputError("envelope needs at least 8 samples");

    const double ymax = *std::max_element(y.begin(), y.end());
    const auto above = std::count_if(y.begin(), y.end(), [&](double v) { return v >= 0.5 * ymax; });
    if (!(ymax > 0.0) || above < 8)
        throw InputError("fewer than 8 samples above half maximum");

    const HalfMaxCrossings crossing = half_max_crossings(t, y);
    const double direct = crossing.width();

    // Parameters: amplitude, centre, FWHM, offset.
    GaussianResidual model(t, y);
    Eigen::VectorXd p(4);
    p << ymax, t[crossing.peak_index], direct, 0.0;
    Eigen::LevenbergMarquardt<GaussianResidual> lm(model);
    lm.setMaxfev(options.max_iterations * 10);
    lm.setFtol(options.tolerance);
    lm.setXtol(options.tolerance);
    const auto status = lm.minimize(p);
    const bool converged = status == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                           status == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                           status == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                           status == Eigen::LevenbergMarquardtSpace::CosinusTooSmall ||
                           status == Eigen::LevenbergMarquardtSpace::FtolTooSmall ||
                           status == Eigen::LevenbergMarquardtSpace::XtolTooSmall ||
                           status == Eigen::LevenbergMarquardtSpace::GtolTooSmall;
    if (!converged || !p.allFinite() || !(std::abs(p(2)) > 0.0))
        throw FitError("Gaussian fit did not converge", direct);

    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::VectorXd r(n);
    Eigen::MatrixXd jac(n, 4);
    model(p, r);
    model.df(p, jac);
    const double cost = r.squaredNorm();
    const int iter = static_cast<int>(lm.iterations());

    PulseMetrics m;
    m.amplitude = p(0);
    m.center_fs = p(1);
    m.fwhm_fs = std::abs(p(2));
    m.offset = p(3);
    m.direct_fwhm_fs = direct;
    m.iterations = iter;
    const double peak = std::abs(p(0)) > 0 ? std::abs(p(0)) : 1.0;
    m.residual_rms = std::sqrt(cost / static_cast<double>(n)) / peak;
    if (n > 4) {
        const double variance = cost / static_cast<double>(n - 4);
        const Eigen::Matrix4d cov = (jac.transpose() * jac).inverse() * variance;
        m.fwhm_sigma_fs = std::sqrt(std::max(cov(2, 2), 0.0));
    }
    return m;
}

double time_bandwidth_product(double delta_tau_fs, double delta_nu_thz) {
    return delta_tau_fs * delta_nu_thz * 1e-3;
}

double spectral_fwhm_thz(const Spectrum1D& s) {
    if (s.unit != AxisUnit::angular_frequency) throw InputError("expected an angular-frequency axis");
    return fwhm_direct(s.axis, s.intensity) / units::two_pi * 1e3;
}

double fourier_limit_tbp(const JointSpectralIntensity& jsi, Photon axis,
                         std::optional<std::size_t> cut_index) {
    const std::size_t idx = cut_index.value_or(default_cut_index(jsi, axis));
    const Spectrum1D cut = conditioned_cut(jsi, axis, idx);
    const PulseMetrics m = fit_fwhm(envelope_from_spectrum(cut));
    return time_bandwidth_product(m.fwhm_fs, spectral_fwhm_thz(marginal_spectrum(jsi, axis)));
}

double deconvolve_gaussian(double fwhm_measured_fs, double fwhm_gate_fs) {
    if (fwhm_gate_fs < 0.0) throw DomainError("gate width must be non-negative");
    if (fwhm_measured_fs < fwhm_gate_fs)
        throw DomainError("measured width is narrower than the gate");
    return std::sqrt(fwhm_measured_fs * fwhm_measured_fs - fwhm_gate_fs * fwhm_gate_fs);
}

PhotonAmplitude transform_limited_gaussian(double fwhm_fs, double dt_fs, std::size_t n) {
    if (!(fwhm_fs > 0.0) || !(dt_fs > 0.0) || n < 2) throw DomainError("invalid Gaussian photon grid");
    PhotonAmplitude out;
    out.dt_fs = dt_fs;
    out.t0_fs = -static_cast<double>(n / 2) * dt_fs;
    out.values.resize(n);
    const double a = 2.0 * units::ln2 / (fwhm_fs * fwhm_fs);
    for (std::size_t k = 0; k < n; ++k) {
        const double tk = out.time(k);
        out.values[k] = std::exp(-a * tk * tk);
    }
    return out;
}

}  // namespace pdc
