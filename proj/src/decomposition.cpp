#include "pdc/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "pdc/errors.hpp"

namespace pdc {

namespace {

const Axis& axis_of(const JointSpectralIntensity& jsi, Photon p) {
    return p == Photon::signal ? jsi.signal : jsi.idler;
}

const Axis& conjugate_of(const JointSpectralIntensity& jsi, Photon p) {
    return p == Photon::signal ? jsi.idler : jsi.signal;
}

Spectrum1D spectrum_on(const Axis& a, std::vector<double> values) {
    Spectrum1D out;
    out.unit = a.unit;
    out.center = a.center;
    out.axis.resize(a.size);
    for (std::size_t k = 0; k < a.size; ++k) out.axis[k] = a[k];
    double total = 0.0;
    for (double v : values) total += v;
    total *= std::abs(a.step);
    if (!(total > 0.0)) throw DegenerateError("spectrum integrates to zero");
    for (double& v : values) v /= total;
    out.intensity = std::move(values);
    return out;
}

}  // namespace

SchmidtSpectrum schmidt_decompose(const ComplexMatrix& amplitude) {
    if (!amplitude.allFinite()) throw InputError("amplitude matrix has non-finite entries");
    if (amplitude.size() == 0) throw InputError("amplitude matrix is empty");

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(amplitude);
    const Eigen::VectorXd sigma = svd.singularValues();
    const double total = sigma.squaredNorm();
    if (!(total > 0.0)) throw DegenerateError("amplitude matrix is identically zero");

    SchmidtSpectrum out;
    const double largest = sigma(0) * sigma(0) / total;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        const double lambda = sigma(k) * sigma(k) / total;
        if (lambda < schmidt_truncation * largest) break;
        out.coefficients.push_back(lambda);
    }
    // Renormalize after truncation so the coefficients sum to one.
    double sum = 0.0;
    for (double l : out.coefficients) sum += l;
    for (double& l : out.coefficients) l /= sum;
    return out;
}

SchmidtSpectrum schmidt_decompose(const JointSpectralAmplitude& jsa) {
    // A uniform grid measure scales every singular value alike and cancels in lambda.
    const double weight = std::sqrt(jsa.grid.step_signal() * jsa.grid.step_idler());
    return schmidt_decompose(ComplexMatrix(jsa.values * weight));
}

double schmidt_number(const SchmidtSpectrum& s) {
    double sum_sq = 0.0;
    for (double l : s.coefficients) sum_sq += l * l;
    return 1.0 / sum_sq;
}

double purity(const SchmidtSpectrum& s) { return 1.0 / schmidt_number(s); }

double upper_bound_purity_from_jsi(const JointSpectralIntensity& jsi) {
    if (!jsi.values.allFinite()) throw InputError("JSI has non-finite entries");
    if ((jsi.values.array() < 0.0).any())
        throw InputError("JSI has negative entries; clamp measurement noise first");
    return purity(schmidt_decompose(ComplexMatrix(jsi.values.cwiseSqrt().cast<std::complex<double>>())));
}

JointSpectralIntensity clamp_and_normalize(JointSpectralIntensity jsi) {
    if (!jsi.values.allFinite()) throw InputError("JSI has non-finite entries");
    jsi.values = jsi.values.cwiseMax(0.0);
    const double total = jsi.values.sum() * std::abs(jsi.signal.step * jsi.idler.step);
    if (!(total > 0.0)) throw DegenerateError("JSI is zero after clamping");
    jsi.values /= total;
    return jsi;
}

Spectrum1D marginal_spectrum(const JointSpectralIntensity& jsi, Photon axis) {
    std::vector<double> values;
    if (axis == Photon::signal) {
        const Eigen::VectorXd m = jsi.values.rowwise().sum();
        values.assign(m.data(), m.data() + m.size());
    } else {
        const Eigen::RowVectorXd m = jsi.values.colwise().sum();
        values.assign(m.data(), m.data() + m.size());
    }
    return spectrum_on(axis_of(jsi, axis), std::move(values));
}

Spectrum1D conditioned_cut(const JointSpectralIntensity& jsi, Photon axis, std::size_t fixed_index) {
    if (fixed_index >= conjugate_of(jsi, axis).size)
        throw DomainError("cut index " + std::to_string(fixed_index) + " outside grid");
    const auto idx = static_cast<Eigen::Index>(fixed_index);
    std::vector<double> values;
    if (axis == Photon::idler) {
        const Eigen::RowVectorXd row = jsi.values.row(idx);
        values.assign(row.data(), row.data() + row.size());
    } else {
        const Eigen::VectorXd col = jsi.values.col(idx);
        values.assign(col.data(), col.data() + col.size());
    }
    if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; }))
        throw DegenerateError("conditioned cut at index " + std::to_string(fixed_index) + " is empty");
    return spectrum_on(axis_of(jsi, axis), std::move(values));
}

std::vector<std::complex<double>> conditioned_amplitude(const JointSpectralAmplitude& jsa,
                                                        Photon axis, std::size_t fixed_index) {
    const auto idx = static_cast<Eigen::Index>(fixed_index);
    if (axis == Photon::idler) {
        if (idx >= jsa.values.rows()) throw DomainError("cut index outside grid");
        return {jsa.values.row(idx).begin(), jsa.values.row(idx).end()};
    }
    if (idx >= jsa.values.cols()) throw DomainError("cut index outside grid");
    std::vector<std::complex<double>> out(static_cast<std::size_t>(jsa.values.rows()));
    for (Eigen::Index r = 0; r < jsa.values.rows(); ++r) out[static_cast<std::size_t>(r)] = jsa.values(r, idx);
    return out;
}

std::size_t default_cut_index(const JointSpectralIntensity& jsi, Photon axis) {
    Eigen::Index best = 0;
    if (axis == Photon::idler)
        jsi.values.rowwise().sum().maxCoeff(&best);
    else
        jsi.values.colwise().sum().maxCoeff(&best);
    return static_cast<std::size_t>(best);
}

double schmidt_number_from_g2(double g2) {
    if (!(g2 > 1.0 && g2 <= 2.0)) throw DomainError("g2(0) must lie in (1, 2]");
    return 1.0 / (g2 - 1.0);
}

}  // namespace pdc
