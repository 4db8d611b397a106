#include <gtest/gtest.h>

#include <cmath>

#include "optics.hpp"
#include "pdc/errors.hpp"
#include "pdc/event_io.hpp"
#include "pdc/profile.hpp"
#include "pdc/sampling_sim.hpp"
#include "pdc/units.hpp"

using namespace pdc;

namespace {
const double deg = units::pi / 180.0;
const double brewster = std::atan(1.45);
}  // namespace

TEST(Plate, OpticalPathSpotValues) {
    const PlateSpec plate;
    EXPECT_DOUBLE_EQ(optical_path_mm(0.0, plate), 12.0);
    EXPECT_NEAR(optical_path_mm(30 * deg, plate), oracle::plate_path(30 * deg, 12.0, 1.45), 1e-12);
    EXPECT_NEAR(optical_path_mm(30 * deg, plate), 12.78, 0.005);
    EXPECT_NEAR(optical_path_mm(brewster, plate), 14.58, 0.005);
    EXPECT_THROW(optical_path_mm(0.5 * units::pi, plate), DomainError);
}

TEST(Plate, DelaySpotValues) {
    const PlateSpec plate;
    EXPECT_DOUBLE_EQ(delay_of_angle(0.0, plate), 0.0);
    const double c_mm_per_ps = 299792458.0 * 1e3 / 1e12;
    for (double a : {10 * deg, 30 * deg, 47.3 * deg, brewster})
        EXPECT_NEAR(delay_of_angle(a, plate), 2.0 * (oracle::plate_path(a, 12.0, 1.45) - 12.0) / c_mm_per_ps, 1e-10);
    EXPECT_NEAR(delay_of_angle(47.3 * deg, plate), 12.8, 0.05);
    EXPECT_NEAR(delay_of_angle(brewster, plate), 17.2, 0.05);
    EXPECT_NEAR(delay_of_angle(-30 * deg, plate), delay_of_angle(30 * deg, plate), 0.0);
}

TEST(Plate, DefaultSweepLimitGivesNominalRange) {
    const PlateSpec plate;
    EXPECT_NEAR(delay_range_ps(plate), 12.8, 1e-10);
    EXPECT_NEAR(plate.alpha_max_rad / deg, 47.3, 0.05);
}

TEST(Plate, DelayMonotoneAndInvertible) {
    const PlateSpec plate;
    double prev = -1.0;
    for (int k = 0; k <= 20000; ++k) {
        const double a = plate.alpha_max_rad * k / 20000.0;
        const double tau = delay_of_angle(a, plate);
        EXPECT_GT(tau, prev);
        prev = tau;
        if (k % 500 == 0) EXPECT_NEAR(angle_for_delay(tau, plate), a, 1e-9);
    }
    EXPECT_THROW(angle_for_delay(-1.0, plate), DomainError);
    EXPECT_THROW(angle_for_delay(100.0, plate), DomainError);
}

TEST(Plate, AngleOfTimeFoldsFourSweeps) {
    const PlateSpec plate;
    const double period = plate.rotation_period_s();
    auto at = [&](double frac) { return angle_of_time(frac * period, plate); };
    EXPECT_EQ(at(0.0).sweep, 0);
    EXPECT_DOUBLE_EQ(at(0.0).alpha_rad, 0.0);
    EXPECT_TRUE(at(0.0).rising);
    EXPECT_EQ(at(0.3).sweep, 1);
    EXPECT_FALSE(at(0.3).rising);
    EXPECT_EQ(at(0.5).sweep, 2);
    EXPECT_NEAR(at(0.5).alpha_rad, 0.0, 1e-12);
    EXPECT_EQ(at(0.99).sweep, 3);
    EXPECT_NEAR(at(0.1).alpha_rad, 0.2 * units::pi, 1e-12);
    EXPECT_NEAR(at(0.4).alpha_rad, at(0.1).alpha_rad, 1e-12);
    EXPECT_FALSE(at(0.2).in_range);
    EXPECT_THROW(angle_of_time(period, plate), DomainError);
    EXPECT_THROW(angle_of_time(-1e-9, plate), DomainError);

    PlateSpec shifted = plate;
    shifted.trigger_phase_rad = 0.25 * units::pi;
    EXPECT_NEAR(angle_of_time(0.0, shifted).alpha_rad, 0.25 * units::pi, 1e-12);
}

TEST(Plate, TimingBudgetIntegerArithmetic) {
    const TimingBudget t = timing_budget(GateSpec{}, PlateSpec{}, 1000);
    EXPECT_EQ(t.repetition_hz, 80165000);
    EXPECT_EQ(t.sweeps_per_second, 200);
    EXPECT_EQ(t.pulses_per_sweep, 400825);
    EXPECT_EQ(t.pulses_per_sweep_rem, 0);
    EXPECT_NEAR(t.pulses_per_bin, 400.825, 1e-12);
    EXPECT_EQ(std::lround(t.pulses_per_bin), 401);
    EXPECT_NEAR(t.bin_spacing_fs, 12.8, 1e-9);
}

TEST(Gate, GaussianQuadratureAddition) {
    const PhotonAmplitude photon = transform_limited_gaussian(1100.0, 2.0, 8192);
    for (auto mode : {GateMode::coherent_overlap, GateMode::intensity_convolution}) {
        GateSpec gate;
        gate.mode = mode;
        const GateResponse r(photon, gate);
        std::vector<double> taus, vals;
        for (double t = -4000; t <= 4000; t += 1.0) {
            taus.push_back(t);
            vals.push_back(r(t));
        }
        EXPECT_NEAR(fwhm_direct(taus, vals), std::hypot(1100.0, 230.0), 0.05);
        EXPECT_NEAR(r(0.0), 1.0, 1e-12);
        EXPECT_NEAR(r(20000.0), 0.0, 1e-300);
    }
}

TEST(Gate, ModesAgreeForTransformLimitedGaussian) {
    const PhotonAmplitude photon = transform_limited_gaussian(2000.0, 4.0, 4096);
    GateSpec a, b;
    b.mode = GateMode::intensity_convolution;
    const GateResponse ra(photon, a), rb(photon, b);
    for (double t = -6000; t <= 6000; t += 37.0) EXPECT_NEAR(ra(t), rb(t), 1e-6);
}

TEST(Gate, ModesDifferForChirpedPhoton) {
    PhotonAmplitude photon = transform_limited_gaussian(800.0, 2.0, 8192);
    for (std::size_t k = 0; k < photon.values.size(); ++k) {
        const double t = photon.time(k);
        photon.values[k] *= std::polar(1.0, 2e-5 * t * t);
    }
    GateSpec a, b;
    b.mode = GateMode::intensity_convolution;
    const GateResponse ra(photon, a), rb(photon, b);
    double worst = 0.0;
    for (double t = -3000; t <= 3000; t += 50.0) worst = std::max(worst, std::abs(ra(t) - rb(t)));
    EXPECT_GT(worst, 1e-2);
}

TEST(Gate, DeltaLikeGateReproducesIntensity) {
    PhotonAmplitude photon = transform_limited_gaussian(1000.0, 5.0, 2048);
    photon.values[1100] *= 1.3;  // break the symmetry so this is not trivially Gaussian
    GateSpec gate;
    gate.fwhm_fs = 1.0;
    const GateResponse r(photon, gate);
    double peak = 0.0;
    for (const auto& v : photon.values) peak = std::max(peak, std::norm(v));
    for (std::size_t k = 900; k < 1200; k += 7) EXPECT_NEAR(r(photon.time(k)), std::norm(photon.values[k]) / peak, 1e-12);
}

TEST(Gate, ParallelSamplingMatchesSerial) {
    const PhotonAmplitude photon = transform_limited_gaussian(1500.0, 3.0, 4096);
    const GateResponse r(photon, GateSpec{});
    const auto a = tabulate_response(r, 2.0, Exec::serial);
    const auto b = tabulate_response(r, 2.0, Exec::parallel);
    EXPECT_EQ(a.values, b.values);
    EXPECT_NEAR(a(0.0), r(0.0), 1e-6);
    EXPECT_EQ(a(a.tau0_fs - 1.0), 0.0);
}

TEST(Simulation, ZeroRatesGiveOnlyTriggers) {
    AcquisitionParams p;
    p.peak_rate_hz = 0.0;
    p.duration_s = 0.5;
    const auto sim = simulate_acquisition(transform_limited_gaussian(1000, 4, 1024), GateSpec{}, PlateSpec{}, p);
    EXPECT_EQ(sim.stream.records.size(), 25u);
    EXPECT_EQ(sim.stream.count(channel::trigger), 25u);
    for (std::size_t k = 0; k < 25; ++k) EXPECT_EQ(sim.stream.records[k].timestamp_ps, k * 20000000000ull);
}

TEST(Simulation, DeterministicPerSeed) {
    AcquisitionParams p;
    p.duration_s = 0.2;
    p.background_rate_hz = 1e4;
    const auto photon = transform_limited_gaussian(2000, 4, 4096);
    const auto a = simulate_acquisition(photon, GateSpec{}, PlateSpec{}, p);
    const auto b = simulate_acquisition(photon, GateSpec{}, PlateSpec{}, p);
    EXPECT_EQ(events_to_binary(a.stream), events_to_binary(b.stream));
    p.seed = 2;
    const auto c = simulate_acquisition(photon, GateSpec{}, PlateSpec{}, p);
    EXPECT_NE(events_to_binary(a.stream), events_to_binary(c.stream));
}

TEST(Simulation, OrderedAndSaturationFlag) {
    AcquisitionParams p;
    p.duration_s = 0.05;
    p.peak_rate_hz = 9e6;  // 0.11 per pulse
    PlateSpec plate;
    plate.rotation_jitter_rms = 1e-3;
    const auto sim = simulate_acquisition(transform_limited_gaussian(2000, 4, 4096), GateSpec{}, plate, p);
    EXPECT_TRUE(sim.report.saturated);
    EXPECT_TRUE(std::is_sorted(sim.stream.records.begin(), sim.stream.records.end(),
                               [](const auto& x, const auto& y) { return x.timestamp_ps < y.timestamp_ps; }));
    p.peak_rate_hz = 1e6;
    EXPECT_FALSE(simulate_acquisition(transform_limited_gaussian(2000, 4, 4096), GateSpec{}, plate, p).report.saturated);
    p.peak_rate_hz = 1e9;
    EXPECT_THROW(simulate_acquisition(transform_limited_gaussian(2000, 4, 4096), GateSpec{}, plate, p), DomainError);
}

TEST(Simulation, MeanClickCountMatchesExpectation) {
    // Background only: clicks ~ Binomial(pulses, p).
    AcquisitionParams p;
    p.peak_rate_hz = 0.0;
    p.background_rate_hz = 5e4;
    p.duration_s = 0.2;
    const auto sim = simulate_acquisition(transform_limited_gaussian(2000, 4, 1024), GateSpec{}, PlateSpec{}, p);
    const double expected = 5e4 * 0.2;
    EXPECT_NEAR(static_cast<double>(sim.report.converted_clicks), expected, 5.0 * std::sqrt(expected));
}
