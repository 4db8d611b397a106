#include "pdc/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdc/errors.hpp"
#include "pdc/profile.hpp"
#include "pdc/units.hpp"

namespace pdc {

double DelayHistogram::total_counts() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

std::vector<double> DelayHistogram::rates() const {
    std::vector<double> r(counts.size(), 0.0);
    if (exposure_sweeps == 0) return r;
    for (std::size_t k = 0; k < counts.size(); ++k)
        r[k] = counts[k] / (dwell_s[k] * static_cast<double>(exposure_sweeps));
    return r;
}

namespace {

struct Accumulator {
    std::array<std::vector<double>, 4> sweep;
    DroppedClicks dropped;

    explicit Accumulator(std::size_t n) {
        for (auto& s : sweep) s.assign(n, 0.0);
    }

    void merge(const Accumulator& o) {
        for (std::size_t q = 0; q < 4; ++q)
            for (std::size_t k = 0; k < sweep[q].size(); ++k) sweep[q][k] += o.sweep[q][k];
        dropped.beyond_rotation += o.dropped.beyond_rotation;
        dropped.out_of_sweep += o.dropped.out_of_sweep;
    }
};

void fold_rotation(const std::vector<EventRecord>& records, std::size_t begin, std::size_t end,
                   std::uint64_t trigger_ps, std::uint8_t ch, const PlateSpec& plate, double range_fs,
                   Accumulator& acc) {
    const double period_s = plate.rotation_period_s();
    const auto n = acc.sweep[0].size();
    const double width = range_fs / static_cast<double>(n);
    for (std::size_t i = begin; i < end; ++i) {
        if (records[i].channel != ch) continue;
        const double t_s = static_cast<double>(records[i].timestamp_ps - trigger_ps) * 1e-12;
        if (t_s >= period_s) {
            ++acc.dropped.beyond_rotation;
            continue;
        }
        const SweepPosition pos = angle_of_time(t_s, plate);
        if (!pos.in_range) {
            ++acc.dropped.out_of_sweep;
            continue;
        }
        const double tau = delay_of_angle(pos.alpha_rad, plate) * 1e3;
        const auto bin = std::min(static_cast<std::size_t>(tau / width), n - 1);
        acc.sweep[static_cast<std::size_t>(pos.sweep)][bin] += 1.0;
    }
}

}  // namespace

DelayHistogram reconstruct_waveform(const EventStream& stream, const PlateSpec& plate, std::size_t n_bins,
                                    std::uint8_t click_channel, Exec exec) {
    plate.validate();
    if (n_bins < 2) throw InputError("need at least two delay bins");
    const auto& rec = stream.records;

    std::vector<std::size_t> triggers;
    for (std::size_t i = 0; i < rec.size(); ++i)
        if (rec[i].channel == channel::trigger) triggers.push_back(i);
    if (triggers.empty()) throw InputError("stream has no rotation trigger; cannot reconstruct");

    const double range_fs = delay_range_ps(plate) * 1e3;
    DelayHistogram h;
    h.bin_width_fs = range_fs / static_cast<double>(n_bins);
    h.delay_fs.resize(n_bins);
    h.dwell_s.resize(n_bins);
    const double angular_speed = units::two_pi * plate.rotation_hz;
    for (std::size_t k = 0; k < n_bins; ++k) {
        h.delay_fs[k] = (static_cast<double>(k) + 0.5) * h.bin_width_fs;
        const double lo = angle_for_delay(static_cast<double>(k) * h.bin_width_fs * 1e-3, plate);
        const double hi = k + 1 == n_bins ? plate.alpha_max_rad
                                          : angle_for_delay(static_cast<double>(k + 1) * h.bin_width_fs * 1e-3, plate);
        h.dwell_s[k] = (hi - lo) / angular_speed;
    }
    h.exposure_sweeps = 4 * triggers.size();

    Accumulator total(n_bins);
    for (std::size_t i = 0; i < triggers.front(); ++i)
        total.dropped.before_first_trigger += rec[i].channel == click_channel;

    const auto n_rot = static_cast<std::ptrdiff_t>(triggers.size());
    auto rotation_end = [&](std::ptrdiff_t r) {
        return r + 1 < n_rot ? triggers[static_cast<std::size_t>(r + 1)] : rec.size();
    };
    if (exec == Exec::parallel) {
        // Shard by rotation; counts are integers so the merge is exact in any order.
#pragma omp parallel
        {
            Accumulator local(n_bins);
#pragma omp for schedule(static) nowait
            for (std::ptrdiff_t r = 0; r < n_rot; ++r) {
                const std::size_t b = triggers[static_cast<std::size_t>(r)];
                fold_rotation(rec, b + 1, rotation_end(r), rec[b].timestamp_ps, click_channel, plate, range_fs, local);
            }
#pragma omp critical(pdc_histogram_merge)
            total.merge(local);
        }
    } else {
        for (std::ptrdiff_t r = 0; r < n_rot; ++r) {
            const std::size_t b = triggers[static_cast<std::size_t>(r)];
            fold_rotation(rec, b + 1, rotation_end(r), rec[b].timestamp_ps, click_channel, plate, range_fs, total);
        }
    }

    h.sweep_counts = std::move(total.sweep);
    h.dropped = total.dropped;
    h.counts.assign(n_bins, 0.0);
    for (const auto& s : h.sweep_counts)
        for (std::size_t k = 0; k < n_bins; ++k) h.counts[k] += s[k];
    return h;
}

DelayWaveform rate_waveform(const DelayHistogram& h) { return {h.delay_fs, h.rates(), 0.0}; }

DelayWaveform subtract_background(const DelayWaveform& w, double exclusion_halfwidth) {
    if (w.values.size() != w.delay_fs.size() || w.values.size() < 3)
        throw InputError("waveform needs matching axes and at least three bins");
    if (!(exclusion_halfwidth > 0.0)) throw DomainError("exclusion half-width must be positive");

    std::vector<double> sorted = w.values;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const auto peak = std::max_element(w.values.begin(), w.values.end());
    if (!(*peak > 2.0 * median) || !(*peak > 0.0)) throw BackgroundError("no identifiable peak (max <= 2 x median)");

    std::vector<double> excess(w.values.size());
    for (std::size_t k = 0; k < excess.size(); ++k) excess[k] = w.values[k] - median;
    double width;
    try {
        width = half_max_crossings(w.delay_fs, excess).width();
    } catch (const DegenerateError&) {
        throw BackgroundError("peak does not fall to half maximum inside the window");
    }
    const double centre = w.delay_fs[static_cast<std::size_t>(peak - w.values.begin())];

    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        if (std::abs(w.delay_fs[k] - centre) > exclusion_halfwidth * width) {
            sum += w.values[k];
            ++used;
        }
    }
    if (used == 0) throw BackgroundError("no bins outside the exclusion zone");

    const double base = sum / static_cast<double>(used);
    DelayWaveform out = w;
    out.baseline = w.baseline + base;
    for (double& v : out.values) v = std::max(v - base, 0.0);
    return out;
}

DelayWaveform subtract_background(const DelayHistogram& h, double exclusion_halfwidth) {
    return subtract_background(rate_waveform(h), exclusion_halfwidth);
}

namespace {

std::ptrdiff_t bin_of(const Axis& a, double x) {
    const double f = std::floor((x - (a.origin - 0.5 * a.step)) / a.step);
    if (!(f >= 0.0) || f >= static_cast<double>(a.size)) return -1;
    return static_cast<std::ptrdiff_t>(f);
}

}  // namespace

CoincidenceJsi build_jsi_from_coincidences(const EventStream& stream, const TofSpectrometerSpec& spec_signal,
                                           const TofSpectrometerSpec& spec_idler, const Axis& signal_bins,
                                           const Axis& idler_bins, const CoincidenceOptions& options) {
    spec_signal.validate();
    spec_idler.validate();
    if (signal_bins.size < 1 || idler_bins.size < 1 || !(signal_bins.step > 0.0) || !(idler_bins.step > 0.0))
        throw InputError("wavelength bins must be non-empty with positive steps");
    if (!(options.window_ps >= 0.0) || !(options.repetition_mhz > 0.0))
        throw DomainError("window must be non-negative and repetition rate positive");
    if (options.signal_channel == options.idler_channel) throw InputError("signal and idler channels coincide");

    const double period = 1e6 / options.repetition_mhz;
    CoincidenceJsi out;
    out.jsi.signal = signal_bins;
    out.jsi.idler = idler_bins;
    out.jsi.values = RealMatrix::Zero(static_cast<Eigen::Index>(signal_bins.size),
                                      static_cast<Eigen::Index>(idler_bins.size));

    const auto& rec = stream.records;
    std::size_t i = 0;
    while (i < rec.size()) {
        const auto cycle = static_cast<std::uint64_t>(std::floor(static_cast<double>(rec[i].timestamp_ps) / period));
        int ns = 0, ni = 0;
        std::uint64_t ts = 0, ti = 0;
        for (; i < rec.size(); ++i) {
            if (static_cast<std::uint64_t>(std::floor(static_cast<double>(rec[i].timestamp_ps) / period)) != cycle) break;
            if (rec[i].channel == options.signal_channel) {
                ++ns;
                ts = rec[i].timestamp_ps;
            } else if (rec[i].channel == options.idler_channel) {
                ++ni;
                ti = rec[i].timestamp_ps;
            }
        }
        if (ns == 0 || ni == 0) continue;
        if (ns > 1 || ni > 1) {
            ++out.multi_click_cycles;
            continue;
        }
        const double as = static_cast<double>(ts);
        const double ai = static_cast<double>(ti);
        if (std::abs(as - ai) > options.window_ps) {
            ++out.outside_window;
            continue;
        }
        const double start = static_cast<double>(cycle) * period;
        const auto bs = bin_of(signal_bins, tof_wavelength(as - start, spec_signal));
        const auto bi = bin_of(idler_bins, tof_wavelength(ai - start, spec_idler));
        if (bs < 0 || bi < 0) {
            ++out.outside_axes;
            continue;
        }
        out.jsi.values(bs, bi) += 1.0;
        ++out.pairs;
    }
    if (out.pairs == 0) throw DegenerateError("no coincidences inside the wavelength grid; JSI is empty");
    out.jsi.values /= static_cast<double>(out.pairs);
    return out;
}

double heralding_efficiency(double coincidences, double heralds, double detector_efficiency) {
    if (!(heralds > 0.0)) throw DomainError("herald rate must be positive");
    if (!(coincidences >= 0.0)) throw DomainError("coincidence rate must be non-negative");
    if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0))
        throw DomainError("detector efficiency must lie in (0, 1]");
    const double eta = coincidences / heralds / detector_efficiency;
    if (eta > 1.0) throw DomainError("heralding efficiency above one: inconsistent inputs");
    return eta;
}

}  // namespace pdc
